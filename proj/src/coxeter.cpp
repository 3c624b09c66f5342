#include "relgauss/coxeter.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace relgauss {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.images.resize(n);
  std::iota(p.images.begin(), p.images.end(), 1);
  return p;
}

Permutation Permutation::from_images(std::vector<int> images) {
  std::vector<bool> seen(images.size() + 1, false);
  for (int v : images) {
    if (v < 1 || v > static_cast<int>(images.size()) || seen[v])
      throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
  return Permutation{std::move(images)};
}

int Composition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.n() != b.n()) throw std::invalid_argument("degree mismatch");
  Permutation r;
  r.images.resize(a.n());
  for (int i = 1; i <= a.n(); ++i) r.images[i - 1] = a(b(i));
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r;
  r.images.resize(p.n());
  for (int i = 1; i <= p.n(); ++i) r.images[p(i) - 1] = i;
  return r;
}

int length(const Permutation& p) {
  int inv = 0;
  for (int i = 0; i < p.n(); ++i)
    for (int j = i + 1; j < p.n(); ++j)
      if (p.images[i] > p.images[j]) ++inv;
  return inv;
}

std::vector<int> reduced_word(const Permutation& p) {
  // p * t_{j1} * ... * t_{jk} = id, hence p = t_{jk} ... t_{j1}.
  std::vector<int> a = p.images;
  std::vector<int> swaps;
  for (int v = p.n(); v >= 1; --v) {
    int pos = static_cast<int>(std::find(a.begin(), a.end(), v) - a.begin()) + 1;
    while (pos < v) {
      std::swap(a[pos - 1], a[pos]);
      swaps.push_back(pos);
      ++pos;
    }
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

Permutation word_to_permutation(const std::vector<int>& word, int n) {
  Permutation r = Permutation::identity(n);
  for (int i : word) {
    if (i < 1 || i >= n) throw std::invalid_argument("generator out of range");
    // r * t_i swaps positions i, i+1 of the one-line notation
    std::swap(r.images[i - 1], r.images[i]);
  }
  return r;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  Permutation p = Permutation::identity(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.images.begin(), p.images.end()));
  return out;
}

bool increasing_on_blocks(const Permutation& p, const Composition& c) {
  int start = 0;
  for (int k : c.parts) {
    for (int i = start + 1; i < start + k; ++i)
      if (p.images[i - 1] > p.images[i]) return false;
    start += k;
  }
  return true;
}

bool preserves_blocks(const Permutation& p, const Composition& c) {
  int start = 0;
  for (int k : c.parts) {
    for (int i = start; i < start + k; ++i)
      if (p.images[i] <= start || p.images[i] > start + k) return false;
    start += k;
  }
  return true;
}

std::vector<Permutation> enumerate_V(const Composition& c) {
  const int n = c.total();
  if (n < 1) throw std::invalid_argument("composition total must be >= 1");
  // Choose which values go to each block; within a block they are increasing.
  std::vector<int> label;
  for (std::size_t b = 0; b < c.parts.size(); ++b)
    for (int j = 0; j < c.parts[b]; ++j) label.push_back(static_cast<int>(b));
  // label sequence indexed by value: value v belongs to block label_perm[v-1]
  std::vector<int> lp = label;
  std::sort(lp.begin(), lp.end());
  std::vector<int> offsets(c.parts.size(), 0);
  for (std::size_t b = 1; b < c.parts.size(); ++b) offsets[b] = offsets[b - 1] + c.parts[b - 1];
  std::vector<Permutation> out;
  do {
    Permutation p;
    p.images.resize(n);
    std::vector<int> fill = offsets;
    for (int v = 1; v <= n; ++v) p.images[fill[lp[v - 1]]++] = v;
    out.push_back(std::move(p));
  } while (std::next_permutation(lp.begin(), lp.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

std::uint64_t multinomial(const Composition& c) {
  std::uint64_t r = 1;
  int acc = 0;
  for (int k : c.parts) {
    acc += k;
    r *= binomial(acc, k);
  }
  return r;
}

CosetSplit coset_decompose(const Permutation& p, const Composition& c) {
  if (p.n() != c.total()) throw std::invalid_argument("degree mismatch");
  Permutation rep = p;
  int start = 0;
  for (int k : c.parts) {
    std::sort(rep.images.begin() + start, rep.images.begin() + start + k);
    start += k;
  }
  return {rep, compose(inverse(rep), p)};
}

Permutation shuffle_sigma(int k, int l) {
  if (k < 0 || l < 0 || k + l < 1) throw std::invalid_argument("shuffle_sigma needs k+l >= 1");
  Permutation p;
  p.images.resize(k + l);
  for (int i = 1; i <= k + l; ++i) p.images[i - 1] = i <= k ? i + l : i - k;
  return p;
}

Permutation cross(const Permutation& a, const Permutation& b) {
  Permutation r;
  r.images = a.images;
  for (int v : b.images) r.images.push_back(v + a.n());
  return r;
}

Permutation reversal(int n) {
  Permutation p;
  p.images.resize(n);
  for (int i = 1; i <= n; ++i) p.images[i - 1] = n - i + 1;
  return p;
}

namespace {
Permutation cross3(int a, const Permutation& mid, int b) {
  return cross(cross(Permutation::identity(a), mid), Permutation::identity(b));
}
}  // namespace

std::vector<LemmaTerm> lemma_decompose(int n, int k, int m) {
  if (n < 1 || m < 1 || k < -n) throw std::invalid_argument("need n,m >= 1 and k >= -n");
  // the right factor V_{k+l,m-l} needs k + m >= 0
  if (k + m < 0) throw std::invalid_argument("need k >= -m");
  std::vector<LemmaTerm> out;
  for (int l = std::max(-k, 0); l <= std::min(n, m); ++l) {
    if (n - l < 0 || k + l < 0 || m - l < 0) throw std::invalid_argument("negative block");
    Permutation mid = (k + 2 * l == 0) ? Permutation{} : shuffle_sigma(k + l, l);
    Permutation shuffle = cross3(n - l, mid, m - l);
    auto v1 = n > 0 ? enumerate_V({{n - l, l}}) : std::vector<Permutation>{Permutation{}};
    std::vector<Permutation> v2 =
        (k + m > 0) ? enumerate_V({{k + l, m - l}}) : std::vector<Permutation>{Permutation{}};
    for (const auto& s1 : v1)
      for (const auto& s2 : v2) {
        Permutation blocks = cross(s1, s2);
        out.push_back({l, s1, s2, compose(blocks, shuffle)});
      }
  }
  return out;
}

LemmaCheck check_lemma(int n, int k, int m) {
  auto terms = lemma_decompose(n, k, m);
  Composition c{{n + k, m}};
  std::set<Permutation> seen;
  LemmaCheck r{true, true, true, terms.size(), 0};
  for (const auto& t : terms) {
    if (!seen.insert(t.assembled).second) r.disjoint = false;
    if (!increasing_on_blocks(t.assembled, c)) r.inside = false;
  }
  auto target = enumerate_V(c);
  r.expected = target.size();
  for (const auto& p : target)
    if (!seen.count(p)) r.covers = false;
  return r;
}

}  // namespace relgauss
