#pragma once

#include <cstdint>
#include <vector>

namespace relgauss {

// One-line notation: images[i-1] = sigma(i), values in 1..n.
// Products compose as maps: (a*b)(i) = a(b(i)).
struct Permutation {
  std::vector<int> images;

  int n() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[i - 1]; }
  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

  static Permutation identity(int n);
  static Permutation from_images(std::vector<int> images);  // validates bijection
};

// Consecutive-block composition k_1,...,k_s; zero parts are empty blocks.
struct Composition {
  std::vector<int> parts;
  int total() const;
};

Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);

int length(const Permutation& p);

// Word [i1,...,ik] with p = t_{i1} t_{i2} ... t_{ik}, t_i swapping i and i+1.
// Canonical: bubble the largest misplaced value to the right.
std::vector<int> reduced_word(const Permutation& p);
Permutation word_to_permutation(const std::vector<int>& word, int n);

std::vector<Permutation> all_permutations(int n);

bool increasing_on_blocks(const Permutation& p, const Composition& c);
bool preserves_blocks(const Permutation& p, const Composition& c);
std::vector<Permutation> enumerate_V(const Composition& c);
std::uint64_t multinomial(const Composition& c);
std::uint64_t binomial(int n, int k);

struct CosetSplit {
  Permutation coset_rep;  // in V_c
  Permutation block;      // block-preserving
};
CosetSplit coset_decompose(const Permutation& p, const Composition& c);

// sigma_{k,l}(i) = i+l for i<=k, i-k otherwise.
Permutation shuffle_sigma(int k, int l);
Permutation cross(const Permutation& a, const Permutation& b);
Permutation reversal(int n);

struct LemmaTerm {
  int l;
  Permutation s1;
  Permutation s2;
  Permutation assembled;
};

// Enumerates the right-hand side of the shuffle decomposition of V_{n+k,m}.
// Throws std::invalid_argument when a block size is negative.
std::vector<LemmaTerm> lemma_decompose(int n, int k, int m);

struct LemmaCheck {
  bool disjoint;   // no element produced twice
  bool inside;     // every element lies in V_{n+k,m}
  bool covers;     // every element of V_{n+k,m} is produced
  std::size_t produced;
  std::size_t expected;
  bool ok() const { return disjoint && inside && covers; }
};
LemmaCheck check_lemma(int n, int k, int m);

}  // namespace relgauss
