#include "relgauss/space.hpp"

#include <cmath>
#include <stdexcept>

namespace relgauss {

Space::Space(const TracialAlgebra& M, std::vector<BasisPtr> atoms) : M_(M), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("Space needs at least one atom");
  std::vector<int> cur;
  // depth-first enumeration gives lexicographic order
  auto rec = [&](auto&& self, int depth, int need) -> void {
    if (depth == static_cast<int>(atoms_.size())) {
      tuples_.push_back(cur);
      return;
    }
    const Basis& B = *atoms_[depth];
    for (int s = 0; s < B.size(); ++s) {
      if (depth > 0 && B.lb[s] != need) continue;
      cur.push_back(s);
      self(self, depth + 1, B.rb[s]);
      cur.pop_back();
    }
  };
  rec(rec, 0, -1);
  for (std::size_t r = 0; r < tuples_.size(); ++r) {
    const auto& t = tuples_[r];
    index_[t] = static_cast<int>(r);
    lb_.push_back(atoms_.front()->lb[t.front()]);
    rb_.push_back(atoms_.back()->rb[t.back()]);
    half_off_.push_back(half_dim_);
    full_off_.push_back(full_dim_);
    half_dim_ += M_.dim(lb_.back());
    full_dim_ += M_.dim(lb_.back()) * M_.dim(rb_.back());
  }
}

int Space::index(const std::vector<int>& t) const {
  auto it = index_.find(t);
  return it == index_.end() ? -1 : it->second;
}

Mat kron(const Space& dom, const Space& cod, const std::vector<Factor>& factors) {
  int da = 0, ca = 0;
  for (const auto& f : factors) {
    da += f.dom->atoms();
    ca += (f.mat ? f.cod : f.dom)->atoms();
  }
  if (da != dom.atoms() || ca != cod.atoms()) throw std::invalid_argument("kron: atom count mismatch");
  Mat R = Mat::Zero(cod.size(), dom.size());
  const int k = static_cast<int>(factors.size());
  std::vector<std::vector<std::pair<std::vector<int>, cd>>> cols(k);
  for (int c = 0; c < dom.size(); ++c) {
    const auto& t = dom.tuple(c);
    int off = 0;
    for (int j = 0; j < k; ++j) {
      const auto& f = factors[j];
      const int na = f.dom->atoms();
      std::vector<int> sub(t.begin() + off, t.begin() + off + na);
      off += na;
      cols[j].clear();
      if (!f.mat) {
        cols[j].push_back({sub, 1.0});
        continue;
      }
      const int x = f.dom->index(sub);
      for (int y = 0; y < f.cod->size(); ++y) {
        const cd v = (*f.mat)(y, x);
        if (v != 0.0) cols[j].push_back({f.cod->tuple(y), v});
      }
    }
    // cartesian product of the factor columns
    std::vector<int> pick(k, 0);
    bool empty = false;
    for (int j = 0; j < k; ++j)
      if (cols[j].empty()) empty = true;
    if (empty) continue;
    while (true) {
      std::vector<int> out;
      cd coef = 1.0;
      for (int j = 0; j < k; ++j) {
        const auto& [sub, v] = cols[j][pick[j]];
        out.insert(out.end(), sub.begin(), sub.end());
        coef *= v;
      }
      const int r = cod.index(out);
      if (r >= 0)
        R(r, c) += coef;
      else if (std::abs(coef) > 1e-12)
        throw std::logic_error("kron: factor breaks label matching");
      int j = k - 1;
      while (j >= 0 && ++pick[j] == static_cast<int>(cols[j].size())) pick[j--] = 0;
      if (j < 0) break;
    }
  }
  return R;
}

Mat tensor_half(const Mat& T, const Space& x_dom, const Space& x_cod, const Space& dom,
                const Space& cod) {
  const int nx = x_dom.atoms();
  Mat R = Mat::Zero(cod.half_dim(), dom.half_dim());
  for (int c = 0; c < dom.size(); ++c) {
    const auto& t = dom.tuple(c);
    std::vector<int> x(t.begin(), t.begin() + nx), z(t.begin() + nx, t.end());
    const int xi = x_dom.index(x);
    for (int y = 0; y < x_cod.size(); ++y) {
      std::vector<int> out = x_cod.tuple(y);
      out.insert(out.end(), z.begin(), z.end());
      const int r = cod.index(out);
      if (r < 0) continue;  // rb(y) != lb(z): T has no entries here
      for (int a = 0; a < dom.dl(c); ++a)
        for (int a2 = 0; a2 < cod.dl(r); ++a2)
          R(cod.half_index(r, a2), dom.half_index(c, a)) = T(x_cod.half_index(y, a2), x_dom.half_index(xi, a));
    }
  }
  return R;
}

Mat half_of(const Mat& B, const Space& dom, const Space& cod) {
  Mat R = Mat::Zero(cod.half_dim(), dom.half_dim());
  for (int c = 0; c < dom.size(); ++c)
    for (int r = 0; r < cod.size(); ++r) {
      if (B(r, c) == 0.0) continue;
      for (int a = 0; a < dom.dl(c); ++a) R(cod.half_index(r, a), dom.half_index(c, a)) = B(r, c);
    }
  return R;
}

Mat full_of_half(const Mat& T, const Space& dom, const Space& cod) {
  Mat R = Mat::Zero(cod.full_dim(), dom.full_dim());
  for (int c = 0; c < dom.size(); ++c)
    for (int r = 0; r < cod.size(); ++r) {
      if (cod.rb(r) != dom.rb(c)) continue;
      for (int a = 0; a < dom.dl(c); ++a)
        for (int a2 = 0; a2 < cod.dl(r); ++a2) {
          const cd v = T(cod.half_index(r, a2), dom.half_index(c, a));
          if (v == 0.0) continue;
          for (int e = 0; e < dom.dr(c); ++e) R(cod.full_index(r, a2, e), dom.full_index(c, a, e)) = v;
        }
    }
  return R;
}

Mat full_of(const Mat& B, const Space& dom, const Space& cod) {
  return full_of_half(half_of(B, dom, cod), dom, cod);
}

Mat half_of_full(const Mat& A, const Space& dom, const Space& cod) {
  Mat R = Mat::Zero(cod.half_dim(), dom.half_dim());
  for (int c = 0; c < dom.size(); ++c)
    for (int r = 0; r < cod.size(); ++r) {
      if (cod.rb(r) != dom.rb(c)) continue;
      for (int a = 0; a < dom.dl(c); ++a)
        for (int a2 = 0; a2 < cod.dl(r); ++a2)
          R(cod.half_index(r, a2), dom.half_index(c, a)) = A(cod.full_index(r, a2, 0), dom.full_index(c, a, 0));
    }
  return R;
}

double sector_defect(const Mat& B, const Space& dom, const Space& cod) {
  double d = 0.0;
  for (int c = 0; c < dom.size(); ++c)
    for (int r = 0; r < cod.size(); ++r)
      if (cod.lb(r) != dom.lb(c) || cod.rb(r) != dom.rb(c)) d = std::max(d, std::abs(B(r, c)));
  return d;
}

double right_modular_defect(const Mat& T, const Space& dom, const Space& cod) {
  double d = 0.0;
  for (int c = 0; c < dom.size(); ++c)
    for (int r = 0; r < cod.size(); ++r) {
      if (cod.rb(r) == dom.rb(c)) continue;
      for (int a = 0; a < dom.dl(c); ++a)
        for (int a2 = 0; a2 < cod.dl(r); ++a2)
          d = std::max(d, std::abs(T(cod.half_index(r, a2), dom.half_index(c, a))));
    }
  return d;
}

}  // namespace relgauss
