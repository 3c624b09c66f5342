#include "relgauss/amalgam.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace relgauss {

void validate(const AmalgamSpec& spec) {
  if (spec.P.num_blocks() != 1 || spec.P.dim(0) != 1)
    throw std::invalid_argument("amalgam: only P = C is supported");
  if (spec.factors.empty()) throw std::invalid_argument("amalgam: need at least one factor");
  for (const auto& f : spec.factors) {
    if (f.embedding != "unital_diagonal")
      throw std::invalid_argument("amalgam: unknown embedding '" + f.embedding + "'");
    double total = 0.0;
    for (const auto& b : f.algebra.blocks) total += b.dim * b.weight;
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("amalgam: embedding is not trace-preserving");
  }
}

AmalgamSpec dihedral_spec() {
  AmalgamSpec s;
  const TracialAlgebra CC({{1, 0.5}, {1, 0.5}});
  s.factors = {{CC, "unital_diagonal"}, {CC, "unital_diagonal"}};
  return s;
}

Vec AmalgamData::hat_A(int i, const Element& x) const {
  Vec v = Vec::Zero(H.full_dim());
  const auto& Mi = spec.factors[i].algebra;
  int off = 0;
  std::vector<int> offs(H.reduced_dim());
  for (int s = 0; s < H.reduced_dim(); ++s) {
    offs[s] = off;
    off += Ptilde.dim(H.lb[s]) * Ptilde.dim(H.rb[s]);
  }
  for (int t = 0; t < Mi.num_blocks(); ++t)
    for (int a = 0; a < Mi.dim(t); ++a)
      for (int b = 0; b < Mi.dim(t); ++b)
        v(offs[A(i, t, b)] + a) += std::sqrt(Mi.weight(t)) * x.blocks[t](a, b);
  return v;
}

Vec AmalgamData::hat_B(int i, const Element& x) const {
  Vec v = Vec::Zero(H.full_dim());
  const auto& Mi = spec.factors[i].algebra;
  int off = 0;
  std::vector<int> offs(H.reduced_dim());
  for (int s = 0; s < H.reduced_dim(); ++s) {
    offs[s] = off;
    off += Ptilde.dim(H.lb[s]) * Ptilde.dim(H.rb[s]);
  }
  for (int t = 0; t < Mi.num_blocks(); ++t)
    for (int a = 0; a < Mi.dim(t); ++a)
      for (int b = 0; b < Mi.dim(t); ++b)
        v(offs[B(i, t, a)] + b) += std::sqrt(Mi.weight(t)) * x.blocks[t](a, b);
  return v;
}

AmalgamData build_amalgam(const AmalgamSpec& spec) {
  validate(spec);
  AmalgamData d;
  d.spec = spec;
  const int k = static_cast<int>(spec.factors.size());
  d.c0 = 1.0 / (1 + k);
  d.c.assign(k, d.c0);

  std::vector<Block> blocks{{1, d.c0}};
  d.block.resize(k);
  for (int i = 0; i < k; ++i)
    for (const auto& b : spec.factors[i].algebra.blocks) {
      d.block[i].push_back(static_cast<int>(blocks.size()));
      blocks.push_back({b.dim, d.c[i] * b.weight});
    }
  d.Ptilde = TracialAlgebra(blocks);

  d.H.algebra = d.Ptilde;
  d.a_off.resize(k);
  d.b_off.resize(k);
  for (int i = 0; i < k; ++i) {
    const auto& Mi = spec.factors[i].algebra;
    for (int t = 0; t < Mi.num_blocks(); ++t) {
      d.a_off[i].push_back(d.H.reduced_dim());
      for (int b = 0; b < Mi.dim(t); ++b) {
        d.H.lb.push_back(d.block[i][t]);
        d.H.rb.push_back(0);
      }
    }
    for (int t = 0; t < Mi.num_blocks(); ++t) {
      d.b_off[i].push_back(d.H.reduced_dim());
      for (int a = 0; a < Mi.dim(t); ++a) {
        d.H.lb.push_back(0);
        d.H.rb.push_back(d.block[i][t]);
      }
    }
  }

  const int n = d.H.reduced_dim();
  d.J = Involution{d.H, Mat::Zero(n, n)};
  for (int i = 0; i < k; ++i) {
    const auto& Mi = spec.factors[i].algebra;
    for (int t = 0; t < Mi.num_blocks(); ++t)
      for (int a = 0; a < Mi.dim(t); ++a) {
        d.J.Jhat(d.B(i, t, a), d.A(i, t, a)) = 1.0;
        d.J.Jhat(d.A(i, t, a), d.B(i, t, a)) = 1.0;
      }
  }

  // F: all of L^2(M_i) (x)_P L^2(M_i) plus the line of 1 in L^2(M_i) (x)_{M_i} L^2(M_i).
  auto hb = std::make_shared<const Basis>(Basis{d.H.lb, d.H.rb});
  const Space HH(d.Ptilde, {hb, hb});
  std::vector<int> factor_of(n);
  for (int i = 0; i < k; ++i)
    for (int s = d.a_off[i][0]; s < (i + 1 < k ? d.a_off[i + 1][0] : n); ++s) factor_of[s] = i;
  Mat F = Mat::Zero(HH.size(), HH.size());
  for (int r = 0; r < HH.size(); ++r) {
    const int s = HH.tuple(r)[0], t = HH.tuple(r)[1];
    if (d.H.rb[s] == 0 && d.H.lb[s] != 0 && d.H.lb[t] == 0 && factor_of[s] == factor_of[t]) F(r, r) = 1.0;
  }
  for (int i = 0; i < k; ++i) {
    const auto& Mi = spec.factors[i].algebra;
    Vec l = Vec::Zero(HH.size());
    for (int t = 0; t < Mi.num_blocks(); ++t)
      for (int a = 0; a < Mi.dim(t); ++a) l(HH.index({d.B(i, t, a), d.A(i, t, a)})) = std::sqrt(Mi.weight(t));
    l.normalize();
    F += l * l.adjoint();
  }
  d.F = make_deformation("amalgam", d.H, F);
  if (!d.F.flags.is_projection || !d.F.flags.commuting_ok)
    throw std::logic_error("amalgam deformation failed its projection checks");
  return d;
}

void validate_word(const AmalgamSpec& spec, const ReducedWord& w, double tol) {
  const int k = static_cast<int>(spec.factors.size());
  for (std::size_t j = 0; j < w.letters.size(); ++j) {
    const auto& [i, x] = w.letters[j];
    if (i < 0 || i >= k) throw std::invalid_argument("reduced word: factor index out of range");
    const auto& Mi = spec.factors[i].algebra;
    if (static_cast<int>(x.blocks.size()) != Mi.num_blocks())
      throw std::invalid_argument("reduced word: letter does not belong to its factor");
    for (int t = 0; t < Mi.num_blocks(); ++t)
      if (x.blocks[t].rows() != Mi.dim(t) || x.blocks[t].cols() != Mi.dim(t))
        throw std::invalid_argument("reduced word: letter does not belong to its factor");
    if (j > 0 && w.letters[j - 1].first == i) throw std::invalid_argument("reduced word: consecutive letters share a factor");
    double scale = 1.0;
    for (const auto& b : x.blocks) scale = std::max(scale, b.cwiseAbs().maxCoeff());
    if (std::abs(trace(Mi, x)) > tol * scale) throw std::invalid_argument("reduced word: letter is not mean-zero");
  }
}

FreeProductL2::FreeProductL2(AmalgamSpec spec, int Nw) : spec_(std::move(spec)), Nw_(Nw) {
  validate(spec_);
  const int k = static_cast<int>(spec_.factors.size());
  for (int i = 0; i < k; ++i) {
    const auto& Mi = spec_.factors[i].algebra;
    const Vec one = coords(i, Element::one(Mi));
    Eigen::HouseholderQR<Mat> qr(one);
    const Mat Q = qr.householderQ() * Mat::Identity(one.size(), one.size());
    V_.push_back(Q.rightCols(one.size() - 1));
  }
  words_.push_back({});
  for (std::size_t begin = 0; begin < words_.size(); ++begin) {
    const auto w = words_[begin];
    if (static_cast<int>(w.size()) == Nw_) continue;
    for (int i = 0; i < k; ++i) {
      if (!w.empty() && w.back().first == i) continue;
      for (int c = 0; c < V_[i].cols(); ++c) {
        auto v = w;
        v.push_back({i, c});
        words_.push_back(v);
      }
    }
  }
  for (int j = 0; j < dim(); ++j) index_[words_[j]] = j;
}

int FreeProductL2::index(const std::vector<std::pair<int, int>>& w) const {
  const auto it = index_.find(w);
  return it == index_.end() ? -1 : it->second;
}

Vec FreeProductL2::coords(int i, const Element& x) const {
  const auto& Mi = spec_.factors[i].algebra;
  Vec v(Mi.num_units());
  for (int t = 0; t < Mi.num_blocks(); ++t)
    for (int a = 0; a < Mi.dim(t); ++a)
      for (int b = 0; b < Mi.dim(t); ++b) v(Mi.unit_index(t, a, b)) = std::sqrt(Mi.weight(t)) * x.blocks[t](a, b);
  return v;
}

Element FreeProductL2::basis_element(int i, int k) const {
  const auto& Mi = spec_.factors[i].algebra;
  Element x = Element::zero(Mi);
  for (int t = 0; t < Mi.num_blocks(); ++t)
    for (int a = 0; a < Mi.dim(t); ++a)
      for (int b = 0; b < Mi.dim(t); ++b) x.blocks[t](a, b) = V_[i](Mi.unit_index(t, a, b), k) / std::sqrt(Mi.weight(t));
  return x;
}

Mat FreeProductL2::left_mult(int i, const Element& x) const {
  const auto& Mi = spec_.factors[i].algebra;
  Mat L = Mat::Zero(dim(), dim());
  // z placed in front of an alternating tail that does not start in M_i
  auto put = [&](int col, const Element& z, const std::vector<std::pair<int, int>>& tail) {
    L(index(tail), col) += trace(Mi, z);
    if (static_cast<int>(tail.size()) == Nw_) return;
    const Vec c = V_[i].adjoint() * coords(i, z);
    for (int k = 0; k < c.size(); ++k) {
      auto v = tail;
      v.insert(v.begin(), {i, k});
      L(index(v), col) += c(k);
    }
  };
  for (int col = 0; col < dim(); ++col) {
    const auto& w = words_[col];
    if (w.empty() || w.front().first != i) {
      put(col, x, w);
    } else {
      const std::vector<std::pair<int, int>> tail(w.begin() + 1, w.end());
      put(col, x * basis_element(i, w.front().second), tail);
    }
  }
  return L;
}

Mat FreeProductL2::word_mult(const ReducedWord& w) const {
  Mat L = Mat::Identity(dim(), dim());
  for (const auto& [i, x] : w.letters) L = L * left_mult(i, x);
  return L;
}

Vec FreeProductL2::word_vector(const ReducedWord& w) const {
  validate_word(spec_, w);
  if (w.length() > Nw_) throw std::out_of_range("word longer than the truncation");
  Vec v = Vec::Zero(dim());
  std::vector<Vec> cs;
  for (const auto& [i, x] : w.letters) cs.push_back(V_[i].adjoint() * coords(i, x));
  std::vector<std::pair<int, int>> cur;
  std::function<void(int, cd)> rec = [&](int j, cd amp) {
    if (j == w.length()) {
      v(index(cur)) += amp;
      return;
    }
    for (int k = 0; k < cs[j].size(); ++k) {
      cur.push_back({w.letters[j].first, k});
      rec(j + 1, amp * cs[j](k));
      cur.pop_back();
    }
  };
  rec(0, 1.0);
  return v;
}

double window_norm(const Mat& A, const std::vector<int>& cols) {
  Mat B(A.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) B.col(j) = A.col(cols[j]);
  return cols.empty() ? 0.0 : spectral_norm(B);
}

AmalgamModel::AmalgamModel(const AmalgamSpec& spec, int Nw, double tol) : Nw_(Nw), data_(build_amalgam(spec)) {
  if (Nw < 0) throw std::invalid_argument("word truncation must be >= 0");
  fock_ = std::make_unique<TruncatedFock>(data_.F, 2 * Nw, tol);
  wick_ = std::make_unique<WickCalculus>(*fock_, data_.J);
  l2_ = std::make_unique<FreeProductL2>(spec, Nw);

  // U^-1 (g_1 (x) ... (x) g_n) has raw coefficient prod_j V_{i_j}(unit(t_j, a_j, b_j), k_j)
  // on the tuple (B(i_1, t_1, a_1), A(i_1, t_1, b_1), ...).
  const TruncatedFock& F = *fock_;
  U_ = Mat::Zero(F.full_dim(), l2_->dim());
  for (int col = 0; col < l2_->dim(); ++col) {
    const auto& w = l2_->word(col);
    const int n = static_cast<int>(w.size());
    const Space& R = F.raw(2 * n);
    Vec raw = Vec::Zero(R.full_dim());
    std::vector<int> tuple;
    std::function<void(int, cd)> rec = [&](int j, cd amp) {
      if (j == n) {
        const int r = R.index(tuple);
        if (r < 0) throw std::logic_error("corner tuple missing from the raw level");
        raw(R.full_index(r, 0, 0)) += amp;
        return;
      }
      const auto [i, k] = w[j];
      const auto& Mi = data_.spec.factors[i].algebra;
      for (int t = 0; t < Mi.num_blocks(); ++t)
        for (int a = 0; a < Mi.dim(t); ++a)
          for (int b = 0; b < Mi.dim(t); ++b) {
            const cd c = l2_->complement(i)(Mi.unit_index(t, a, b), k);
            if (c == 0.0) continue;
            tuple.push_back(data_.B(i, t, a));
            tuple.push_back(data_.A(i, t, b));
            rec(j + 1, amp * c);
            tuple.resize(tuple.size() - 2);
          }
    };
    if (n == 0) {
      raw(R.full_index(0, 0, 0)) = 1.0;  // block 0 of P~ is P
    } else {
      rec(0, 1.0);
    }
    U_.col(col) = F.embed(2 * n, F.from_raw(2 * n, raw));
  }
}

double AmalgamModel::unitarity_defect() const {
  return (U_.adjoint() * U_ - Mat::Identity(U_.cols(), U_.cols())).norm();
}

std::vector<int> AmalgamModel::window(int n) const {
  std::vector<int> cols;
  for (int j = 0; j < l2_->dim(); ++j)
    if (static_cast<int>(l2_->word(j).size()) + n <= Nw_) cols.push_back(j);
  return cols;
}

FockOperator AmalgamModel::word_operator(const ReducedWord& w) const {
  validate_word(data_.spec, w);
  const int n = w.length();
  if (n > Nw_) throw std::out_of_range("word longer than the truncation");
  const Vec xi = std::sqrt(data_.c0) * fock_->extract(2 * n, U_ * l2_->word_vector(w));
  return wick_->word(2 * n, xi).op;
}

Mat AmalgamModel::compress(const FockOperator& A) const { return U_.adjoint() * fock_->full_matrix(A.mat) * U_; }

double AmalgamModel::word_defect(const ReducedWord& w) const {
  return window_norm(compress(word_operator(w)) - l2_->word_mult(w), window(w.length()));
}

PsiMultiplierReport AmalgamModel::psi_multiplier(const RadialFunction& psi, const ReducedWord& w, int N_dec,
                                                 double tol) const {
  const auto cp = class_norm(psi, NormClass::Cprime, N_dec, tol);
  if (!cp.converged) throw std::domain_error("psi is not certified in class C' at this truncation");
  const RadialFunction lifted = even_lift(psi);
  const auto cl = class_norm(lifted, NormClass::C, N_dec, tol);
  if (!cl.converged) throw std::domain_error("even lift is not certified in class C at this truncation");
  const auto dec = rank_one_decompose(lifted, N_dec, tol);
  const FockOperator W = word_operator(w);
  const RadialCalculus R(*fock_);
  PsiMultiplierReport rep;
  rep.op = R.phi_decomposed(dec, cl.asym.c_plus, cl.asym.c_minus, W);
  rep.corner = compress(rep.op);
  rep.bound = cp.norm;
  rep.defect = window_norm(rep.corner - psi(w.length()) * compress(W), window(w.length()));
  return rep;
}

}  // namespace relgauss
