#include "relgauss/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace relgauss {

double spectral_norm(const Mat& A) {
  if (A.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(A);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

namespace {
BasisPtr basis_of(const StdBimodule& H) { return std::make_shared<const Basis>(Basis{H.lb, H.rb}); }

BasisPtr l2_basis(const TracialAlgebra& M) {
  Basis B;
  for (int i = 0; i < M.num_blocks(); ++i) {
    B.lb.push_back(i);
    B.rb.push_back(i);
  }
  return std::make_shared<const Basis>(std::move(B));
}

Space power(const TracialAlgebra& M, const BasisPtr& b, int n) {
  return Space(M, std::vector<BasisPtr>(n, b));
}
}  // namespace

DeformationFlags analyse_deformation(const StdBimodule& H, const Mat& F, double tol) {
  const auto hb = basis_of(H);
  const Space hh = power(H.algebra, hb, 2), h1 = power(H.algebra, hb, 1), h3 = power(H.algebra, hb, 3);
  if (F.rows() != hh.size() || F.cols() != hh.size()) throw std::invalid_argument("deformation has wrong size");
  DeformationFlags f;
  f.self_adjoint_defect = (F - F.adjoint()).cwiseAbs().maxCoeff();
  f.bimodular_defect = sector_defect(F, hh, hh);
  f.norm = spectral_norm(F);
  f.projection_defect = spectral_norm(F * F - F);
  const Mat F1 = kron(h3, h3, {{&F, &hh, &hh}, {nullptr, &h1, nullptr}});
  const Mat F2 = kron(h3, h3, {{nullptr, &h1, nullptr}, {&F, &hh, &hh}});
  f.braid_defect = spectral_norm(F1 * F2 * F1 - F2 * F1 * F2);
  f.commuting_defect = spectral_norm(F1 * F2 - F2 * F1);
  const double t = std::max(tol, 1e-9);
  f.is_contraction = f.norm <= 1.0 + t;
  f.is_projection = f.projection_defect < t && f.self_adjoint_defect < t;
  f.braid_ok = f.braid_defect < t;
  f.commuting_ok = f.commuting_defect < t;
  return f;
}

Deformation make_deformation(std::string kind, const StdBimodule& H, Mat F, double tol) {
  Deformation d{std::move(kind), H, std::move(F), {}};
  d.flags = analyse_deformation(H, d.F, tol);
  const double t = std::max(tol, 1e-9);
  if (d.flags.self_adjoint_defect > t) throw std::invalid_argument("deformation is not self-adjoint");
  if (d.flags.bimodular_defect > t) throw std::invalid_argument("deformation is not bimodular");
  if (!d.flags.is_contraction) throw std::invalid_argument("deformation is not a contraction");
  if (!d.flags.braid_ok) throw std::invalid_argument("deformation violates the braid relation");
  return d;
}

Deformation zero_deformation(const StdBimodule& H) {
  const auto hb = basis_of(H);
  const int n = power(H.algebra, hb, 2).size();
  return make_deformation("zero", H, Mat::Zero(n, n));
}

namespace {
StdBimodule scalar_module(int dim) {
  StdBimodule H;
  H.algebra = TracialAlgebra::scalars();
  H.lb.assign(dim, 0);
  H.rb.assign(dim, 0);
  return H;
}
}  // namespace

Deformation q_flip(int dim, double q) {
  if (dim < 1) throw std::invalid_argument("q_flip needs dim >= 1");
  StdBimodule H = scalar_module(dim);
  Mat F = Mat::Zero(dim * dim, dim * dim);
  for (int u = 0; u < dim; ++u)
    for (int v = 0; v < dim; ++v) F(v * dim + u, u * dim + v) = -q;
  return make_deformation("q_flip", H, F);
}

Deformation diagonal_projection(int dim, const std::vector<int>& letters) {
  StdBimodule H = scalar_module(dim);
  Mat F = Mat::Zero(dim * dim, dim * dim);
  for (int u : letters) {
    if (u < 0 || u >= dim) throw std::invalid_argument("letter out of range");
    F(u * dim + u, u * dim + u) = 1.0;
  }
  return make_deformation("diagonal_projection", H, F);
}

TruncatedFock::TruncatedFock(Deformation def, int N, double tol) : def_(std::move(def)), N_(N), tol_(tol) {
  if (N < 0) throw std::invalid_argument("truncation must be >= 0");
  const auto& M = algebra();
  hbasis_ = basis_of(def_.H);
  hh_ = power(M, hbasis_, 2);
  if (def_.F.rows() != hh_.size()) throw std::invalid_argument("deformation does not match H");
  const BasisPtr b0 = l2_basis(M);
  for (int n = 0; n <= N; ++n) {
    raw_.push_back(n == 0 ? Space(M, {b0}) : power(M, hbasis_, n));
    const Space& R = raw_.back();
    const int dim = R.size();
    if (n <= 1) {
      D_.push_back(Mat::Identity(dim, dim));
      Q_.push_back(Mat::Identity(dim, dim));
      Qplus_.push_back(Mat::Identity(dim, dim));
      min_eig_.push_back(1.0);
      level_basis_.push_back(n == 0 ? b0 : hbasis_);
      level_.push_back(Space(M, {level_basis_.back()}));
      continue;
    }
    const Mat Dprev1 = kron(R, R, {{&D_[n - 1], &raw_[n - 1], &raw_[n - 1]}, {nullptr, &raw_[1], nullptr}});
    Mat Dn = shuffle_sum(n - 1, 1) * Dprev1;
    Dn = (Dn + Dn.adjoint()) / 2.0;
    D_.push_back(Dn);

    std::map<std::pair<int, int>, std::vector<int>> sectors;
    for (int r = 0; r < dim; ++r) sectors[{R.lb(r), R.rb(r)}].push_back(r);
    struct Kept {
      int lb, rb;
      double lambda;
      Vec v;
      std::vector<int> idx;
    };
    std::vector<Kept> kept;
    double lo = 1e300, hi = 0.0;
    std::vector<std::pair<std::pair<int, int>, Eigen::SelfAdjointEigenSolver<Mat>>> solved;
    for (const auto& [key, idx] : sectors) {
      Mat sub(idx.size(), idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = Dn(idx[i], idx[j]);
      Eigen::SelfAdjointEigenSolver<Mat> es(sub);
      lo = std::min(lo, es.eigenvalues().minCoeff());
      hi = std::max(hi, es.eigenvalues().maxCoeff());
      solved.push_back({key, es});
    }
    min_eig_.push_back(lo);
    if (lo < -tol_)
      throw std::runtime_error("D^(" + std::to_string(n) + ") has eigenvalue " + std::to_string(lo) +
                               " below -tol: F is not a valid deformation");
    const bool is_identity = (Dn - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-14;
    if (is_identity) {
      Q_.push_back(Mat::Identity(dim, dim));
      Qplus_.push_back(Mat::Identity(dim, dim));
      level_basis_.push_back(std::make_shared<const Basis>(R.as_basis()));
      level_.push_back(Space(M, {level_basis_.back()}));
      continue;
    }
    const double keep = 1e-9 * std::max(1.0, hi);
    std::size_t si = 0;
    for (const auto& [key, idx] : sectors) {
      const auto& es = solved[si++].second;
      for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k)
        if (es.eigenvalues()(k) > keep) kept.push_back({key.first, key.second, es.eigenvalues()(k), es.eigenvectors().col(k), idx});
    }
    Basis B;
    Mat Qn = Mat::Zero(kept.size(), dim), Qp = Mat::Zero(dim, kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r) {
      B.lb.push_back(kept[r].lb);
      B.rb.push_back(kept[r].rb);
      const double s = std::sqrt(kept[r].lambda);
      for (std::size_t i = 0; i < kept[r].idx.size(); ++i) {
        Qn(r, kept[r].idx[i]) = s * std::conj(kept[r].v(i));
        Qp(kept[r].idx[i], r) = kept[r].v(i) / s;
      }
    }
    Q_.push_back(Qn);
    Qplus_.push_back(Qp);
    level_basis_.push_back(std::make_shared<const Basis>(std::move(B)));
    level_.push_back(Space(M, {level_basis_.back()}));
  }
  for (int n = 0; n <= N; ++n) {
    half_off_.push_back(half_dim_);
    full_off_.push_back(full_dim_);
    half_dim_ += level_[n].half_dim();
    full_dim_ += level_[n].full_dim();
  }
}

Space TruncatedFock::levels(const std::vector<int>& ns) const {
  std::vector<BasisPtr> atoms;
  for (int n : ns) atoms.push_back(level_basis_.at(n));
  return Space(algebra(), atoms);
}

const Space& TruncatedFock::pair(int n, int m) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = pair_cache_.find({n, m});
  if (it != pair_cache_.end()) return it->second;
  return pair_cache_.emplace(std::make_pair(n, m), levels({n, m})).first->second;
}

const Mat& TruncatedFock::I(int n, int m) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = I_cache_.find({n, m});
  if (it != I_cache_.end()) return it->second;
  if (n + m > N_) throw std::out_of_range("I_{n,m} beyond the truncation");
  const Space& P = pair(n, m);
  const Space& L = level(n + m);
  Mat R;
  if (n == 0 || m == 0) {
    R = Mat::Zero(L.size(), P.size());
    for (int c = 0; c < P.size(); ++c) R(P.tuple(c)[n == 0 ? 1 : 0], c) = 1.0;
  } else {
    const Mat lift = kron(P, raw(n + m), {{&Qplus_[n], &level(n), &raw(n)}, {&Qplus_[m], &level(m), &raw(m)}});
    R = Q_[n + m] * lift;
  }
  return I_cache_.emplace(std::make_pair(n, m), std::move(R)).first->second;
}

const Mat& TruncatedFock::Fnm(int n, int m) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = F_cache_.find({n, m});
  if (it != F_cache_.end()) return it->second;
  if (n + m > N_) throw std::out_of_range("F_{n,m} beyond the truncation");
  const Space& P = pair(n, m);
  const Space& P2 = pair(m, n);
  Mat R = Mat::Zero(P2.size(), P.size());
  if (n == 0 || m == 0) {
    for (int c = 0; c < P.size(); ++c) {
      const auto& t = P.tuple(c);
      const int r = n == 0 ? t[1] : t[0];
      const auto& L = level(n == 0 ? m : n);
      std::vector<int> out = n == 0 ? std::vector<int>{r, L.rb(r)} : std::vector<int>{L.lb(r), r};
      R(P2.index(out), c) = 1.0;
    }
  } else {
    const Mat lift = kron(P, raw(n + m), {{&Qplus_[n], &level(n), &raw(n)}, {&Qplus_[m], &level(m), &raw(m)}});
    const Mat proj = kron(raw(n + m), P2, {{&Q_[m], &raw(m), &level(m)}, {&Q_[n], &raw(n), &level(n)}});
    R = proj * f_sigma(n + m, shuffle_sigma(n, m)) * lift;
  }
  return F_cache_.emplace(std::make_pair(n, m), std::move(R)).first->second;
}

Mat TruncatedFock::leg(int n, int i) const {
  if (i < 1 || i >= n) throw std::out_of_range("leg index");
  std::vector<Factor> fs;
  if (i > 1) fs.push_back({nullptr, &raw_.at(i - 1), nullptr});
  fs.push_back({&def_.F, &hh_, &hh_});
  if (n - i - 1 > 0) fs.push_back({nullptr, &raw_.at(n - i - 1), nullptr});
  return kron(raw_.at(n), raw_.at(n), fs);
}

Mat TruncatedFock::f_word(int n, const std::vector<int>& word) const {
  const int dim = raw_.at(n).size();
  Mat R = Mat::Identity(dim, dim);
  std::map<int, Mat> legs;
  for (int i : word) {
    auto it = legs.find(i);
    if (it == legs.end()) it = legs.emplace(i, -leg(n, i)).first;
    R = R * it->second;
  }
  return R;
}

Mat TruncatedFock::f_sigma(int n, const Permutation& s) const {
  if (s.n() != n && !(n == 0 && s.n() == 0)) throw std::invalid_argument("f_sigma: degree mismatch");
  return f_word(n, reduced_word(s));
}

Mat TruncatedFock::d_brute(int n) const {
  const int dim = raw_.at(n).size();
  if (n <= 1) return Mat::Identity(dim, dim);
  std::map<int, Mat> legs;
  for (int i = 1; i < n; ++i) legs.emplace(i, -leg(n, i));
  Mat D = Mat::Zero(dim, dim);
  for (const auto& s : all_permutations(n)) {
    Mat R = Mat::Identity(dim, dim);
    for (int i : reduced_word(s)) R = R * legs.at(i);
    D += R;
  }
  return D;
}

Mat TruncatedFock::shuffle_sum(int n, int m) const {
  const int dim = raw_.at(n + m).size();
  if (n == 0 || m == 0) return Mat::Identity(dim, dim);
  Mat E = Mat::Zero(dim, dim);
  for (const auto& s : enumerate_V({{n, m}})) E += f_sigma(n + m, s);
  return E;
}

Mat TruncatedFock::block(const Mat& A, int p, int q) const {
  return A.block(half_off_.at(p), half_off_.at(q), level_.at(p).half_dim(), level_.at(q).half_dim());
}

void TruncatedFock::set_block(Mat& A, int p, int q, const Mat& B) const {
  A.block(half_off_.at(p), half_off_.at(q), level_.at(p).half_dim(), level_.at(q).half_dim()) = B;
}

Mat TruncatedFock::full_matrix(const Mat& half) const {
  Mat R = Mat::Zero(full_dim_, full_dim_);
  for (int p = 0; p <= N_; ++p)
    for (int q = 0; q <= N_; ++q) {
      const Mat b = block(half, p, q);
      if (b.size() == 0 || b.cwiseAbs().maxCoeff() == 0.0) continue;
      R.block(full_off_[p], full_off_[q], level_[p].full_dim(), level_[q].full_dim()) =
          full_of_half(b, level_[q], level_[p]);
    }
  return R;
}

Mat TruncatedFock::half_matrix(const Mat& full) const {
  Mat R = Mat::Zero(half_dim_, half_dim_);
  for (int p = 0; p <= N_; ++p)
    for (int q = 0; q <= N_; ++q) {
      const Mat b = full.block(full_off_[p], full_off_[q], level_[p].full_dim(), level_[q].full_dim());
      set_block(R, p, q, half_of_full(b, level_[q], level_[p]));
    }
  return R;
}

Vec TruncatedFock::vacuum() const {
  Vec v = Vec::Zero(full_dim_);
  const Space& L0 = level_[0];
  for (int r = 0; r < L0.size(); ++r)
    for (int a = 0; a < L0.dl(r); ++a) v(full_off_[0] + L0.full_index(r, a, a)) = std::sqrt(algebra().weight(L0.lb(r)));
  return v;
}

Vec TruncatedFock::embed(int n, const Vec& x) const {
  Vec v = Vec::Zero(full_dim_);
  v.segment(full_off_.at(n), level_.at(n).full_dim()) = x;
  return v;
}

Vec TruncatedFock::extract(int n, const Vec& v) const {
  return v.segment(full_off_.at(n), level_.at(n).full_dim());
}

Vec TruncatedFock::from_raw(int n, const Vec& raw_full) const {
  return full_of(Q_.at(n), raw_.at(n), level_.at(n)) * raw_full;
}

Vec TruncatedFock::tensor(int n, const Vec& xi, int m, const Vec& eta) const {
  const Space& P = pair(n, m);
  const Space& A = level(n);
  const Space& B = level(m);
  Vec pv = Vec::Zero(P.full_dim());
  for (int p = 0; p < P.size(); ++p) {
    const int r = P.tuple(p)[0], t = P.tuple(p)[1];
    const double w = algebra().weight(A.rb(r));
    for (int a = 0; a < P.dl(p); ++a)
      for (int e = 0; e < P.dr(p); ++e) {
        cd s = 0.0;
        for (int c = 0; c < A.dr(r); ++c) s += xi(A.full_index(r, a, c)) * eta(B.full_index(t, c, e));
        pv(P.full_index(p, a, e)) = s / std::sqrt(w);
      }
  }
  return full_of(I(n, m), P, level(n + m)) * pv;
}

Vec TruncatedFock::apply(const FockOperator& A, const Vec& v) const { return full_matrix(A.mat) * v; }

FockOperator TruncatedFock::creation(const Mat& T, int n, int m) const {
  if (n < 0 || m < 0 || n > N_ || m > N_) throw std::out_of_range("creation degree beyond truncation");
  const Space& X = level(n);
  const Space& Y = level(m);
  if (T.rows() != Y.half_dim() || T.cols() != X.half_dim()) throw std::invalid_argument("creation: T has wrong shape");
  if (right_modular_defect(T, X, Y) > 1e-10) throw std::invalid_argument("creation: T is not right-modular");
  FockOperator L;
  L.mat = Mat::Zero(half_dim_, half_dim_);
  L.n_in = n;
  L.n_out = m;
  for (int k = 0; n + k <= N_ && m + k <= N_; ++k) {
    const Space& Pn = pair(n, k);
    const Space& Pm = pair(m, k);
    const Mat Im = half_of(I(m, k), Pm, level(m + k));
    const Mat In = half_of(I(n, k), Pn, level(n + k));
    set_block(L.mat, m + k, n + k, Im * tensor_half(T, X, Y, Pn, Pm) * In.adjoint());
  }
  return L;
}

Mat TruncatedFock::ket(int n, const Vec& xi) const {
  const Space& L = level(n);
  const Space& L0 = level(0);
  if (xi.size() != L.full_dim()) throw std::invalid_argument("ket: vector has wrong size");
  Mat R = Mat::Zero(L.half_dim(), L0.half_dim());
  for (int s = 0; s < L.size(); ++s) {
    const int i = L.rb(s);
    const double w = algebra().weight(i);
    for (int a2 = 0; a2 < L.dl(s); ++a2)
      for (int a = 0; a < L.dr(s); ++a) R(L.half_index(s, a2), L0.half_index(i, a)) = xi(L.full_index(s, a2, a)) / std::sqrt(w);
  }
  return R;
}

FockOperator TruncatedFock::radial(const std::vector<cd>& x) const {
  FockOperator R;
  R.mat = Mat::Zero(half_dim_, half_dim_);
  for (int n = 0; n <= N_ && n < static_cast<int>(x.size()); ++n) {
    const int d = level_[n].half_dim();
    set_block(R.mat, n, n, x[n] * Mat::Identity(d, d));
  }
  return R;
}

FockOperator TruncatedFock::identity() const {
  return FockOperator{Mat::Identity(half_dim_, half_dim_), 0, 0};
}

Mat TruncatedFock::prodL_term(const Mat& S, int n1, int m1, const Mat& T, int n2, int m2, int k) const {
  if (k < 0 || k > std::min(n1, m2)) throw std::out_of_range("prodL term index");
  const int a = m2 - k, b = n1 - k;
  if (n2 + b > N_ || m1 + a > N_ || m2 + b > N_ || n1 + a > N_)
    throw std::out_of_range("prodL term beyond the truncation");
  const Space& P1 = pair(n2, b);
  const Space& P2 = pair(m2, b);
  const Space T3 = levels({k, a, b});
  const Space T4 = levels({k, b, a});
  const Space& P5 = pair(n1, a);
  const Space& P6 = pair(m1, a);
  const Mat Istar_ka = I(k, a).adjoint();
  const Mat step1 = half_of(I(n2, b), P1, level(n2 + b)).adjoint();
  const Mat step2 = tensor_half(T, level(n2), level(m2), P1, P2);
  const Mat step3 = half_of(kron(P2, T3, {{&Istar_ka, &level(m2), &pair(k, a)}, {nullptr, &level(b), nullptr}}), P2, T3);
  const Mat step4 = half_of(kron(T3, T4, {{nullptr, &level(k), nullptr}, {&Fnm(a, b), &pair(a, b), &pair(b, a)}}), T3, T4);
  const Mat step5 = half_of(kron(T4, P5, {{&I(k, b), &pair(k, b), &level(n1)}, {nullptr, &level(a), nullptr}}), T4, P5);
  const Mat step6 = tensor_half(S, level(n1), level(m1), P5, P6);
  const Mat step7 = half_of(I(m1, a), P6, level(m1 + a));
  return step7 * step6 * step5 * step4 * step3 * step2 * step1;
}

ProdLReport TruncatedFock::compose_check(const Mat& S, int n1, int m1, const Mat& T, int n2, int m2) const {
  ProdLReport rep;
  const Mat lhs = creation(S, n1, m1).mat * creation(T, n2, m2).mat;
  Mat rhs = Mat::Zero(half_dim_, half_dim_);
  for (int k = 0; k <= std::min(n1, m2); ++k) {
    rhs += creation(prodL_term(S, n1, m1, T, n2, m2, k), n2 + n1 - k, m1 + m2 - k).mat;
    ++rep.terms;
  }
  std::vector<int> cols;
  for (int l = 0; l <= N_; ++l) {
    const int mid = l - n2 + m2, out = mid - n1 + m1;
    if (mid > N_ || out > N_) continue;
    rep.window.push_back(l);
    for (int c = 0; c < level_[l].half_dim(); ++c) cols.push_back(half_off_[l] + c);
  }
  Mat diff(half_dim_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) diff.col(j) = lhs.col(cols[j]) - rhs.col(cols[j]);
  rep.defect = spectral_norm(diff);
  return rep;
}

}  // namespace relgauss
