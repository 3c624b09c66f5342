#include "relgauss/multiplier.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace relgauss {

Sequence alternating_sequence(int N) {
  Sequence z(N + 1);
  for (int n = 0; n <= N; ++n) z[n] = n % 2 ? -1.0 : 1.0;
  return z;
}

Sequence tail_indicator(int N, int k) {
  Sequence r(N + 1, 0.0);
  for (int n = std::max(k, 0); n <= N; ++n) r[n] = 1.0;
  return r;
}

Sequence shift(const Sequence& x, int n) {
  Sequence y(x.size() + n, 0.0);
  for (std::size_t p = 0; p < x.size(); ++p) y[p + n] = x[p];
  return y;
}

Sequence shift_adj(const Sequence& x, int n) {
  if (n >= static_cast<int>(x.size())) return {};
  return Sequence(x.begin() + n, x.end());
}

namespace {
cd at(const Sequence& x, int p) { return p >= 0 && p < static_cast<int>(x.size()) ? x[p] : cd(0.0); }

Sequence product(const Sequence& a, const Sequence& b) {
  Sequence c(std::max(a.size(), b.size()));
  for (std::size_t p = 0; p < c.size(); ++p) c[p] = at(a, p) * at(b, p);
  return c;
}

std::vector<double> suffix_norms(const Sequence& x) {
  std::vector<double> t(x.size() + 1, 0.0);
  for (int p = static_cast<int>(x.size()) - 1; p >= 0; --p) t[p] = t[p + 1] + std::norm(x[p]);
  for (auto& v : t) v = std::sqrt(v);
  return t;
}

double tail(const std::vector<double>& t, int p) { return p < static_cast<int>(t.size()) ? t[p] : 0.0; }

bool block_zero(const Mat& B) { return B.size() == 0 || B.cwiseAbs().maxCoeff() == 0.0; }
}  // namespace

FockOperator radial_mult(const TruncatedFock& F, const Sequence& x) { return F.radial(x); }

double radial_commutation_defect(const TruncatedFock& F, const Mat& T, int n, int m, const Sequence& x,
                                 const Sequence& y) {
  const auto L = F.creation(T, n, m);
  const Mat lhs = F.radial(x).mat * L.mat * F.radial(y).mat;
  const Mat rhs = L.mat * F.radial(product(y, shift(shift_adj(x, m), n))).mat;
  return spectral_norm(lhs - rhs);
}

RadialCalculus::RadialCalculus(const TruncatedFock& F) : F_(F) {
  const auto& f = F.deformation().flags;
  if (!f.is_projection) throw std::invalid_argument("rho needs F to be a projection (F^2 = F = F*)");
  if (!f.commuting_ok) throw std::invalid_argument("rho needs the legs F (x) 1 and 1 (x) F to commute");
  const auto& H = F.deformation().H;
  for (int u = 0; u < H.reduced_dim(); ++u)
    for (int e = 0; e < H.algebra.dim(H.rb[u]); ++e) frame_.push_back({u, e});
}

Mat RadialCalculus::right_creation(int i) const {
  const auto [u, e] = frame_.at(i);
  Mat R = Mat::Zero(F_.full_dim(), F_.full_dim());
  for (int n = 0; n < F_.N(); ++n) {
    const Space& L = F_.level(n);
    const Space& P = F_.pair(n, 1);
    Mat E = Mat::Zero(P.full_dim(), L.full_dim());
    for (int r = 0; r < L.size(); ++r) {
      const int p = P.index({r, u});
      if (p < 0) continue;
      for (int a = 0; a < L.dl(r); ++a) E(P.full_index(p, a, e), L.full_index(r, a, 0)) = 1.0;
    }
    const Mat I = full_of(F_.I(n, 1), P, F_.level(n + 1));
    R.block(F_.full_off(n + 1), F_.full_off(n), F_.level_dim(n + 1), F_.level_dim(n)) = I * E;
  }
  return R;
}

Mat RadialCalculus::rho_frame(const Mat& A) const {
  Mat out = Mat::Zero(A.rows(), A.cols());
  for (int i = 0; i < frame_size(); ++i) {
    const Mat R = right_creation(i);
    out += R * A * R.adjoint();
  }
  return out;
}

FockOperator RadialCalculus::rho(const FockOperator& A, int l) const {
  Mat cur = A.mat;
  for (int step = 0; step < l; ++step) {
    Mat next = Mat::Zero(cur.rows(), cur.cols());
    for (int p = 1; p <= F_.N(); ++p)
      for (int q = 1; q <= F_.N(); ++q) {
        const Mat B = F_.block(cur, p - 1, q - 1);
        if (block_zero(B)) continue;
        const Space& Pp = F_.pair(p - 1, 1);
        const Space& Pq = F_.pair(q - 1, 1);
        const Mat X = tensor_half(B, F_.level(q - 1), F_.level(p - 1), Pq, Pp);
        const Mat Ip = half_of(F_.I(p - 1, 1), Pp, F_.level(p));
        const Mat Iq = half_of(F_.I(q - 1, 1), Pq, F_.level(q));
        F_.set_block(next, p, q, Ip * X * Iq.adjoint());
      }
    cur = std::move(next);
  }
  return FockOperator{cur, -1, -1};
}

std::vector<Mat> RadialCalculus::rho_powers(const Mat& half) const {
  std::vector<Mat> out{half};
  for (int j = 1; j <= F_.N(); ++j) out.push_back(rho(FockOperator{out.back(), -1, -1}).mat);
  return out;
}

Mat RadialCalculus::phi_from_powers(const std::vector<Mat>& powers, const Sequence& x, const Sequence& y,
                                    double tol, double* remainder) const {
  const auto tx = suffix_norms(x), ty = suffix_norms(y);
  const Mat& A = powers[0];
  const double anorm = A.norm();
  Mat out = Mat::Zero(A.rows(), A.cols());
  double rem = 0.0;
  for (int p = 0; p <= F_.N(); ++p)
    for (int q = 0; q <= F_.N(); ++q) {
      cd c0 = 0.0;
      int n = 0;
      for (;; ++n) {
        if (tail(tx, p + n) * tail(ty, q + n) < tol) break;
        c0 += at(x, p + n) * std::conj(at(y, q + n));
      }
      rem = std::max(rem, tail(tx, p + n) * tail(ty, q + n) * anorm);
      Mat blk = c0 * F_.block(A, p, q);
      for (int k = 1; k <= std::min(p, q); ++k) {
        const cd c = at(x, p - k) * std::conj(at(y, q - k));
        if (c != 0.0) blk += c * F_.block(powers[k], p, q);
      }
      F_.set_block(out, p, q, blk);
    }
  if (remainder) *remainder = rem;
  return out;
}

PhiResult RadialCalculus::phi_xy(const FockOperator& A, const Sequence& x, const Sequence& y, double tol) const {
  PhiResult r;
  r.op.mat = phi_from_powers(rho_powers(A.mat), x, y, tol, &r.remainder);
  r.op.n_in = A.n_in;
  r.op.n_out = A.n_out;
  return r;
}

FockOperator RadialCalculus::phi_decomposed(const RankOneDecomposition& dec, cd c_plus, cd c_minus,
                                            const FockOperator& A) const {
  const auto powers = rho_powers(A.mat);
  Mat out = c_plus * A.mat;
  if (c_minus != 0.0) {
    Mat uau = A.mat;
    for (int p = 0; p <= F_.N(); ++p)
      for (int q = 0; q <= F_.N(); ++q)
        if ((p + q) % 2) F_.set_block(uau, p, q, -F_.block(A.mat, p, q));
    out += c_minus * uau;
  }
  for (const auto& pr : dec.pairs) {
    const Sequence x(pr.x.data(), pr.x.data() + pr.x.size()), y(pr.y.data(), pr.y.data() + pr.y.size());
    out += phi_from_powers(powers, x, y, 1e-15, nullptr);
  }
  return FockOperator{out, A.n_in, A.n_out};
}

PsiResult RadialCalculus::phi_psi(const RadialFunction& psi, const FockOperator& A, int N_dec, double tol) const {
  const auto cn = class_norm(psi, NormClass::C, N_dec, tol);
  if (!cn.converged) throw std::domain_error("psi is not certified in class C at this truncation");
  const auto dec = rank_one_decompose(psi, N_dec, tol);
  PsiResult r;
  r.c_plus = cn.asym.c_plus;
  r.c_minus = cn.asym.c_minus;
  r.bound = cn.norm;
  r.pairs = static_cast<int>(dec.pairs.size());
  r.op = phi_decomposed(dec, r.c_plus, r.c_minus, A);
  return r;
}

double cb_lower_bound(const std::function<Mat(const Mat&)>& phi, const TruncatedFock& F, int k, int trials,
                      unsigned long seed, int dictionary) {
  if (k < 1) throw std::invalid_argument("cb_lower_bound needs k >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  std::vector<Mat> dict{F.identity().mat};
  const int top = std::min(2, F.N());
  std::uniform_int_distribution<int> deg(0, top);
  while (static_cast<int>(dict.size()) < dictionary) {
    const int n = deg(gen), m = deg(gen);
    const Space& X = F.level(n);
    const Space& Y = F.level(m);
    Mat T = Mat::Zero(Y.half_dim(), X.half_dim());
    for (int c = 0; c < X.size(); ++c)
      for (int r = 0; r < Y.size(); ++r) {
        if (X.rb(c) != Y.rb(r)) continue;
        for (int a = 0; a < X.dl(c); ++a)
          for (int b = 0; b < Y.dl(r); ++b) T(Y.half_index(r, b), X.half_index(c, a)) = cd(nd(gen), nd(gen));
      }
    dict.push_back(F.creation(T, n, m).mat);
  }
  std::vector<Mat> images;
  for (const auto& d : dict) images.push_back(phi(d));
  const int D = F.half_dim();
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    Mat A = Mat::Zero(k * D, k * D), B = Mat::Zero(k * D, k * D);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (std::size_t b = 0; b < dict.size(); ++b) {
          const cd c(nd(gen), nd(gen));
          A.block(i * D, j * D, D, D) += c * dict[b];
          B.block(i * D, j * D, D, D) += c * images[b];
        }
    const double an = spectral_norm(A);
    if (an > 0.0) best = std::max(best, spectral_norm(B) / an);
  }
  return best;
}

}  // namespace relgauss
