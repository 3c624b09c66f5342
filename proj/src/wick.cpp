#include "relgauss/wick.hpp"

#include <cmath>
#include <stdexcept>

namespace relgauss {

namespace {
BasisPtr basis_of(const StdBimodule& H) { return std::make_shared<const Basis>(Basis{H.lb, H.rb}); }

// x (x) y for full vectors on raw(1), result on raw(2).
Vec tensor2(const Space& h1, const Space& h2, const Vec& x, const Vec& y) {
  const auto& M = h1.algebra();
  Vec out = Vec::Zero(h2.full_dim());
  for (int p = 0; p < h2.size(); ++p) {
    const int s = h2.tuple(p)[0], t = h2.tuple(p)[1];
    const double w = std::sqrt(M.weight(h1.rb(s)));
    for (int a = 0; a < h2.dl(p); ++a)
      for (int e = 0; e < h2.dr(p); ++e) {
        cd v = 0.0;
        for (int c = 0; c < h1.dr(s); ++c) v += x(h1.full_index(s, a, c)) * y(h1.full_index(t, c, e));
        out(h2.full_index(p, a, e)) = v / w;
      }
  }
  return out;
}

// (l(zeta)* (x) 1) v for the basis vector zeta = |a0, s0, c0>.
Vec lstar_basis(const Space& h1, const Space& h2, int s0, int a0, int c0, const Vec& v) {
  const auto& M = h1.algebra();
  Vec out = Vec::Zero(h1.full_dim());
  const double w = std::sqrt(M.weight(h1.rb(s0)));
  for (int p = 0; p < h2.size(); ++p) {
    if (h2.tuple(p)[0] != s0) continue;
    const int t = h2.tuple(p)[1];
    for (int e = 0; e < h2.dr(p); ++e) out(h1.full_index(t, c0, e)) += v(h2.full_index(p, a0, e)) / w;
  }
  return out;
}

std::vector<Mat> legs(const Space& hh, const Space& raw_n, const std::vector<Space>& raws, const Mat& F, int n) {
  std::vector<Mat> out;
  for (int i = 1; i < n; ++i) {
    std::vector<Factor> fs;
    if (i > 1) fs.push_back({nullptr, &raws[i - 1], nullptr});
    fs.push_back({&F, &hh, &hh});
    if (n - i - 1 > 0) fs.push_back({nullptr, &raws[n - i - 1], nullptr});
    out.push_back(-kron(raw_n, raw_n, fs));
  }
  return out;
}
}  // namespace

InvolutionChecks check_involution(const Involution& J) {
  const int d = J.H.reduced_dim();
  if (J.Jhat.rows() != d || J.Jhat.cols() != d) throw std::invalid_argument("involution has wrong size");
  InvolutionChecks c;
  const Mat Id = Mat::Identity(d, d);
  c.involutive_defect = (J.Jhat * J.Jhat.conjugate() - Id).cwiseAbs().maxCoeff();
  c.unitary_defect = (J.Jhat.adjoint() * J.Jhat - Id).cwiseAbs().maxCoeff();
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t)
      if (J.H.lb[t] != J.H.rb[s] || J.H.rb[t] != J.H.lb[s])
        c.intertwining_defect = std::max(c.intertwining_defect, std::abs(J.Jhat(t, s)));
  return c;
}

Involution standard_involution(const StdBimodule& H) {
  const int d = H.reduced_dim();
  Involution J{H, Mat::Zero(d, d)};
  std::vector<bool> used(d, false);
  for (int s = 0; s < d; ++s) {
    if (used[s]) continue;
    int partner = -1;
    if (H.lb[s] == H.rb[s]) partner = s;
    for (int t = s + 1; t < d && partner < 0; ++t)
      if (!used[t] && H.lb[t] == H.rb[s] && H.rb[t] == H.lb[s]) partner = t;
    if (partner < 0) throw std::invalid_argument("no vector with swapped labels: H admits no involution");
    used[s] = used[partner] = true;
    J.Jhat(partner, s) = 1.0;
    J.Jhat(s, partner) = 1.0;
  }
  return J;
}

Mat reversing_lift(const Involution& J, const Space& S, bool level_zero) {
  Mat R = Mat::Zero(S.full_dim(), S.full_dim());
  if (level_zero) {
    for (int r = 0; r < S.size(); ++r)
      for (int a = 0; a < S.dl(r); ++a)
        for (int e = 0; e < S.dr(r); ++e) R(S.full_index(r, e, a), S.full_index(r, a, e)) = 1.0;
    return R;
  }
  const int d = J.H.reduced_dim();
  std::vector<std::vector<std::pair<int, cd>>> col(d);
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t)
      if (J.Jhat(t, s) != 0.0) col[s].push_back({t, J.Jhat(t, s)});
  for (int r = 0; r < S.size(); ++r) {
    const auto& tup = S.tuple(r);
    const int n = static_cast<int>(tup.size());
    // expand the reversed tuple factor by factor
    std::vector<std::pair<std::vector<int>, cd>> terms{{{}, 1.0}};
    for (int j = n - 1; j >= 0; --j) {
      std::vector<std::pair<std::vector<int>, cd>> next;
      for (const auto& [pre, c] : terms)
        for (const auto& [t, v] : col[tup[j]]) {
          auto p = pre;
          p.push_back(t);
          next.push_back({std::move(p), c * v});
        }
      terms = std::move(next);
    }
    for (const auto& [out, c] : terms) {
      const int r2 = S.index(out);
      if (r2 < 0) throw std::logic_error("reversing_lift: image tuple is not chained");
      for (int a = 0; a < S.dl(r); ++a)
        for (int e = 0; e < S.dr(r); ++e) R(S.full_index(r2, e, a), S.full_index(r, a, e)) += c;
    }
  }
  return R;
}

CompatReport check_compat(const Deformation& D, const Involution& J, int max_n) {
  if (!(J.H.algebra == D.H.algebra) || J.H.lb != D.H.lb || J.H.rb != D.H.rb)
    throw std::invalid_argument("involution and deformation live on different bimodules");
  const auto& M = D.H.algebra;
  const auto hb = basis_of(D.H);
  std::vector<Space> raws{Space(M, {hb})};  // raws[k] = H^{(k)} for k >= 1; raws[0] unused
  for (int n = 1; n <= std::max(2, max_n); ++n) raws.push_back(Space(M, std::vector<BasisPtr>(n, hb)));
  const Space& h1 = raws[1];
  const Space& h2 = raws[2];
  const Mat Jm = reversing_lift(J, h1);
  const Mat Ff = full_of(D.F, h2, h2);
  CompatReport rep;
  const int d = h1.full_dim();
  struct Loc {
    int s, a, c;
  };
  std::vector<Loc> loc(d);
  for (int s = 0; s < h1.size(); ++s)
    for (int a = 0; a < h1.dl(s); ++a)
      for (int c = 0; c < h1.dr(s); ++c) loc[h1.full_index(s, a, c)] = {s, a, c};
  for (int eta = 0; eta < d; ++eta) {
    const Vec ue = Vec::Unit(d, eta);
    const Vec je = Jm * ue;
    for (int xi = 0; xi < d; ++xi)
      for (int zeta = 0; zeta < d; ++zeta) {
        const Vec ux = Vec::Unit(d, xi), uz = Vec::Unit(d, zeta);
        const Vec lhs = lstar_basis(h1, h2, loc[zeta].s, loc[zeta].a, loc[zeta].c, Ff * tensor2(h1, h2, je, ux));
        const Vec inner = lstar_basis(h1, h2, loc[xi].s, loc[xi].a, loc[xi].c, Ff * tensor2(h1, h2, ue, uz));
        const Vec rhs = Jm * inner.conjugate();
        rep.compat_defect = std::max(rep.compat_defect, (lhs - rhs).norm());
      }
  }
  const Mat J2 = reversing_lift(J, h2);
  rep.commute_defect = spectral_norm(J2 * Ff.conjugate() - Ff * J2);
  for (int n = 2; n <= max_n; ++n) {
    const Space& R = raws[n];
    const Mat Jn = reversing_lift(J, R);
    const auto lg = legs(h2, R, raws, D.F, n);
    const Permutation gamma = reversal(n);
    for (const auto& s : all_permutations(n)) {
      auto fsig = [&](const Permutation& p) {
        Mat X = Mat::Identity(R.size(), R.size());
        for (int i : reduced_word(p)) X = X * lg[i - 1];
        return full_of(X, R, R);
      };
      const Mat lhs = Jn * fsig(s).conjugate() * Jn.conjugate();
      const Mat rhs = fsig(compose(compose(gamma, s), inverse(gamma)));
      rep.conjugation_defect = std::max(rep.conjugation_defect, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return rep;
}

WickCalculus::WickCalculus(const TruncatedFock& fock, Involution J) : F_(fock), J_(std::move(J)) {
  const auto& H = F_.deformation().H;
  if (!(J_.H.algebra == H.algebra) || J_.H.lb != H.lb || J_.H.rb != H.rb)
    throw std::invalid_argument("involution does not act on the Fock space's bimodule");
  if (!check_involution(J_).ok(1e-9)) throw std::invalid_argument("J is not an anti-unitary involution of H");
  for (int n = 0; n <= F_.N(); ++n) {
    if (n == 0) {
      Jlevel_.push_back(reversing_lift(J_, F_.raw(0), true));
      continue;
    }
    const Mat Jr = reversing_lift(J_, F_.raw(n));
    if (n == 1) {
      Jlevel_.push_back(Jr);
      continue;
    }
    const Mat Df = full_of(F_.D(n), F_.raw(n), F_.raw(n));
    if ((Jr * Df.conjugate() - Df * Jr).cwiseAbs().maxCoeff() > 1e-8)
      throw std::invalid_argument("J does not commute with D^(" + std::to_string(n) + "): J is not compatible with F");
    const Mat Qf = full_of(F_.Q(n), F_.raw(n), F_.level(n));
    const Mat Qp = full_of(F_.Qplus(n), F_.level(n), F_.raw(n));
    Jlevel_.push_back(Qf * Jr * Qp.conjugate());
  }
}

const Mat& WickCalculus::J(int n) const { return Jlevel_.at(n); }

Mat WickCalculus::Jtilde() const {
  Mat R = Mat::Zero(F_.full_dim(), F_.full_dim());
  for (int n = 0; n <= F_.N(); ++n) R.block(F_.full_off(n), F_.full_off(n), J(n).rows(), J(n).cols()) = J(n);
  return R;
}

const Mat& WickCalculus::I_full(int n, int m) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = Ifull_.find({n, m});
  if (it != Ifull_.end()) return it->second;
  Mat R = full_of(F_.I(n, m), F_.pair(n, m), F_.level(n + m));
  return Ifull_.emplace(std::make_pair(n, m), std::move(R)).first->second;
}

Mat WickCalculus::s_operator(const Vec& xi, int n, int m) const {
  if (n < 0 || m < 0 || n + m > F_.N()) throw std::out_of_range("s_operator: degrees beyond truncation");
  const Space& Ln = F_.level(n);
  const Space& Lm = F_.level(m);
  if (xi.size() != F_.level(n + m).full_dim()) throw std::invalid_argument("s_operator: vector has wrong size");
  // <eta, S zeta> = <eta (x) J zeta, I*_{m,n} xi>
  const Vec y = I_full(m, n).adjoint() * xi;
  const Space& P = F_.pair(m, n);
  const Mat& Jn = J(n);
  Mat S = Mat::Zero(Lm.full_dim(), Ln.full_dim());
  for (int p = 0; p < P.size(); ++p) {
    const int r = P.tuple(p)[0], t = P.tuple(p)[1];
    const double w = std::sqrt(F_.algebra().weight(Lm.rb(r)));
    for (int a = 0; a < P.dl(p); ++a)
      for (int e = 0; e < P.dr(p); ++e) {
        const cd yv = y(P.full_index(p, a, e)) / w;
        if (yv == 0.0) continue;
        for (int c = 0; c < Lm.dr(r); ++c) S.row(Lm.full_index(r, a, c)) += yv * Jn.row(Ln.full_index(t, c, e)).conjugate();
      }
  }
  return half_of_full(S, Ln, Lm);
}

WickWord WickCalculus::word(int n, const Vec& xi) const {
  WickWord w{n, xi, FockOperator{Mat::Zero(F_.half_dim(), F_.half_dim()), -1, -1}};
  for (int k = 0; k <= n; ++k) w.op.mat += F_.creation(s_operator(xi, k, n - k), k, n - k).mat;
  return w;
}

Vec WickCalculus::boxtimes(const Vec& xi, int p, const Vec& eta, int q, int k) const {
  if (k < 0 || k > std::min(p, q)) throw std::out_of_range("boxtimes: k out of range");
  const int n = p - k, m = q - k;
  if (p > F_.N() || q > F_.N() || n + m > F_.N()) throw std::out_of_range("boxtimes beyond truncation");
  const Mat S = s_operator(xi, k, n);
  const Space& Pk = F_.pair(k, m);
  const Space& Pn = F_.pair(n, m);
  const Vec y = I_full(k, m).adjoint() * eta;
  const Mat T = full_of_half(tensor_half(S, F_.level(k), F_.level(n), Pk, Pn), Pk, Pn);
  return I_full(n, m) * (T * y);
}

cd WickCalculus::vacuum_state(const FockOperator& A) const {
  const Vec om = F_.vacuum();
  return om.dot(F_.full_matrix(A.mat) * om);
}

Vec WickCalculus::hat(const Element& x) const {
  const Space& L0 = F_.level(0);
  Vec v = Vec::Zero(L0.full_dim());
  for (int r = 0; r < L0.size(); ++r) {
    const int i = L0.lb(r);
    const double w = std::sqrt(F_.algebra().weight(i));
    for (int a = 0; a < L0.dl(r); ++a)
      for (int e = 0; e < L0.dr(r); ++e) v(L0.full_index(r, a, e)) = w * x.blocks[i](a, e);
  }
  return v;
}

Element WickCalculus::unhat(const Vec& v) const {
  const Space& L0 = F_.level(0);
  Element x = Element::zero(F_.algebra());
  for (int r = 0; r < L0.size(); ++r) {
    const int i = L0.lb(r);
    const double w = std::sqrt(F_.algebra().weight(i));
    for (int a = 0; a < L0.dl(r); ++a)
      for (int e = 0; e < L0.dr(r); ++e) x.blocks[i](a, e) = v(L0.full_index(r, a, e)) / w;
  }
  return x;
}

Element WickCalculus::cond_expectation(const FockOperator& A) const {
  return unhat(F_.extract(0, F_.full_matrix(A.mat) * F_.vacuum()));
}

Mat WickCalculus::mirror(const FockOperator& A) const {
  const Mat Jt = Jtilde();
  return Jt * F_.full_matrix(A.mat).conjugate() * Jt.conjugate();
}

}  // namespace relgauss
