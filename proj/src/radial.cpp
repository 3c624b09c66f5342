#include "relgauss/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relgauss {

RadialFunction RadialFunction::table(std::vector<cd> values, Tail tail, cd tail_value) {
  RadialFunction f;
  f.kind_ = RadialKind::Table;
  f.values_ = std::move(values);
  f.tail_ = tail;
  f.scalar_ = tail_value;
  return f;
}

RadialFunction RadialFunction::geometric(cd ratio) {
  if (!(std::abs(ratio) < 1.0)) throw std::invalid_argument("geometric ratio must satisfy |r| < 1");
  RadialFunction f;
  f.kind_ = RadialKind::Geometric;
  f.scalar_ = ratio;
  return f;
}

RadialFunction RadialFunction::constant(cd value) {
  RadialFunction f;
  f.kind_ = RadialKind::Constant;
  f.scalar_ = value;
  return f;
}

RadialFunction RadialFunction::alternating(cd value) {
  RadialFunction f;
  f.kind_ = RadialKind::Alternating;
  f.scalar_ = value;
  return f;
}

RadialFunction RadialFunction::delta(int n) {
  std::vector<cd> v(n + 1, 0.0);
  v[n] = 1.0;
  return table(std::move(v));
}

RadialFunction RadialFunction::sum(std::vector<RadialFunction> terms) {
  RadialFunction f;
  f.kind_ = RadialKind::Sum;
  for (auto& t : terms) f.children_.push_back(std::make_shared<const RadialFunction>(std::move(t)));
  return f;
}

std::vector<RadialFunction> RadialFunction::terms() const {
  std::vector<RadialFunction> out;
  for (const auto& c : children_) out.push_back(*c);
  return out;
}

RadialFunction even_lift(const RadialFunction& psi) {
  RadialFunction f;
  f.kind_ = RadialKind::EvenLift;
  f.children_.push_back(std::make_shared<const RadialFunction>(psi));
  return f;
}

cd RadialFunction::operator()(long n) const {
  if (n < 0) throw std::invalid_argument("radial functions live on N");
  switch (kind_) {
    case RadialKind::Table: {
      if (n < static_cast<long>(values_.size())) return values_[n];
      switch (tail_) {
        case Tail::Zero: return 0.0;
        case Tail::Constant: return scalar_;
        case Tail::AlternatingConstant: return (n % 2 == 0) ? scalar_ : -scalar_;
      }
      return 0.0;
    }
    case RadialKind::Geometric: return std::pow(scalar_, static_cast<double>(n));
    case RadialKind::Constant: return scalar_;
    case RadialKind::Alternating: return (n % 2 == 0) ? scalar_ : -scalar_;
    case RadialKind::EvenLift: return (n % 2 == 0) ? (*children_[0])(n / 2) : cd(0.0);
    case RadialKind::Sum: {
      cd s = 0.0;
      for (const auto& c : children_) s += (*c)(n);
      return s;
    }
  }
  return 0.0;
}

Eigen::MatrixXcd hankel(const RadialFunction& phi, HankelKind kind, int N) {
  if (N < 1) throw std::invalid_argument("hankel needs N >= 1");
  std::vector<cd> v(2 * N + 1);
  for (int i = 0; i <= 2 * N; ++i) v[i] = phi(i);
  Eigen::MatrixXcd A(N, N);
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m) {
      const int s = n + m;
      switch (kind) {
        case HankelKind::H: A(n, m) = v[s] - v[s + 2]; break;
        case HankelKind::K: A(n, m) = v[s] - v[s + 1]; break;
        case HankelKind::Ktilde: A(n, m) = v[s + 1] - v[s + 2]; break;
      }
    }
  return A;
}

TraceNorm trace_norm(const Eigen::MatrixXcd& A) {
  TraceNorm r;
  if (A.size() == 0) return r;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
  const auto& s = svd.singularValues();
  r.singulars.assign(s.data(), s.data() + s.size());
  std::sort(r.singulars.rbegin(), r.singulars.rend());
  for (double x : r.singulars) r.norm += x;
  return r;
}

Asymptotics asymptotics(const RadialFunction& phi, int N, double tol) {
  if (N < 4) throw std::invalid_argument("asymptotics needs N >= 4");
  auto pm = [&](long n) {
    cd a = phi(2 * n), b = phi(2 * n + 1);
    return std::pair<cd, cd>{(a + b) / 2.0, (a - b) / 2.0};
  };
  auto [p1, m1] = pm(N);
  auto [p0, m0] = pm(N / 2);
  Asymptotics r;
  r.c_plus = p1;
  r.c_minus = m1;
  r.converged = std::abs(p1 - p0) < tol && std::abs(m1 - m0) < tol;
  const cd a = phi(2 * N), b = phi(2 * N + 1), c = phi(N);
  if (std::abs(a - b) < tol && std::abs(a - c) < tol) r.c_limit = a;
  return r;
}

namespace {
HankelReport make_report(const RadialFunction& phi, HankelKind kind, int N, double tol,
                         const Asymptotics& asym) {
  HankelReport rep;
  rep.kind = kind;
  rep.truncation = N;
  auto full = trace_norm(hankel(phi, kind, N));
  auto half = trace_norm(hankel(phi, kind, N / 2));
  rep.trace_norm = full.norm;
  rep.singulars = std::move(full.singulars);
  rep.converged = std::abs(full.norm - half.norm) <= tol * std::max(1.0, full.norm);
  rep.c_plus = asym.c_plus;
  rep.c_minus = asym.c_minus;
  rep.c_limit = asym.c_limit.value_or(cd(std::nan(""), std::nan("")));
  return rep;
}
}  // namespace

ClassNorm class_norm(const RadialFunction& phi, NormClass cls, int N, double tol) {
  if (N < 4) throw std::invalid_argument("class_norm needs N >= 4");
  ClassNorm out;
  out.asym = asymptotics(phi, N, tol);
  if (cls == NormClass::C) {
    out.reports.push_back(make_report(phi, HankelKind::H, N, tol, out.asym));
    out.norm = out.reports[0].trace_norm + std::abs(out.asym.c_plus) + std::abs(out.asym.c_minus);
    out.converged = out.reports[0].converged && out.asym.converged;
  } else {
    out.reports.push_back(make_report(phi, HankelKind::K, N, tol, out.asym));
    out.reports.push_back(make_report(phi, HankelKind::Ktilde, N, tol, out.asym));
    const cd c = out.asym.c_limit.value_or(phi(2 * N));
    out.norm = out.reports[0].trace_norm + out.reports[1].trace_norm + std::abs(c);
    out.converged = out.reports[0].converged && out.reports[1].converged &&
                    out.asym.converged && out.asym.c_limit.has_value();
  }
  return out;
}

cd RankOneDecomposition::entry(int i, int j) const {
  cd s = 0.0;
  for (const auto& p : pairs) s += p.x(i) * std::conj(p.y(j));
  return s;
}

RankOneDecomposition rank_one_decompose(const RadialFunction& phi, int N, double tol) {
  if (N < 1) throw std::invalid_argument("rank_one_decompose needs N >= 1");
  RankOneDecomposition dec;
  dec.truncation = N;
  Eigen::MatrixXcd H = hankel(phi, HankelKind::H, N);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  for (int k = 0; k < s.size(); ++k) {
    if (s(k) < tol) continue;
    const double r = std::sqrt(s(k));
    dec.pairs.push_back({r * svd.matrixU().col(k), r * svd.matrixV().col(k)});
    dec.nuclear_sum += s(k);
  }
  return dec;
}

cd reconstruct_psi(const RankOneDecomposition& dec, cd c_plus, cd c_minus, int k, int l) {
  const int N = dec.truncation;
  if (k + l >= N) throw std::invalid_argument("reconstruct_psi outside the truncation");
  cd s = c_plus + (((k + l) % 2 == 0) ? c_minus : -c_minus);
  for (int m = 0; k + m < N && l + m < N; ++m) s += dec.entry(k + m, l + m);
  return s;
}

}  // namespace relgauss
