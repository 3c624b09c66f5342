#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <optional>
#include <vector>

namespace relgauss {

using cd = std::complex<double>;

enum class RadialKind { Table, Geometric, Constant, Alternating, EvenLift, Sum };
enum class Tail { Zero, Constant, AlternatingConstant };

// phi: N -> C. Immutable value type; nested kinds share their children.
class RadialFunction {
 public:
  static RadialFunction table(std::vector<cd> values, Tail tail = Tail::Zero, cd tail_value = 0.0);
  static RadialFunction geometric(cd ratio);  // requires |ratio| < 1
  static RadialFunction constant(cd value);
  static RadialFunction alternating(cd value);  // value * (-1)^n
  static RadialFunction delta(int n);
  static RadialFunction sum(std::vector<RadialFunction> terms);

  cd operator()(long n) const;
  RadialKind kind() const { return kind_; }
  const std::vector<cd>& values() const { return values_; }
  Tail tail() const { return tail_; }
  cd tail_value() const { return scalar_; }
  cd ratio() const { return scalar_; }
  cd value() const { return scalar_; }
  const RadialFunction& base() const { return *children_.at(0); }
  std::vector<RadialFunction> terms() const;

  friend RadialFunction even_lift(const RadialFunction& psi);

 private:
  RadialKind kind_ = RadialKind::Constant;
  std::vector<cd> values_;
  Tail tail_ = Tail::Zero;
  cd scalar_ = 0.0;
  std::vector<std::shared_ptr<const RadialFunction>> children_;
};

// phi~(2n) = psi(n), phi~(2n+1) = 0.
RadialFunction even_lift(const RadialFunction& psi);

enum class HankelKind { H, K, Ktilde };
enum class NormClass { C, Cprime };

Eigen::MatrixXcd hankel(const RadialFunction& phi, HankelKind kind, int N);

struct TraceNorm {
  double norm = 0.0;
  std::vector<double> singulars;  // descending
};
TraceNorm trace_norm(const Eigen::MatrixXcd& A);

struct Asymptotics {
  cd c_plus = 0.0;
  cd c_minus = 0.0;
  std::optional<cd> c_limit;  // present when phi(n) itself converges
  bool converged = false;     // c_plus and c_minus stable at the cutoff
};
Asymptotics asymptotics(const RadialFunction& phi, int N, double tol = 1e-9);

struct HankelReport {
  HankelKind kind = HankelKind::H;
  int truncation = 0;
  double trace_norm = 0.0;
  std::vector<double> singulars;
  bool converged = false;
  cd c_plus = 0.0, c_minus = 0.0, c_limit = 0.0;
};

struct ClassNorm {
  double norm = 0.0;
  bool converged = false;  // heuristic: truncations N/2 and N agree and tails settle
  std::vector<HankelReport> reports;
  Asymptotics asym;
};
ClassNorm class_norm(const RadialFunction& phi, NormClass cls, int N = 200, double tol = 1e-9);

struct RankOnePair {
  Eigen::VectorXcd x;
  Eigen::VectorXcd y;
};
struct RankOneDecomposition {
  std::vector<RankOnePair> pairs;
  double nuclear_sum = 0.0;
  int truncation = 0;
  // sum_k x_k(i) conj(y_k(j))
  cd entry(int i, int j) const;
};
RankOneDecomposition rank_one_decompose(const RadialFunction& phi, int N = 200, double tol = 1e-9);

// c+ + (-1)^{k+l} c- + sum_n sum_m x_n(k+m) conj(y_n(l+m))
cd reconstruct_psi(const RankOneDecomposition& dec, cd c_plus, cd c_minus, int k, int l);

}  // namespace relgauss
