#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "relgauss/fock.hpp"

namespace relgauss {

// Anti-linear map v -> mat * conj(v).
struct AntiLinear {
  Mat mat;
  Vec apply(const Vec& v) const { return mat * v.conjugate(); }
};

// Anti-unitary J on a standard-form bimodule:
//   J (c |a, s, e>) = conj(c) sum_{s'} Jhat(s', s) |e, s', a>
// where Jhat(s', s) may be nonzero only when lb(s') = rb(s) and rb(s') = lb(s).
struct Involution {
  StdBimodule H;
  Mat Jhat;
};

struct InvolutionChecks {
  double involutive_defect = 0.0;    // ||J^2 - 1||
  double intertwining_defect = 0.0;  // entries of Jhat breaking the label swap
  double unitary_defect = 0.0;
  bool ok(double tol = 1e-10) const {
    return involutive_defect < tol && intertwining_defect < tol && unitary_defect < tol;
  }
};
InvolutionChecks check_involution(const Involution& J);

// Pairs every reduced vector with one of swapped labels; coordinatewise
// conjugation when M = C.
Involution standard_involution(const StdBimodule& H);

// Full matrix of the reversing lift on the tensor power Space(H, ..., H),
// or of x^ -> (x*)^ on L^2(M) when S is the level-0 space.
Mat reversing_lift(const Involution& J, const Space& S, bool level_zero = false);

struct CompatReport {
  double compat_defect = 0.0;  // the defining identity on basis vectors
  double commute_defect = 0.0; // ||J^(2) F - F J^(2)||
  double conjugation_defect = 0.0;  // J F_sigma J = F_{gamma sigma gamma^-1}, n <= max_n
  bool ok(double tol = 1e-10) const {
    return compat_defect < tol && commute_defect < tol && conjugation_defect < tol;
  }
};
CompatReport check_compat(const Deformation& F, const Involution& J, int max_n = 4);

struct WickWord {
  int n = 0;
  Vec xi;  // level-n full coordinates
  FockOperator op;
};

// Wick words, S operators and the boxtimes products on a truncated Fock
// space.  Level vectors are in full coordinates throughout.
class WickCalculus {
 public:
  WickCalculus(const TruncatedFock& fock, Involution J);

  const TruncatedFock& fock() const { return F_; }
  const Involution& involution() const { return J_; }

  const Mat& J(int n) const;  // anti-linear, full level-n coordinates
  Vec applyJ(int n, const Vec& v) const { return J(n) * v.conjugate(); }
  Mat Jtilde() const;  // anti-linear on the whole truncated space

  // S_{n,m}(xi) as a right-modular half matrix level n -> level m.
  Mat s_operator(const Vec& xi, int n, int m) const;
  WickWord word(int n, const Vec& xi) const;
  // xi at level p, eta at level q: result at level p + q - 2k.
  Vec boxtimes(const Vec& xi, int p, const Vec& eta, int q, int k) const;

  cd vacuum_state(const FockOperator& A) const;
  Element cond_expectation(const FockOperator& A) const;
  // J~ A J~ in full coordinates.
  Mat mirror(const FockOperator& A) const;

  // Vector x^ at level 0.
  Vec hat(const Element& x) const;
  Element unhat(const Vec& level0) const;

  // full matrix of I_{n,m}: pair(n, m) -> level(n + m)
  const Mat& I_full(int n, int m) const;

 private:
  const TruncatedFock& F_;
  Involution J_;
  std::vector<Mat> Jlevel_;
  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<int, int>, Mat> Ifull_;
};

}  // namespace relgauss
