#pragma once

#include <functional>
#include <vector>

#include "relgauss/fock.hpp"
#include "relgauss/radial.hpp"

namespace relgauss {

using Sequence = std::vector<cd>;

// z(n) = (-1)^n and r_k = indicator of [k, infinity), truncated to 0..N.
Sequence alternating_sequence(int N);
Sequence tail_indicator(int N, int k);
Sequence shift(const Sequence& x, int n);     // (S^n x)(p) = x(p - n)
Sequence shift_adj(const Sequence& x, int n); // ((S*)^n x)(p) = x(p + n)

FockOperator radial_mult(const TruncatedFock& F, const Sequence& x);

// Degree-(n, m) identity M_x L(T) M_y = L(T) M_{y . S^n (S*)^m x}.
double radial_commutation_defect(const TruncatedFock& F, const Mat& T, int n, int m, const Sequence& x,
                                 const Sequence& y);

struct PhiResult {
  FockOperator op;
  double remainder = 0.0;  // bound on the dropped part of the outer sum
};

struct PsiResult {
  FockOperator op;
  double bound = 0.0;  // ||psi||_C
  cd c_plus = 0.0, c_minus = 0.0;
  int pairs = 0;
};

// rho(A) = sum_i R(xi_i) A R(xi_i)* for a left-module frame of H; maps
// (x) with the frame vectors on the right.  Requires F to be a projection with
// commuting legs.
class RadialCalculus {
 public:
  explicit RadialCalculus(const TruncatedFock& F);

  const TruncatedFock& fock() const { return F_; }
  int frame_size() const { return static_cast<int>(frame_.size()); }

  // Full matrix of R(xi_i) on the truncated space (zero on the top level).
  Mat right_creation(int i) const;
  // Reference form through the frame; full coordinates in and out.
  Mat rho_frame(const Mat& full) const;
  // Blockwise I_{p,1} (A (x) 1) I*_{q,1}; half coordinates.
  FockOperator rho(const FockOperator& A, int l = 1) const;

  PhiResult phi_xy(const FockOperator& A, const Sequence& x, const Sequence& y, double tol = 1e-15) const;
  PsiResult phi_psi(const RadialFunction& psi, const FockOperator& A, int N_dec = 200, double tol = 1e-9) const;
  // Same with the decomposition supplied; rho powers of A computed once.
  FockOperator phi_decomposed(const RankOneDecomposition& dec, cd c_plus, cd c_minus, const FockOperator& A) const;

 private:
  // Phi_{x,y} from precomputed rho^j(A), j = 0..N.
  Mat phi_from_powers(const std::vector<Mat>& powers, const Sequence& x, const Sequence& y, double tol,
                      double* remainder) const;
  std::vector<Mat> rho_powers(const Mat& half) const;

  const TruncatedFock& F_;
  struct FrameVec {
    int u, e;  // xi = sqrt(w_lb(u)) |0, u, e>
  };
  std::vector<FrameVec> frame_;
};

// Lower bound on ||Phi||_cb: random k x k matrices over a dictionary of
// creation operators; deterministic in seed.  phi acts on half matrices.
double cb_lower_bound(const std::function<Mat(const Mat&)>& phi, const TruncatedFock& F, int k, int trials,
                      unsigned long seed, int dictionary = 12);

}  // namespace relgauss
