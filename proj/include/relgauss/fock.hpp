#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "relgauss/coxeter.hpp"
#include "relgauss/space.hpp"

namespace relgauss {

struct DeformationFlags {
  double self_adjoint_defect = 0.0;
  double bimodular_defect = 0.0;
  double norm = 0.0;
  double projection_defect = 0.0;  // ||F^2 - F||
  double braid_defect = 0.0;       // on H^(3)
  double commuting_defect = 0.0;   // ||[F (x) 1, 1 (x) F]|| on H^(3)
  bool is_contraction = false;
  bool is_projection = false;
  bool braid_ok = false;
  bool commuting_ok = false;
};

// Self-adjoint bimodular contraction F on H (x)_M H, stored as a reduced
// matrix on Space(H, H).
struct Deformation {
  std::string kind;
  StdBimodule H;
  Mat F;
  DeformationFlags flags;
};

DeformationFlags analyse_deformation(const StdBimodule& H, const Mat& F, double tol = 1e-10);
Deformation make_deformation(std::string kind, const StdBimodule& H, Mat F, double tol = 1e-10);
Deformation zero_deformation(const StdBimodule& H);
// M = C, H = C^dim, F(xi (x) eta) = -q eta (x) xi.
Deformation q_flip(int dim, double q);
// M = C, H = C^dim, F = sum over the given letters u of |uu><uu|; a
// projection with commuting legs.
Deformation diagonal_projection(int dim, const std::vector<int>& letters);

// Operator on the truncated Fock space in global half coordinates.  When it
// is a single creation operator, (n_in, n_out) records its degree.
struct FockOperator {
  Mat mat;
  int n_in = -1;
  int n_out = -1;
};

struct ProdLReport {
  double defect = 0.0;
  std::vector<int> window;  // input levels on which both sides were compared
  int terms = 0;
};

class TruncatedFock {
 public:
  TruncatedFock(Deformation def, int N, double tol = 1e-10);

  int N() const { return N_; }
  const Deformation& deformation() const { return def_; }
  const TracialAlgebra& algebra() const { return def_.H.algebra; }
  double tol() const { return tol_; }

  const Space& raw(int n) const { return raw_.at(n); }      // Space(H, ..., H); level 0 is L^2(M)
  const Space& level(int n) const { return level_.at(n); }  // single atom H_F^(n)
  BasisPtr level_basis(int n) const { return level_basis_.at(n); }
  const Mat& D(int n) const { return D_.at(n); }
  const Mat& Q(int n) const { return Q_.at(n); }          // level <- raw
  const Mat& Qplus(int n) const { return Qplus_.at(n); }  // raw <- level, Q Q+ = 1
  double min_eigenvalue(int n) const { return min_eig_.at(n); }
  int level_dim(int n) const { return level_.at(n).full_dim(); }

  // Space over the F-levels ns (Connes tensor of quotient levels).
  Space levels(const std::vector<int>& ns) const;
  const Space& pair(int n, int m) const;
  const Mat& I(int n, int m) const;    // pair(n, m) -> level(n + m)
  const Mat& Fnm(int n, int m) const;  // pair(n, m) -> pair(m, n)

  Mat leg(int n, int i) const;  // 1_{i-1} (x) F (x) 1_{n-i-1} on raw(n)
  Mat f_sigma(int n, const Permutation& s) const;
  Mat f_word(int n, const std::vector<int>& word) const;
  Mat d_brute(int n) const;              // sum over S_n
  Mat shuffle_sum(int n, int m) const;   // E_{n,m} on raw(n+m)

  // Global layout.
  int half_dim() const { return half_dim_; }
  int full_dim() const { return full_dim_; }
  int half_off(int n) const { return half_off_.at(n); }
  int full_off(int n) const { return full_off_.at(n); }
  Mat block(const Mat& A, int p, int q) const;  // half block level q -> level p
  void set_block(Mat& A, int p, int q, const Mat& B) const;
  Mat full_matrix(const Mat& half) const;
  Mat half_matrix(const Mat& full) const;
  Vec vacuum() const;  // full coordinates
  Vec embed(int n, const Vec& level_full) const;
  Vec extract(int n, const Vec& global_full) const;
  // Level-n vector from raw full coordinates.
  Vec from_raw(int n, const Vec& raw_full) const;
  // xi (x) eta in H_F^(n+m) for level vectors in full coordinates.
  Vec tensor(int n, const Vec& xi, int m, const Vec& eta) const;
  Vec apply(const FockOperator& A, const Vec& global_full) const;

  // L(T) for a right-modular half matrix T: level n -> level m.
  FockOperator creation(const Mat& T, int n, int m) const;
  // Half matrix of l(xi): L^2(M) -> level n for xi in full level coordinates.
  Mat ket(int n, const Vec& xi) const;
  FockOperator radial(const std::vector<cd>& x) const;  // M_x
  FockOperator identity() const;

  // Term k of the composition rule for S: n1 -> m1, T: n2 -> m2.
  Mat prodL_term(const Mat& S, int n1, int m1, const Mat& T, int n2, int m2, int k) const;
  ProdLReport compose_check(const Mat& S, int n1, int m1, const Mat& T, int n2, int m2) const;

 private:
  Deformation def_;
  int N_;
  double tol_;
  BasisPtr hbasis_;
  std::vector<Space> raw_, level_;
  std::vector<BasisPtr> level_basis_;
  std::vector<Mat> D_, Q_, Qplus_;
  std::vector<double> min_eig_;
  std::vector<int> half_off_, full_off_;
  int half_dim_ = 0, full_dim_ = 0;
  Space hh_;

  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<int, int>, Space> pair_cache_;
  mutable std::map<std::pair<int, int>, Mat> I_cache_, F_cache_;
};

double spectral_norm(const Mat& A);

}  // namespace relgauss
