#pragma once

#include <map>
#include <memory>
#include <vector>

#include "relgauss/tracial.hpp"

namespace relgauss {

// Reduced basis of a standard-form bimodule: labels of the left and right
// blocks of every multiplicity vector.
struct Basis {
  std::vector<int> lb, rb;
  int size() const { return static_cast<int>(lb.size()); }
};
using BasisPtr = std::shared_ptr<const Basis>;

// Connes tensor product of standard-form bimodules.  Reduced basis vectors are
// tuples (s_1, ..., s_k) with rb(s_j) = lb(s_{j+1}); in the full basis
// |a, s, c> (x) |c', t, e> = delta_{cc'} / sqrt(w_{rb(s)}) |a, (s, t), e>,
// which makes the product strictly associative.
//
// Coordinates: reduced r, half (a, r) with a < d_lb(r), full (a, r, e).
class Space {
 public:
  Space() = default;
  Space(const TracialAlgebra& M, std::vector<BasisPtr> atoms);

  const TracialAlgebra& algebra() const { return M_; }
  int atoms() const { return static_cast<int>(atoms_.size()); }
  const std::vector<BasisPtr>& atom_list() const { return atoms_; }
  int size() const { return static_cast<int>(tuples_.size()); }
  const std::vector<int>& tuple(int r) const { return tuples_[r]; }
  int index(const std::vector<int>& t) const;  // -1 when absent
  int lb(int r) const { return lb_[r]; }
  int rb(int r) const { return rb_[r]; }
  int dl(int r) const { return M_.dim(lb_[r]); }
  int dr(int r) const { return M_.dim(rb_[r]); }

  int half_dim() const { return half_dim_; }
  int full_dim() const { return full_dim_; }
  int half_off(int r) const { return half_off_[r]; }
  int full_off(int r) const { return full_off_[r]; }
  int half_index(int r, int a) const { return half_off_[r] + a; }
  int full_index(int r, int a, int e) const { return full_off_[r] + a * dr(r) + e; }

  Basis as_basis() const { return Basis{lb_, rb_}; }

 private:
  TracialAlgebra M_;
  std::vector<BasisPtr> atoms_;
  std::vector<std::vector<int>> tuples_;
  std::map<std::vector<int>, int> index_;
  std::vector<int> lb_, rb_, half_off_, full_off_;
  int half_dim_ = 0, full_dim_ = 0;
};

// One tensor factor of a Kronecker product of bimodular maps; mat == nullptr
// stands for the identity of dom.
struct Factor {
  const Mat* mat = nullptr;
  const Space* dom = nullptr;
  const Space* cod = nullptr;
};

// Reduced matrix of f_1 (x) ... (x) f_k from dom to cod.  dom and cod must be
// the concatenations of the factor spaces.
Mat kron(const Space& dom, const Space& cod, const std::vector<Factor>& factors);

// Right-modular T (half matrix x_dom -> x_cod) tensored with the identity of
// the trailing atoms.
Mat tensor_half(const Mat& T, const Space& x_dom, const Space& x_cod, const Space& dom,
                const Space& cod);

Mat half_of(const Mat& bimod, const Space& dom, const Space& cod);
Mat full_of_half(const Mat& half, const Space& dom, const Space& cod);
Mat full_of(const Mat& bimod, const Space& dom, const Space& cod);
Mat half_of_full(const Mat& full, const Space& dom, const Space& cod);

// Largest entry breaking the (lb, rb) sectors of a reduced matrix.
double sector_defect(const Mat& bimod, const Space& dom, const Space& cod);
// Largest entry of a half matrix that mixes distinct rb labels.
double right_modular_defect(const Mat& half, const Space& dom, const Space& cod);

}  // namespace relgauss
