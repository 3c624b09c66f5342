#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace relgauss {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Block {
  int dim = 1;
  double weight = 1.0;
};

// M = sum_i M_{d_i}(C) with tau(x) = sum_i w_i Tr(x_i).
struct TracialAlgebra {
  std::vector<Block> blocks;

  TracialAlgebra() = default;
  explicit TracialAlgebra(std::vector<Block> b);  // validates normalization and faithfulness

  static TracialAlgebra scalars() { return TracialAlgebra({{1, 1.0}}); }

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  int dim(int i) const { return blocks[i].dim; }
  double weight(int i) const { return blocks[i].weight; }
  // Matrix units e^{(i)}_{ab} enumerated block by block, row major.
  int num_units() const;
  int unit_index(int block, int a, int b) const;
  bool operator==(const TracialAlgebra& o) const;
};

// Block-diagonal element of M.
struct Element {
  std::vector<Mat> blocks;

  static Element zero(const TracialAlgebra& M);
  static Element one(const TracialAlgebra& M);
  static Element unit(const TracialAlgebra& M, int block, int a, int b);
  static Element random(const TracialAlgebra& M, unsigned long seed);

  Element adjoint() const;
  Element operator*(const Element& o) const;
  Element operator+(const Element& o) const;
  Element operator*(cd s) const;
  double distance(const Element& o) const;  // max entry difference
};

cd trace(const TracialAlgebra& M, const Element& x);

// A bimodule given by explicit matrices on C^dim with Hermitian Gram matrix.
// left[u], right[u] are the actions of the matrix unit with flat index u;
// right is an anti-representation: right(xy) = right(y) right(x).
struct Bimodule {
  TracialAlgebra algebra;
  int dim = 0;
  Mat gram;
  std::vector<Mat> left;
  std::vector<Mat> right;

  Mat left_action(const Element& x) const;
  Mat right_action(const Element& x) const;
  cd inner(const Vec& a, const Vec& b) const { return a.dot(gram * b); }
};

// max over matrix units of ||[left(u), right(v)]|| and homomorphism defects
double bimodule_defect(const Bimodule& H);

// L^2(M, tau) in the matrix-unit basis, Gram diag(w_i).
Bimodule gns(const TracialAlgebra& M);
Vec gns_vector(const TracialAlgebra& M, const Element& x);
Element gns_element(const TracialAlgebra& M, const Vec& v);

// <xi, eta>_M with l(xi)* l(eta) = lambda(<xi,eta>_M); antilinear in xi.
Element right_inner(const Bimodule& H, const Vec& xi, const Vec& eta);
// <xi, eta>'_M with r(eta)* r(xi) right multiplication by it; antilinear in eta.
Element left_inner(const Bimodule& H, const Vec& xi, const Vec& eta);

struct ConnesTensor {
  Bimodule result;
  Mat quotient;  // result coordinates <- product coordinates (index i*dim K + j)
  Mat lift;      // right inverse of quotient
  Mat product_gram;
};
ConnesTensor connes_tensor(const Bimodule& H, const Bimodule& K, double tol = 1e-10);

struct FrameVector {
  Vec xi;
  int block = 0;
  Element p;  // left_inner(xi, xi)
};
// Vectors with left_inner(xi_k, xi_l) = delta_kl p_k and sum_k r(xi_k) r(xi_k)* = 1.
std::vector<FrameVector> module_frame(const Bimodule& H, double tol = 1e-10);

// Standard form: H = sum_s C^{d_lb(s)} (x) C (x) C^{d_rb(s)}, one reduced
// basis vector s per multiplicity, orthonormal full basis |a, s, e>.
struct StdBimodule {
  TracialAlgebra algebra;
  std::vector<int> lb, rb;

  int reduced_dim() const { return static_cast<int>(lb.size()); }
  int full_dim() const;
  Bimodule to_generic() const;  // full index: offset(s) + a * d_rb + e
};

// L^2(M) as a standard-form bimodule: one reduced vector per block.
StdBimodule std_gns(const TracialAlgebra& M);

}  // namespace relgauss
