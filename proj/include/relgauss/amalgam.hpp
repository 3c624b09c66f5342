#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "relgauss/fock.hpp"
#include "relgauss/multiplier.hpp"
#include "relgauss/radial.hpp"
#include "relgauss/wick.hpp"

namespace relgauss {

struct AmalgamFactor {
  TracialAlgebra algebra;
  std::string embedding = "unital_diagonal";
};

// Amalgamated free product over P = C; E_i = tau_i.
struct AmalgamSpec {
  TracialAlgebra P = TracialAlgebra::scalars();
  std::vector<AmalgamFactor> factors;
};

void validate(const AmalgamSpec& spec);
// P = C, M_1 = M_2 = C (+) C with weights (1/2, 1/2).
AmalgamSpec dihedral_spec();

// Star-graph data over P~ = P (+) M_1 (+) ... :
//   block 0 is P, block (i, t) is block t of M_i;
//   tau~ = c0 tau_P (+) c_1 tau_1 (+) ... with all c equal to 1 / (1 + #factors);
//   H has reduced vectors A(i, t, b) with labels ((i,t), 0) and B(i, t, a)
//   with labels (0, (i,t)), so that
//     x^ in L^2(M_i) as M_i-P bimodule  = sum sqrt(w_t) x^t_ab |a, A(i,t,b), 0>
//     x^ in L^2(M_i) as P-M_i bimodule  = sum sqrt(w_t) x^t_ab |0, B(i,t,a), b>.
struct AmalgamData {
  AmalgamSpec spec;
  TracialAlgebra Ptilde;
  StdBimodule H;
  Deformation F;
  Involution J;
  double c0 = 1.0;
  std::vector<double> c;
  std::vector<std::vector<int>> block;    // [i][t] -> block of P~
  std::vector<std::vector<int>> a_off, b_off;  // [i][t] -> first reduced index

  int A(int i, int t, int b) const { return a_off[i][t] + b; }
  int B(int i, int t, int a) const { return b_off[i][t] + a; }
  Vec hat_A(int i, const Element& x) const;  // full coordinates of H
  Vec hat_B(int i, const Element& x) const;
};

AmalgamData build_amalgam(const AmalgamSpec& spec);

struct ReducedWord {
  std::vector<std::pair<int, Element>> letters;  // (factor, mean-zero element)
  int length() const { return static_cast<int>(letters.size()); }
};

// Throws unless consecutive factors differ and every letter has tau_i(x) = 0.
void validate_word(const AmalgamSpec& spec, const ReducedWord& w, double tol = 1e-10);

// Reference model of L^2(M) for M the free product: orthonormal basis of
// alternating words over orthonormal bases of L^2(M_i) (-) C, length <= Nw.
class FreeProductL2 {
 public:
  FreeProductL2(AmalgamSpec spec, int Nw);

  int dim() const { return static_cast<int>(words_.size()); }
  int max_length() const { return Nw_; }
  const std::vector<std::pair<int, int>>& word(int k) const { return words_[k]; }
  int index(const std::vector<std::pair<int, int>>& w) const;
  // Orthonormal basis of L^2(M_i) (-) C in matrix-unit coordinates sqrt(w_t) x_ab.
  const Mat& complement(int i) const { return V_[i]; }
  Element basis_element(int i, int k) const;

  // Left multiplication by x in M_i, outputs beyond Nw dropped.
  Mat left_mult(int i, const Element& x) const;
  Mat word_mult(const ReducedWord& w) const;
  Vec word_vector(const ReducedWord& w) const;

 private:
  Vec coords(int i, const Element& x) const;  // sqrt(w_t) x_ab

  AmalgamSpec spec_;
  int Nw_;
  std::vector<Mat> V_;
  std::vector<std::vector<std::pair<int, int>>> words_;
  std::map<std::vector<std::pair<int, int>>, int> index_;
};

struct PsiMultiplierReport {
  FockOperator op;
  Mat corner;          // compression to L^2(M) coordinates
  double bound = 0.0;  // ||psi||_C'
  double defect = 0.0; // ||corner - psi(n) word|| on the exact window
};

// Fock space of the star graph through level 2 Nw and the corner
// identification U^-1 : L^2(M)_{<= Nw} -> p F p.
class AmalgamModel {
 public:
  explicit AmalgamModel(const AmalgamSpec& spec, int Nw = 3, double tol = 1e-10);

  const AmalgamData& data() const { return data_; }
  const TruncatedFock& fock() const { return *fock_; }
  const WickCalculus& wick() const { return *wick_; }
  const FreeProductL2& l2() const { return *l2_; }
  int max_length() const { return Nw_; }

  // Global full Fock coordinates <- L^2(M) word basis.
  const Mat& corner() const { return U_; }
  double unitarity_defect() const;
  // Columns of L^2 words short enough that an operator of word length n is
  // computed exactly.
  std::vector<int> window(int n) const;

  FockOperator word_operator(const ReducedWord& w) const;
  Mat compress(const FockOperator& A) const;
  // ||compress(word_operator(w)) - (left multiplication by w)|| on the window
  double word_defect(const ReducedWord& w) const;

  PsiMultiplierReport psi_multiplier(const RadialFunction& psi, const ReducedWord& w, int N_dec = 200,
                                     double tol = 1e-9) const;

 private:
  int Nw_;
  AmalgamData data_;
  std::unique_ptr<TruncatedFock> fock_;
  std::unique_ptr<WickCalculus> wick_;
  std::unique_ptr<FreeProductL2> l2_;
  Mat U_;
};

double window_norm(const Mat& A, const std::vector<int>& cols);

}  // namespace relgauss
