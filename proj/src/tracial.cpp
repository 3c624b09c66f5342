#include "relgauss/tracial.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace relgauss {

namespace {
Mat kron(const Mat& A, const Mat& B) {
  Mat R(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) R.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return R;
}

struct Spectral {
  Mat quotient, lift;
};

// Orthonormalize the range of a PSD Gram matrix: quotient = L^{1/2} V*, lift = V L^{-1/2}.
Spectral spectral_quotient(const Mat& G, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(G);
  const auto& ev = es.eigenvalues();
  const double top = ev.size() ? std::max(ev.maxCoeff(), 0.0) : 0.0;
  std::vector<int> keep;
  for (int k = static_cast<int>(ev.size()) - 1; k >= 0; --k)
    if (ev(k) > rel_tol * std::max(top, 1e-300)) keep.push_back(k);
  Spectral s;
  s.quotient.resize(keep.size(), G.cols());
  s.lift.resize(G.cols(), keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const double l = std::sqrt(ev(keep[r]));
    s.quotient.row(r) = l * es.eigenvectors().col(keep[r]).adjoint();
    s.lift.col(r) = es.eigenvectors().col(keep[r]) / l;
  }
  return s;
}
}  // namespace

TracialAlgebra::TracialAlgebra(std::vector<Block> b) : blocks(std::move(b)) {
  if (blocks.empty()) throw std::invalid_argument("algebra needs at least one block");
  double total = 0.0;
  for (const auto& bl : blocks) {
    if (bl.dim < 1) throw std::invalid_argument("block dimension must be >= 1");
    if (!(bl.weight > 0.0)) throw std::invalid_argument("trace weights must be positive");
    total += bl.weight * bl.dim;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("trace must satisfy tau(1) = 1");
}

int TracialAlgebra::num_units() const {
  int n = 0;
  for (const auto& b : blocks) n += b.dim * b.dim;
  return n;
}

int TracialAlgebra::unit_index(int block, int a, int b) const {
  int off = 0;
  for (int i = 0; i < block; ++i) off += blocks[i].dim * blocks[i].dim;
  return off + a * blocks[block].dim + b;
}

bool TracialAlgebra::operator==(const TracialAlgebra& o) const {
  if (blocks.size() != o.blocks.size()) return false;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].dim != o.blocks[i].dim || std::abs(blocks[i].weight - o.blocks[i].weight) > 1e-14)
      return false;
  return true;
}

Element Element::zero(const TracialAlgebra& M) {
  Element x;
  for (const auto& b : M.blocks) x.blocks.push_back(Mat::Zero(b.dim, b.dim));
  return x;
}

Element Element::one(const TracialAlgebra& M) {
  Element x;
  for (const auto& b : M.blocks) x.blocks.push_back(Mat::Identity(b.dim, b.dim));
  return x;
}

Element Element::unit(const TracialAlgebra& M, int block, int a, int b) {
  Element x = zero(M);
  x.blocks[block](a, b) = 1.0;
  return x;
}

Element Element::random(const TracialAlgebra& M, unsigned long seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  Element x = zero(M);
  for (auto& b : x.blocks)
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) b(i, j) = cd(nd(gen), nd(gen));
  return x;
}

Element Element::adjoint() const {
  Element x;
  for (const auto& b : blocks) x.blocks.push_back(b.adjoint());
  return x;
}

Element Element::operator*(const Element& o) const {
  Element x;
  for (std::size_t i = 0; i < blocks.size(); ++i) x.blocks.push_back(blocks[i] * o.blocks[i]);
  return x;
}

Element Element::operator+(const Element& o) const {
  Element x;
  for (std::size_t i = 0; i < blocks.size(); ++i) x.blocks.push_back(blocks[i] + o.blocks[i]);
  return x;
}

Element Element::operator*(cd s) const {
  Element x;
  for (const auto& b : blocks) x.blocks.push_back(s * b);
  return x;
}

double Element::distance(const Element& o) const {
  double d = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    d = std::max(d, (blocks[i] - o.blocks[i]).cwiseAbs().maxCoeff());
  return d;
}

cd trace(const TracialAlgebra& M, const Element& x) {
  cd t = 0.0;
  for (int i = 0; i < M.num_blocks(); ++i) t += M.weight(i) * x.blocks[i].trace();
  return t;
}

Mat Bimodule::left_action(const Element& x) const {
  Mat R = Mat::Zero(dim, dim);
  for (int i = 0; i < algebra.num_blocks(); ++i)
    for (int a = 0; a < algebra.dim(i); ++a)
      for (int b = 0; b < algebra.dim(i); ++b)
        if (x.blocks[i](a, b) != 0.0) R += x.blocks[i](a, b) * left[algebra.unit_index(i, a, b)];
  return R;
}

Mat Bimodule::right_action(const Element& x) const {
  Mat R = Mat::Zero(dim, dim);
  for (int i = 0; i < algebra.num_blocks(); ++i)
    for (int a = 0; a < algebra.dim(i); ++a)
      for (int b = 0; b < algebra.dim(i); ++b)
        if (x.blocks[i](a, b) != 0.0) R += x.blocks[i](a, b) * right[algebra.unit_index(i, a, b)];
  return R;
}

double bimodule_defect(const Bimodule& H) {
  const auto& M = H.algebra;
  double d = 0.0;
  const int U = M.num_units();
  for (int u = 0; u < U; ++u)
    for (int v = 0; v < U; ++v) d = std::max(d, (H.left[u] * H.right[v] - H.right[v] * H.left[u]).norm());
  // e_{ab} e_{cd} = delta_{bc} e_{ad}
  for (int i = 0; i < M.num_blocks(); ++i)
    for (int a = 0; a < M.dim(i); ++a)
      for (int b = 0; b < M.dim(i); ++b)
        for (int c = 0; c < M.dim(i); ++c)
          for (int e = 0; e < M.dim(i); ++e) {
            Mat lexp = Mat::Zero(H.dim, H.dim), rexp = Mat::Zero(H.dim, H.dim);
            if (b == c) {
              lexp = H.left[M.unit_index(i, a, e)];
              rexp = H.right[M.unit_index(i, a, e)];
            }
            const int ab = M.unit_index(i, a, b), ce = M.unit_index(i, c, e);
            d = std::max(d, (H.left[ab] * H.left[ce] - lexp).norm());
            d = std::max(d, (H.right[ce] * H.right[ab] - rexp).norm());
          }
  // *-compatibility: left(e_ab)^dagger_G = left(e_ba)
  const Mat Ginv = H.gram.inverse();
  for (int i = 0; i < M.num_blocks(); ++i)
    for (int a = 0; a < M.dim(i); ++a)
      for (int b = 0; b < M.dim(i); ++b) {
        const int ab = M.unit_index(i, a, b), ba = M.unit_index(i, b, a);
        d = std::max(d, (Ginv * H.left[ab].adjoint() * H.gram - H.left[ba]).norm());
        d = std::max(d, (Ginv * H.right[ab].adjoint() * H.gram - H.right[ba]).norm());
      }
  return d;
}

Bimodule gns(const TracialAlgebra& M) {
  Bimodule H;
  H.algebra = M;
  H.dim = M.num_units();
  H.gram = Mat::Zero(H.dim, H.dim);
  H.left.assign(H.dim, Mat::Zero(H.dim, H.dim));
  H.right.assign(H.dim, Mat::Zero(H.dim, H.dim));
  for (int i = 0; i < M.num_blocks(); ++i) {
    const int d = M.dim(i);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const int ab = M.unit_index(i, a, b);
        H.gram(ab, ab) = M.weight(i);
        for (int c = 0; c < d; ++c) {
          // e_{ca} e_{ab} = e_{cb};  e_{ab} e_{bc} = e_{ac}
          H.left[M.unit_index(i, c, a)](M.unit_index(i, c, b), ab) = 1.0;
          H.right[M.unit_index(i, b, c)](M.unit_index(i, a, c), ab) = 1.0;
        }
      }
  }
  return H;
}

Vec gns_vector(const TracialAlgebra& M, const Element& x) {
  Vec v(M.num_units());
  for (int i = 0; i < M.num_blocks(); ++i)
    for (int a = 0; a < M.dim(i); ++a)
      for (int b = 0; b < M.dim(i); ++b) v(M.unit_index(i, a, b)) = x.blocks[i](a, b);
  return v;
}

Element gns_element(const TracialAlgebra& M, const Vec& v) {
  Element x = Element::zero(M);
  for (int i = 0; i < M.num_blocks(); ++i)
    for (int a = 0; a < M.dim(i); ++a)
      for (int b = 0; b < M.dim(i); ++b) x.blocks[i](a, b) = v(M.unit_index(i, a, b));
  return x;
}

Element right_inner(const Bimodule& H, const Vec& xi, const Vec& eta) {
  const auto& M = H.algebra;
  Element x = Element::zero(M);
  for (int i = 0; i < M.num_blocks(); ++i)
    for (int a = 0; a < M.dim(i); ++a)
      for (int b = 0; b < M.dim(i); ++b)
        x.blocks[i](a, b) = H.inner(H.right[M.unit_index(i, a, b)] * xi, eta) / M.weight(i);
  return x;
}

Element left_inner(const Bimodule& H, const Vec& xi, const Vec& eta) {
  const auto& M = H.algebra;
  Element x = Element::zero(M);
  for (int i = 0; i < M.num_blocks(); ++i)
    for (int a = 0; a < M.dim(i); ++a)
      for (int b = 0; b < M.dim(i); ++b)
        x.blocks[i](a, b) = H.inner(H.left[M.unit_index(i, a, b)] * eta, xi) / M.weight(i);
  return x;
}

ConnesTensor connes_tensor(const Bimodule& H, const Bimodule& K, double tol) {
  if (!(H.algebra == K.algebra)) throw std::invalid_argument("connes_tensor: algebras differ");
  const int n = H.dim, m = K.dim;
  ConnesTensor out;
  out.product_gram = Mat::Zero(n * m, n * m);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Element x = right_inner(H, Vec::Unit(n, i), Vec::Unit(n, k));
      const Mat block = K.gram * K.left_action(x);
      out.product_gram.block(i * m, k * m, m, m) = block;
    }
  Mat Gs = (out.product_gram + out.product_gram.adjoint()) / 2.0;
  auto s = spectral_quotient(Gs, tol);
  out.quotient = s.quotient;
  out.lift = s.lift;
  Bimodule& R = out.result;
  R.algebra = H.algebra;
  R.dim = static_cast<int>(s.quotient.rows());
  R.gram = Mat::Identity(R.dim, R.dim);
  const Mat In = Mat::Identity(n, n), Im = Mat::Identity(m, m);
  for (int u = 0; u < H.algebra.num_units(); ++u) {
    R.left.push_back(s.quotient * kron(H.left[u], Im) * s.lift);
    R.right.push_back(s.quotient * kron(In, K.right[u]) * s.lift);
  }
  return out;
}

std::vector<FrameVector> module_frame(const Bimodule& H, double tol) {
  const auto& M = H.algebra;
  std::vector<FrameVector> out;
  for (int i = 0; i < M.num_blocks(); ++i) {
    const Mat f = H.left[M.unit_index(i, 0, 0)];
    const Mat K = f.adjoint() * H.gram * f;
    auto s = spectral_quotient((K + K.adjoint()) / 2.0, tol);
    const Mat basis = f * s.lift;  // orthonormal in the H inner product
    for (int c = 0; c < basis.cols(); ++c) {
      FrameVector fv;
      fv.xi = std::sqrt(M.weight(i)) * basis.col(c);
      fv.block = i;
      fv.p = left_inner(H, fv.xi, fv.xi);
      out.push_back(std::move(fv));
    }
  }
  return out;
}

int StdBimodule::full_dim() const {
  int n = 0;
  for (std::size_t s = 0; s < lb.size(); ++s) n += algebra.dim(lb[s]) * algebra.dim(rb[s]);
  return n;
}

Bimodule StdBimodule::to_generic() const {
  Bimodule H;
  H.algebra = algebra;
  H.dim = full_dim();
  H.gram = Mat::Identity(H.dim, H.dim);
  const int U = algebra.num_units();
  H.left.assign(U, Mat::Zero(H.dim, H.dim));
  H.right.assign(U, Mat::Zero(H.dim, H.dim));
  int off = 0;
  for (int s = 0; s < reduced_dim(); ++s) {
    const int dl = algebra.dim(lb[s]), dr = algebra.dim(rb[s]);
    auto idx = [&](int a, int e) { return off + a * dr + e; };
    for (int a = 0; a < dl; ++a)
      for (int e = 0; e < dr; ++e) {
        for (int c = 0; c < dl; ++c) H.left[algebra.unit_index(lb[s], c, a)](idx(c, e), idx(a, e)) = 1.0;
        for (int d = 0; d < dr; ++d) H.right[algebra.unit_index(rb[s], e, d)](idx(a, d), idx(a, e)) = 1.0;
      }
    off += dl * dr;
  }
  return H;
}

StdBimodule std_gns(const TracialAlgebra& M) {
  StdBimodule S;
  S.algebra = M;
  for (int i = 0; i < M.num_blocks(); ++i) {
    S.lb.push_back(i);
    S.rb.push_back(i);
  }
  return S;
}

}  // namespace relgauss
