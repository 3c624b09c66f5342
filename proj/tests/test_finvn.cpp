#include <gtest/gtest.h>

#include <cmath>

#include "relgauss/space.hpp"
#include "relgauss/tracial.hpp"

using namespace relgauss;

namespace {
TracialAlgebra m2() { return TracialAlgebra({{2, 0.5}}); }
TracialAlgebra mixed() { return TracialAlgebra({{1, 0.2}, {2, 0.4}}); }
TracialAlgebra c2() { return TracialAlgebra({{1, 0.5}, {1, 0.5}}); }
}  // namespace

TEST(Algebra, Validation) {
  EXPECT_THROW(TracialAlgebra({{2, 0.25}}), std::invalid_argument);
  EXPECT_THROW(TracialAlgebra({{1, 1.2}, {1, -0.2}}), std::invalid_argument);
  EXPECT_NO_THROW(TracialAlgebra({{2, 0.25}, {1, 0.5}}));
  EXPECT_EQ(mixed().num_units(), 5);
  EXPECT_EQ(mixed().unit_index(1, 1, 0), 3);
}

TEST(Algebra, TraceIsTracial) {
  const auto M = mixed();
  EXPECT_NEAR(std::abs(trace(M, Element::one(M)) - 1.0), 0.0, 1e-14);
  for (unsigned long s = 0; s < 10; ++s) {
    const auto x = Element::random(M, s), y = Element::random(M, s + 100);
    EXPECT_NEAR(std::abs(trace(M, x * y) - trace(M, y * x)), 0.0, 1e-12);
    EXPECT_GT(trace(M, x.adjoint() * x).real(), 0.0);
  }
}

TEST(Gns, NormsAndActions) {
  const auto M = m2();
  const auto H = gns(M);
  EXPECT_EQ(H.dim, 4);
  EXPECT_LT(bimodule_defect(H), 1e-12);
  const Vec e11 = gns_vector(M, Element::unit(M, 0, 0, 0));
  EXPECT_NEAR(H.inner(e11, e11).real(), 0.5, 1e-14);
  for (unsigned long s = 0; s < 5; ++s) {
    const auto x = Element::random(M, s), y = Element::random(M, s + 7), z = Element::random(M, s + 13);
    const Vec xh = gns_vector(M, x);
    EXPECT_LT((H.left_action(y) * xh - gns_vector(M, y * x)).norm(), 1e-12);
    EXPECT_LT((H.right_action(z) * xh - gns_vector(M, x * z)).norm(), 1e-12);
    EXPECT_NEAR(std::abs(H.inner(xh, xh) - trace(M, x.adjoint() * x)), 0.0, 1e-12);
    EXPECT_LT(gns_element(M, xh).distance(x), 1e-14);
  }
}

TEST(Gns, InnerProducts) {
  const auto M = mixed();
  const auto H = gns(M);
  EXPECT_LT(right_inner(H, gns_vector(M, Element::unit(M, 1, 0, 0)), gns_vector(M, Element::unit(M, 1, 0, 0)))
                .distance(Element::unit(M, 1, 0, 0)),
            1e-14);
  for (unsigned long s = 0; s < 5; ++s) {
    const auto x = Element::random(M, s), y = Element::random(M, s + 50);
    const Vec xh = gns_vector(M, x), yh = gns_vector(M, y);
    EXPECT_LT(right_inner(H, xh, yh).distance(x.adjoint() * y), 1e-12);
    EXPECT_LT(left_inner(H, xh, yh).distance(x * y.adjoint()), 1e-12);
    EXPECT_NEAR(std::abs(trace(M, right_inner(H, xh, yh)) - H.inner(xh, yh)), 0.0, 1e-12);
  }
}

TEST(Connes, Dimensions) {
  const auto C2 = c2();
  const auto t = connes_tensor(gns(C2), gns(C2));
  EXPECT_EQ(t.result.dim, 2);
  EXPECT_LT(bimodule_defect(t.result), 1e-10);
  const auto M = m2();
  EXPECT_EQ(connes_tensor(gns(M), gns(M)).result.dim, 4);
  const auto K = std_gns(mixed()).to_generic();
  EXPECT_EQ(connes_tensor(K, K).result.dim, 5);
}

TEST(Connes, ElementaryTensorsMultiply) {
  // L^2(M) (x)_M L^2(M) = L^2(M) via x^ (x) y^ -> (xy)^
  const auto M = mixed();
  const auto H = gns(M);
  const auto t = connes_tensor(H, H);
  for (unsigned long s = 0; s < 4; ++s) {
    const auto x = Element::random(M, s), y = Element::random(M, s + 9);
    const auto u = Element::random(M, s + 20), v = Element::random(M, s + 30);
    Vec p(H.dim * H.dim), q(H.dim * H.dim);
    const Vec xh = gns_vector(M, x), yh = gns_vector(M, y), uh = gns_vector(M, u), vh = gns_vector(M, v);
    for (int i = 0; i < H.dim; ++i)
      for (int j = 0; j < H.dim; ++j) {
        p(i * H.dim + j) = xh(i) * yh(j);
        q(i * H.dim + j) = uh(i) * vh(j);
      }
    const cd lhs = t.result.inner(t.quotient * p, t.quotient * q);
    EXPECT_NEAR(std::abs(lhs - trace(M, (x * y).adjoint() * (u * v))), 0.0, 1e-10);
  }
}

TEST(Frame, Completeness) {
  for (const auto& M : {m2(), mixed(), c2()}) {
    const auto H = std_gns(M).to_generic();
    const auto frame = module_frame(H);
    Mat sum = Mat::Zero(H.dim, H.dim);
    for (const auto& f : frame) {
      EXPECT_LT(left_inner(H, f.xi, f.xi).distance(f.p), 1e-12);
      Mat r(H.dim, M.num_units());
      // r(xi): L^2(M) -> H, x^ -> x xi, against the orthonormal GNS basis
      for (int i = 0, u = 0; i < M.num_blocks(); ++i)
        for (int a = 0; a < M.dim(i); ++a)
          for (int b = 0; b < M.dim(i); ++b, ++u) r.col(u) = H.left[u] * f.xi / std::sqrt(M.weight(i));
      sum += r * r.adjoint();
    }
    EXPECT_LT((sum - Mat::Identity(H.dim, H.dim)).norm(), 1e-10);
    for (std::size_t k = 0; k < frame.size(); ++k)
      for (std::size_t l = 0; l < frame.size(); ++l)
        if (k != l) EXPECT_LT(left_inner(H, frame[k].xi, frame[l].xi).distance(Element::zero(M)), 1e-12);
  }
}

TEST(StdForm, MatchesGns) {
  for (const auto& M : {m2(), mixed(), c2()}) {
    const auto S = std_gns(M);
    EXPECT_EQ(S.full_dim(), M.num_units());
    const auto H = S.to_generic();
    EXPECT_LT(bimodule_defect(H), 1e-12);
    EXPECT_LT((H.gram - Mat::Identity(H.dim, H.dim)).norm(), 1e-14);
  }
  StdBimodule B;
  B.algebra = mixed();
  B.lb = {0, 1, 1};
  B.rb = {1, 1, 0};
  EXPECT_EQ(B.full_dim(), 2 + 4 + 2);
  EXPECT_LT(bimodule_defect(B.to_generic()), 1e-12);
}

TEST(Space, TuplesAndOffsets) {
  const auto M = mixed();
  auto b = std::make_shared<const Basis>(Basis{{0, 1, 1}, {1, 1, 0}});
  const Space S1(M, {b});
  const Space S2(M, {b, b});
  // chained pairs: rb(s) == lb(t)
  int count = 0;
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t)
      if (b->rb[s] == b->lb[t]) ++count;
  EXPECT_EQ(S2.size(), count);
  int full = 0;
  for (int r = 0; r < S2.size(); ++r) {
    EXPECT_EQ(S2.full_off(r), full);
    full += S2.dl(r) * S2.dr(r);
    EXPECT_EQ(S2.index(S2.tuple(r)), r);
    if (r) EXPECT_LT(S2.tuple(r - 1), S2.tuple(r));
  }
  EXPECT_EQ(full, S2.full_dim());
  EXPECT_EQ(S1.index({7}), -1);
}

TEST(Space, KronMatchesDenseKronecker) {
  const auto M = TracialAlgebra::scalars();
  auto b = std::make_shared<const Basis>(Basis{{0, 0, 0}, {0, 0, 0}});
  const Space S1(M, {b}), S2(M, {b, b});
  const Mat A = Mat::Random(3, 3), B = Mat::Random(3, 3);
  const Mat K = kron(S2, S2, {{&A, &S1, &S1}, {&B, &S1, &S1}});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) EXPECT_EQ(K(i * 3 + k, j * 3 + l), A(i, j) * B(k, l));
  const Mat Kid = kron(S2, S2, {{&A, &S1, &S1}, {nullptr, &S1, nullptr}});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) EXPECT_EQ(Kid(i * 3 + k, j * 3 + l), k == l ? A(i, j) : cd(0.0));
  const Mat T = tensor_half(A, S1, S1, S2, S2);
  EXPECT_LT((T - Kid).norm(), 1e-14);
}

TEST(Space, FullHalfRoundTrip) {
  const auto M = mixed();
  auto b = std::make_shared<const Basis>(Basis{{0, 1, 1}, {1, 1, 0}});
  const Space S(M, {b});
  Mat B = Mat::Zero(3, 3);
  B(1, 1) = 2.0;
  B(0, 0) = cd(0, 1);
  B(2, 2) = -1.0;
  EXPECT_EQ(sector_defect(B, S, S), 0.0);
  const Mat F = full_of(B, S, S);
  EXPECT_EQ(F.rows(), S.full_dim());
  EXPECT_LT((half_of_full(F, S, S) - half_of(B, S, S)).norm(), 1e-15);
  Mat T = Mat::Zero(S.half_dim(), S.half_dim());
  T(S.half_index(1, 0), S.half_index(0, 0)) = 1.0;  // rb 1 -> rb 1: right-modular
  EXPECT_EQ(right_modular_defect(T, S, S), 0.0);
  T(S.half_index(2, 0), S.half_index(0, 0)) = 1.0;  // rb 1 -> rb 0: not right-modular
  EXPECT_GT(right_modular_defect(T, S, S), 0.5);
}
