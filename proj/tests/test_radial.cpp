#include <gtest/gtest.h>

#include <cmath>

#include "relgauss/radial.hpp"
#include "relgauss/tracial.hpp"

using namespace relgauss;

namespace {
std::vector<RadialFunction> corpus() {
  return {RadialFunction::geometric(0.5),
          RadialFunction::geometric(0.9),
          RadialFunction::geometric(-0.4),
          RadialFunction::constant(1.0),
          RadialFunction::delta(0),
          RadialFunction::delta(3),
          RadialFunction::table({1.0, 0.5, 0.25, -0.1}, Tail::Zero),
          RadialFunction::table({2.0, 1.0}, Tail::Constant, 0.5),
          RadialFunction::sum({RadialFunction::geometric(0.3), RadialFunction::constant(0.2)}),
          RadialFunction::sum({RadialFunction::geometric(cd(0.2, 0.4)), RadialFunction::delta(1)})};
}
}  // namespace

TEST(Eval, Kinds) {
  EXPECT_EQ(RadialFunction::constant(1.0)(7), cd(1.0));
  EXPECT_NEAR(std::abs(RadialFunction::geometric(0.5)(3) - 0.125), 0.0, 1e-15);
  const auto lift = even_lift(RadialFunction::geometric(0.5));
  EXPECT_NEAR(std::abs(lift(4) - 0.25), 0.0, 1e-15);
  EXPECT_EQ(lift(5), cd(0.0));
  const auto t = RadialFunction::table({1.0, 2.0}, Tail::AlternatingConstant, 3.0);
  EXPECT_EQ(t(1), cd(2.0));
  EXPECT_EQ(t(4), cd(3.0));
  EXPECT_EQ(t(5), cd(-3.0));
  EXPECT_EQ(RadialFunction::table({1.0}, Tail::Zero)(9), cd(0.0));
  EXPECT_EQ(RadialFunction::alternating(2.0)(3), cd(-2.0));
  EXPECT_THROW(RadialFunction::geometric(1.0), std::invalid_argument);
}

TEST(Hankel, Entries) {
  const int N = 6;
  EXPECT_EQ(hankel(RadialFunction::constant(1.0), HankelKind::H, N).norm(), 0.0);
  const double r = 0.3;
  const Mat H = hankel(RadialFunction::geometric(r), HankelKind::H, N);
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m) EXPECT_NEAR(std::abs(H(n, m) - std::pow(r, n + m) * (1 - r * r)), 0.0, 1e-15);
  const Mat D = hankel(RadialFunction::delta(0), HankelKind::H, 3);
  EXPECT_EQ(D(0, 0), cd(1.0));
  EXPECT_EQ(D.cwiseAbs().sum(), 1.0);
  const auto phi = corpus()[6];
  const Mat K = hankel(phi, HankelKind::K, 4), Kt = hankel(phi, HankelKind::Ktilde, 4);
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) {
      EXPECT_EQ(K(n, m), phi(n + m) - phi(n + m + 1));
      EXPECT_EQ(Kt(n, m), phi(n + m + 1) - phi(n + m + 2));
    }
}

TEST(TraceNorm, Basics) {
  EXPECT_EQ(trace_norm(Mat::Zero(3, 3)).norm, 0.0);
  EXPECT_NEAR(trace_norm(Mat::Identity(2, 2)).norm, 2.0, 1e-14);
  Vec x(3), y(3);
  x << 1.0, cd(0, 2), 3.0;
  y << cd(1, 1), 0.5, -1.0;
  EXPECT_NEAR(trace_norm(x * y.adjoint()).norm, x.norm() * y.norm(), 1e-12);
  const auto t = trace_norm(Mat::Random(5, 5));
  double s = 0;
  for (std::size_t i = 0; i < t.singulars.size(); ++i) {
    s += t.singulars[i];
    EXPECT_GE(t.singulars[i], 0.0);
    if (i) EXPECT_GE(t.singulars[i - 1], t.singulars[i]);
  }
  EXPECT_NEAR(s, t.norm, 1e-12);
}

TEST(TraceNorm, TransposeAndConjugateInvariant) {
  for (int t = 0; t < 5; ++t) {
    const Mat A = Mat::Random(6, 6);
    const double n = trace_norm(A).norm;
    EXPECT_NEAR(trace_norm(A.transpose()).norm, n, 1e-12);
    EXPECT_NEAR(trace_norm(A.conjugate()).norm, n, 1e-12);
  }
}

TEST(Asymptotics, Examples) {
  const auto c = asymptotics(RadialFunction::constant(1.0), 50);
  EXPECT_EQ(c.c_plus, cd(1.0));
  EXPECT_EQ(c.c_minus, cd(0.0));
  ASSERT_TRUE(c.c_limit.has_value());
  EXPECT_EQ(*c.c_limit, cd(1.0));
  const auto a = asymptotics(RadialFunction::alternating(1.0), 50);
  EXPECT_EQ(a.c_plus, cd(0.0));
  EXPECT_EQ(a.c_minus, cd(1.0));
  EXPECT_TRUE(a.converged);
  EXPECT_FALSE(a.c_limit.has_value());
  const auto g = asymptotics(RadialFunction::geometric(0.5), 200);
  EXPECT_LT(std::abs(g.c_plus), 1e-15);
  EXPECT_TRUE(g.converged);
}

TEST(ClassNorm, ClosedForms) {
  EXPECT_NEAR(class_norm(RadialFunction::constant(1.0), NormClass::C).norm, 1.0, 1e-12);
  EXPECT_NEAR(class_norm(RadialFunction::alternating(1.0), NormClass::C).norm, 1.0, 1e-12);
  for (int i = 1; i <= 9; ++i) {
    const double r = i / 10.0;
    const auto g = RadialFunction::geometric(r);
    const auto c = class_norm(g, NormClass::C);
    const auto cp = class_norm(g, NormClass::Cprime);
    EXPECT_NEAR(c.norm, 1.0, 1e-8) << r;
    EXPECT_NEAR(cp.norm, 1.0, 1e-8) << r;
    EXPECT_NEAR(cp.reports[0].trace_norm, 1.0 / (1.0 + r), 1e-8);
    EXPECT_NEAR(cp.reports[1].trace_norm, r / (1.0 + r), 1e-8);
    EXPECT_TRUE(c.converged);
  }
}

TEST(ClassNorm, DeltaOracle) {
  // H_{delta_n} is supported on the anti-diagonals n and n-2.
  for (int n = 0; n <= 5; ++n) {
    const auto d = RadialFunction::delta(n);
    const Mat H = hankel(d, HankelKind::H, 10);
    Eigen::JacobiSVD<Mat> svd(H);
    EXPECT_NEAR(class_norm(d, NormClass::C, 10).norm, svd.singularValues().sum(), 1e-12);
  }
  EXPECT_NEAR(class_norm(RadialFunction::delta(0), NormClass::C).norm, 1.0, 1e-12);
}

TEST(ClassNorm, AlternatingIsNotCprimeConvergent) {
  EXPECT_FALSE(class_norm(RadialFunction::alternating(1.0), NormClass::Cprime).converged);
}

TEST(ClassNorm, TableStabilizesMonotonically) {
  const auto phi = corpus()[6];
  double prev = 0.0;
  for (int N = 8; N <= 40; N += 4) {
    const double v = class_norm(phi, NormClass::C, N).norm;
    EXPECT_GE(v, prev - 1e-12);
    if (N > 8) EXPECT_NEAR(v, prev, 1e-12);
    prev = v;
  }
}

TEST(RankOne, Decompositions) {
  EXPECT_TRUE(rank_one_decompose(RadialFunction::constant(1.0)).pairs.empty());
  const auto g = rank_one_decompose(RadialFunction::geometric(0.5));
  EXPECT_EQ(g.pairs.size(), 1u);
  EXPECT_NEAR(g.nuclear_sum, 1.0, 1e-9);
  const auto d = rank_one_decompose(RadialFunction::delta(0));
  EXPECT_EQ(d.pairs.size(), 1u);
  EXPECT_NEAR(d.nuclear_sum, 1.0, 1e-12);
}

TEST(RankOne, ReconstructsHankelAndNuclearSum) {
  for (const auto& phi : corpus()) {
    const int N = 60;
    const auto dec = rank_one_decompose(phi, N);
    const Mat H = hankel(phi, HankelKind::H, N);
    double nuc = 0.0;
    for (const auto& p : dec.pairs) nuc += p.x.norm() * p.y.norm();
    EXPECT_NEAR(nuc, dec.nuclear_sum, 1e-9);
    EXPECT_NEAR(dec.nuclear_sum, trace_norm(H).norm, 1e-8);
    for (int i = 0; i < N; i += 7)
      for (int j = 0; j < N; j += 5) EXPECT_NEAR(std::abs(dec.entry(i, j) - H(i, j)), 0.0, 1e-9);
  }
}

TEST(RankOne, ReconstructPsi) {
  const auto dec0 = rank_one_decompose(RadialFunction::constant(1.0), 20);
  EXPECT_NEAR(std::abs(reconstruct_psi(dec0, 1.0, 0.0, 3, 4) - 1.0), 0.0, 1e-15);
  const auto g = RadialFunction::geometric(0.5);
  const auto dec = rank_one_decompose(g);
  EXPECT_NEAR(std::abs(reconstruct_psi(dec, 0.0, 0.0, 0, 0) - 1.0), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(reconstruct_psi(dec, 0.0, 0.0, 1, 2) - 0.125), 0.0, 1e-9);
  for (const auto& phi : corpus()) {
    const int N = 200;
    const auto cn = class_norm(phi, NormClass::C, N);
    if (!cn.converged) continue;
    const auto d = rank_one_decompose(phi, N);
    for (int k = 0; k <= 20; k += 3)
      for (int l = 0; l <= 20; l += 4)
        EXPECT_NEAR(std::abs(reconstruct_psi(d, cn.asym.c_plus, cn.asym.c_minus, k, l) - phi(k + l)), 0.0, 1e-8);
  }
}

TEST(EvenLift, Basics) {
  const auto l = even_lift(RadialFunction::delta(0));
  for (int n = 0; n < 10; ++n) EXPECT_EQ(l(n), n == 0 ? cd(1.0) : cd(0.0));
  const auto c = even_lift(RadialFunction::constant(1.0));
  for (int n = 0; n < 10; ++n) EXPECT_EQ(c(n), n % 2 == 0 ? cd(1.0) : cd(0.0));
}

TEST(EvenLift, NormConsistency) {
  for (const auto& psi : corpus()) {
    const double a = class_norm(even_lift(psi), NormClass::C, 200).norm;
    const double b = class_norm(psi, NormClass::Cprime, 100).norm;
    EXPECT_NEAR(a, b, 1e-7);
  }
}
