// Acceptance binary: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "relgauss/amalgam.hpp"
#include "relgauss/coxeter.hpp"
#include "relgauss/multiplier.hpp"
#include "relgauss/verify.hpp"
#include "relgauss/wick.hpp"

using namespace relgauss;

namespace {

struct Outcome {
  double value = 0.0;
  double tol = 0.0;
  std::string note;
};

StdBimodule scalar_module(int dim) {
  StdBimodule H;
  H.algebra = TracialAlgebra::scalars();
  H.lb.assign(dim, 0);
  H.rb.assign(dim, 0);
  return H;
}

struct Member {
  std::string label;
  Deformation def;
  Involution J;
};

std::vector<Member> corpus() {
  std::vector<Member> out;
  auto add = [&](std::string label, Deformation d) {
    auto J = standard_involution(d.H);
    out.push_back({std::move(label), std::move(d), std::move(J)});
  };
  add("zero", zero_deformation(scalar_module(2)));
  add("q+0.3", q_flip(2, 0.3));
  add("q-0.3", q_flip(2, -0.3));
  add("q+0.7", q_flip(2, 0.7));
  add("q-0.7", q_flip(2, -0.7));
  add("projection", diagonal_projection(2, {0}));
  auto a = build_amalgam(dihedral_spec());
  out.push_back({"amalgam", a.F, a.J});
  return out;
}

// p(1) < ... < p(a) and p(a+1) < ... < p(a+b)
bool shuffle_like(const std::vector<int>& p, int a) {
  for (int i = 1; i < static_cast<int>(p.size()); ++i)
    if (i != a && p[i - 1] > p[i]) return false;
  return true;
}

int inversions(const std::vector<int>& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
  return c;
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return v;
}

long bitmask_paths(int k) {
  long count = 0;
  for (long mask = 0; mask < (1L << (2 * k)); ++mask) {
    int h = 0;
    bool ok = true;
    for (int s = 0; s < 2 * k && ok; ++s) {
      h += (mask >> s) & 1 ? 1 : -1;
      ok = h >= 0;
    }
    count += ok && h == 0;
  }
  return count;
}

Outcome criterion1() {
  double dev = 0.0, closed = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double r = 0.1 * i;
    const auto phi = RadialFunction::geometric(r);
    dev = std::max(dev, std::abs(class_norm(phi, NormClass::C, 200).norm - 1.0));
    dev = std::max(dev, std::abs(class_norm(phi, NormClass::Cprime, 200).norm - 1.0));
    closed = std::max(closed, std::abs(trace_norm(hankel(phi, HankelKind::K, 200)).norm - 1.0 / (1.0 + r)));
    closed = std::max(closed, std::abs(trace_norm(hankel(phi, HankelKind::Ktilde, 200)).norm - r / (1.0 + r)));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "closed-form Hankel deviation %.2e", closed);
  return {std::max(dev, closed), 1e-8, buf};
}

Outcome criterion2() {
  const std::vector<RadialFunction> psis{
      RadialFunction::geometric(0.1),
      RadialFunction::geometric(0.5),
      RadialFunction::geometric(-0.5),
      RadialFunction::geometric(0.8),
      RadialFunction::geometric(cd(0.3, 0.2)),
      RadialFunction::constant(1.0),
      RadialFunction::geometric(-0.8),
      RadialFunction::delta(0),
      RadialFunction::delta(3),
      RadialFunction::sum({RadialFunction::table({1.0, 0.5, -0.25}), RadialFunction::constant(0.3)})};
  double dev = 0.0;
  for (const auto& psi : psis) {
    const auto a = class_norm(even_lift(psi), NormClass::C, 200);
    const auto b = class_norm(psi, NormClass::Cprime, 200);
    dev = std::max(dev, (a.converged && b.converged) ? std::abs(a.norm - b.norm) : INFINITY);
  }
  return {dev, 1e-7, "10 functions"};
}

Outcome criterion3() {
  int failures = 0, cases = 0;
  for (int n = 1; n <= 7; ++n)
    for (int m = 1; n + m <= 8; ++m)
      for (int k = -std::min(n, m); n + k + m <= 8; ++k) {
        ++cases;
        const int a = n + k, total = n + k + m;
        std::set<std::vector<int>> expected;
        std::vector<int> p = iota_vec(total);
        do {
          if (shuffle_like(p, a)) expected.insert(p);
        } while (std::next_permutation(p.begin(), p.end()));
        std::set<std::vector<int>> produced;
        std::size_t count = 0;
        for (const auto& t : lemma_decompose(n, k, m)) {
          produced.insert(t.assembled.images);
          ++count;
        }
        if (produced != expected || count != expected.size()) ++failures;
      }
  int bad = 0;
  for (int n = 1; n <= 7; ++n)
    for (int k = 0; k <= n; ++k) {
      std::vector<int> p = iota_vec(n);
      do {
        const auto s = coset_decompose(Permutation::from_images(p), Composition{{k, n - k}});
        const auto& u = s.coset_rep.images;
        const auto& v = s.block.images;
        std::vector<int> uv(n);
        for (int i = 0; i < n; ++i) uv[i] = u[v[i] - 1];
        bool block_ok = true;
        for (int i = 0; i < n; ++i) block_ok = block_ok && ((i < k) == (v[i] <= k));
        if (uv != p || inversions(p) != inversions(u) + inversions(v) || !shuffle_like(u, k) || !block_ok) ++bad;
      } while (std::next_permutation(p.begin(), p.end()));
    }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d lemma cases, %d lemma failures, %d coset failures", cases, failures, bad);
  return {double(failures + bad), 0.0, buf};
}

Outcome criterion4() {
  double neg = 0.0, fact = 0.0, iso = 0.0;
  const int N = 5;
  for (const auto& m : corpus()) {
    const TruncatedFock F(m.def, N);
    for (int n = 0; n <= N; ++n) {
      const Mat B = F.d_brute(n);
      neg = std::max(neg, (F.D(n) - B).norm());
      Eigen::ComplexEigenSolver<Mat> es(B);
      for (int i = 0; i < es.eigenvalues().size(); ++i) neg = std::max(neg, -es.eigenvalues()(i).real());
    }
    if (!(m.def.flags.is_projection && m.def.flags.commuting_ok)) continue;
    for (int n = 0; n <= N; ++n) {
      const int d = F.raw(n).size();
      Mat P = Mat::Identity(d, d);
      for (int i = 1; i < n; ++i) P = P * (Mat::Identity(d, d) - F.leg(n, i));
      fact = std::max(fact, (F.D(n) - P).norm());
      for (int k = 0; n + k <= N; ++k) {
        const Mat& I = F.I(n, k);
        iso = std::max(iso, spectral_norm(I * I.adjoint() - Mat::Identity(I.rows(), I.rows())));
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "negativity %.2e, factorization %.2e, isometry %.2e", neg, fact, iso);
  return {std::max({neg, fact, iso}), 1e-10, buf};
}

Outcome criterion5() {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> deg(0, 2);
  double worst = 0.0;
  for (const auto& m : corpus()) {
    const TruncatedFock F(m.def, 5);
    for (int t = 0; t < 50; ++t) {
      const int n1 = deg(gen), m1 = deg(gen), n2 = deg(gen), m2 = deg(gen);
      const Mat S = random_right_modular(F, n1, m1, gen), T = random_right_modular(F, n2, m2, gen);
      const auto rep = F.compose_check(S, n1, m1, T, n2, m2);
      worst = std::max(worst, rep.defect / (1.0 + spectral_norm(S) * spectral_norm(T)));
    }
  }
  return {worst, 1e-9, "50 pairs x 7 deformations"};
}

Outcome criterion6() {
  std::mt19937_64 gen(6);
  double vac = 0.0, adj = 0.0, prod = 0.0;
  const int N = 5;
  for (const auto& m : corpus()) {
    const TruncatedFock F(m.def, N);
    const WickCalculus W(F, m.J);
    for (int n = 0; n <= N; ++n) {
      const Vec xi = random_vector(F.level_dim(n), gen);
      const auto w = W.word(n, xi);
      vac = std::max(vac, (F.apply(w.op, F.vacuum()) - F.embed(n, xi)).norm());
      adj = std::max(adj, (w.op.mat.adjoint() - W.word(n, W.applyJ(n, xi)).op.mat).norm() / (1.0 + w.op.mat.norm()));
    }
    for (int n = 1; n <= 2; ++n)
      for (int q = 1; q <= 2; ++q) {
        const Vec xi = random_vector(F.level_dim(n), gen), eta = random_vector(F.level_dim(q), gen);
        const Mat lhs = W.word(n, xi).op.mat * W.word(q, eta).op.mat;
        Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
        for (int k = 0; k <= std::min(n, q); ++k) rhs += W.word(n + q - 2 * k, W.boxtimes(xi, n, eta, q, k)).op.mat;
        for (int l = 0; l + n + q <= N; ++l) {
          const int off = F.half_off(l), wd = F.level(l).half_dim();
          prod = std::max(prod, (lhs.middleCols(off, wd) - rhs.middleCols(off, wd)).norm() / (1.0 + lhs.norm()));
        }
      }
  }
  const auto def = zero_deformation(scalar_module(1));
  const TruncatedFock F(def, 10);
  const WickCalculus W(F, standard_involution(def.H));
  const Mat X = F.full_matrix(W.word(1, Vec::Ones(1)).op.mat);
  Vec v = F.vacuum();
  double cat = 0.0;
  const long catalan[] = {1, 1, 2, 5, 14};
  for (int k = 0; k <= 4; ++k) {
    const double moment = F.vacuum().dot(v).real();
    cat = std::max({cat, std::abs(moment - double(bitmask_paths(k))), std::abs(moment - double(catalan[k]))});
    v = X * (X * v);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "vacuum %.2e, adjoint %.2e, product %.2e, moments %.2e", vac, adj, prod, cat);
  return {std::max({vac, adj, prod, cat}), 1e-9, buf};
}

Outcome criterion7() {
  const AmalgamModel M(dihedral_spec(), 3);
  const auto& F = M.fock();
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> lvl(0, 2);
  auto word = [&]() {
    const int n = lvl(gen);
    return M.wick().word(n, random_vector(F.level_dim(n), gen)).op.mat;
  };
  double tr = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Mat A = word() * word(), B = word() * word();
    tr = std::max(tr, std::abs(M.wick().vacuum_state({A * B, -1, -1}) - M.wick().vacuum_state({B * A, -1, -1})));
  }
  return {tr, 1e-9, "100 pairs"};
}

Outcome criterion8() {
  std::mt19937_64 gen(8);
  const int N = 6;
  double rho = 0.0, pxy = 0.0;
  for (const auto& d : {zero_deformation(scalar_module(1)), diagonal_projection(2, {0}), build_amalgam(dihedral_spec()).F}) {
    const TruncatedFock F(d, N);
    const RadialCalculus R(F);
    for (int n = 0; n <= 2; ++n)
      for (int m = 0; m <= 2; ++m) {
        const auto L = F.creation(random_right_modular(F, n, m, gen), n, m);
        for (int l = 1; l <= 3; ++l) {
          std::vector<cd> q(N + 1, 0.0);
          for (int p = n + l; p <= N; ++p) q[p] = 1.0;
          rho = std::max(rho, spectral_norm(R.rho(L, l).mat - L.mat * F.radial(q).mat));
        }
        Sequence x(N + 12), y(N + 12);
        for (int p = 0; p < N + 12; ++p) {
          x[p] = std::pow(0.6, p) * cd(1.0, 0.1 * p);
          y[p] = std::pow(-0.5, p);
        }
        cd c = 0.0;
        for (int k = 0; k + std::max(n, m) < N + 12; ++k) c += x[k + m] * std::conj(y[k + n]);
        pxy = std::max(pxy, spectral_norm(R.phi_xy(L, x, y).op.mat - c * L.mat) / (1.0 + spectral_norm(L.mat)));
      }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "rho %.2e (tol 1e-10), phi_xy %.2e (tol 1e-9)", rho, pxy);
  // both tolerances folded: report the larger ratio to its own tolerance
  return {std::max(rho / 1e-10, pxy / 1e-9), 1.0, buf};
}

std::vector<RadialFunction> psi_six() {
  return {RadialFunction::geometric(0.5),
          RadialFunction::geometric(-0.3),
          RadialFunction::constant(1.0),
          RadialFunction::delta(0),
          RadialFunction::delta(2),
          RadialFunction::sum({RadialFunction::geometric(0.5), RadialFunction::alternating(0.25)})};
}

Outcome criterion9() {
  std::mt19937_64 gen(9);
  double def = 0.0;
  const int N = 6;
  for (const auto& d : {diagonal_projection(2, {0}), build_amalgam(dihedral_spec()).F}) {
    const TruncatedFock F(d, N);
    const RadialCalculus R(F);
    for (int n = 0; n <= N; ++n)
      for (int m = 0; n + m <= 6; ++m) {
        const auto L = F.creation(random_right_modular(F, n, m, gen), n, m);
        for (const auto& psi : psi_six()) {
          const auto res = R.phi_psi(psi, L);
          def = std::max(def, spectral_norm(res.op.mat - psi(n + m) * L.mat) / (1.0 + spectral_norm(L.mat)));
        }
      }
  }
  const TruncatedFock F(diagonal_projection(2, {0}), 4);
  const RadialCalculus R(F);
  double excess = -INFINITY;
  for (const auto& psi : psi_six()) {
    const auto cn = class_norm(psi, NormClass::C, 200);
    const auto dec = rank_one_decompose(psi, 200);
    const auto phi = [&](const Mat& A) {
      return R.phi_decomposed(dec, cn.asym.c_plus, cn.asym.c_minus, FockOperator{A, -1, -1}).mat;
    };
    for (int k = 1; k <= 3; ++k) excess = std::max(excess, cb_lower_bound(phi, F, k, 200, gen()) - cn.norm);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "multiplier defect %.2e (tol 1e-8), cb excess %.2e (tol 1e-6)", def, excess);
  return {std::max(def / 1e-8, excess / 1e-6), 1.0, buf};
}

// D_infinity: alternating words in generators 0, 1 with a^2 = b^2 = 1.
std::vector<int> group_product(std::vector<int> g, const std::vector<int>& h) {
  for (int x : h) {
    if (!g.empty() && g.back() == x)
      g.pop_back();
    else
      g.push_back(x);
  }
  return g;
}

Outcome criterion10() {
  const auto spec = dihedral_spec();
  const int Nw = 3;
  const AmalgamModel M(spec, Nw);
  const auto& L2 = M.l2();
  auto letters = [&](const std::vector<int>& g) {
    ReducedWord w;
    for (int i : g) {
      Element u = Element::zero(spec.factors[i].algebra);
      u.blocks[0](0, 0) = 1.0;
      u.blocks[1](0, 0) = -1.0;
      w.letters.push_back({i, u});
    }
    return w;
  };
  auto key = [](const std::vector<int>& g) {
    std::vector<std::pair<int, int>> k;
    for (int i : g) k.push_back({i, 0});
    return k;
  };
  std::vector<std::vector<int>> words{{}};
  for (std::size_t j = 0; j < words.size(); ++j)
    for (int i = 0; i < 2; ++i)
      if (static_cast<int>(words[j].size()) < Nw && (words[j].empty() || words[j].back() != i)) {
        auto w = words[j];
        w.push_back(i);
        words.push_back(w);
      }
  // basis sign of each group element in the reference word basis
  std::map<std::vector<int>, cd> sign;
  for (const auto& h : words) sign[h] = L2.word_vector(letters(h))(L2.index(key(h)));
  double worst = 0.0, reported = 0.0;
  for (const auto& psi : {RadialFunction::geometric(0.5), RadialFunction::delta(0), RadialFunction::constant(1.0)})
    for (const auto& g : words) {
      const int n = static_cast<int>(g.size());
      const auto rep = M.psi_multiplier(psi, letters(g));
      reported = std::max(reported, rep.defect);
      Mat G = Mat::Zero(L2.dim(), L2.dim());
      for (const auto& h : words) {
        if (static_cast<int>(h.size()) + n > Nw) continue;
        const auto gh = group_product(g, h);
        G(L2.index(key(gh)), L2.index(key(h))) = std::conj(sign[gh]) * sign[h];
      }
      worst = std::max(worst, window_norm(rep.corner - psi(n) * G, M.window(n)));
    }
  char buf[96];
  std::snprintf(buf, sizeof buf, "group oracle %.2e, model defect %.2e", worst, reported);
  return {std::max(worst, reported), 1e-8, buf};
}

}  // namespace

int main(int argc, char** argv) {
  // optional argument: run a single criterion
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  struct Spec {
    int id;
    double limit;
    std::function<Outcome()> run;
  };
  // limit 0: no runtime bound
  const std::vector<Spec> criteria{{1, 5, criterion1},  {2, 10, criterion2}, {3, 30, criterion3}, {4, 60, criterion4},
                                   {5, 0, criterion5},  {6, 0, criterion6},  {7, 0, criterion7},  {8, 0, criterion8},
                                   {9, 120, criterion9}, {10, 60, criterion10}};
  int failed = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::string err;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.value = INFINITY;
      err = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = err.empty() && std::isfinite(o.value) && o.value <= o.tol && (c.limit <= 0 || secs < c.limit);
    failed += !ok;
    char limit[32] = "none";
    if (c.limit > 0) std::snprintf(limit, sizeof limit, "%.0fs", c.limit);
    std::printf("criterion %2d: %s  value=%.3e tol=%.1e time=%.2fs limit=%s  %s%s\n", c.id, ok ? "PASS" : "FAIL",
                o.value, o.tol, secs, limit, o.note.c_str(), err.empty() ? "" : (" error: " + err).c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
