#include "relgauss/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "relgauss/amalgam.hpp"
#include "relgauss/coxeter.hpp"
#include "relgauss/multiplier.hpp"
#include "relgauss/wick.hpp"

namespace relgauss {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Check make_check(std::string name, double value, double threshold) {
  return Check{std::move(name), value, threshold, std::isfinite(value) && value <= threshold};
}

Mat random_right_modular(const TruncatedFock& F, int n, int m, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  const Space& X = F.level(n);
  const Space& Y = F.level(m);
  Mat T = Mat::Zero(Y.half_dim(), X.half_dim());
  for (int c = 0; c < X.size(); ++c)
    for (int r = 0; r < Y.size(); ++r) {
      if (X.rb(c) != Y.rb(r)) continue;
      for (int a = 0; a < X.dl(c); ++a)
        for (int b = 0; b < Y.dl(r); ++b) T(Y.half_index(r, b), X.half_index(c, a)) = cd(nd(gen), nd(gen));
    }
  return T;
}

Vec random_vector(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  Vec v(dim);
  for (auto& x : v) x = cd(nd(gen), nd(gen));
  return v;
}

long dyck_paths(int k) {
  // walks of 2k unit steps from 0 back to 0 staying >= 0
  std::vector<long> h(2 * k + 2, 0);
  h[0] = 1;
  for (int s = 0; s < 2 * k; ++s) {
    std::vector<long> g(h.size(), 0);
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (!h[j]) continue;
      if (j + 1 < h.size()) g[j + 1] += h[j];
      if (j > 0) g[j - 1] += h[j];
    }
    h = std::move(g);
  }
  return h[0];
}

namespace {
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

std::vector<Member> fock_corpus() {
  std::vector<Member> out;
  auto add = [&](std::string label, Deformation d) {
    auto J = standard_involution(d.H);
    out.push_back({std::move(label), std::move(d), std::move(J)});
  };
  add("zero", zero_deformation(scalar_module(2)));
  for (double q : {0.3, -0.3, 0.7, -0.7}) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "q_flip(%+.1f)", q);
    add(buf, q_flip(2, q));
  }
  add("projection", diagonal_projection(2, {0}));
  auto a = build_amalgam(dihedral_spec());
  out.push_back({"amalgam", a.F, a.J});
  return out;
}

double max_level_defect(const std::function<double(int)>& f, int from, int to) {
  double d = 0.0;
  for (int n = from; n <= to; ++n) d = std::max(d, f(n));
  return d;
}

void coxeter_suite(int N, std::vector<Check>& out) {
  int failures = 0, cases = 0;
  for (int n = 1; n <= N; ++n)
    for (int m = 1; n + m <= N; ++m)
      for (int k = -std::min(n, m); n + k + m <= N; ++k) {
        if (n + k < 0 || k + m < 0) continue;
        ++cases;
        if (!check_lemma(n, k, m).ok()) ++failures;
      }
  out.push_back(make_check("lemma.failures", failures, 0));
  out.push_back(make_check("lemma.cases_checked", cases > 100 ? 0 : 1, 0));
  int bad = 0;
  for (int n = 1; n <= std::min(7, N - 1); ++n) {
    const auto perms = all_permutations(n);
    for (int k = 0; k <= n; ++k) {
      const Composition c{{k, n - k}};
      for (const auto& p : perms) {
        const auto s = coset_decompose(p, c);
        if (compose(s.coset_rep, s.block) != p || length(p) != length(s.coset_rep) + length(s.block) ||
            !increasing_on_blocks(s.coset_rep, c) || !preserves_blocks(s.block, c))
          ++bad;
      }
    }
  }
  out.push_back(make_check("coset.additivity_failures", bad, 0));
}

void fock_suite(int N, std::mt19937_64& gen, std::vector<Check>& out) {
  for (const auto& m : fock_corpus()) {
    const TruncatedFock F(m.def, N);
    out.push_back(make_check("min_eigenvalue." + m.label, std::max(0.0, max_level_defect([&](int n) { return -F.min_eigenvalue(n); }, 0, N)), 1e-10));
    const auto& fl = m.def.flags;
    if (fl.is_projection && fl.commuting_ok) {
      out.push_back(make_check("factorization." + m.label, max_level_defect([&](int n) {
        Mat P = Mat::Identity(F.raw(n).size(), F.raw(n).size());
        for (int i = 1; i < n; ++i) P = P * (Mat::Identity(P.rows(), P.cols()) - F.leg(n, i));
        return (F.D(n) - P).norm();
      }, 0, N), 1e-10));
      double iso = 0.0;
      for (int n = 0; n <= N; ++n)
        for (int k = 0; n + k <= N; ++k) {
          const Mat& I = F.I(n, k);
          iso = std::max(iso, spectral_norm(I * I.adjoint() - Mat::Identity(I.rows(), I.rows())));
        }
      out.push_back(make_check("isometry." + m.label, iso, 1e-10));
    }
    std::uniform_int_distribution<int> deg(0, 2);
    double prod = 0.0;
    for (int t = 0; t < 50; ++t) {
      const int n1 = deg(gen), m1 = deg(gen), n2 = deg(gen), m2 = deg(gen);
      const Mat S = random_right_modular(F, n1, m1, gen), T = random_right_modular(F, n2, m2, gen);
      const auto rep = F.compose_check(S, n1, m1, T, n2, m2);
      prod = std::max(prod, rep.defect / (1.0 + spectral_norm(S) * spectral_norm(T)));
    }
    out.push_back(make_check("prodL." + m.label, prod, 1e-9));
  }
}

void wick_suite(int N, std::mt19937_64& gen, std::vector<Check>& out) {
  for (const auto& m : fock_corpus()) {
    const TruncatedFock F(m.def, N);
    const WickCalculus W(F, m.J);
    double vac = 0.0, adj = 0.0, prod = 0.0;
    for (int n = 0; n <= N; ++n) {
      const Vec xi = random_vector(F.level_dim(n), gen);
      const auto w = W.word(n, xi);
      vac = std::max(vac, (F.apply(w.op, F.vacuum()) - F.embed(n, xi)).norm());
      adj = std::max(adj, (w.op.mat.adjoint() - W.word(n, W.applyJ(n, xi)).op.mat).norm() / (1.0 + w.op.mat.norm()));
    }
    for (int n = 1; n <= 2; ++n)
      for (int k2 = 1; k2 <= 2 && n + k2 <= N; ++k2) {
        const Vec xi = random_vector(F.level_dim(n), gen), eta = random_vector(F.level_dim(k2), gen);
        const Mat lhs = W.word(n, xi).op.mat * W.word(k2, eta).op.mat;
        Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
        for (int k = 0; k <= std::min(n, k2); ++k) rhs += W.word(n + k2 - 2 * k, W.boxtimes(xi, n, eta, k2, k)).op.mat;
        for (int l = 0; l + n + k2 <= N; ++l) {
          const int off = F.half_off(l), wd = F.level(l).half_dim();
          prod = std::max(prod, (lhs.middleCols(off, wd) - rhs.middleCols(off, wd)).norm() / (1.0 + lhs.norm()));
        }
      }
    out.push_back(make_check("vacuum." + m.label, vac, 1e-12));
    out.push_back(make_check("adjoint." + m.label, adj, 1e-9));
    out.push_back(make_check("product." + m.label, prod, 1e-9));
  }
  const auto def = zero_deformation(scalar_module(1));
  const TruncatedFock F(def, 10);
  const WickCalculus W(F, standard_involution(def.H));
  const Mat X = F.full_matrix(W.word(1, Vec::Ones(1)).op.mat);
  Vec v = F.vacuum();
  double cat = 0.0;
  for (int k = 0; k <= 4; ++k) {
    cat = std::max(cat, std::abs(F.vacuum().dot(v) - double(dyck_paths(k))));
    v = X * (X * v);
  }
  out.push_back(make_check("semicircle_moments", cat, 1e-12));
}

std::vector<std::pair<std::string, RadialFunction>> psi_corpus() {
  return {{"geometric(0.5)", RadialFunction::geometric(0.5)},
          {"geometric(-0.3)", RadialFunction::geometric(-0.3)},
          {"constant(1)", RadialFunction::constant(1.0)},
          {"delta(0)", RadialFunction::delta(0)},
          {"delta(2)", RadialFunction::delta(2)},
          {"geometric(0.5)+alternating(0.25)",
           RadialFunction::sum({RadialFunction::geometric(0.5), RadialFunction::alternating(0.25)})}};
}

void multiplier_suite(int N, std::mt19937_64& gen, std::vector<Check>& out) {
  std::vector<std::pair<std::string, Deformation>> defs{{"single_mode", zero_deformation(scalar_module(1))},
                                                         {"projection", diagonal_projection(2, {0})},
                                                         {"amalgam", build_amalgam(dihedral_spec()).F}};
  const auto psis = psi_corpus();
  for (const auto& [label, d] : defs) {
    const TruncatedFock F(d, N);
    const RadialCalculus R(F);
    double rho = 0.0, pxy = 0.0;
    for (int n = 0; n <= 2; ++n)
      for (int m = 0; m <= 2; ++m) {
        const auto L = F.creation(random_right_modular(F, n, m, gen), n, m);
        for (int l = 1; l <= 3; ++l)
          rho = std::max(rho, spectral_norm(R.rho(L, l).mat - L.mat * F.radial(tail_indicator(N, n + l)).mat));
        Sequence x(N + 8), y(N + 8);
        for (int p = 0; p < N + 8; ++p) {
          x[p] = std::pow(0.6, p) * cd(1.0, 0.1 * p);
          y[p] = std::pow(-0.5, p);
        }
        cd c = 0.0;
        for (int k = 0; k + std::max(n, m) < N + 8; ++k) c += x[k + m] * std::conj(y[k + n]);
        pxy = std::max(pxy, spectral_norm(R.phi_xy(L, x, y).op.mat - c * L.mat) / (1.0 + spectral_norm(L.mat)));
      }
    out.push_back(make_check("rho_shift." + label, rho, 1e-10));
    out.push_back(make_check("phi_xy." + label, pxy, 1e-9));
    for (const auto& [pname, psi] : psis) {
      const auto cn = class_norm(psi, NormClass::C, 200);
      const auto dec = rank_one_decompose(psi, 200);
      double def = 0.0;
      for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N && n + m <= 6; ++m) {
          const auto L = F.creation(random_right_modular(F, n, m, gen), n, m);
          const auto o = R.phi_decomposed(dec, cn.asym.c_plus, cn.asym.c_minus, L);
          def = std::max(def, spectral_norm(o.mat - psi(n + m) * L.mat) / (1.0 + spectral_norm(L.mat)));
        }
      out.push_back(make_check("phi_psi." + label + "." + pname, cn.converged ? def : INFINITY, 1e-8));
    }
  }
  const TruncatedFock F(diagonal_projection(2, {0}), 4);
  const RadialCalculus R(F);
  for (const auto& [pname, psi] : psis) {
    const auto cn = class_norm(psi, NormClass::C, 200);
    const auto dec = rank_one_decompose(psi, 200);
    const auto phi = [&](const Mat& A) {
      return R.phi_decomposed(dec, cn.asym.c_plus, cn.asym.c_minus, FockOperator{A, -1, -1}).mat;
    };
    double excess = -INFINITY;
    for (int k = 1; k <= 3; ++k) excess = std::max(excess, cb_lower_bound(phi, F, k, 40, gen()) - cn.norm);
    out.push_back(make_check("cb_bound." + pname, std::max(excess, 0.0), 1e-6));
  }
}

std::vector<ReducedWord> dihedral_words(const AmalgamSpec& s, int max_len) {
  std::vector<ReducedWord> out{ReducedWord{}};
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (out[j].length() == max_len) continue;
    for (int i = 0; i < 2; ++i) {
      if (out[j].length() > 0 && out[j].letters.back().first == i) continue;
      ReducedWord w = out[j];
      Element u = Element::zero(s.factors[i].algebra);
      u.blocks[0](0, 0) = 1.0;
      u.blocks[1](0, 0) = -1.0;
      w.letters.push_back({i, u});
      out.push_back(w);
    }
  }
  return out;
}

void amalgam_suite(int Nw, std::mt19937_64& gen, std::vector<Check>& out) {
  const auto spec = dihedral_spec();
  const AmalgamModel M(spec, Nw);
  out.push_back(make_check("corner.unitarity", M.unitarity_defect(), 1e-10));
  const auto words = dihedral_words(spec, Nw);
  double act = 0.0, mom = 0.0;
  for (const auto& w : words) {
    act = std::max(act, M.word_defect(w));
    if (w.length() > 0) mom = std::max(mom, std::abs(M.compress(M.word_operator(w))(0, 0)));
  }
  out.push_back(make_check("words.left_action", act, 1e-10));
  out.push_back(make_check("words.vacuum_moment", mom, 1e-10));
  for (const auto& [pname, psi] : std::vector<std::pair<std::string, RadialFunction>>{
           {"geometric(0.5)", RadialFunction::geometric(0.5)},
           {"delta(0)", RadialFunction::delta(0)},
           {"constant(1)", RadialFunction::constant(1.0)}}) {
    double d = 0.0;
    for (const auto& w : words) d = std::max(d, M.psi_multiplier(psi, w).defect);
    out.push_back(make_check("psi." + pname, d, 1e-8));
  }
  const auto& F = M.fock();
  std::uniform_int_distribution<int> lvl(0, std::min(2, F.N() / 3));
  auto word = [&]() {
    const int n = lvl(gen);
    return M.wick().word(n, random_vector(F.level_dim(n), gen)).op.mat;
  };
  double tr = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Mat A = word() * word(), B = word() * word();
    const cd ab = M.wick().vacuum_state({A * B, -1, -1}), ba = M.wick().vacuum_state({B * A, -1, -1});
    tr = std::max(tr, std::abs(ab - ba));
  }
  out.push_back(make_check("traciality", tr, 1e-9));
}
}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"coxeter", "fock", "wick", "multiplier", "amalgam"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = name;
  rep.seed = opt.seed;
  std::mt19937_64 gen(opt.seed);
  if (name == "all") {
    for (const auto& s : suite_names()) {
      const auto sub = run_suite(s, opt);
      for (auto c : sub.checks) {
        c.name = s + "." + c.name;
        rep.checks.push_back(std::move(c));
      }
    }
    rep.truncation = opt.N;
  } else if (name == "coxeter") {
    rep.truncation = opt.N > 0 ? opt.N : 8;
    coxeter_suite(rep.truncation, rep.checks);
  } else if (name == "fock") {
    rep.truncation = opt.N > 0 ? opt.N : 5;
    fock_suite(rep.truncation, gen, rep.checks);
  } else if (name == "wick") {
    rep.truncation = opt.N > 0 ? opt.N : 5;
    wick_suite(rep.truncation, gen, rep.checks);
  } else if (name == "multiplier") {
    rep.truncation = opt.N > 0 ? opt.N : 6;
    multiplier_suite(rep.truncation, gen, rep.checks);
  } else if (name == "amalgam") {
    // N counts words; Fock levels run to 2N
    rep.truncation = opt.N > 0 ? opt.N : 3;
    amalgam_suite(rep.truncation, gen, rep.checks);
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  std::sort(rep.checks.begin(), rep.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  return rep;
}

}  // namespace relgauss
