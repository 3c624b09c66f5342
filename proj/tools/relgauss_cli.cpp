#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relgauss/amalgam.hpp"
#include "relgauss/json_io.hpp"
#include "relgauss/multiplier.hpp"
#include "relgauss/radial.hpp"
#include "relgauss/verify.hpp"

using namespace relgauss;

namespace {

enum Exit { kOk = 0, kFail = 1, kParse = 2, kNoConvergence = 3 };

struct Config {
  std::string phi = R"({"kind":"geometric","r":0.5})";
  std::string cls = "C";
  int trunc = 200;
  double tol = 1e-9;
  unsigned long seed = 1;
  std::string suite = "all";
  std::string out = "json";
  std::string spec;
  std::string family = "geometric";
  std::string grid;
};

NormClass parse_class(const std::string& s) {
  if (s == "C") return NormClass::C;
  if (s == "Cprime") return NormClass::Cprime;
  throw ParseError("class must be C or Cprime");
}

json norm_report(const ClassNorm& cn) {
  json reps = json::array();
  for (const auto& r : cn.reports) {
    const char* k = r.kind == HankelKind::H ? "H" : r.kind == HankelKind::K ? "K" : "Ktilde";
    reps.push_back({{"hankel", k}, {"trace_norm", r.trace_norm}, {"truncation", r.truncation}, {"converged", r.converged}});
  }
  json j = {{"norm", cn.norm},
            {"converged", cn.converged},
            {"c_plus", complex_to_json(cn.asym.c_plus)},
            {"c_minus", complex_to_json(cn.asym.c_minus)},
            {"hankel", reps}};
  j["c_limit"] = cn.asym.c_limit ? complex_to_json(*cn.asym.c_limit) : json(nullptr);
  return j;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

// CSV view: one row per element of `rows`, or the scalar fields of the report.
void print_csv(const json& report, const char* rows_key) {
  if (rows_key && report.contains(rows_key)) {
    const auto& rows = report.at(rows_key);
    if (rows.empty()) return;
    std::vector<std::string> cols, meta;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) cols.push_back(it.key());
    for (const char* k : {"seed", "tol", "truncation"})
      if (report.contains(k)) meta.push_back(k);
    for (std::size_t c = 0; c < cols.size(); ++c) std::cout << (c ? "," : "") << cols[c];
    for (const auto& m : meta) std::cout << "," << m;
    std::cout << "\n";
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < cols.size(); ++c) std::cout << (c ? "," : "") << csv_cell(r.value(cols[c], json()));
      for (const auto& m : meta) std::cout << "," << csv_cell(report.at(m));
      std::cout << "\n";
    }
    return;
  }
  std::vector<std::string> cols;
  for (auto it = report.begin(); it != report.end(); ++it)
    if (!it->is_structured()) cols.push_back(it.key());
  for (std::size_t c = 0; c < cols.size(); ++c) std::cout << (c ? "," : "") << cols[c];
  std::cout << "\n";
  for (std::size_t c = 0; c < cols.size(); ++c) std::cout << (c ? "," : "") << csv_cell(report.at(cols[c]));
  std::cout << "\n";
}

void emit(const Config& cfg, const json& report, const char* rows_key = nullptr) {
  if (cfg.out == "csv")
    print_csv(report, rows_key);
  else
    std::cout << report.dump(2) << "\n";
}

int cmd_norm(const Config& cfg) {
  const RadialFunction phi = radial_from_json(load_json(cfg.phi));
  const auto cls = parse_class(cfg.cls);
  const auto cn = class_norm(phi, cls, cfg.trunc, cfg.tol);
  json rep = norm_report(cn);
  rep["command"] = "norm";
  rep["phi"] = radial_to_json(phi);
  rep["class"] = cfg.cls;
  rep["truncation"] = cfg.trunc;
  rep["tol"] = cfg.tol;
  emit(cfg, rep);
  return cn.converged ? kOk : kNoConvergence;
}

int cmd_decompose(const Config& cfg) {
  const RadialFunction phi = radial_from_json(load_json(cfg.phi));
  const auto cn = class_norm(phi, NormClass::C, cfg.trunc, cfg.tol);
  const auto dec = rank_one_decompose(phi, cfg.trunc, cfg.tol);
  json pairs = json::array();
  for (std::size_t k = 0; k < dec.pairs.size(); ++k) {
    json x = json::array(), y = json::array();
    for (int i = 0; i < dec.pairs[k].x.size(); ++i) x.push_back(complex_to_json(dec.pairs[k].x(i)));
    for (int i = 0; i < dec.pairs[k].y.size(); ++i) y.push_back(complex_to_json(dec.pairs[k].y(i)));
    pairs.push_back({{"index", k}, {"x", x}, {"y", y}});
  }
  json rep = {{"command", "decompose"}, {"phi", radial_to_json(phi)}, {"truncation", cfg.trunc}, {"tol", cfg.tol},
              {"nuclear_sum", dec.nuclear_sum}, {"norm", cn.norm}, {"converged", cn.converged},
              {"c_plus", complex_to_json(cn.asym.c_plus)}, {"c_minus", complex_to_json(cn.asym.c_minus)},
              {"rank", dec.pairs.size()}, {"pairs", pairs}};
  emit(cfg, rep);
  return cn.converged ? kOk : kNoConvergence;
}

int cmd_verify(const Config& cfg, bool trunc_given) {
  SuiteOptions opt;
  opt.seed = cfg.seed;
  opt.N = trunc_given ? cfg.trunc : -1;
  SuiteReport r;
  try {
    r = run_suite(cfg.suite, opt);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}});
  json rep = {{"command", "verify"}, {"suite", r.suite}, {"seed", r.seed}, {"truncation", r.truncation},
              {"tol", "per check"}, {"passed", r.passed()}, {"checks", checks}};
  emit(cfg, rep, "checks");
  return r.passed() ? kOk : kFail;
}

std::vector<double> parse_grid(const std::string& s, const std::vector<double>& dflt) {
  if (s.empty()) return dflt;
  std::vector<double> g;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      g.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ParseError("bad grid value '" + tok + "'");
    }
  }
  return g;
}

int cmd_bound_table(const Config& cfg) {
  std::vector<double> grid;
  if (cfg.family == "geometric") {
    grid = parse_grid(cfg.grid, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
  } else if (cfg.family == "constant") {
    grid = parse_grid(cfg.grid, {1.0});
  } else if (cfg.family == "delta") {
    grid = parse_grid(cfg.grid, {0, 1, 2, 3, 4, 5});
  } else {
    throw ParseError("family must be geometric, constant or delta");
  }
  // Phi_phi on the single-mode free Fock space at level 4
  StdBimodule H;
  H.algebra = TracialAlgebra::scalars();
  H.lb = {0};
  H.rb = {0};
  const TruncatedFock F(zero_deformation(H), 4);
  const RadialCalculus R(F);
  json rows = json::array();
  bool all_converged = true;
  for (double p : grid) {
    RadialFunction phi = cfg.family == "geometric" ? RadialFunction::geometric(p)
                         : cfg.family == "constant" ? RadialFunction::constant(p)
                                                    : RadialFunction::delta(static_cast<int>(p));
    const auto c = class_norm(phi, NormClass::C, cfg.trunc, cfg.tol);
    const auto cp = class_norm(phi, NormClass::Cprime, cfg.trunc, cfg.tol);
    const auto dec = rank_one_decompose(phi, cfg.trunc, cfg.tol);
    const auto map = [&](const Mat& A) {
      return R.phi_decomposed(dec, c.asym.c_plus, c.asym.c_minus, FockOperator{A, -1, -1}).mat;
    };
    const double cb = cb_lower_bound(map, F, 2, 20, cfg.seed);
    all_converged = all_converged && c.converged && cp.converged;
    rows.push_back({{"param", p}, {"norm_C", c.norm}, {"norm_Cprime", cp.norm}, {"cb_lower_bound", cb},
                    {"converged", c.converged && cp.converged}});
  }
  json rep = {{"command", "bound-table"}, {"family", cfg.family}, {"truncation", cfg.trunc}, {"tol", cfg.tol},
              {"seed", cfg.seed}, {"rows", rows}};
  emit(cfg, rep, "rows");
  return all_converged ? kOk : kNoConvergence;
}

// Random alternating words of every length and both starting factors.
std::vector<ReducedWord> demo_words(const AmalgamSpec& s, int Nw, unsigned long seed) {
  std::vector<ReducedWord> out{ReducedWord{}};
  const int k = static_cast<int>(s.factors.size());
  unsigned long r = seed;
  for (int len = 1; len <= Nw; ++len)
    for (int first = 0; first < k; ++first) {
      if (k == 1 && len > 1) break;
      ReducedWord w;
      for (int j = 0; j < len; ++j) {
        const int i = k == 1 ? 0 : (j % 2 == 0 ? first : (first + 1) % k);
        const auto& M = s.factors[i].algebra;
        Element x = Element::random(M, r++);
        x = x + Element::one(M) * (-trace(M, x));
        w.letters.push_back({i, x});
      }
      out.push_back(w);
    }
  return out;
}

int cmd_amalgam(const Config& cfg, bool trunc_given) {
  const AmalgamSpec spec = cfg.spec.empty() ? dihedral_spec() : amalgam_from_json(load_json(cfg.spec));
  const RadialFunction psi = radial_from_json(load_json(cfg.phi));
  const int Nw = trunc_given ? cfg.trunc : 3;
  if (Nw < 1) throw ParseError("word truncation must be >= 1");
  const AmalgamModel M(spec, Nw, 1e-10);
  json words = json::array();
  bool ok = M.unitarity_defect() < 1e-10;
  double bound = 0.0;
  for (const auto& w : demo_words(spec, Nw, cfg.seed)) {
    const auto r = M.psi_multiplier(psi, w, 200, cfg.tol);
    const double act = M.word_defect(w);
    bound = r.bound;
    json factors = json::array();
    for (const auto& [i, x] : w.letters) factors.push_back(i);
    words.push_back({{"length", w.length()}, {"factors", factors}, {"left_action_defect", act},
                     {"psi_defect", r.defect}, {"psi_n", complex_to_json(psi(w.length()))}});
    ok = ok && act < 1e-10 && r.defect < 1e-8;
  }
  json rep = {{"command", "amalgam"}, {"spec", amalgam_to_json(spec)}, {"phi", radial_to_json(psi)},
              {"truncation", Nw}, {"fock_levels", 2 * Nw}, {"tol", cfg.tol}, {"seed", cfg.seed},
              {"corner_dim", M.l2().dim()}, {"unitarity_defect", M.unitarity_defect()},
              {"bound_Cprime", bound}, {"passed", ok}, {"words", words}};
  emit(cfg, rep, "words");
  return ok ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial multipliers on relative Gaussian constructions"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* s) {
    s->add_option("--trunc", cfg.trunc, "Truncation N")->check(CLI::PositiveNumber);
    s->add_option("--tol", cfg.tol, "Tolerance")->check(CLI::PositiveNumber);
    s->add_option("--seed", cfg.seed, "Random seed");
    s->add_option("--out", cfg.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto* norm = app.add_subcommand("norm", "Class norm of a radial function");
  norm->add_option("--phi", cfg.phi, "Radial function: file or inline JSON");
  norm->add_option("--class", cfg.cls, "C or Cprime");
  common(norm);
  auto* dec = app.add_subcommand("decompose", "Rank-one decomposition of the Hankel kernel");
  dec->add_option("--phi", cfg.phi, "Radial function: file or inline JSON");
  common(dec);
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("--suite", cfg.suite, "coxeter, fock, wick, multiplier, amalgam or all");
  common(ver);
  auto* bt = app.add_subcommand("bound-table", "Norms and cb lower bounds over a parametric family");
  bt->add_option("--family", cfg.family, "geometric, constant or delta");
  bt->add_option("--grid", cfg.grid, "Comma separated parameters");
  common(bt);
  auto* am = app.add_subcommand("amalgam", "Amalgamated free product demo");
  am->add_option("--spec", cfg.spec, "Amalgam spec: file or inline JSON (default: dihedral)");
  am->add_option("--phi", cfg.phi, "Radial function in class Cprime");
  common(am);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  const auto given = [](CLI::App* s) { return s->count("--trunc") > 0; };
  try {
    if (*norm) return cmd_norm(cfg);
    if (*dec) return cmd_decompose(cfg);
    if (*ver) return cmd_verify(cfg, given(ver));
    if (*bt) return cmd_bound_table(cfg);
    if (*am) return cmd_amalgam(cfg, given(am));
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kFail;
}
