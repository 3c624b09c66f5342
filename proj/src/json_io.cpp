#include "relgauss/json_io.hpp"

#include <fstream>
#include <sstream>

namespace relgauss {

namespace {
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Tail tail_from_string(const std::string& s) {
  if (s == "zero") return Tail::Zero;
  if (s == "constant") return Tail::Constant;
  if (s == "alternating") return Tail::AlternatingConstant;
  throw ParseError("unknown tail '" + s + "'");
}

std::string tail_name(Tail t) {
  switch (t) {
    case Tail::Zero: return "zero";
    case Tail::Constant: return "constant";
    case Tail::AlternatingConstant: return "alternating";
  }
  return "zero";
}
}  // namespace

json load_json(const std::string& src) {
  return guarded("input", [&] {
    const auto first = src.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (src[first] == '{' || src[first] == '[')) return json::parse(src);
    std::ifstream in(src);
    if (!in) throw ParseError("cannot open '" + src + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return json::parse(ss.str());
  });
}

cd complex_from_json(const json& j) {
  if (j.is_number()) return cd(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cd(j[0].get<double>(), j[1].get<double>());
  throw ParseError("expected a number or [re, im]");
}

json complex_to_json(cd z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

RadialFunction radial_from_json(const json& j) {
  return guarded("radial function", [&]() -> RadialFunction {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "geometric") return RadialFunction::geometric(complex_from_json(field(j, "r")));
    if (kind == "constant") return RadialFunction::constant(complex_from_json(field(j, "value")));
    if (kind == "alternating") return RadialFunction::alternating(complex_from_json(field(j, "value")));
    if (kind == "delta") return RadialFunction::delta(field(j, "n").get<int>());
    if (kind == "table") {
      std::vector<cd> vals;
      for (const auto& v : field(j, "values")) vals.push_back(complex_from_json(v));
      const Tail t = j.contains("tail") ? tail_from_string(j.at("tail").get<std::string>()) : Tail::Zero;
      const cd tv = j.contains("tail_value") ? complex_from_json(j.at("tail_value")) : cd(0.0);
      return RadialFunction::table(std::move(vals), t, tv);
    }
    if (kind == "even_lift") return even_lift(radial_from_json(field(j, "of")));
    if (kind == "sum") {
      std::vector<RadialFunction> terms;
      for (const auto& t : field(j, "terms")) terms.push_back(radial_from_json(t));
      return RadialFunction::sum(std::move(terms));
    }
    throw ParseError("unknown radial kind '" + kind + "'");
  });
}

json radial_to_json(const RadialFunction& f) {
  switch (f.kind()) {
    case RadialKind::Geometric: return {{"kind", "geometric"}, {"r", complex_to_json(f.ratio())}};
    case RadialKind::Constant: return {{"kind", "constant"}, {"value", complex_to_json(f.value())}};
    case RadialKind::Alternating: return {{"kind", "alternating"}, {"value", complex_to_json(f.value())}};
    case RadialKind::EvenLift: return {{"kind", "even_lift"}, {"of", radial_to_json(f.base())}};
    case RadialKind::Sum: {
      json terms = json::array();
      for (const auto& t : f.terms()) terms.push_back(radial_to_json(t));
      return {{"kind", "sum"}, {"terms", terms}};
    }
    case RadialKind::Table: {
      json vals = json::array();
      for (const auto& v : f.values()) vals.push_back(complex_to_json(v));
      json out = {{"kind", "table"}, {"values", vals}, {"tail", tail_name(f.tail())}};
      if (f.tail() != Tail::Zero) out["tail_value"] = complex_to_json(f.tail_value());
      return out;
    }
  }
  return {};
}

TracialAlgebra algebra_from_json(const json& j) {
  return guarded("algebra", [&] {
    std::vector<Block> blocks;
    for (const auto& b : field(j, "blocks")) blocks.push_back({field(b, "dim").get<int>(), field(b, "weight").get<double>()});
    return TracialAlgebra(std::move(blocks));
  });
}

json algebra_to_json(const TracialAlgebra& M) {
  json blocks = json::array();
  for (const auto& b : M.blocks) blocks.push_back({{"dim", b.dim}, {"weight", b.weight}});
  return {{"blocks", blocks}};
}

StdBimodule bimodule_from_json(const json& j) {
  return guarded("bimodule", [&] {
    StdBimodule H;
    if (j.contains("dim")) {
      const int d = j.at("dim").get<int>();
      if (d < 1) throw ParseError("bimodule dim must be >= 1");
      H.algebra = TracialAlgebra::scalars();
      H.lb.assign(d, 0);
      H.rb.assign(d, 0);
      return H;
    }
    H.algebra = algebra_from_json(field(j, "algebra"));
    H.lb = field(j, "lb").get<std::vector<int>>();
    H.rb = field(j, "rb").get<std::vector<int>>();
    if (H.lb.size() != H.rb.size() || H.lb.empty()) throw ParseError("lb and rb must be non-empty and equally long");
    for (std::size_t s = 0; s < H.lb.size(); ++s)
      if (H.lb[s] < 0 || H.rb[s] < 0 || H.lb[s] >= H.algebra.num_blocks() || H.rb[s] >= H.algebra.num_blocks())
        throw ParseError("block label out of range");
    return H;
  });
}

Deformation deformation_from_json(const json& j) {
  return guarded("deformation", [&]() -> Deformation {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "zero") return zero_deformation(j.contains("H") ? bimodule_from_json(j.at("H")) : bimodule_from_json({{"dim", 1}}));
    if (kind == "q_flip") return q_flip(j.value("dim", 2), field(j, "q").get<double>());
    if (kind == "amalgam") return build_amalgam(j.contains("spec") ? amalgam_from_json(j.at("spec")) : dihedral_spec()).F;
    if (kind == "matrix") {
      const StdBimodule H = bimodule_from_json(field(j, "H"));
      const auto hb = std::make_shared<const Basis>(Basis{H.lb, H.rb});
      const Space HH(H.algebra, {hb, hb});
      const int d = HH.size();
      const json& entries = field(j, "entries");
      // d rows of d entries, or d * d entries
      const bool nested = d > 1 && static_cast<int>(entries.size()) == d;
      std::vector<cd> flat;
      for (const auto& e : entries) {
        if (nested) {
          if (!e.is_array() || static_cast<int>(e.size()) != d) throw ParseError("matrix rows must have " + std::to_string(d) + " entries");
          for (const auto& x : e) flat.push_back(complex_from_json(x));
        } else {
          flat.push_back(complex_from_json(e));
        }
      }
      if (static_cast<int>(flat.size()) != d * d)
        throw ParseError("matrix deformation needs " + std::to_string(d * d) + " entries");
      Mat F(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) F(r, c) = flat[r * d + c];
      return make_deformation("matrix", H, F);
    }
    throw ParseError("unknown deformation kind '" + kind + "'");
  });
}

AmalgamSpec amalgam_from_json(const json& j) {
  return guarded("amalgam spec", [&] {
    AmalgamSpec s;
    if (j.contains("P")) s.P = algebra_from_json(j.at("P"));
    for (const auto& f : field(j, "factors"))
      s.factors.push_back({algebra_from_json(field(f, "algebra")), f.value("embedding", std::string("unital_diagonal"))});
    validate(s);
    return s;
  });
}

json amalgam_to_json(const AmalgamSpec& s) {
  json factors = json::array();
  for (const auto& f : s.factors) factors.push_back({{"algebra", algebra_to_json(f.algebra)}, {"embedding", f.embedding}});
  return {{"P", algebra_to_json(s.P)}, {"factors", factors}};
}

}  // namespace relgauss
