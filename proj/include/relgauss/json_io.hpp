#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "relgauss/amalgam.hpp"
#include "relgauss/fock.hpp"
#include "relgauss/radial.hpp"

namespace relgauss {

using json = nlohmann::json;

// Malformed or semantically invalid input document.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts a path to a JSON file or an inline JSON document.
json load_json(const std::string& file_or_inline);

// {"kind":"geometric","r":0.5} | {"kind":"table","values":[...],"tail":"zero"}
// | {"kind":"constant","value":1} | {"kind":"alternating","value":1}
// | {"kind":"delta","n":0} | {"kind":"even_lift","of":{...}} | {"kind":"sum","terms":[...]}
// Complex numbers are a number or [re, im].
RadialFunction radial_from_json(const json& j);
json radial_to_json(const RadialFunction& f);

// {"blocks":[{"dim":2,"weight":0.25}, ...]}
TracialAlgebra algebra_from_json(const json& j);
json algebra_to_json(const TracialAlgebra& M);

// {"algebra":{...},"lb":[...],"rb":[...]} or {"dim":d} for C^d over C.
StdBimodule bimodule_from_json(const json& j);

// {"kind":"zero","H":{...}} | {"kind":"q_flip","q":0.3,"dim":2}
// | {"kind":"amalgam","spec":{...}} | {"kind":"matrix","H":{...},"entries":[...]}
// "entries" is the reduced matrix on H (x) H, row-major or as nested rows.
Deformation deformation_from_json(const json& j);

// {"P":{...},"factors":[{"algebra":{...},"embedding":"unital_diagonal"}]}
AmalgamSpec amalgam_from_json(const json& j);
json amalgam_to_json(const AmalgamSpec& s);

cd complex_from_json(const json& j);
json complex_to_json(cd z);

}  // namespace relgauss
