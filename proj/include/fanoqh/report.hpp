#pragma once

// JSON and text serialization of polytopes, polynomials, critical sets and
// reports. Output is deterministic: fixed key order, shortest round-trip
// doubles.

#include <string>

#include <json.hpp>

#include "fanoqh/critsolve.hpp"
#include "fanoqh/laurent.hpp"
#include "fanoqh/polytope.hpp"
#include "fanoqh/verify.hpp"

namespace fanoqh {

using Json = nlohmann::ordered_json;

Json to_json(const LatticePolytope& p);
// Throws ParseError on a malformed document, GeometryError on a degenerate
// vertex set.
LatticePolytope polytope_from_json(const Json& j);
LatticePolytope polytope_from_text(const std::string& text);

// List of {exps, coeff} with coeff as "p/q" (or "p").
Json to_json(const LaurentPoly& w);
LaurentPoly laurent_from_json(int dim, const Json& j);

Json to_json(const Complex& z);
Json to_json(const CriticalSet& set);
Json to_json(const CheckResult& c);
Json to_json(const SemisimplicityReport& r);

std::string render_json(const SemisimplicityReport& r);
std::string render_text(const SemisimplicityReport& r);

}  // namespace fanoqh
