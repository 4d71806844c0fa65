#include "fanoqh/report.hpp"

#include <cmath>
#include <sstream>

#include "fanoqh/errors.hpp"

namespace fanoqh {

namespace {

// JSON has no infinities; clamp them so dumps stay valid.
Json finite(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? 1e308 : -1e308;
  return v;
}

}  // namespace

Json to_json(const LatticePolytope& p) {
  Json j;
  j["dim"] = p.dim();
  j["vertices"] = Json::array();
  for (const auto& v : p.vertices()) j["vertices"].push_back(v);
  return j;
}

LatticePolytope polytope_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("polytope JSON must be an object", 0);
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ParseError("missing integer field \"dim\"", 0);
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw ParseError("missing array field \"vertices\"", 0);
  const auto dim = j["dim"].get<std::int64_t>();
  if (dim < 1) throw ParseError("\"dim\" must be positive", 0);
  std::vector<LatticeVector> points;
  for (const auto& row : j["vertices"]) {
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != dim) {
      throw ParseError("every vertex must be an integer array of length dim", 0);
    }
    LatticeVector v;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw ParseError("vertex coordinates must be integers", 0);
      v.push_back(x.get<std::int64_t>());
    }
    points.push_back(std::move(v));
  }
  return LatticePolytope::from_vertices(static_cast<int>(dim), points);
}

LatticePolytope polytope_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  return polytope_from_json(j);
}

Json to_json(const LaurentPoly& w) {
  Json out = Json::array();
  for (const auto& [e, c] : w.terms()) {
    Json t;
    t["exps"] = e;
    t["coeff"] = c.str();
    out.push_back(std::move(t));
  }
  return out;
}

LaurentPoly laurent_from_json(int dim, const Json& j) {
  if (!j.is_array()) throw ParseError("polynomial JSON must be an array", 0);
  LaurentPoly w(dim);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exps") || !t.contains("coeff") || !t["coeff"].is_string()) {
      throw ParseError("term must be {exps, coeff}", 0);
    }
    const auto e = t["exps"].get<ExponentVector>();
    if (static_cast<int>(e.size()) != dim) throw ParseError("exponent length mismatch", 0);
    try {
      w.add_term(e, Rational(t["coeff"].get<std::string>()));
    } catch (const std::runtime_error& err) {
      throw ParseError(std::string("bad coefficient: ") + err.what(), 0);
    }
  }
  return w;
}

Json to_json(const Complex& z) { return Json::array({finite(z.real()), finite(z.imag())}); }

Json to_json(const CriticalSet& set) {
  Json out = Json::array();
  for (const auto& p : set.points) {
    Json j;
    j["coords"] = Json::array();
    for (const auto& c : p.coords) j["coords"].push_back(to_json(c));
    j["residual"] = finite(p.residual);
    Json meta = Json::array();
    for (const auto& b : p.blocks) {
      Json m;
      m["atom"] = to_string(b.atom);
      m["offset"] = b.offset;
      if (b.meta) {
        m["L"] = b.meta->L;
        m["A"] = to_json(b.meta->A);
        m["B"] = to_json(b.meta->B);
        m["Z"] = to_json(b.meta->Z);
        m["assignment"] = b.meta->assignment;
      }
      meta.push_back(std::move(m));
    }
    j["meta"] = std::move(meta);
    out.push_back(std::move(j));
  }
  return out;
}

Json to_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["detail"] = c.detail;
  j["worst_margin"] = finite(c.worst_margin);
  return j;
}

Json to_json(const SemisimplicityReport& r) {
  Json j;
  j["input"] = r.input;
  j["dim"] = r.dim;
  j["critical_count"] = r.critical_count;
  j["expected_count"] = r.expected_count;
  j["points"] = Json::array();
  for (const auto& p : r.points) {
    Json pj;
    pj["coords"] = Json::array();
    for (const auto& c : p.coords) pj["coords"].push_back(to_json(c));
    pj["residual"] = finite(p.residual);
    pj["det_hessian"] = to_json(p.det_hessian);
    pj["structured_det"] = p.structured_det ? to_json(*p.structured_det) : Json(nullptr);
    pj["degenerate"] = p.degenerate;
    j["points"].push_back(std::move(pj));
  }
  j["min_abs_det"] = finite(r.min_abs_det);
  j["checks"] = Json::array();
  for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
  j["verdict"] = r.verdict ? Json(to_string(*r.verdict)) : Json(nullptr);
  j["detail"] = r.detail;
  if (!r.coordinate_permutation.empty()) j["coordinate_permutation"] = r.coordinate_permutation;
  return j;
}

std::string render_json(const SemisimplicityReport& r) { return to_json(r).dump(2) + "\n"; }

std::string render_text(const SemisimplicityReport& r) {
  std::ostringstream os;
  os << "input:          " << r.input << "\n";
  os << "dim:            " << r.dim << "\n";
  os << "verdict:        " << (r.verdict ? to_string(*r.verdict) : std::string("none")) << "\n";
  if (!r.detail.empty()) os << "detail:         " << r.detail << "\n";
  os << "critical count: " << r.critical_count << " (expected " << r.expected_count << ")\n";
  os << "min |det|:      " << r.min_abs_det << "\n";
  std::size_t degenerate = 0;
  for (const auto& p : r.points) degenerate += p.degenerate ? 1 : 0;
  os << "degenerate:     " << degenerate << "\n";
  os << "checks:\n";
  for (const auto& c : r.checks) {
    os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << "  " << c.detail << "\n";
  }
  return os.str();
}

}  // namespace fanoqh
