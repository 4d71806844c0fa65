#include <doctest.h>

#include <algorithm>

#include "fanoqh/report.hpp"
#include "fanoqh/verify.hpp"

using namespace fanoqh;

namespace {

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* find_check(const SemisimplicityReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("segment report") {
  const auto r = analyze(parse_family("seg"));
  REQUIRE(r.verdict == Verdict::Semisimple);
  REQUIRE(r.points.size() == 2);
  CHECK(std::abs(r.points[0].det_hessian - Complex(-2)) < 1e-12);
  CHECK(std::abs(r.points[1].det_hessian - Complex(2)) < 1e-12);
  CHECK(r.critical_count == 2);
  CHECK(r.expected_count == 2);
  CHECK(r.min_abs_det == doctest::Approx(2.0));
}

TEST_CASE("every family expression up to dimension 8 is semisimple") {
  const std::vector<std::string> exprs = {
      "seg",          "dp(1)",        "dp(2)",           "dp(3)",       "dp(4)",       "pdp(1)",
      "pdp(2)",       "pdp(3)",       "pdp(4)",          "seg*seg",     "seg*seg*seg", "seg*dp(1)",
      "dp(1)*pdp(1)", "pdp(1)*pdp(1)", "seg*dp(2)",      "seg*pdp(2)",  "dp(1)*dp(1)", "seg*dp(1)*pdp(1)",
      "dp(2)*pdp(1)", "seg*seg*dp(3)", "pdp(2)*pdp(2)",  "dp(1)*dp(1)*dp(1)*dp(1)", "seg*seg*seg*seg*pdp(2)"};
  for (const auto& e : exprs) {
    CAPTURE(e);
    const auto r = analyze(parse_family(e));
    CHECK(r.dim <= 8);
    CHECK(r.verdict == Verdict::Semisimple);
    CHECK(r.critical_count == r.expected_count);
    for (const auto& p : r.points) {
      REQUIRE(p.structured_det.has_value());
      CHECK(relative_difference(p.det_hessian, *p.structured_det) <= 1e-8);
    }
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CHECK(c.passed);
      CHECK(c.worst_margin > 0);
    }
  }
}

TEST_CASE("expected counts") {
  CHECK(analyze(parse_family("dp(2)")).expected_count == static_cast<std::size_t>(normalized_volume(make_del_pezzo(2))));
  CHECK(analyze(parse_family("seg*dp(1)*pdp(1)")).critical_count == 60);
}

TEST_CASE("degenerate and inconclusive verdicts") {
  Config strict;
  strict.degeneracy_threshold = 10.0;  // flags every point
  const auto d = analyze(parse_family("dp(1)"), strict);
  CHECK(d.verdict == Verdict::Degenerate);
  CHECK(std::all_of(d.points.begin(), d.points.end(), [](const PointReport& p) { return p.degenerate; }));

  Config tight;
  tight.tol_residual = 1e-300;  // Newton can never certify
  const auto i = analyze(parse_family("dp(1)"), tight);
  CHECK(i.verdict == Verdict::Inconclusive);
  CHECK(i.critical_count != i.expected_count);

  Config small;
  small.max_dim = 3;
  const auto big = analyze(parse_family("dp(2)"), small);
  CHECK_FALSE(big.verdict.has_value());
  CHECK(big.detail.find("max_dim") != std::string::npos);
}

TEST_CASE("user polytopes") {
  const auto cross = LatticePolytope::from_vertices(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  const auto r = analyze_polytope(cross);
  CHECK(r.input == "seg*seg");
  CHECK(r.verdict == Verdict::Semisimple);
  CHECK(r.points.size() == 4);

  const auto hex = LatticePolytope::from_vertices(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}});
  const auto h = analyze_polytope(hex);
  CHECK(h.input == "dp(1)");
  CHECK(h.points.size() == 6);

  const auto wide = LatticePolytope::from_vertices(2, {{3, 0}, {0, 2}, {-1, -1}});
  const auto w = analyze_polytope(wide);
  CHECK_FALSE(w.verdict.has_value());
  CHECK_FALSE(w.detail.empty());

  // Projective plane: reflexive and smooth but not a family product.
  const auto p2 = LatticePolytope::from_vertices(2, {{1, 0}, {0, 1}, {-1, -1}});
  const auto u = analyze_polytope(p2);
  CHECK(u.verdict == Verdict::Inconclusive);
  CHECK(u.detail == "unrecognized polytope");
}

TEST_CASE("recognition up to coordinate permutation") {
  // seg*dp(1) with coordinates reordered as (x2, x1, x3) -> segment on the
  // middle axis.
  const auto p = LatticePolytope::from_vertices(
      3, {{0, 1, 0}, {0, -1, 0}, {1, 0, 0}, {0, 0, 1}, {-1, 0, 0}, {0, 0, -1}, {1, 0, 1}, {-1, 0, -1}});
  const auto rec = recognize_family(p);
  REQUIRE(rec.has_value());
  CHECK(to_string(rec->expr) == "dp(1)*seg");
  CHECK(rec->permutation == std::vector<int>{0, 2, 1});

  const auto r = analyze_polytope(p);
  CHECK(r.verdict == Verdict::Semisimple);
  CHECK(r.points.size() == 12);
  CHECK(r.coordinate_permutation == std::vector<int>{0, 2, 1});
  const DerivativeTable t(superpotential(p));
  for (const auto& pt : r.points) {
    double res = 0;
    for (const auto& g : t.gradient<Complex>(pt.coords)) res = std::max(res, std::abs(g));
    CHECK(res < 1e-10);
  }
}

TEST_CASE("product block structure") {
  for (const char* e : {"seg*seg", "dp(1)*pdp(1)", "seg*dp(2)"}) {
    const auto expr = parse_family(e);
    const auto c = check_product_block_structure(expr, crit_for_family(expr));
    CHECK(c.passed);
    CHECK(c.worst_margin > 2);
  }
}

TEST_CASE("del Pezzo identities") {
  for (int k = 1; k <= 4; ++k) {
    CAPTURE(k);
    CHECK(all_passed(check_dp_identities(k)));
  }
  const std::vector<StructuredRoot> injected = {{1, Complex(0, 1)}};
  CHECK_FALSE(check_dp_chi(injected, 2).passed);
  const std::vector<StructuredRoot> valid = {{2, Complex(-1)}};
  CHECK(check_dp_chi(valid, 2).passed);
}

TEST_CASE("pseudo del Pezzo cases") {
  for (int k = 1; k <= 4; ++k) {
    CAPTURE(k);
    const auto checks = check_pdp_cases(k);
    for (const auto& c : checks) {
      CAPTURE(c.name);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("structured Hessian entries") {
  for (const char* e : {"dp(1)", "dp(3)", "pdp(2)", "pdp(4)", "seg*dp(1)*pdp(1)"}) {
    const auto expr = parse_family(e);
    CHECK(structured_hessian_mismatch(expr, crit_for_family(expr)) < 1e-9);
  }
}

TEST_CASE("reports are deterministic") {
  Config one;
  Config four;
  four.threads = 4;
  for (const char* e : {"dp(3)", "pdp(1)*pdp(1)"}) {
    const auto a = render_json(analyze(parse_family(e), one));
    const auto b = render_json(analyze(parse_family(e), one));
    const auto c = render_json(analyze(parse_family(e), four));
    CHECK(a == b);
    CHECK(a == c);
  }
}

TEST_CASE("report JSON fields") {
  const auto j = to_json(analyze(parse_family("seg")));
  for (const char* key : {"input", "dim", "critical_count", "expected_count", "points", "min_abs_det", "checks",
                          "verdict"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["verdict"] == "SEMISIMPLE");
  const auto& p = j["points"][0];
  for (const char* key : {"coords", "residual", "det_hessian", "structured_det", "degenerate"}) CHECK(p.contains(key));
  const auto& c = j["checks"][0];
  for (const char* key : {"name", "passed", "detail", "worst_margin"}) CHECK(c.contains(key));
  CHECK(render_text(analyze(parse_family("seg"))).find("SEMISIMPLE") != std::string::npos);
}
