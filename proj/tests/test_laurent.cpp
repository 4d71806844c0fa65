#include <doctest.h>

#include <random>

#include "fanoqh/critsolve.hpp"
#include "fanoqh/errors.hpp"
#include "fanoqh/laurent.hpp"
#include "fanoqh/report.hpp"

using namespace fanoqh;

namespace {

LaurentPoly poly(int dim, std::initializer_list<std::pair<ExponentVector, int>> terms) {
  LaurentPoly w(dim);
  for (const auto& [e, c] : terms) w.add_term(e, Rational(c));
  return w;
}

Complex at(const LaurentPoly& w, std::vector<Complex> p) { return eval<Complex>(w, p); }

const std::vector<std::string> kExprs = {"seg",      "dp(1)",      "dp(2)",        "dp(3)",  "dp(4)",
                                         "pdp(1)",   "pdp(2)",     "pdp(3)",       "pdp(4)", "seg*seg*seg",
                                         "seg*dp(1)", "dp(1)*pdp(1)", "pdp(1)*pdp(1)", "seg*dp(2)"};

std::vector<Complex> random_torus_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mod(0.5, 2.0);
  std::uniform_real_distribution<double> arg(-3.14159, 3.14159);
  std::vector<Complex> p;
  for (int i = 0; i < n; ++i) p.push_back(std::polar(mod(rng), arg(rng)));
  return p;
}

}  // namespace

TEST_CASE("superpotentials of the families") {
  CHECK(superpotential(make_segment()) == poly(1, {{{1}, 1}, {{-1}, 1}}));
  CHECK(superpotential(make_del_pezzo(1)) ==
        poly(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}, {{1, 1}, 1}, {{-1, -1}, 1}}));
  CHECK(superpotential(make_pseudo_del_pezzo(1)) ==
        poly(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}, {{1, 1}, 1}}));
  for (int k = 1; k <= 4; ++k) {
    const int n = 2 * k;
    const auto w = superpotential(make_del_pezzo(k));
    CHECK(w.terms().size() == static_cast<std::size_t>(2 * n + 2));
    for (const auto& [e, c] : w.terms()) CHECK(c == 1);
    CHECK(w.terms().count(ExponentVector(n, 1)) == 1);
    CHECK(w.terms().count(ExponentVector(n, -1)) == 1);
    const auto v = superpotential(make_pseudo_del_pezzo(k));
    CHECK(v.terms().size() == static_cast<std::size_t>(2 * n + 1));
    CHECK(v.terms().count(ExponentVector(n, -1)) == 0);
  }
}

TEST_CASE("superpotential requires an interior origin") {
  const auto off = LatticePolytope::from_vertices(1, {{0}, {2}});
  CHECK_THROWS_AS(superpotential(off), GeometryError);
}

TEST_CASE("add and embed") {
  const auto s = superpotential(make_segment());
  const auto sum = add(embed(s, 2, 0), embed(s, 2, 1));
  CHECK(sum == poly(2, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}}));
  CHECK(sum == superpotential(realize(parse_family("seg*seg"))));
  CHECK(add(s, LaurentPoly(1)) == s);
  CHECK(embed(poly(1, {{{1}, 1}}), 3, 1) == poly(3, {{{0, 1, 0}, 1}}));
  CHECK_THROWS(add(s, LaurentPoly(2)));
  CHECK_THROWS(embed(s, 1, 1));

  // Exact cancellation removes the term.
  auto w = poly(1, {{{2}, 3}});
  w.add_term({2}, Rational(-3));
  CHECK(w.is_zero());
}

TEST_CASE("sum identity for products") {
  for (const auto& e : kExprs) {
    CAPTURE(e);
    CHECK(superpotential(realize(parse_family(e))) == family_superpotential(parse_family(e)));
  }
}

TEST_CASE("partial derivatives") {
  const auto s = superpotential(make_segment());
  CHECK(partial(s, 0) == poly(1, {{{0}, 1}, {{-2}, -1}}));
  const auto w = superpotential(make_pseudo_del_pezzo(1));
  CHECK(partial(w, 0) == poly(2, {{{0, 0}, 1}, {{-2, 0}, -1}, {{0, 1}, 1}}));
  CHECK(partial(poly(2, {{{1, 0}, 1}}), 1).is_zero());
}

TEST_CASE("evaluation") {
  const auto s = superpotential(make_segment());
  CHECK(std::abs(at(s, {Complex(1)}) - Complex(2)) < 1e-15);
  const auto h = hessian_at<Complex>(s, std::vector<Complex>{Complex(1)});
  CHECK(std::abs(h(0, 0) - Complex(2)) < 1e-15);
  CHECK_THROWS_AS(at(s, {Complex(0)}), EvaluationError);
  CHECK_THROWS_AS(at(s, {Complex(1), Complex(1)}), EvaluationError);

  // At the all-ones point a polynomial evaluates to its coefficient sum.
  auto w = poly(3, {{{1, -2, 0}, 3}, {{0, 0, 0}, -1}, {{-1, 1, 4}, 5}});
  w.add_term({2, 2, 2}, Rational(1, 3));
  CHECK(std::abs(at(w, {Complex(1), Complex(1), Complex(1)}) - Complex(7.0 + 1.0 / 3.0)) < 1e-14);

  // High precision agrees with double.
  const auto hp = eval<HighComplex>(w, std::vector<HighComplex>{HighComplex(0.7, 0.2), HighComplex(-1.1, 0.4),
                                                                HighComplex(0.3, -0.9)});
  const auto dp = at(w, {Complex(0.7, 0.2), Complex(-1.1, 0.4), Complex(0.3, -0.9)});
  CHECK(std::abs(ScalarTraits<HighComplex>::to_complex(hp) - dp) < 1e-12 * std::abs(dp));
}

TEST_CASE("gradient vanishes at solver output") {
  const auto w = superpotential(make_del_pezzo(1));
  for (const auto& p : crit_del_pezzo(1).points) {
    double r = 0;
    for (const auto& g : gradient_at<Complex>(w, p.coords)) r = std::max(r, std::abs(g));
    CHECK(r < 1e-10);
  }
}

TEST_CASE("mixed partials agree exactly") {
  for (const auto& e : kExprs) {
    const auto w = family_superpotential(parse_family(e));
    for (int j = 0; j < w.dim(); ++j) {
      for (int k = 0; k < w.dim(); ++k) CHECK(partial(partial(w, j), k) == partial(partial(w, k), j));
    }
  }
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(3);
  const double step = 1e-5;
  for (const auto& e : kExprs) {
    CAPTURE(e);
    const DerivativeTable table(family_superpotential(parse_family(e)));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto p = random_torus_point(table.dim(), rng);
      const auto g = table.gradient<Complex>(p);
      double scale = 0.0;
      for (const auto& x : g) scale = std::max(scale, std::abs(x));
      for (int k = 0; k < table.dim(); ++k) {
        auto plus = p;
        auto minus = p;
        plus[k] += step;
        minus[k] -= step;
        const Complex fd = (at(table.function(), plus) - at(table.function(), minus)) / (2 * step);
        worst = std::max(worst, std::abs(fd - g[k]) / std::max(1.0, scale));
      }
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("Hessians are exactly symmetric") {
  std::mt19937_64 rng(5);
  for (const auto& e : kExprs) {
    const DerivativeTable table(family_superpotential(parse_family(e)));
    for (int trial = 0; trial < 100; ++trial) {
      const auto h = table.hessian<Complex>(random_torus_point(table.dim(), rng));
      for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = 0; j < h.size(); ++j) REQUIRE(h(i, j) == h(j, i));
      }
    }
  }
}

TEST_CASE("polynomial JSON round trip") {
  auto w = poly(2, {{{1, -3}, 2}, {{0, 0}, -7}});
  w.add_term({-1, 2}, Rational(5, 6));
  const auto j = to_json(w);
  CHECK(j.dump() ==
        R"([{"exps":[-1,2],"coeff":"5/6"},{"exps":[0,0],"coeff":"-7"},{"exps":[1,-3],"coeff":"2"}])");
  CHECK(laurent_from_json(2, j) == w);
  CHECK_THROWS_AS(laurent_from_json(3, j), ParseError);
}
