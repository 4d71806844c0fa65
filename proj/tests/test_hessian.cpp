#include <doctest.h>

#include <algorithm>
#include <random>

#include "fanoqh/critsolve.hpp"
#include "fanoqh/hessian.hpp"
#include "fanoqh/linalg.hpp"
#include "fanoqh/roots.hpp"
#include "fanoqh/structured_trials.hpp"

using namespace fanoqh;

namespace {

bool close(Complex x, Complex y, double tol) { return std::abs(x - y) <= tol; }

// Laplace expansion along the first row.
Complex cofactor_det(const DenseMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m(0, 0);
  Complex total(0);
  for (std::size_t c = 0; c < n; ++c) {
    DenseMatrix minor(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0, jj = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    }
    total += (c % 2 == 0 ? 1.0 : -1.0) * m(0, c) * cofactor_det(minor);
  }
  return total;
}

StructuredParams params(Complex a, Complex f, Complex b, Complex h, Complex d, int L, int n) {
  StructuredParams p;
  p.a = a;
  p.f = f;
  p.b = b;
  p.h = h;
  p.d = d;
  p.L = L;
  p.n = n;
  return p;
}

}  // namespace

TEST_CASE("assemble_structured") {
  const auto m = assemble_structured(params(2, 0, 3, 0, 1, 1, 2));
  CHECK(m(0, 0) == Complex(2));
  CHECK(m(0, 1) == Complex(1));
  CHECK(m(1, 0) == Complex(1));
  CHECK(m(1, 1) == Complex(3));

  const auto delta = assemble_structured(params(9, 9, 3, 1, 7, 0, 3));
  const auto alpha = assemble_structured(params(2, 5, 9, 9, 7, 3, 3));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(delta(i, j) == Complex(i == j ? 3 : 1));
      CHECK(alpha(i, j) == Complex(i == j ? 2 : 5));
    }
  }
  CHECK_THROWS(assemble_structured(params(1, 1, 1, 1, 1, 4, 3)));
}

TEST_CASE("assemble_structured is exactly symmetric") {
  for (int t = 0; t < 200; ++t) {
    const auto m = assemble_structured(random_structured_params(17, t, 12));
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) REQUIRE(m(i, j) == m(j, i));
    }
  }
}

TEST_CASE("structured_det closed form") {
  CHECK(close(structured_det(params(2, 0, 3, 0, 1, 1, 2)), Complex(5), 1e-14));
  const Complex a(1.3, -0.4), f(0.2, 0.9);
  CHECK(close(structured_det(params(a, f, 7, 3, 5, 3, 3)), (a - f) * (a - f) * (a + 2.0 * f), 1e-13));
  const Complex b(-0.7, 0.5), h(1.1, 0.1);
  CHECK(close(structured_det(params(7, 3, b, h, 5, 0, 4)), (b - h) * (b - h) * (b - h) * (b + 3.0 * h), 1e-13));
  // n = 1 edge cases reduce to the single diagonal entry.
  CHECK(close(structured_det(params(a, f, b, h, 5, 1, 1)), a, 1e-15));
  CHECK(close(structured_det(params(a, f, b, h, 5, 0, 1)), b, 1e-15));
}

TEST_CASE("structured_det and eigenvalues against dense oracles") {
  StructuredTrialOptions opts;
  opts.trials = 1000;
  opts.max_n = 12;
  opts.seed = 2024;
  const auto s = run_structured_trials(opts);
  CHECK(s.trials == 1000);
  CHECK(s.edge_trials >= 500);
  CHECK(s.worst_det_rel <= kTrialDetTolerance);
  CHECK(s.worst_eigen_rel <= kTrialEigenTolerance);
  CHECK(s.passed());

  for (int t = 0; t < 300; ++t) {
    const auto p = random_structured_params(99, t, 12);
    Complex product(1);
    int count = 0;
    for (const auto& ev : structured_eigen(p)) {
      for (int m = 0; m < ev.multiplicity; ++m) product *= ev.value;
      count += ev.multiplicity;
    }
    CHECK(count == p.n);
    CHECK(relative_difference(product, structured_det(p)) <= 1e-9);
  }
}

TEST_CASE("corrupted closed form is detected") {
  StructuredTrialOptions opts;
  opts.trials = 50;
  opts.corrupt_formula = true;
  CHECK_FALSE(run_structured_trials(opts).passed());
}

TEST_CASE("block-diagonal eigenvalues") {
  const Complex a(1.5, 0.5), f(0.25, -1), b(-2, 0.3), h(0.6, 0.6);
  const int L = 3, n = 7;
  const auto evs = structured_eigen(params(a, f, b, h, 0, L, n));
  const Complex alpha_v = a + double(L - 1) * f;
  const Complex delta_v = b + double(n - L - 1) * h;
  auto has = [&](Complex z) {
    return std::any_of(evs.begin(), evs.end(), [&](const Eigenvalue& e) { return close(e.value, z, 1e-14); });
  };
  CHECK(has(alpha_v));
  CHECK(has(delta_v));
  CHECK(has(a - f));
  CHECK(has(b - h));
}

TEST_CASE("dense_det") {
  DenseMatrix id(4);
  DenseMatrix diag(4);
  for (std::size_t i = 0; i < 4; ++i) {
    id(i, i) = 1;
    diag(i, i) = static_cast<double>(i + 1);
  }
  CHECK(dense_det(id) == Complex(1));
  CHECK(close(dense_det(diag), Complex(24), 1e-14));
  DenseMatrix singular(2);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(1, 0) = 2;
  singular(1, 1) = 4;
  CHECK(dense_det(singular) == Complex(0));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int t = 0; t < 20; ++t) {
      DenseMatrix m(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
      }
      const Complex expect = cofactor_det(m);
      CHECK(std::abs(dense_det(m) - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("del Pezzo parameters") {
  for (int k = 1; k <= 4; ++k) {
    const int n = 2 * k;
    for (int L = 0; L <= n; ++L) {
      for (const auto& A : dp_roots(L, n)) {
        CAPTURE(n);
        CAPTURE(L);
        CHECK(std::abs(std::abs(A) - 1.0) < 1e-12);
        CHECK(std::abs(dp_root_residual(A, L, n)) < 1e-12);
        const auto p = dp_params(A, L, n);
        CHECK(std::abs(p.a) < 1e-12);
        CHECK(close(p.a - p.f, 1.0 / A + 1.0 / (A * A * A), 1e-12));
        CHECK(close(p.b - p.h, -A * A * A - A, 1e-12));
        CHECK(relative_difference(chi_dp(A, L, n), structured_quadratic_constant(p)) <= 1e-9);
        CHECK(std::abs(chi_dp(A, L, n)) > 1e-6);
      }
    }
  }
  CHECK(close(chi_dp(Complex(-1), 2, 2), Complex(4), 1e-14));
  CHECK(std::abs(chi_dp(Complex(0, 1), 1, 2)) < 1e-15);
  CHECK(std::abs(chi_dp(Complex(0, -1), 3, 4)) < 1e-15);
  CHECK_THROWS_AS(dp_params(Complex(0, 1), 1, 2), std::domain_error);
}

TEST_CASE("pseudo del Pezzo parameters") {
  for (int k = 1; k <= 4; ++k) {
    const int n = 2 * k;
    for (int L = 0; L <= n; ++L) {
      for (const auto& A : pdp_roots(L, n)) {
        CAPTURE(n);
        CAPTURE(L);
        CHECK(std::abs(pdp_relation_residual(A, L, n)) < 1e-10);
        const auto p = pdp_params(A, L, n);
        CHECK(close(p.a * A * A * A, Complex(2), 1e-12));
        CHECK(close(p.b, -2.0 * A * A * A, 1e-12 * std::max(1.0, std::abs(p.b))));
        // Under the derived relation d = A - 1/A and f A^2 = -(A - 1/A).
        const double scale = std::max(1.0, std::abs(A - 1.0 / A));
        CHECK(std::abs(p.d - (A - 1.0 / A)) < 1e-10 * scale);
        CHECK(std::abs(p.f * A * A + (A - 1.0 / A)) < 1e-10 * scale);
        const Complex u = u_poly_pdp(L, n)(A);
        CHECK(relative_difference(A * A * structured_quadratic_constant(p), u) <= 1e-9);
      }
      for (const auto& A : pdp_roots(L, n, PdpRelation::Reflected)) {
        CHECK(std::abs(pdp_relation_residual(-A, L, n)) < 1e-10 * std::max(1.0, std::abs(A)));
      }
    }
  }
  CHECK_THROWS_AS(pdp_params(Complex(2, 1), 1, 2), std::domain_error);
}

TEST_CASE("U quartics") {
  for (int n = 2; n <= 12; n += 2) {
    for (int L = 0; L <= n; ++L) {
      for (auto rel : {PdpRelation::Critical, PdpRelation::Reflected}) {
        const auto& c = u_poly_pdp(L, n, rel).coeffs;
        CHECK(c[1] == 0);
        CHECK(c[3] == 0);
        CHECK(std::abs(c[0]) % 2 == 1);
        CHECK(c[2] % 2 == 0);
        CHECK(std::abs(c[4]) % 2 == 1);
      }
      const auto& r = u_poly_pdp(L, n, PdpRelation::Reflected).coeffs;
      CHECK(r[4] == 3 - 2 * L - n);
      CHECK(r[2] == 2 * (2 * n - 5));
      CHECK(r[0] == 3 + 2 * L - 3 * n);
    }
  }
  const auto& c = u_poly_pdp(1, 2).coeffs;
  CHECK(c == std::array<std::int64_t, 5>{-1, 0, -2, 0, -1});
  const auto roots = u_poly_pdp(1, 2).roots();
  CHECK(roots.size() == 4);
  for (const auto& z : roots) CHECK(std::abs(u_poly_pdp(1, 2)(z)) < 1e-10);
}

TEST_CASE("companion matrix roots") {
  // (x - 1)(x + 2)(x - i) expanded.
  const std::vector<Complex> coeffs = {Complex(0, 2), Complex(-2, -1), Complex(1, -1), Complex(1)};
  auto roots = polynomial_roots(coeffs);
  REQUIRE(roots.size() == 3);
  for (const Complex z : {Complex(1), Complex(-2), Complex(0, 1)}) {
    CHECK(std::any_of(roots.begin(), roots.end(), [&](Complex r) { return std::abs(r - z) < 1e-12; }));
  }
  for (int d = 1; d <= 12; ++d) {
    std::vector<Complex> unity(d + 1, Complex(0));
    unity[0] = -1;
    unity[d] = 1;
    for (const auto& z : polynomial_roots(unity)) CHECK(std::abs(std::pow(z, d) - 1.0) < 1e-12);
  }
}
