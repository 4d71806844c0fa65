#include "fanoqh/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fanoqh {

namespace {

Complex ipow(Complex z, std::int64_t e) { return int_pow(z, e); }

double sign_pow(int L) { return (L % 2 == 0) ? 1.0 : -1.0; }

void require_shape(int L, int n) {
  if (n < 1 || L < 0 || L > n) throw std::invalid_argument("structured matrix needs 0 <= L <= n, n >= 1");
}

void require_even(int n) {
  if (n % 2 != 0) throw std::invalid_argument("family dimension must be even");
}

void expect_close(Complex computed, Complex reference, double tol, const char* what) {
  if (!nearly_equal(computed, reference, tol)) {
    throw std::logic_error(std::string("parameter forms disagree for ") + what);
  }
}

}  // namespace

bool nearly_equal(Complex x, Complex y, double rel) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return std::abs(x - y) <= std::max(rel * scale, 1e-12);
}

double relative_difference(Complex x, Complex y) {
  const double scale = std::max({std::abs(x), std::abs(y), 1e-300});
  return std::abs(x - y) / scale;
}

DenseMatrix assemble_structured(const StructuredParams& p) {
  require_shape(p.L, p.n);
  const auto n = static_cast<std::size_t>(p.n);
  const auto L = static_cast<std::size_t>(p.L);
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool in_a = i < L;
      const bool jn_a = j < L;
      if (in_a != jn_a) m(i, j) = p.d;
      else if (i == j) m(i, j) = in_a ? p.a : p.b;
      else m(i, j) = in_a ? p.f : p.h;
    }
  }
  return m;
}

Complex structured_quadratic_constant(const StructuredParams& p) {
  const double L = p.L;
  const double n = p.n;
  return (p.a + p.f * (L - 1)) * (p.b + (n - L - 1) * p.h) - p.d * p.d * (L * (n - L));
}

Complex structured_det(const StructuredParams& p) {
  require_shape(p.L, p.n);
  const int L = p.L;
  const int n = p.n;
  if (L == 0) return ipow(p.b - p.h, n - 1) * (p.b + static_cast<double>(n - 1) * p.h);
  if (L == n) return ipow(p.a - p.f, n - 1) * (p.a + static_cast<double>(n - 1) * p.f);
  return ipow(p.a - p.f, L - 1) * ipow(p.b - p.h, n - L - 1) * structured_quadratic_constant(p);
}

std::vector<Eigenvalue> structured_eigen(const StructuredParams& p) {
  require_shape(p.L, p.n);
  const int L = p.L;
  const int n = p.n;
  std::vector<Eigenvalue> out;
  if (L >= 2) out.push_back({p.a - p.f, L - 1});
  if (n - L >= 2) out.push_back({p.b - p.h, n - L - 1});
  const Complex alpha = p.a + static_cast<double>(L - 1) * p.f;
  const Complex delta = p.b + static_cast<double>(n - L - 1) * p.h;
  if (L == 0) {
    out.push_back({delta, 1});
  } else if (L == n) {
    out.push_back({alpha, 1});
  } else {
    // Restriction to span{v, w}: [[alpha, (n-L)d], [L d, delta]].
    const Complex trace = alpha + delta;
    const Complex constant = structured_quadratic_constant(p);
    const Complex disc = std::sqrt(trace * trace - 4.0 * constant);
    // Pick the sign that avoids cancellation, then use Vieta for the other.
    const Complex big = (std::abs(trace + disc) >= std::abs(trace - disc)) ? (trace + disc) / 2.0
                                                                            : (trace - disc) / 2.0;
    const Complex small = (big == Complex(0)) ? Complex(0) : constant / big;
    out.push_back({big, 1});
    out.push_back({small, 1});
  }
  return out;
}

Complex dp_root_residual(Complex A, int L, int n) {
  return ipow(A, 2 * L - n - 1) - sign_pow(L - 1);
}

StructuredParams dp_params(Complex A, int L, int n, double tol) {
  require_shape(L, n);
  require_even(n);
  if (std::abs(dp_root_residual(A, L, n)) > tol) {
    throw std::domain_error("A is not a del Pezzo structured root");
  }
  const Complex B = -1.0 / A;
  // Literal second partials with X1 = A (L of them) and X2 = B (n-L of them).
  StructuredParams p;
  p.L = L;
  p.n = n;
  p.a = 2.0 / ipow(A, 3) + 2.0 * ipow(A, -(L + 2)) * ipow(B, -(n - L));
  p.b = 2.0 / ipow(B, 3) + 2.0 * ipow(A, -L) * ipow(B, -(n - L + 2));
  p.f = ipow(A, L - 2) * ipow(B, n - L) + ipow(A, -(L + 2)) * ipow(B, -(n - L));
  p.h = ipow(A, L) * ipow(B, n - L - 2) + ipow(A, -L) * ipow(B, -(n - L + 2));
  p.d = ipow(A, L - 1) * ipow(B, n - L - 1) + ipow(A, -(L + 1)) * ipow(B, -(n - L + 1));

  const double s = sign_pow(L);
  expect_close(p.a, 2.0 / ipow(A, 3) + s * 2.0 * ipow(A, n - 2 * L - 2), tol, "a (power form)");
  if (std::abs(p.a) > tol * std::max(1.0, std::abs(2.0 / ipow(A, 3)))) {
    throw std::logic_error("del Pezzo diagonal entry a does not vanish");
  }
  expect_close(p.b, -2.0 * ipow(A, 3) - 2.0 * A, tol, "b");
  expect_close(p.f, -1.0 / A - 1.0 / ipow(A, 3), tol, "f");
  expect_close(p.h, -ipow(A, 3) - A, tol, "h");
  expect_close(p.d, A + 1.0 / A, tol, "d");
  return p;
}

Complex chi_dp(Complex A, int L, int n) {
  const Complex s = A + 1.0 / A;
  return static_cast<double>(2 * L - n - 1) * s * s;
}

int relation_sign(PdpRelation r) { return r == PdpRelation::Critical ? -1 : 1; }

Complex pdp_relation_residual(Complex A, int L, int n, PdpRelation r) {
  return A - 1.0 / A - static_cast<double>(relation_sign(r)) * sign_pow(L) * ipow(A, 2 * L - n);
}

Complex pdp_relation_residual_b(Complex B, int L, int n, PdpRelation r) {
  return B - 1.0 / B - static_cast<double>(relation_sign(r)) * sign_pow(L) * ipow(B, n - 2 * L);
}

StructuredParams pdp_params(Complex A, int L, int n, double tol) {
  require_shape(L, n);
  require_even(n);
  const Complex residual = pdp_relation_residual(A, L, n);
  const double scale = std::max({std::abs(A), 1.0 / std::abs(A), std::abs(ipow(A, 2 * L - n))});
  if (std::abs(residual) > tol * scale) {
    throw std::domain_error("A does not satisfy the pseudo del Pezzo critical relation");
  }
  const Complex B = -1.0 / A;
  const double s = sign_pow(L);
  StructuredParams p;
  p.L = L;
  p.n = n;
  p.a = 2.0 / ipow(A, 3);
  p.b = -2.0 * ipow(A, 3);
  p.f = s * ipow(A, 2 * L - n - 2);
  p.h = s * ipow(A, 2 * L - n + 2);
  p.d = -s * ipow(A, 2 * L - n);

  // Literal second partials of sum X + sum 1/X + prod X.
  expect_close(p.b, 2.0 / ipow(B, 3), tol, "b (literal)");
  expect_close(p.f, ipow(A, L - 2) * ipow(B, n - L), tol, "f (literal)");
  expect_close(p.h, ipow(A, L) * ipow(B, n - L - 2), tol, "h (literal)");
  expect_close(p.d, ipow(A, L - 1) * ipow(B, n - L - 1), tol, "d (literal)");
  // Simplified forms, which use the relation.
  const Complex w = A - 1.0 / A;
  expect_close(p.f, -w / (A * A), tol, "f (simplified)");
  expect_close(p.h, -w * A * A, tol, "h (simplified)");
  expect_close(p.d, w, tol, "d (simplified)");
  return p;
}

Complex chi_pdp_simplified(Complex A, int L, int n, PdpRelation r) {
  // On the relation, (-1)^L A^(2L-n) = s (A - 1/A).
  const Complex rel = static_cast<double>(relation_sign(r)) * (A - 1.0 / A);
  StructuredParams p;
  p.L = L;
  p.n = n;
  p.a = 2.0 / ipow(A, 3);
  p.b = -2.0 * ipow(A, 3);
  p.f = rel / (A * A);
  p.h = rel * A * A;
  p.d = -rel;
  return structured_quadratic_constant(p);
}

Complex Quartic::operator()(Complex A) const {
  Complex acc(0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * A + static_cast<double>(coeffs[i]);
  return acc;
}

std::vector<Complex> Quartic::roots() const {
  // Quadratic in y = A^2: c4 y^2 + c2 y + c0.
  const double c4 = static_cast<double>(coeffs[4]);
  const double c2 = static_cast<double>(coeffs[2]);
  const double c0 = static_cast<double>(coeffs[0]);
  std::vector<Complex> ys;
  if (c4 == 0.0) {
    if (c2 != 0.0) ys.push_back(Complex(-c0 / c2));
  } else {
    const Complex disc = std::sqrt(Complex(c2 * c2 - 4.0 * c4 * c0));
    const Complex q = (c2 >= 0) ? -0.5 * (c2 + disc) : -0.5 * (c2 - disc);
    if (q == Complex(0)) {
      ys = {Complex(0), Complex(0)};
    } else {
      ys = {q / c4, Complex(c0) / q};
    }
  }
  std::vector<Complex> out;
  for (const auto& y : ys) {
    const Complex r = std::sqrt(y);
    out.push_back(r);
    out.push_back(-r);
  }
  return out;
}

Quartic u_poly_pdp(int L, int n, PdpRelation r) {
  require_shape(L, n);
  require_even(n);
  Quartic q;
  if (r == PdpRelation::Critical) {
    q.coeffs = {n - 2 * L - 1, 0, -2, 0, 2 * L - n - 1};
  } else {
    q.coeffs = {3 + 2 * L - 3 * n, 0, 2 * (2 * n - 5), 0, 3 - 2 * L - n};
  }
  static const Complex samples[] = {{0.7, 0.3}, {-1.3, 0.4}, {0.2, -0.9}, {1.7, 1.1},
                                    {-0.6, -1.4}, {2.3, 0.0}, {0.0, 1.9}, {-0.45, 0.8},
                                    {1.05, -0.35}, {-2.1, -0.6}};
  for (const auto& A : samples) {
    const Complex expanded = A * A * chi_pdp_simplified(A, L, n, r);
    if (!nearly_equal(q(A), expanded, 1e-9)) {
      throw std::logic_error("quartic does not match the expanded quadratic constant for L=" +
                             std::to_string(L) + ", n=" + std::to_string(n));
    }
  }
  return q;
}

}  // namespace fanoqh
