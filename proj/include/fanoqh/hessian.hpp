#pragma once

// The two-block symmetric matrix
//
//   M = [ alpha  beta  ]   alpha: L x L, a on the diagonal, f elsewhere
//       [ gamma  delta ]   delta: (n-L) x (n-L), b on the diagonal, h elsewhere
//                          beta, gamma: constant d
//
// with its closed-form determinant and spectrum, and the parameter
// substitutions that turn M into the Hessian of the del Pezzo and pseudo
// del Pezzo superpotentials at a structured critical point.

#include <array>
#include <cstdint>
#include <vector>

#include "fanoqh/linalg.hpp"
#include "fanoqh/matrix.hpp"
#include "fanoqh/scalar.hpp"

namespace fanoqh {

struct StructuredParams {
  Complex a, f, b, h, d;
  int L = 0;
  int n = 1;
};

using DenseMatrix = SquareMatrix<Complex>;

DenseMatrix assemble_structured(const StructuredParams& p);

// (a+f(L-1))(b+(n-L-1)h) - d^2 L(n-L): the constant term of the quadratic
// governing the two eigenvalues on span{v, w}.
Complex structured_quadratic_constant(const StructuredParams& p);

// (a-f)^(L-1) (b-h)^(n-L-1) times the quadratic constant, with L = 0 and
// L = n written out so that no negative power appears.
Complex structured_det(const StructuredParams& p);

struct Eigenvalue {
  Complex value;
  int multiplicity = 1;
};

// a-f with multiplicity L-1, b-h with multiplicity n-L-1, and the
// eigenvalue(s) of M restricted to span{v, w}.
std::vector<Eigenvalue> structured_eigen(const StructuredParams& p);

// |x - y| <= max(rel * max(|x|, |y|), 1e-12).
bool nearly_equal(Complex x, Complex y, double rel);
double relative_difference(Complex x, Complex y);

// ---- del Pezzo ----

// A^(2L-n-1) - (-1)^(L-1): zero exactly at the del Pezzo structured roots.
Complex dp_root_residual(Complex A, int L, int n);

// Hessian entries at a point with L coordinates equal to A and n-L equal to
// B = -1/A. Throws std::domain_error if A misses the root condition and
// std::logic_error if the literal second partials disagree with the
// simplified forms a = 0, b = -2A^3-2A, f = -1/A-1/A^3, h = -A^3-A,
// d = A+1/A.
StructuredParams dp_params(Complex A, int L, int n, double tol = 1e-10);

// (2L-n-1)(A+1/A)^2.
Complex chi_dp(Complex A, int L, int n);

// ---- pseudo del Pezzo ----

// The structured relation A - 1/A = s (-1)^L A^(2L-n). Critical points of
// the pseudo del Pezzo superpotential satisfy it with s = -1. The reflected
// relation (s = +1) is the one satisfied by -A; it is kept so both
// conventions can be checked side by side.
enum class PdpRelation { Critical, Reflected };

int relation_sign(PdpRelation r);

// A - 1/A - s (-1)^L A^(2L-n).
Complex pdp_relation_residual(Complex A, int L, int n, PdpRelation r = PdpRelation::Critical);
// The same relation written for B = -1/A: B - 1/B - s (-1)^L B^(n-2L).
Complex pdp_relation_residual_b(Complex B, int L, int n, PdpRelation r = PdpRelation::Critical);

// Hessian entries at a point with L coordinates A and n-L coordinates
// B = -1/A: a = 2/A^3, b = -2A^3, f = (-1)^L A^(2L-n-2),
// h = (-1)^L A^(2L-n+2), d = (-1)^(L-1) A^(2L-n). Throws std::domain_error
// if A misses the critical relation and std::logic_error if the power
// forms disagree with the literal partials or with the simplified forms
// f = -(A-1/A)/A^2, h = -(A-1/A)A^2, d = A-1/A.
StructuredParams pdp_params(Complex A, int L, int n, double tol = 1e-10);

// Quadratic constant computed from the simplified forms of f, h, d under
// the chosen relation. Depends on A only, so it can be sampled anywhere.
Complex chi_pdp_simplified(Complex A, int L, int n, PdpRelation r);

// Even quartic c0 + c2 A^2 + c4 A^4 (coefficients ascending, odd ones 0).
struct Quartic {
  std::array<std::int64_t, 5> coeffs{};

  Complex operator()(Complex A) const;
  // All four roots (with multiplicity).
  std::vector<Complex> roots() const;
};

// A^2 times the quadratic constant under the relation:
//   Critical:  (2L-n-1)A^4 - 2A^2 + (n-2L-1)
//   Reflected: (3-2L-n)A^4 + 2(2n-5)A^2 + (3+2L-3n)
// Each is checked against chi_pdp_simplified at sample points and throws
// std::logic_error on a mismatch.
Quartic u_poly_pdp(int L, int n, PdpRelation r = PdpRelation::Critical);

}  // namespace fanoqh
