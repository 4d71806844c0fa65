#pragma once

#include <span>
#include <vector>

#include "fanoqh/scalar.hpp"

namespace fanoqh {

// All complex roots of c[0] + c[1] x + ... + c[m] x^m (c[m] != 0), from the
// eigenvalues of the companion matrix, each polished by a few univariate
// Newton steps. Throws SolverError if the eigensolver fails to converge.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

Complex eval_polynomial(std::span<const Complex> coeffs, Complex x);

}  // namespace fanoqh
