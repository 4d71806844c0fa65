#pragma once

// Exact 64-bit integer helpers for the hull and volume code. Every
// operation checks for overflow and throws instead of wrapping.

#include <cstdint>
#include <span>
#include <vector>

namespace fanoqh::intmath {

using Int = std::int64_t;
using IntVector = std::vector<Int>;
using IntMatrix = std::vector<IntVector>;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

Int gcd(Int a, Int b);
// gcd of all entries (0 for the zero vector).
Int content(std::span<const Int> v);
// Divide by the content in place; the zero vector is left unchanged.
void make_primitive(IntVector& v);

Int dot(std::span<const Int> a, std::span<const Int> b);

// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(IntMatrix m);

// Rank over the rationals via fraction-free elimination.
int rank(IntMatrix m);

// Generator of the one-dimensional null space of a (k-1) x k matrix of
// full row rank, computed from signed maximal minors.
IntVector null_vector(const IntMatrix& rows);

}  // namespace fanoqh::intmath
