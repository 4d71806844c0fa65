#pragma once

// Dense LU with partial pivoting, generic over the complex scalar type.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "fanoqh/matrix.hpp"
#include "fanoqh/scalar.hpp"

namespace fanoqh {

// Determinant by LU with partial pivoting; 0 for an exactly singular matrix.
template <class T>
T dense_det(SquareMatrix<T> m) {
  using Traits = ScalarTraits<T>;
  const std::size_t n = m.size();
  T det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = Traits::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = Traits::abs(m(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return T(0);
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T factor = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  return det;
}

// Solves m x = rhs. Returns nullopt when a pivot falls below
// rel_singular * (largest entry of m).
template <class T>
std::optional<std::vector<T>> lu_solve(SquareMatrix<T> m, std::vector<T> rhs,
                                       double rel_singular = 1e-14) {
  using Traits = ScalarTraits<T>;
  const std::size_t n = m.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, Traits::abs(m(i, j)));
  }
  if (scale == 0.0) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = Traits::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = Traits::abs(m(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= rel_singular * scale) return std::nullopt;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(rhs[k], rhs[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T factor = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
      rhs[i] -= factor * rhs[k];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
    x[i] = acc / m(i, i);
  }
  return x;
}

}  // namespace fanoqh
