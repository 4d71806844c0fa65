#pragma once

// Sparse Laurent polynomials with exact rational coefficients, the toric
// superpotential, exact differentiation, and evaluation on the complex
// torus.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fanoqh/errors.hpp"
#include "fanoqh/matrix.hpp"
#include "fanoqh/polytope.hpp"
#include "fanoqh/scalar.hpp"

namespace fanoqh {

using ExponentVector = std::vector<std::int64_t>;

class LaurentPoly {
 public:
  // Lexicographic on exponent vectors.
  using Terms = std::map<ExponentVector, Rational>;

  explicit LaurentPoly(int dim);
  // Zero coefficients are dropped; every key must have length dim.
  LaurentPoly(int dim, const Terms& terms);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds c * x^e, removing the term if it cancels.
  void add_term(const ExponentVector& e, const Rational& c);

  bool operator==(const LaurentPoly&) const = default;

 private:
  int dim_;
  Terms terms_;
};

// Sum over the vertices v of P of x^v, all coefficients 1.
LaurentPoly superpotential(const LatticePolytope& p);

LaurentPoly add(const LaurentPoly& lhs, const LaurentPoly& rhs);
// Pads exponents with zeros outside [offset, offset + w.dim()).
LaurentPoly embed(const LaurentPoly& w, int total_dim, int offset);
// Ordinary partial derivative along axis.
LaurentPoly partial(const LaurentPoly& w, int axis);

namespace detail {

template <class T>
void require_torus_point(int dim, std::span<const T> p) {
  if (static_cast<int>(p.size()) != dim) throw EvaluationError("point dimension mismatch");
  for (const auto& x : p) {
    if (x == T(0)) throw EvaluationError("point has a zero coordinate (off the torus)");
  }
}

}  // namespace detail

template <class T>
T eval(const LaurentPoly& w, std::span<const T> p) {
  detail::require_torus_point(w.dim(), p);
  T sum(0);
  for (const auto& [e, c] : w.terms()) {
    T mono = ScalarTraits<T>::from_rational(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) mono *= int_pow(p[i], e[i]);
    }
    sum += mono;
  }
  return sum;
}

// First and second partials of W, differentiated once and reused across
// many evaluations.
class DerivativeTable {
 public:
  explicit DerivativeTable(const LaurentPoly& w);

  int dim() const { return w_.dim(); }
  const LaurentPoly& function() const { return w_; }
  const LaurentPoly& first(int k) const { return first_[k]; }
  // Symmetric: second(j, k) and second(k, j) are the same polynomial.
  const LaurentPoly& second(int j, int k) const;

  template <class T>
  std::vector<T> gradient(std::span<const T> p) const {
    detail::require_torus_point(dim(), p);
    std::vector<T> g;
    g.reserve(dim());
    for (const auto& d : first_) g.push_back(eval<T>(d, p));
    return g;
  }

  template <class T>
  SquareMatrix<T> hessian(std::span<const T> p) const {
    detail::require_torus_point(dim(), p);
    const auto n = static_cast<std::size_t>(dim());
    SquareMatrix<T> h(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        h(j, k) = eval<T>(second(static_cast<int>(j), static_cast<int>(k)), p);
        h(k, j) = h(j, k);
      }
    }
    return h;
  }

 private:
  LaurentPoly w_;
  std::vector<LaurentPoly> first_;
  std::vector<LaurentPoly> second_;  // upper triangle, row-major
};

template <class T>
std::vector<T> gradient_at(const LaurentPoly& w, std::span<const T> p) {
  return DerivativeTable(w).gradient<T>(p);
}

template <class T>
SquareMatrix<T> hessian_at(const LaurentPoly& w, std::span<const T> p) {
  return DerivativeTable(w).hessian<T>(p);
}

}  // namespace fanoqh
