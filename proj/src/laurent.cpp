#include "fanoqh/laurent.hpp"

#include <stdexcept>

namespace fanoqh {

LaurentPoly::LaurentPoly(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("Laurent polynomial dimension must be positive");
}

LaurentPoly::LaurentPoly(int dim, const Terms& terms) : LaurentPoly(dim) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

void LaurentPoly::add_term(const ExponentVector& e, const Rational& c) {
  if (static_cast<int>(e.size()) != dim_) {
    throw std::invalid_argument("exponent vector length does not match dimension");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly superpotential(const LatticePolytope& p) {
  if (!p.has_interior_origin()) {
    throw GeometryError("superpotential requires the origin in the interior");
  }
  LaurentPoly w(p.dim());
  for (const auto& v : p.vertices()) w.add_term(v, 1);
  return w;
}

LaurentPoly add(const LaurentPoly& lhs, const LaurentPoly& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("dimension mismatch in add");
  LaurentPoly out = lhs;
  for (const auto& [e, c] : rhs.terms()) out.add_term(e, c);
  return out;
}

LaurentPoly embed(const LaurentPoly& w, int total_dim, int offset) {
  if (offset < 0 || offset + w.dim() > total_dim) {
    throw std::invalid_argument("embedding block out of range");
  }
  LaurentPoly out(total_dim);
  for (const auto& [e, c] : w.terms()) {
    ExponentVector padded(total_dim, 0);
    std::copy(e.begin(), e.end(), padded.begin() + offset);
    out.add_term(padded, c);
  }
  return out;
}

LaurentPoly partial(const LaurentPoly& w, int axis) {
  if (axis < 0 || axis >= w.dim()) throw std::invalid_argument("axis out of range");
  LaurentPoly out(w.dim());
  for (const auto& [e, c] : w.terms()) {
    if (e[axis] == 0) continue;
    ExponentVector lowered = e;
    lowered[axis] -= 1;
    out.add_term(lowered, c * e[axis]);
  }
  return out;
}

DerivativeTable::DerivativeTable(const LaurentPoly& w) : w_(w) {
  const int n = w.dim();
  first_.reserve(n);
  for (int k = 0; k < n; ++k) first_.push_back(partial(w, k));
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) second_.push_back(partial(first_[j], k));
  }
}

const LaurentPoly& DerivativeTable::second(int j, int k) const {
  if (j > k) std::swap(j, k);
  const int n = dim();
  // Offset of row j in the packed upper triangle.
  const int row = j * n - j * (j - 1) / 2;
  return second_[row + (k - j)];
}

}  // namespace fanoqh
