#include "fanoqh/integer_math.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace fanoqh::intmath {

namespace {

Int narrow(__int128 v) {
  if (v > std::numeric_limits<Int>::max() ||
      v < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("64-bit integer overflow in exact arithmetic");
  }
  return static_cast<Int>(v);
}

}  // namespace

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("64-bit integer overflow in exact arithmetic");
  }
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw std::overflow_error("64-bit integer overflow in exact arithmetic");
  }
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("64-bit integer overflow in exact arithmetic");
  }
  return r;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int content(std::span<const Int> v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x);
  return g;
}

void make_primitive(IntVector& v) {
  const Int g = content(v);
  if (g > 1) {
    for (Int& x : v) x /= g;
  }
}

Int dot(std::span<const Int> a, std::span<const Int> b) {
  __int128 acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<__int128>(a[i]) * b[i];
  }
  return narrow(acc);
}

Int determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const __int128 num = static_cast<__int128>(m[i][j]) * m[k][k] -
                             static_cast<__int128>(m[i][k]) * m[k][j];
        m[i][j] = narrow(num / prev);
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return checked_mul(sign, m[n - 1][n - 1]);
}

int rank(IntMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        const __int128 num = static_cast<__int128>(m[i][j]) * m[r][c] -
                             static_cast<__int128>(m[i][c]) * m[r][j];
        m[i][j] = narrow(num / prev);
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

IntVector null_vector(const IntMatrix& rows) {
  const std::size_t k = rows.size() + 1;
  IntVector v(k);
  for (std::size_t col = 0; col < k; ++col) {
    IntMatrix minor(rows.size(), IntVector(k - 1));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0, jj = 0; j < k; ++j) {
        if (j == col) continue;
        minor[i][jj++] = rows[i][j];
      }
    }
    const Int det = determinant(std::move(minor));
    v[col] = (col % 2 == 0) ? det : checked_sub(0, det);
  }
  make_primitive(v);
  return v;
}

}  // namespace fanoqh::intmath
