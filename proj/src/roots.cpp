#include "fanoqh/roots.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "fanoqh/errors.hpp"

namespace fanoqh {

Complex eval_polynomial(std::span<const Complex> coeffs, Complex x) {
  Complex acc(0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

namespace {

Complex eval_derivative(std::span<const Complex> coeffs, Complex x) {
  Complex acc(0);
  for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * coeffs[i];
  return acc;
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  if (coeffs.size() < 2 || coeffs.back() == Complex(0)) {
    throw std::invalid_argument("polynomial must have degree >= 1 and nonzero leading coefficient");
  }
  const Eigen::Index m = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (m == 1) return {-coeffs[0] / coeffs[1]};

  // Companion matrix of the monic polynomial: ones on the subdiagonal,
  // -c_i / c_m in the last column.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) companion(i, m - 1) = -coeffs[i] / coeffs.back();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw SolverError("companion eigensolver did not converge");
  }
  std::vector<Complex> roots;
  roots.reserve(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    Complex x = solver.eigenvalues()[i];
    for (int it = 0; it < 4; ++it) {
      const Complex dp = eval_derivative(coeffs, x);
      if (dp == Complex(0)) break;
      const Complex step = eval_polynomial(coeffs, x) / dp;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    roots.push_back(x);
  }
  return roots;
}

}  // namespace fanoqh
