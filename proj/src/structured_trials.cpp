#include "fanoqh/structured_trials.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "fanoqh/linalg.hpp"

namespace fanoqh {

namespace {

Complex random_entry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mod(0.5, 2.0);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  return std::polar(mod(rng), arg(rng));
}

Complex corrupted_det(const StructuredParams& p) {
  Complex d = structured_det(p);
  if (p.L >= 1) d *= p.a - p.f;
  return d;
}

}  // namespace

StructuredParams random_structured_params(std::uint64_t seed, int trial, int max_n) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(trial));
  StructuredParams p;
  p.n = std::uniform_int_distribution<int>(1, std::max(1, max_n))(rng);
  switch (trial % 8) {
    case 0:
      p.L = 0;
      break;
    case 1:
      p.L = p.n;
      break;
    case 2:
      p.L = std::min(1, p.n);
      break;
    case 3:
      p.L = std::max(0, p.n - 1);
      break;
    default:
      p.L = std::uniform_int_distribution<int>(0, p.n)(rng);
  }
  p.a = random_entry(rng);
  p.f = random_entry(rng);
  p.b = random_entry(rng);
  p.h = random_entry(rng);
  p.d = random_entry(rng);
  return p;
}

double eigen_multiset_mismatch(const StructuredParams& p) {
  const DenseMatrix m = assemble_structured(p);
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(i, j);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(e, false);
  if (solver.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  std::vector<Complex> dense(solver.eigenvalues().begin(), solver.eigenvalues().end());

  std::vector<Complex> closed;
  for (const auto& ev : structured_eigen(p)) closed.insert(closed.end(), ev.multiplicity, ev.value);
  if (closed.size() != dense.size()) return std::numeric_limits<double>::infinity();

  double scale = 1.0;
  for (const auto& z : dense) scale = std::max(scale, std::abs(z));
  std::vector<bool> used(dense.size(), false);
  double worst = 0.0;
  for (const auto& z : closed) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (!used[i] && std::abs(z - dense[i]) < best_d) {
        best_d = std::abs(z - dense[i]);
        best = i;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d / scale);
  }
  return worst;
}

StructuredTrialSummary run_structured_trials(const StructuredTrialOptions& opts) {
  StructuredTrialSummary s;
  for (int t = 0; t < opts.trials; ++t) {
    const StructuredParams p = random_structured_params(opts.seed, t, opts.max_n);
    if (p.L <= 1 || p.L >= p.n - 1) ++s.edge_trials;
    const Complex closed = opts.corrupt_formula ? corrupted_det(p) : structured_det(p);
    const Complex dense = dense_det(assemble_structured(p));
    const double det_rel = relative_difference(closed, dense);
    const double eig_rel = eigen_multiset_mismatch(p);
    s.worst_det_rel = std::max(s.worst_det_rel, det_rel);
    s.worst_eigen_rel = std::max(s.worst_eigen_rel, eig_rel);
    if (!(det_rel <= kTrialDetTolerance) || !(eig_rel <= kTrialEigenTolerance)) ++s.failures;
    ++s.trials;
  }
  return s;
}

std::string format_trial_summary(const StructuredTrialSummary& s) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific;
  os << "trials " << s.trials << ", edge draws " << s.edge_trials << ", failures " << s.failures
     << ", worst det rel error " << s.worst_det_rel << ", worst eigenvalue rel error " << s.worst_eigen_rel
     << "\n";
  return os.str();
}

}  // namespace fanoqh
