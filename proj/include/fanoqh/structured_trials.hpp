#pragma once

// Randomized comparison of the closed-form structured determinant and
// eigenvalues against dense oracles (LU and a general eigensolver).

#include <cstdint>
#include <string>

#include "fanoqh/hessian.hpp"

namespace fanoqh {

struct StructuredTrialOptions {
  int trials = 1000;
  int max_n = 12;
  std::uint64_t seed = 1;
  // Test-only: replaces the closed form with a wrong exponent so the harness
  // can prove it detects a broken formula.
  bool corrupt_formula = false;
};

struct StructuredTrialSummary {
  int trials = 0;
  int failures = 0;
  double worst_det_rel = 0.0;
  double worst_eigen_rel = 0.0;
  int edge_trials = 0;  // draws with L in {0, 1, n-1, n}
  bool passed() const { return failures == 0; }
};

constexpr double kTrialDetTolerance = 1e-9;
constexpr double kTrialEigenTolerance = 1e-8;

// Random parameters with |entries| in [0.5, 2]; L cycles through the edge
// cases 0 and n on the first draws and is uniform afterwards.
StructuredParams random_structured_params(std::uint64_t seed, int trial, int max_n);

// Largest distance between the closed-form eigenvalue multiset and the dense
// eigenvalues under a greedy nearest matching, relative to max(1, max |λ|).
double eigen_multiset_mismatch(const StructuredParams& p);

StructuredTrialSummary run_structured_trials(const StructuredTrialOptions& opts);

std::string format_trial_summary(const StructuredTrialSummary& s);

}  // namespace fanoqh
