#pragma once

// Semisimplicity certification: every critical point of the superpotential
// must be non-degenerate, and the critical count must match the
// normalized-volume bound.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fanoqh/config.hpp"
#include "fanoqh/critsolve.hpp"
#include "fanoqh/polytope.hpp"

namespace fanoqh {

enum class Verdict { Semisimple, Degenerate, Inconclusive };

std::string to_string(Verdict v);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  // Decades between the worst observed value and its bound; negative when
  // the check fails.
  double worst_margin = 0.0;
};

struct PointReport {
  ComplexPoint coords;
  double residual = 0.0;
  Complex det_hessian;
  std::optional<Complex> structured_det;
  bool degenerate = false;
};

struct SemisimplicityReport {
  std::string input;
  int dim = 0;
  std::size_t critical_count = 0;
  std::size_t expected_count = 0;
  std::vector<PointReport> points;
  double min_abs_det = 0.0;
  std::vector<CheckResult> checks;
  std::optional<Verdict> verdict;  // absent when the input was rejected
  std::string detail;
  // Original coordinate of each family coordinate, when a user polytope was
  // recognized only up to a permutation of coordinates.
  std::vector<int> coordinate_permutation;
};

// No verdict when the expression exceeds cfg.max_dim.
SemisimplicityReport analyze(const FamilyExpr& expr, const Config& cfg = {});

// Checks reflexivity and smoothness, recognizes the polytope as a family
// product (up to a permutation of coordinates) and analyzes that. Returns
// INCONCLUSIVE for an unrecognized polytope and no verdict when a
// precondition fails.
SemisimplicityReport analyze_polytope(const LatticePolytope& p, const Config& cfg = {});

struct Recognition {
  FamilyExpr expr;
  // permutation[j] = original coordinate of family coordinate j.
  std::vector<int> permutation;
};

std::optional<Recognition> recognize_family(const LatticePolytope& p);

// Cross-factor Hessian entries vanish and the determinant factors over the
// blocks, at every point of `set`.
CheckResult check_product_block_structure(const FamilyExpr& expr, const CriticalSet& set);

struct StructuredRoot {
  int L = 0;
  Complex A;
};

// Distinct (L, A) pairs carried by the points of an atom critical set.
std::vector<StructuredRoot> structured_roots(const CriticalSet& set);

// |chi| > 1e-6 for every root and, where the root is valid, agreement with
// the quadratic constant of the del Pezzo parameters.
CheckResult check_dp_chi(std::span<const StructuredRoot> roots, int n);

std::vector<CheckResult> check_dp_identities(int k, const CriticalSet& set);
std::vector<CheckResult> check_dp_identities(int k, const Config& cfg = {});

std::vector<CheckResult> check_pdp_cases(int k, const CriticalSet& set);
std::vector<CheckResult> check_pdp_cases(int k, const Config& cfg = {});

// Dense Hessian with the A-block first against the structured matrix of the
// family parameters, for every block with metadata. Returns the worst
// entrywise difference, relative to the largest entry.
double structured_hessian_mismatch(const FamilyExpr& expr, const CriticalSet& set);

}  // namespace fanoqh
