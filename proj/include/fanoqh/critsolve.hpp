#pragma once

// Complete critical sets of the family superpotentials.
//
// At a critical point of either family superpotential every coordinate is a
// root of one quadratic, so coordinates take only two values A and
// B = -1/A. For L coordinates equal to A the remaining unknown is a single
// univariate equation in A:
//   del Pezzo:        A^(2L-n-1) = (-1)^(L-1)
//   pseudo del Pezzo: A - 1/A = -(-1)^L A^(2L-n)
// Enumerating every L, every root and every coordinate assignment gives the
// whole critical set; each point is then Newton-refined on the full gradient.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fanoqh/config.hpp"
#include "fanoqh/hessian.hpp"
#include "fanoqh/laurent.hpp"
#include "fanoqh/polytope.hpp"
#include "fanoqh/scalar.hpp"

namespace fanoqh {

using ComplexPoint = std::vector<Complex>;

struct PointMeta {
  int L = 0;
  Complex A, B, Z;
  // Bit i set: coordinate i (within the block) equals A.
  std::uint64_t assignment = 0;
};

// One family atom inside a (possibly product) critical point.
struct BlockInfo {
  FamilyAtom atom;
  int offset = 0;
  std::optional<PointMeta> meta;
};

struct CriticalPoint {
  ComplexPoint coords;
  double residual = 0.0;  // max |gradient entry|
  std::vector<BlockInfo> blocks;
};

// Deduplicated, sorted by (Re, Im) of the coordinates.
struct CriticalSet {
  std::vector<CriticalPoint> points;

  std::size_t size() const { return points.size(); }
};

// Lexicographic order on (Re, Im) of the coordinates; components closer than
// tol compare equal.
bool point_less(const ComplexPoint& lhs, const ComplexPoint& rhs, double tol);
double max_coordinate_distance(const ComplexPoint& lhs, const ComplexPoint& rhs);

struct NewtonResult {
  CriticalPoint point;
  int iterations = 0;
  bool converged = false;
  bool singular = false;  // Hessian became singular; point left unrefined
};

// Newton iteration on grad W = 0. Stops once the residual is <= tol.
template <class T>
NewtonResult newton_refine(const DerivativeTable& table, std::span<const Complex> start,
                           int max_iter, double tol);

NewtonResult newton_refine(const DerivativeTable& table, std::span<const Complex> start,
                           int max_iter, double tol, Precision precision);

// Structured roots A for a given L.
std::vector<Complex> dp_roots(int L, int n);
// Coefficients (ascending) of A^s (A - 1/A - s' (-1)^L A^(2L-n)) with the
// power of A chosen so the polynomial has a nonzero constant term.
std::vector<Complex> pdp_critical_polynomial(int L, int n, PdpRelation r = PdpRelation::Critical);
std::vector<Complex> pdp_roots(int L, int n, PdpRelation r = PdpRelation::Critical);

CriticalSet crit_segment();
CriticalSet crit_del_pezzo(int k, const Config& cfg = {});
CriticalSet crit_pseudo_del_pezzo(int k, const Config& cfg = {});

// Cartesian product; factor blocks are laid out in order. Throws on an
// empty factor.
CriticalSet crit_product(std::span<const CriticalSet> sets, std::span<const int> dims);

CriticalSet crit_atom(const FamilyAtom& atom, const Config& cfg = {});
// Throws std::invalid_argument when the realized dimension exceeds cfg.max_dim.
CriticalSet crit_for_family(const FamilyExpr& expr, const Config& cfg = {});

// The superpotential of an expression as the sum of its embedded atom
// superpotentials.
LaurentPoly family_superpotential(const FamilyExpr& expr);

}  // namespace fanoqh
