#pragma once

#include <vector>

#include "fanoqh/polytope.hpp"

namespace fanoqh::detail {

// Facets of conv(points) by the double description method on the cone
// {(a, t) : <a, q> <= t for every point q}, with coordinates translated so
// the centroid sits at the origin. Exact; throws GeometryError when the
// points are not full-dimensional. Facet vertex indices refer to `points`.
std::vector<Facet> convex_hull_facets(int dim, const std::vector<LatticeVector>& points);

}  // namespace fanoqh::detail
