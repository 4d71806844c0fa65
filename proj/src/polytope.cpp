#include "fanoqh/polytope.hpp"

#include <algorithm>
#include <cstdlib>
#include <iterator>
#include <set>
#include <stdexcept>
#include <utility>

#include "fanoqh/errors.hpp"
#include "hull.hpp"

namespace fanoqh {

namespace im = intmath;

LatticePolytope LatticePolytope::from_vertices(int dim, std::vector<LatticeVector> points) {
  if (dim < 1) throw GeometryError("polytope dimension must be positive");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim) {
      throw GeometryError("vertex length does not match dimension " + std::to_string(dim));
    }
  }
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw GeometryError("duplicate vertex");
  }

  LatticePolytope p;
  p.dim_ = dim;
  p.facets_ = detail::convex_hull_facets(dim, points);

  std::vector<std::vector<std::size_t>> incident(points.size());
  for (std::size_t f = 0; f < p.facets_.size(); ++f) {
    for (auto v : p.facets_[f].vertices) incident[v].push_back(f);
  }
  for (std::size_t v = 0; v < points.size(); ++v) {
    im::IntMatrix normals;
    for (auto f : incident[v]) normals.push_back(p.facets_[f].normal);
    if (im::rank(std::move(normals)) != dim) {
      throw GeometryError("point " + std::to_string(v) + " of the sorted list is not a vertex");
    }
  }
  p.vertices_ = std::move(points);
  return p;
}

bool LatticePolytope::has_interior_origin() const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [](const Facet& f) { return f.offset > 0; });
}

namespace {

LatticeVector unit(int dim, int i, std::int64_t value = 1) {
  LatticeVector v(dim, 0);
  v[i] = value;
  return v;
}

std::vector<LatticeVector> cross_vertices(int dim) {
  std::vector<LatticeVector> pts;
  for (int i = 0; i < dim; ++i) {
    pts.push_back(unit(dim, i, 1));
    pts.push_back(unit(dim, i, -1));
  }
  return pts;
}

void require_positive(int k) {
  if (k <= 0) throw std::invalid_argument("family parameter k must be >= 1");
}

void require_interior_origin(const LatticePolytope& p) {
  if (!p.has_interior_origin()) {
    throw GeometryError("origin is not in the interior of the polytope");
  }
}

}  // namespace

LatticePolytope make_segment() { return LatticePolytope::from_vertices(1, {{1}, {-1}}); }

LatticePolytope make_pseudo_del_pezzo(int k) {
  require_positive(k);
  const int n = 2 * k;
  auto pts = cross_vertices(n);
  pts.emplace_back(n, 1);
  return LatticePolytope::from_vertices(n, std::move(pts));
}

LatticePolytope make_del_pezzo(int k) {
  require_positive(k);
  const int n = 2 * k;
  auto pts = cross_vertices(n);
  pts.emplace_back(n, 1);
  pts.emplace_back(n, -1);
  return LatticePolytope::from_vertices(n, std::move(pts));
}

LatticePolytope convex_hull_product(const LatticePolytope& q, const LatticePolytope& q2) {
  require_interior_origin(q);
  require_interior_origin(q2);
  const int n = q.dim();
  const int m = q2.dim();
  std::vector<LatticeVector> pts;
  for (const auto& v : q.vertices()) {
    LatticeVector w(v);
    w.resize(n + m, 0);
    pts.push_back(std::move(w));
  }
  for (const auto& v : q2.vertices()) {
    LatticeVector w(n, 0);
    w.insert(w.end(), v.begin(), v.end());
    pts.push_back(std::move(w));
  }
  // from_vertices rejects any embedded point that is not a hull vertex.
  auto result = LatticePolytope::from_vertices(n + m, pts);
  if (result.vertices().size() != pts.size()) {
    throw GeometryError("convex-hull product lost a vertex");
  }
  return result;
}

std::vector<Facet> enumerate_facets(const LatticePolytope& p) {
  require_interior_origin(p);
  return p.hull_facets();
}

bool is_reflexive(const LatticePolytope& p) {
  require_interior_origin(p);
  const auto& fs = p.hull_facets();
  return std::all_of(fs.begin(), fs.end(), [](const Facet& f) { return f.offset == 1; });
}

LatticePolytope dual(const LatticePolytope& p) {
  if (!is_reflexive(p)) {
    throw GeometryError("dual is not a lattice polytope: some facet offset differs from 1");
  }
  std::vector<LatticeVector> normals;
  for (const auto& f : p.hull_facets()) normals.push_back(f.normal);
  return LatticePolytope::from_vertices(p.dim(), std::move(normals));
}

bool is_smooth(const LatticePolytope& p) {
  const LatticePolytope moment = dual(p);
  const auto& fs = moment.hull_facets();
  std::vector<std::vector<std::size_t>> incident(moment.vertices().size());
  for (std::size_t f = 0; f < fs.size(); ++f) {
    for (auto v : fs[f].vertices) incident[v].push_back(f);
  }
  for (std::size_t v = 0; v < incident.size(); ++v) {
    if (static_cast<int>(incident[v].size()) != p.dim()) {
      throw GeometryError("moment polytope vertex " + std::to_string(v) + " is not simple");
    }
    im::IntMatrix normals;
    for (auto f : incident[v]) normals.push_back(fs[f].normal);
    if (std::llabs(im::determinant(std::move(normals))) != 1) return false;
  }
  return true;
}

bool is_facet_symmetric(const LatticePolytope& p) {
  std::set<std::pair<LatticeVector, std::int64_t>> keys;
  for (const auto& f : p.hull_facets()) keys.emplace(f.normal, f.offset);
  for (const auto& f : p.hull_facets()) {
    LatticeVector neg(f.normal);
    for (auto& x : neg) x = -x;
    if (keys.count({neg, f.offset})) return true;
  }
  return false;
}

namespace {

using IndexSet = std::vector<std::size_t>;

// Facets of the face `face`: the inclusion-maximal proper intersections of
// `face` with facets of the polytope.
std::vector<IndexSet> facets_of_face(const IndexSet& face, const std::vector<Facet>& facets) {
  std::set<IndexSet> candidates;
  for (const auto& f : facets) {
    IndexSet meet;
    std::set_intersection(face.begin(), face.end(), f.vertices.begin(), f.vertices.end(),
                          std::back_inserter(meet));
    if (!meet.empty() && meet.size() < face.size()) candidates.insert(std::move(meet));
  }
  std::vector<IndexSet> maximal;
  for (const auto& c : candidates) {
    bool dominated = false;
    for (const auto& d : candidates) {
      if (d.size() > c.size() && std::includes(d.begin(), d.end(), c.begin(), c.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(c);
  }
  return maximal;
}

// Pulling triangulation of a face of dimension face_dim.
void triangulate_face(const IndexSet& face, int face_dim, const std::vector<Facet>& facets,
                      std::vector<IndexSet>& out) {
  if (static_cast<int>(face.size()) == face_dim + 1) {
    out.push_back(face);
    return;
  }
  const std::size_t apex = face.front();
  for (const auto& sub : facets_of_face(face, facets)) {
    if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
    std::vector<IndexSet> part;
    triangulate_face(sub, face_dim - 1, facets, part);
    for (auto& s : part) {
      s.insert(std::lower_bound(s.begin(), s.end(), apex), apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::int64_t normalized_volume(const LatticePolytope& p) {
  const auto& verts = p.vertices();
  const auto& facets = p.hull_facets();
  const int d = p.dim();
  std::int64_t total = 0;
  if (p.has_interior_origin()) {
    // Cone over the origin of a triangulation of each facet.
    for (const auto& f : facets) {
      std::vector<IndexSet> simplices;
      triangulate_face(f.vertices, d - 1, facets, simplices);
      for (const auto& s : simplices) {
        im::IntMatrix m;
        for (auto v : s) m.push_back(verts[v]);
        total = im::checked_add(total, std::llabs(im::determinant(std::move(m))));
      }
    }
    return total;
  }
  IndexSet all(verts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<IndexSet> simplices;
  triangulate_face(all, d, facets, simplices);
  for (const auto& s : simplices) {
    im::IntMatrix m;
    for (std::size_t i = 1; i < s.size(); ++i) {
      im::IntVector row(d);
      for (int j = 0; j < d; ++j) row[j] = im::checked_sub(verts[s[i]][j], verts[s[0]][j]);
      m.push_back(std::move(row));
    }
    total = im::checked_add(total, std::llabs(im::determinant(std::move(m))));
  }
  return total;
}

}  // namespace fanoqh
