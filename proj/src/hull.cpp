#include "hull.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>

#include "fanoqh/errors.hpp"

namespace fanoqh::detail {

namespace im = intmath;

namespace {

struct Ray {
  im::IntVector x;                 // (a_1..a_dim, t)
  boost::dynamic_bitset<> zeros;   // processed constraints tight at x
};

int affine_rank(const std::vector<LatticeVector>& points) {
  im::IntMatrix diffs;
  diffs.reserve(points.size());
  for (std::size_t i = 1; i < points.size(); ++i) {
    im::IntVector row(points[i].size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] = im::checked_sub(points[i][j], points[0][j]);
    }
    diffs.push_back(std::move(row));
  }
  return im::rank(std::move(diffs));
}

}  // namespace

std::vector<Facet> convex_hull_facets(int dim, const std::vector<LatticeVector>& points) {
  const std::size_t m = points.size();
  const std::size_t cone_dim = static_cast<std::size_t>(dim) + 1;
  if (m < cone_dim || affine_rank(points) != dim) {
    throw GeometryError("polytope is not full-dimensional");
  }

  // Constraint rows (-p_i, 1): row . (a, t) >= 0 means <a, p_i> <= t. The
  // cone is pointed because the points span the space affinely.
  im::IntMatrix rows(m, im::IntVector(cone_dim));
  for (std::size_t i = 0; i < m; ++i) {
    for (int j = 0; j < dim; ++j) rows[i][j] = im::checked_sub(0, points[i][j]);
    rows[i][dim] = 1;
  }

  // Initial simplicial cone from cone_dim independent rows.
  std::vector<std::size_t> basis;
  im::IntMatrix basis_rows;
  for (std::size_t i = 0; i < m && basis.size() < cone_dim; ++i) {
    basis_rows.push_back(rows[i]);
    if (im::rank(basis_rows) == static_cast<int>(basis_rows.size())) {
      basis.push_back(i);
    } else {
      basis_rows.pop_back();
    }
  }

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < cone_dim; ++j) {
    im::IntMatrix others;
    for (std::size_t i = 0; i < cone_dim; ++i) {
      if (i != j) others.push_back(basis_rows[i]);
    }
    Ray r{im::null_vector(others), boost::dynamic_bitset<>(m)};
    if (im::dot(basis_rows[j], r.x) < 0) {
      for (auto& v : r.x) v = -v;
    }
    for (std::size_t i = 0; i < cone_dim; ++i) {
      if (i != j) r.zeros.set(basis[i]);
    }
    rays.push_back(std::move(r));
  }

  std::vector<bool> in_basis(m, false);
  for (auto b : basis) in_basis[b] = true;

  for (std::size_t c = 0; c < m; ++c) {
    if (in_basis[c]) continue;
    std::vector<im::Int> s(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = im::dot(rows[c], rays[r].x);
      if (s[r] > 0) pos.push_back(r);
      else if (s[r] < 0) neg.push_back(r);
    }
    std::vector<Ray> next;
    if (!neg.empty()) {
      for (std::size_t ip : pos) {
        for (std::size_t in : neg) {
          const auto common = rays[ip].zeros & rays[in].zeros;
          if (common.count() + 2 < cone_dim) continue;
          bool adjacent = true;
          for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
            if (r == ip || r == in) continue;
            if (common.is_subset_of(rays[r].zeros)) adjacent = false;
          }
          if (!adjacent) continue;
          Ray nr{im::IntVector(cone_dim), common};
          for (std::size_t k = 0; k < cone_dim; ++k) {
            nr.x[k] = im::checked_sub(im::checked_mul(s[ip], rays[in].x[k]),
                                      im::checked_mul(s[in], rays[ip].x[k]));
          }
          im::make_primitive(nr.x);
          nr.zeros.set(c);
          next.push_back(std::move(nr));
        }
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (s[r] < 0) continue;
      if (s[r] == 0) rays[r].zeros.set(c);
      next.push_back(std::move(rays[r]));
    }
    rays = std::move(next);
  }

  std::vector<Facet> facets;
  facets.reserve(rays.size());
  for (const auto& r : rays) {
    Facet f;
    f.normal.assign(r.x.begin(), r.x.begin() + dim);
    im::make_primitive(f.normal);
    if (im::content(f.normal) == 0) {
      throw GeometryError("degenerate hull ray");
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (r.zeros.test(i)) f.vertices.push_back(i);
    }
    f.offset = im::dot(f.normal, points[f.vertices.front()]);
    facets.push_back(std::move(f));
  }
  std::sort(facets.begin(), facets.end(),
            [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
  return facets;
}

}  // namespace fanoqh::detail
