#pragma once

// Lattice polytopes in exact integer arithmetic: the three families of
// facet-symmetric smooth Fano generators, convex-hull products, facet
// enumeration, duality, and the reflexive/smooth/facet-symmetric tests.
//
// A facet is written as <x, normal> <= offset with a primitive normal, so
// normals point outward.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fanoqh/integer_math.hpp"

namespace fanoqh {

using LatticeVector = std::vector<std::int64_t>;

struct Facet {
  LatticeVector normal;  // primitive
  // <v, normal> for any vertex v on the facet. Integral because the
  // vertices are lattice points and the normal is integral.
  std::int64_t offset = 0;
  std::vector<std::size_t> vertices;  // indices into LatticePolytope::vertices()

  bool operator==(const Facet&) const = default;
};

class LatticePolytope {
 public:
  // Validates the vertex list: consistent lengths, pairwise distinct,
  // full-dimensional, and every point a vertex of the hull. Vertices are
  // stored in lexicographic order so that equal polytopes compare equal.
  static LatticePolytope from_vertices(int dim, std::vector<LatticeVector> points);

  int dim() const { return dim_; }
  const std::vector<LatticeVector>& vertices() const { return vertices_; }
  // Complete irredundant facet list of the hull, sorted by normal. Offsets
  // are only positive when the origin is interior.
  const std::vector<Facet>& hull_facets() const { return facets_; }

  bool has_interior_origin() const;

  bool operator==(const LatticePolytope& other) const {
    return dim_ == other.dim_ && vertices_ == other.vertices_;
  }

 private:
  LatticePolytope() = default;

  int dim_ = 0;
  std::vector<LatticeVector> vertices_;
  std::vector<Facet> facets_;
};

LatticePolytope make_segment();
LatticePolytope make_pseudo_del_pezzo(int k);
LatticePolytope make_del_pezzo(int k);

// conv((Q x 0) u (0 x Q2)). Both inputs must contain the origin in their
// interiors; the union of the embedded vertex sets is checked to be exactly
// the vertex set of the result.
LatticePolytope convex_hull_product(const LatticePolytope& q, const LatticePolytope& q2);

// Facets of a polytope with the origin in its interior (throws otherwise).
std::vector<Facet> enumerate_facets(const LatticePolytope& p);

// Convex hull of the facet normals; requires every offset to be 1.
LatticePolytope dual(const LatticePolytope& p);

bool is_reflexive(const LatticePolytope& p);
// Delzant condition on the moment polytope dual(p): each vertex lies on
// exactly dim facets whose normals have determinant +-1. Throws for a
// non-reflexive input or a non-simple vertex.
bool is_smooth(const LatticePolytope& p);
// Some facet F has -F as a facet.
bool is_facet_symmetric(const LatticePolytope& p);

// dim! times the Euclidean volume.
std::int64_t normalized_volume(const LatticePolytope& p);

// Family expressions: atom := "seg" | "dp(" int ")" | "pdp(" int ")",
// expr := atom ("*" atom)*. The product is associative, so an expression
// is stored as its flat list of atoms.
enum class AtomKind { Segment, DelPezzo, PseudoDelPezzo };

struct FamilyAtom {
  AtomKind kind = AtomKind::Segment;
  int k = 1;  // ignored for Segment

  int dim() const { return kind == AtomKind::Segment ? 1 : 2 * k; }
  bool operator==(const FamilyAtom&) const = default;
};

struct FamilyExpr {
  std::vector<FamilyAtom> atoms;

  int dim() const;
  bool operator==(const FamilyExpr&) const = default;
};

FamilyExpr parse_family(std::string_view text);
std::string to_string(const FamilyAtom& atom);
std::string to_string(const FamilyExpr& expr);

LatticePolytope realize(const FamilyAtom& atom);
LatticePolytope realize(const FamilyExpr& expr);

}  // namespace fanoqh
