#pragma once

#include <array>
#include <optional>
#include <vector>

#include "polyhilbert/polynomial.hpp"

namespace polyhilbert {

/// Half-plane {x : normal . x >= offset}. Normals are primitive with
/// non-positive entries.
struct Facet {
  std::array<long, 2> normal{};
  long offset = 0;

  friend bool operator==(const Facet&, const Facet&) = default;
};

struct BoundednessVerdict {
  bool bounded = true;
  std::optional<Exponent> witness;  // an (odd, odd) vertex when unbounded
};

/// Newton polyhedron of P for the global domain, i.e. the convex hull of
/// Lambda(P) + (-R_+^2).
///
/// Vertices are sorted by m1 ascending (so m2 strictly descending). Facets are
/// ordered along the boundary: the horizontal recession ray (0,-1) first, then
/// the bounded edges v_i v_{i+1}, then the vertical ray (-1,0). Vertex i sits
/// between facets i and i+1, whose normals span its dual cone.
class NewtonPolyhedron {
 public:
  static NewtonPolyhedron build(const Polynomial& p);

  const std::vector<Exponent>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  /// The pair of facet normals spanning the dual cone of vertex i.
  std::array<std::array<long, 2>, 2> dual_cone(std::size_t i) const;

  /// Index of the vertex whose disjointified dual cone contains the dyadic
  /// index j: the vertex maximising j . m, ties going to the smaller index.
  std::size_t dual_face_of(long j1, long j2) const;

  bool contains(Exponent e) const;

 private:
  std::vector<Exponent> vertices_;
  std::vector<Facet> facets_;
};

BoundednessVerdict decide_boundedness(const NewtonPolyhedron& n);

struct DominationReport {
  bool passed = false;
  double ratio = 0;    // max over samples of |P(2^j x)| / 2^{j.m}
  double bracket = 0;  // C = 2^{deg} sum abs(c); passes when ratio lies in [1/C, C]
};

/// Samples |P(2^{j1} x1, 2^{j2} x2)| / 2^{j.m} on a samples x samples grid of
/// [1,2]^2, m being the vertex assigned to j.
DominationReport dominant_vertex_check(const Polynomial& p, const NewtonPolyhedron& n, long j1, long j2,
                                       int samples = 32);

}  // namespace polyhilbert
