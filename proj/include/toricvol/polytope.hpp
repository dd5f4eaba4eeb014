#ifndef TORICVOL_POLYTOPE_HPP
#define TORICVOL_POLYTOPE_HPP

#include "toricvol/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toricvol {

// Facet inequality <normal, y> + offset >= 0 with a primitive integer normal
// pointing inward.
struct Facet {
  RatVector normal;
  Rational offset;
  std::vector<int> vertex_indices;  // vertices saturating the facet
};

// Convex full-dimensional bounded polytope in R^m, with both V- and
// H-representations kept consistent by construction.
struct Polytope {
  int dim = 0;
  std::vector<RatVector> vertices;
  std::vector<Facet> facets;
  std::string name;

  // <normal_F, v> + offset_F as an exact rational
  Rational facet_value(int facet, const RatVector& point) const;
  bool contains_origin_interior() const;
  RatVector vertex_centroid() const;
  Eigen::MatrixXd vertices_as_double() const;  // one row per vertex
};

// Simplex with an attached measure weight: Lebesgue volume for interior
// pieces, lattice boundary mass for facet pieces.
struct Simplex {
  std::vector<RatVector> vertices;
  Rational weight;
  int facet = -1;  // owning facet for boundary pieces

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  int ambient_dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
};

struct DelzantVertexCheck {
  int vertex = 0;
  std::vector<int> saturating_facets;
  bool simple = true;          // exactly m facets meet
  BigInt normal_det_abs = 0;   // |det| of the saturating normals (when simple)
  bool ok = false;
};

struct DelzantReport {
  bool delzant = false;
  std::vector<DelzantVertexCheck> per_vertex;
  std::vector<int> offending_vertices;
};

// Builds a validated polytope. For dim == 2 the facets may be omitted and are
// recovered by an exact monotone-chain convex hull; for dim >= 3 explicit
// facets are required. Incidence is always recomputed by exact saturation
// testing; a supplied incidence is cross-checked.
Polytope build_polytope(int dim, std::vector<RatVector> vertices,
                        std::optional<std::vector<std::pair<RatVector, Rational>>> facets = std::nullopt,
                        std::optional<std::vector<std::vector<int>>> incidence = std::nullopt,
                        std::string name = {});

DelzantReport validate_delzant(const Polytope& p);

// True iff every facet offset equals 1 (all vertices integral).
bool validate_reflexive(const Polytope& p);

// Centroid-fan triangulation; weights are exact Lebesgue volumes and sum to
// vol(P).
std::vector<Simplex> triangulate(const Polytope& p);

// Triangulation of the boundary; weights carry the lattice measure
// d_sigma = (Euclidean (m-1)-volume) / |normal|_2, exact rationals.
std::vector<Simplex> boundary_pieces(const Polytope& p);

Rational volume(const Polytope& p);
Rational boundary_measure(const Polytope& p);

}  // namespace toricvol

#endif
