#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "trop/linalg.hpp"
#include "trop/rational.hpp"

namespace trop {

// Closed rational polyhedron in ℚⁿ. Canonical form on both sides:
//   V-side: vertices (extreme points modulo lineality), primitive extreme
//           rays modulo lineality, reduced-echelon primitive lineality basis;
//   H-side: irredundant facet inequalities ⟨x,m⟩ ≥ a and affine-hull
//           equations ⟨x,m⟩ = a with jointly primitive integer (m, a).
// Two polyhedra are equal as sets iff their canonical forms are identical.
// Internally everything runs through the homogenization cone in ℚ^{n+1}
// (last coordinate the height, constrained ≥ 0) and the double description
// method in both directions.
class Polyhedron {
 public:
  // ⟨x, normal⟩ ≥ offset (facet) / = offset (equation).
  struct Constraint {
    IntVec normal;
    Rat offset;
    bool operator==(const Constraint&) const = default;
  };

  Polyhedron() = default;

  static Polyhedron from_generators(std::size_t n, const std::vector<RatVec>& vertices,
                                    const std::vector<IntVec>& rays,
                                    const std::vector<IntVec>& lineality = {});
  static Polyhedron from_hrep(std::size_t n, const std::vector<Constraint>& inequalities,
                              const std::vector<Constraint>& equations);
  static Polyhedron point(const RatVec& p);

  std::size_t ambient_dim() const { return m_n; }
  bool is_empty() const { return m_vertices.empty(); }
  // Dimension of the affine hull; -1 for the empty polyhedron.
  int dim() const;
  bool is_cone() const;
  bool is_bounded() const { return m_rays.empty() && m_lineality.empty(); }
  bool has_lineality() const { return !m_lineality.empty(); }

  const std::vector<RatVec>& vertices() const { return m_vertices; }
  const std::vector<IntVec>& rays() const { return m_rays; }
  const std::vector<IntVec>& lineality() const { return m_lineality; }
  const std::vector<Constraint>& facet_constraints() const { return m_facets; }
  const std::vector<Constraint>& equation_constraints() const { return m_equations; }

  bool contains(const RatVec& x) const;
  bool in_relint(const RatVec& x) const;
  // A point in the relative interior (nonempty input).
  RatVec relint_point() const;
  // Linear span of all direction vectors within the polyhedron.
  Subspace tangent_space() const;

  // All nonempty faces, this polyhedron included, deduplicated.
  std::vector<Polyhedron> all_faces() const;
  // Codimension-one faces.
  std::vector<Polyhedron> facets() const;

  bool subset_of(const Polyhedron& q) const;
  bool is_face_of(const Polyhedron& q) const;
  static Polyhedron intersection(const Polyhedron& a, const Polyhedron& b);

  bool operator==(const Polyhedron& rhs) const;
  bool operator!=(const Polyhedron& rhs) const { return !(*this == rhs); }
  // Deterministic serialization of the canonical form (usable as a map key).
  std::string repr_key() const;

 private:
  std::size_t m_n = 0;
  std::vector<RatVec> m_vertices;
  std::vector<IntVec> m_rays;
  std::vector<IntVec> m_lineality;
  std::vector<Constraint> m_facets;
  std::vector<Constraint> m_equations;

  static Polyhedron from_cone_hrep(std::size_t n, std::vector<IntVec> cone_ineqs,
                                   std::vector<IntVec> cone_eqs);
};

// Cone obtained by zeroing all offsets of the H-representation.
Polyhedron recession_cone(const Polyhedron& p);

}  // namespace trop
