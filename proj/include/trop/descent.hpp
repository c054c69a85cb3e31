#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "trop/bar.hpp"
#include "trop/complex.hpp"
#include "trop/connection.hpp"
#include "trop/forms.hpp"
#include "trop/linalg.hpp"
#include "trop/matrix.hpp"

namespace trop {

// Edge of the bounded 2-skeleton: a bounded segment of the host complex with
// its endpoints as skeleton vertex indices, tail < head. The matrix stored
// for an edge always acts in the tail -> head direction; the reverse edge
// acts by the inverse.
struct SkeletonEdge {
  std::size_t face = 0;  // host face index
  std::size_t tail = 0;  // skeleton vertex indices
  std::size_t head = 0;
};

// Bounded triangle of the host complex: skeleton vertices a < b < c and the
// skeleton indices of its three edges.
struct SkeletonTriangle {
  std::size_t face = 0;
  std::size_t a = 0, b = 0, c = 0;
  std::size_t ab = 0, bc = 0, ac = 0;
};

// The 2-skeleton of the union of the bounded faces of a complex: its
// vertices, edges and triangles, plus the cached data the gluing conditions
// are written against - the connection base (form spaces and wedge table) of
// every vertex star and the 1-form restriction matrices from vertex stars to
// the stars of their incident edges.
class SkeletonGamma {
 public:
  const PolyComplex& host() const { return m_host; }
  std::size_t vertex_count() const { return m_vertex_faces.size(); }
  std::size_t edge_count() const { return m_edges.size(); }
  std::size_t triangle_count() const { return m_triangles.size(); }

  std::size_t vertex_face(std::size_t v) const { return m_vertex_faces.at(v); }
  const SkeletonEdge& edge(std::size_t e) const { return m_edges.at(e); }
  const SkeletonTriangle& triangle(std::size_t t) const { return m_triangles.at(t); }
  // Indices of the edges incident to a vertex, ascending.
  const std::vector<std::size_t>& edges_at(std::size_t v) const { return m_incident.at(v); }

  const OpenSet& vertex_star(std::size_t v) const { return m_vertex_stars.at(v); }
  const BarSetup& vertex_setup(std::size_t v) const { return m_vertex_setups.at(v); }

  // 1-forms on the open star of an edge, and the restriction matrices into
  // them from the stars of the two endpoints (class coordinates).
  const FormSpace& edge_forms(std::size_t e) const { return m_edge_forms.at(e); }
  const Mat& restriction_from_tail(std::size_t e) const { return m_from_tail.at(e); }
  const Mat& restriction_from_head(std::size_t e) const { return m_from_head.at(e); }

 private:
  PolyComplex m_host;
  std::vector<std::size_t> m_vertex_faces;
  std::vector<SkeletonEdge> m_edges;
  std::vector<SkeletonTriangle> m_triangles;
  std::vector<std::vector<std::size_t>> m_incident;
  std::vector<OpenSet> m_vertex_stars;
  std::vector<BarSetup> m_vertex_setups;
  std::vector<FormSpace> m_edge_forms;
  std::vector<Mat> m_from_tail;
  std::vector<Mat> m_from_head;

  friend SkeletonGamma build_skeleton(const PolyComplex& sigma);
};

// Builds the skeleton of a validated complex. Requires that no face of the
// complex contains a line (ContainsLine), that the bounded faces of
// dimension at most two are simplices (NotSimplicial), and that the edge
// graph on the bounded vertices is connected (Disconnected).
SkeletonGamma build_skeleton(const PolyComplex& sigma);

// Object of the descent category over a skeleton: a connection of common
// rank on the open star of every vertex, and an invertible gluing matrix per
// edge stored in the tail -> head direction. Fibers are identified across
// faces, so the gluing matrices carry all of the local-system data.
struct DescentObject {
  std::size_t rank = 0;
  std::vector<TropConnection> vertex_objects;  // one per skeleton vertex
  std::vector<Mat> edge_glue;                  // one per skeleton edge
};

// The rank-r object with zero connections and identity gluings; rank 1 is
// the unit of the category.
DescentObject trivial_object(const SkeletonGamma& g, std::size_t rank = 1);

// The coefficient matrices of a vertex connection restricted to the 1-forms
// of an incident edge star: one matrix per edge-star basis class.
std::vector<Mat> edge_theta(const SkeletonGamma& g, const DescentObject& obj, std::size_t e,
                            bool from_head);

enum class DescentCheck {
  VertexIntegrable,   // a vertex connection is not integrable
  VertexUnipotent,    // a vertex connection is not locally unipotent
  EdgeInvertible,     // an edge gluing matrix is singular
  EdgeIntertwining,   // an edge gluing does not intertwine the restrictions
  FaceCocycle,        // a triangle violates the cocycle equation
};

struct DescentViolation {
  DescentCheck check;
  std::size_t index = 0;  // vertex, edge or triangle index in the skeleton
  std::string detail;
};

struct DescentReport {
  bool valid = false;
  std::vector<DescentViolation> violations;
};

// Checks every object axiom exactly and reports all violations with their
// locations. Shape-level breakage (wrong counts, inconsistent ranks, wrongly
// sized matrices) throws DimensionMismatch; a vertex connection over the
// wrong base throws BaseMismatch.
DescentReport validate_object(const SkeletonGamma& g, const DescentObject& obj);

// Morphism of descent objects: a matrix per vertex, horizontal for the two
// vertex connections and commuting with the gluings across every edge.
struct DescentMorphism {
  std::vector<Mat> parts;  // one rank_to x rank_from matrix per vertex
};

// Solution space of the joint per-vertex intertwining and per-edge
// commuting-square system. `solutions` holds the concatenation over vertices
// of the row-major vectorizations of the parts.
struct DescentHom {
  std::size_t rank_from = 0;
  std::size_t rank_to = 0;
  Subspace solutions;
  std::vector<DescentMorphism> basis;
  std::size_t dim() const { return solutions.dim(); }
};

// Both objects must be shaped for the same skeleton and live over its vertex
// stars (SkeletonMismatch otherwise). For a single-vertex skeleton this is
// exactly the hom space of the two connections.
DescentHom descent_hom(const SkeletonGamma& g, const DescentObject& from, const DescentObject& to);

// Result of the global unipotence peel: an increasing chain of subspaces of
// the original fiber at every vertex, grown by the images of the global
// horizontal gluing-invariant sections, one chain step per peel. The object
// is unipotent exactly when the chain reaches the full fiber everywhere.
struct ObjectUnipotenceReport {
  bool unipotent = false;
  std::vector<std::vector<Subspace>> chain;  // chain[step][vertex]
};

// Recursive peel: take hom(unit, obj), require it nonzero, quotient every
// vertex and edge by the section span (complements chosen at vertex 0 and
// transported along a spanning tree, which makes the quotient gluings
// identity on tree edges), and recurse on the quotient object.
ObjectUnipotenceReport is_unipotent_object(const SkeletonGamma& g, const DescentObject& obj);

// A cycle-shaped skeleton (every vertex of degree two, as many edges as
// vertices, no triangles): the edge indices of the walk around the cycle
// starting at the base vertex along its smallest incident edge. Throws
// NotCycle for any other shape.
std::vector<std::size_t> cycle_edges(const SkeletonGamma& g, std::size_t base_vertex);

// Normal form of an object over a cycle: the residue of the connection at
// the base vertex in the coordinate of the outgoing walk edge (nilpotent for
// unipotent objects), and the monodromy around the cycle (the ordered
// product of the gluings along the walk).
struct EllipticPair {
  Mat residue;    // the matrix S
  Mat monodromy;  // the matrix T
};

// Extracts (S, T) from a valid unipotent object over a cycle skeleton.
// Throws NotCycle for non-cycle skeletons or hosts without a one-dimensional
// global 1-form space, BadBasis when a gluing matrix is singular, and
// NotCommuting when S T != T S.
EllipticPair elliptic_extract(const SkeletonGamma& g, const DescentObject& obj,
                              std::size_t base_vertex = 0);

// Builds the object with connection (global 1-form) (x) S at every vertex,
// identity gluings except for the closing walk edge, which carries T. The
// pair is not required to commute, so invalid objects can be materialized
// and fed to validate_object; elliptic_extract returns (S, T) unchanged
// whenever the inputs commute.
DescentObject elliptic_build(const SkeletonGamma& g, const Mat& residue, const Mat& monodromy,
                             std::size_t base_vertex = 0);

}  // namespace trop
