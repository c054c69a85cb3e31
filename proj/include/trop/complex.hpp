#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "trop/matrix.hpp"
#include "trop/polyhedron.hpp"

namespace trop {

// Upward-closed set of face indices of a host complex, sorted ascending.
struct OpenSet {
  std::vector<std::size_t> members;
};

// Polyhedral complex with partial compactification: a face-closed list of
// polyhedra whose pairwise intersections are faces of each, a finite set of
// primitive compactification ray directions, and optional integer weights on
// maximal faces. Faces are indexed in a deterministic order (dimension, then
// canonical key).
class PolyComplex {
 public:
  PolyComplex() = default;

  // Closes the input under faces, deduplicates, validates the face-of
  // condition on pairwise intersections, and checks compactification rays.
  // Weights, when given, run parallel to input_faces and are attached to the
  // corresponding faces.
  static PolyComplex build(std::size_t rank, const std::vector<Polyhedron>& input_faces,
                           std::vector<IntVec> compactification = {},
                           const std::vector<std::optional<Int>>& input_weights = {});

  std::size_t rank() const { return m_rank; }
  std::size_t face_count() const { return m_faces.size(); }
  const Polyhedron& face(std::size_t i) const { return m_faces.at(i); }
  const std::vector<Polyhedron>& faces() const { return m_faces; }
  const std::vector<IntVec>& compactification() const { return m_compactification; }
  int face_dim(std::size_t i) const { return m_dims.at(i); }
  int dim() const;

  // face i ⊆ face j.
  bool is_subface(std::size_t i, std::size_t j) const { return m_subface[i][j]; }
  const std::vector<std::size_t>& maximal_faces() const { return m_maximal; }
  bool is_maximal(std::size_t i) const;
  std::optional<Int> weight(std::size_t i) const;
  bool has_weights() const { return !m_weights.empty(); }

  bool is_fan() const;
  bool is_pure() const;
  // Index of an identical face; throws FaceNotInComplex.
  std::size_t find_face(const Polyhedron& p) const;
  // Smallest face containing the point, if any.
  std::optional<std::size_t> face_containing(const RatVec& x) const;

  OpenSet open_star(std::size_t face_index) const;
  OpenSet whole_open() const;
  bool is_open(const OpenSet& u) const;
  static OpenSet union_open(const OpenSet& a, const OpenSet& b);

  bool operator==(const PolyComplex& rhs) const;

 private:
  std::size_t m_rank = 0;
  std::vector<Polyhedron> m_faces;
  std::vector<int> m_dims;
  std::vector<std::vector<bool>> m_subface;
  std::vector<std::size_t> m_maximal;
  std::vector<IntVec> m_compactification;
  std::map<std::size_t, Int> m_weights;
};

// Fan in a quotient lattice N′ together with the integer surjection N → N′
// and compactification vectors kept upstairs in N.
struct EnrichedFan {
  PolyComplex fan;                        // rank = rank of N′, all faces cones
  Mat projection;                         // rank(N′) × rank(N), surjective
  std::vector<IntVec> compactification;   // primitive vectors in N

  std::size_t upstairs_rank() const { return projection.cols(); }
  std::size_t downstairs_rank() const { return projection.rows(); }
};

// Validates the enriched-fan invariants (fan of pointed cones, integral
// surjective projection with saturated image, primitive compactification).
EnrichedFan make_enriched(PolyComplex fan, Mat projection, std::vector<IntVec> compactification);

// The two one-point base fans: plain point, and point with a collapsed ℤ.
EnrichedFan base_fan_plain();
EnrichedFan base_fan_dagger();

// Recession cones of all faces, assembled into a fan; FanViolation if they
// do not form one.
PolyComplex recession_fan(const PolyComplex& sigma);

// Fan in N×ℤ whose cones are the closures of the cones over the faces at
// height one, together with the height-zero recession cones; trivially
// enriched; compactification lifted to height zero.
EnrichedFan cone_over(const PolyComplex& sigma);

// Which height-zero recession cones accompany the cones over the members of
// an open set: every face of the complex (the literal reading) or only the
// members themselves.
enum class ConeRange { AllFaces, MembersOnly };

// Indices into cone_over(sigma).fan of the lifted member cones of u plus the
// height-zero cones selected by the range policy.
std::vector<std::size_t> cone_over_members(const PolyComplex& sigma, const OpenSet& u,
                                           ConeRange range);

// Star-quotient at a face: the images of the faces containing it in the
// saturated quotient of N by the face's tangent lattice, with the
// compactification vectors supported near the face kept upstairs.
EnrichedFan star_quotient(const PolyComplex& sigma, std::size_t face_index);

// Every face of fine lies in a face of coarse, same lattice and
// compactification, and the supports coincide.
bool is_refinement(const PolyComplex& fine, const PolyComplex& coarse);

// Exact covering tests by hyperplane splitting.
bool support_covered(const Polyhedron& target, const std::vector<Polyhedron>& pieces);
bool support_equal(const std::vector<Polyhedron>& a, const std::vector<Polyhedron>& b);

// Subdivision splitting the faces that contain the chosen face along rays
// through its relative interior point; weights are inherited.
PolyComplex stellar_refine(const PolyComplex& sigma, std::size_t face_index);

}  // namespace trop
