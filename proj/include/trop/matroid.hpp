#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "trop/complex.hpp"
#include "trop/matrix.hpp"

namespace trop {

// Subset of a ground set {0,…,g−1} as a bitmask.
using Subset = std::uint32_t;

// Loopless matroid presented by its lattice of flats. Construction validates
// the flat axioms: the ground set is a flat, flats are closed under pairwise
// intersection, and for every flat the minimal flats properly above it
// partition the complement. Looplessness means the minimum flat is empty.
class Matroid {
 public:
  Matroid() = default;  // empty placeholder; not accepted by bergman_fan

  static Matroid from_flats(std::size_t ground_size, std::vector<Subset> flats);
  // Derives flats as closures under the rank function rk(S) = max |S ∩ B|,
  // then validates them; unequal basis sizes or failed axioms are rejected.
  static Matroid from_bases(std::size_t ground_size, const std::vector<Subset>& bases);

  std::size_t ground_size() const { return m_ground; }
  const std::vector<Subset>& flats() const { return m_flats; }
  std::size_t rank() const;
  std::size_t rank_of(Subset s) const;
  Subset closure(Subset s) const;
  bool is_flat(Subset s) const;
  std::vector<Subset> proper_flats() const;  // nonempty, not the ground set
  std::size_t flat_rank(Subset flat) const;

  // Contraction by a flat, relabeled order-preservingly onto {0,…}.
  Matroid contraction(Subset flat) const;

  bool operator==(const Matroid& rhs) const {
    return m_ground == rhs.m_ground && m_flats == rhs.m_flats;
  }

 private:
  std::size_t m_ground = 0;
  std::vector<Subset> m_flats;            // sorted ascending as integers
  std::vector<std::size_t> m_flat_rank;   // parallel to m_flats
};

Matroid uniform_matroid(std::size_t rank, std::size_t ground_size);

// Fan in Z^g/Z·(1,…,1), coordinates chosen so that element i < g−1 maps to
// the i-th unit vector and element g−1 to (−1,…,−1). One cone per flag of
// proper nonempty flats; top cones carry weight one.
PolyComplex bergman_fan(const Matroid& m);

// The weighted balancing condition at every codimension-one face: the
// weighted sum of primitive generators of the adjacent top faces, taken in
// the quotient by the face's tangent lattice, must vanish.
struct BalanceReport {
  bool balanced = true;
  std::vector<std::size_t> violations;  // codimension-one face indices
};
BalanceReport check_balanced(const PolyComplex& sigma);

// A claim that the star-quotient fan at one face has the same support as a
// Bergman fan, after the given unimodular change of lattice coordinates.
struct SmoothnessCertificate {
  std::size_t face_index = 0;
  Matroid matroid;
  Mat basis;  // square integer matrix on the quotient lattice
};

// True iff the transformed star-quotient support equals the Bergman support.
// Ambient-rank disagreement or a cone containing a line yields false; a
// malformed basis (wrong shape, non-unimodular) is an error.
bool check_smooth_certificate(const PolyComplex& sigma, const SmoothnessCertificate& cert);

// Desk-scale search: tries every matroid (by bases) on the forced ground size
// d+1 with the forced rank, matching fan rays onto Bergman rays to propose
// basis matrices, and verifies each candidate with check_smooth_certificate.
std::optional<SmoothnessCertificate> search_smoothness_certificate(const PolyComplex& sigma,
                                                                   std::size_t face_index);

}  // namespace trop
