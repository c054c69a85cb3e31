#pragma once

#include <cstddef>
#include <vector>

#include "trop/complex.hpp"
#include "trop/linalg.hpp"
#include "trop/matrix.hpp"

namespace trop {

// Space of degree-p differential forms over a poset-open subset of a
// polyhedral complex, or of an enriched fan. The set is covered canonically
// by the open stars of its minimal members, and a section is presented as a
// tuple of blocks, one per covering star:
//
//   p == 0: each block is a single scalar;
//   p == 1: each block is a covector on the ambient lattice (upstairs for
//           enriched fans);
//   p >= 2: each block holds lexicographic wedge coordinates over the chosen
//           basis of that star's 1-form space (star_one_forms(i)).
//
// Tuples must agree on star overlaps up to the forms declared zero there;
// the presentation quotient encodes the compatible tuples modulo the
// blockwise-zero ones, so dim() and basis() describe the actual space of
// sections.
class FormSpace {
 public:
  FormSpace() = default;
  FormSpace(OpenSet open, std::size_t degree, std::vector<std::size_t> stars,
            std::vector<std::size_t> widths, std::vector<QuotientSpace> star_ones,
            QuotientSpace space);

  std::size_t degree() const { return m_degree; }
  const OpenSet& open() const { return m_open; }

  // Face indices of the covering stars (the minimal members of the set).
  const std::vector<std::size_t>& stars() const { return m_stars; }
  const std::vector<std::size_t>& block_widths() const { return m_widths; }
  std::size_t block_offset(std::size_t i) const { return m_offsets.at(i); }
  std::size_t total_width() const { return m_total; }

  std::size_t dim() const { return m_space.dim(); }
  // Canonical representatives of a basis, one per row, in concatenated block
  // coordinates.
  const Mat& basis() const { return m_space.section_basis(); }
  const QuotientSpace& presentation() const { return m_space; }

  // 1-form space of the i-th covering star; its section_basis() fixes the
  // interpretation of degree >= 2 wedge coordinates.
  const QuotientSpace& star_one_forms(std::size_t i) const { return m_star_ones.at(i); }

  // Whether a concatenated representative is a valid section.
  bool contains(const RatVec& rep) const;
  // Class coordinates of a valid representative.
  RatVec coordinates_of(const RatVec& rep) const;

 private:
  OpenSet m_open;
  std::size_t m_degree = 0;
  std::vector<std::size_t> m_stars;
  std::vector<std::size_t> m_widths;
  std::vector<std::size_t> m_offsets;
  std::size_t m_total = 0;
  std::vector<QuotientSpace> m_star_ones;
  QuotientSpace m_space;
};

// 1-forms over a poset-open set: covectors constant along the set, vanishing
// on every compactification direction interior to the recession of a member,
// taken modulo covectors vanishing on all directions the set moves in.
FormSpace one_forms(const PolyComplex& sigma, const OpenSet& u);
// Same over an enriched fan: covectors live upstairs, openness and the moving
// directions are read downstairs through the projection.
FormSpace one_forms(const EnrichedFan& delta, const OpenSet& u);

// Degree-p forms: wedges of 1-forms modulo everything that restricts to zero
// on the open stars of all maximal cells. Degree 0 yields locally constant
// functions, degree 1 agrees with one_forms.
FormSpace p_forms(const PolyComplex& sigma, const OpenSet& u, std::size_t degree);
FormSpace p_forms(const EnrichedFan& delta, const OpenSet& u, std::size_t degree);

// Matrix of the restriction map in class coordinates (rows: inner space,
// columns: outer space) for nested open sets inner ⊆ outer.
Mat restrict_forms(const PolyComplex& sigma, const OpenSet& outer, const OpenSet& inner,
                   std::size_t degree);
Mat restrict_forms(const EnrichedFan& delta, const OpenSet& outer, const OpenSet& inner,
                   std::size_t degree);

// Matrix, in class coordinates, of the comparison map sending a 1-form on the
// open star of a face to the 1-form on its star quotient with the same
// covector representative; an isomorphism.
Mat star_quotient_forms_iso(const PolyComplex& sigma, std::size_t face_index);

// Wedge pairing Ω^p ⊗ Ω^q → Ω^{p+q} over a common open set (p, q >= 1). The
// three spaces must live on the same open set; `into` must have degree
// p + q. Columns are indexed by ordered pairs (i, j) of basis classes of `a`
// and `b` with i major; rows are class coordinates on `into`.
Mat wedge_pairing(const FormSpace& a, const FormSpace& b, const FormSpace& into);

}  // namespace trop
