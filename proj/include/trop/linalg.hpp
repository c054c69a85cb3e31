#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "trop/matrix.hpp"

namespace trop {

// Reduced row echelon form with zero rows dropped. For a fixed row space the
// result is unique, which is what Subspace leans on for canonicality.
struct Rref {
  Mat reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

Rref row_reduce(const Mat& m);
std::size_t rank_of(const Mat& m);

// A linear subspace of Q^n stored as its canonical RREF basis. Two equal
// subspaces always carry identical (entry-for-entry) bases.
class Subspace {
 public:
  Subspace() : m_ambient(0) {}
  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  static Subspace span_of(const Mat& rows);

  std::size_t ambient_dim() const { return m_ambient; }
  std::size_t dim() const { return m_basis.rows(); }
  const Mat& basis() const { return m_basis; }
  const std::vector<std::size_t>& pivot_cols() const { return m_pivots; }

  bool contains(const RatVec& v) const;
  bool contains_subspace(const Subspace& other) const;
  // Coefficients of v in the basis rows; nullopt if v is outside.
  std::optional<RatVec> coordinates(const RatVec& v) const;

  bool operator==(const Subspace& rhs) const;

 private:
  std::size_t m_ambient;
  Mat m_basis;
  std::vector<std::size_t> m_pivots;
};

// Right kernel {x : m·x = 0}, canonical basis.
Subspace kernel(const Mat& m);
Subspace row_space(const Mat& m);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
// Functionals vanishing on s, as row vectors in dual coordinates.
Subspace annihilator(const Subspace& s);
// One solution of A x = b, if any.
std::optional<RatVec> solve(const Mat& a, const RatVec& b);
// Exact inverse of a square matrix; nullopt when singular.
std::optional<Mat> inverse(const Mat& m);

// V/W with W ⊆ V ⊆ Q^n. The section basis is the canonical complement of W in
// V: the V-basis rows that are independent of W, taken greedily in RREF order.
class QuotientSpace {
 public:
  QuotientSpace() = default;
  QuotientSpace(Subspace numerator, Subspace killed);

  const Subspace& numerator() const { return m_numerator; }
  const Subspace& killed() const { return m_killed; }
  std::size_t ambient_dim() const { return m_numerator.ambient_dim(); }
  std::size_t dim() const { return m_section.rows(); }
  const Mat& section_basis() const { return m_section; }

  // Class coordinates of v (must lie in the numerator).
  RatVec reduce(const RatVec& v) const;
  // Representative of a class-coordinate vector.
  RatVec lift(const RatVec& coords) const;

 private:
  Subspace m_numerator;
  Subspace m_killed;
  Mat m_section;
};

// ---- exterior algebra over subset-indexed coordinates ----

// All p-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t p);
std::size_t subset_index(const std::vector<std::size_t>& subset, std::size_t n);
std::size_t binomial(std::size_t n, std::size_t p);

// Wedge of x ∈ ⋀^a(Q^n) and y ∈ ⋀^b(Q^n) in subset coordinates.
RatVec wedge_vectors(const RatVec& x, std::size_t a, const RatVec& y, std::size_t b,
                     std::size_t n);

// Rows = wedges of all p-subsets of m's rows (lex order of subsets); the
// p-th compound matrix, C(rows,p) × C(cols,p).
Mat wedge_rows(const Mat& m, std::size_t p);

// ⋀^p of a quotient space, materialized with degree-wise presentations inside
// the subset coordinates of ⋀^p(Q^n) and an exact multiplication table.
class ExteriorPowers {
 public:
  ExteriorPowers(QuotientSpace base, std::size_t cap);

  std::size_t cap() const { return m_powers.size() - 1; }
  const QuotientSpace& power(std::size_t p) const;
  // Class-coordinate product power(a) × power(b) → power(a+b).
  RatVec mult(std::size_t a, const RatVec& x, std::size_t b, const RatVec& y) const;

 private:
  QuotientSpace m_base;
  std::vector<QuotientSpace> m_powers;
};

QuotientSpace wedge_power(const QuotientSpace& q, std::size_t p);

}  // namespace trop
