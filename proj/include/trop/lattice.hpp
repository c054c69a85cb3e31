#pragma once

#include <cstddef>
#include <vector>

#include "trop/linalg.hpp"
#include "trop/matrix.hpp"
#include "trop/rational.hpp"

namespace trop {

// Smith decomposition u·g·v = s with u, v unimodular and s diagonal with
// positive divisibility-chained entries.
struct Snf {
  std::vector<IntVec> u;  // rows × rows
  std::vector<IntVec> v;  // cols × cols
  std::vector<IntVec> s;  // rows × cols, diagonal
  std::size_t rank = 0;
  IntVec diag;  // the nonzero diagonal entries, in order
};

Snf smith_normal_form(const std::vector<IntVec>& g, std::size_t cols);

// Integer projection matrix whose kernel is exactly the saturation
// N ∩ span(rows): the coordinates of N/(N ∩ span) ≅ ℤ^{n-r}.
// Input rows are rational vectors in ℚⁿ spanning the subspace.
Mat lattice_quotient_projection(const Mat& span_rows);

// Entries all integral?
bool is_integer_matrix(const Mat& m);

// Square integer matrix with determinant ±1.
bool is_unimodular(const Mat& m);

// The map ℤⁿ → ℤᵏ, x ↦ m·x (k×n integer matrix) is surjective onto ℤᵏ.
bool is_surjective_lattice_map(const Mat& m);

}  // namespace trop
