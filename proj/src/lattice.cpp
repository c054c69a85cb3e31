#include "trop/lattice.hpp"

#include <algorithm>
#include <cstdlib>

#include "trop/error.hpp"

namespace trop {

namespace {

std::vector<IntVec> int_identity(std::size_t n) {
  std::vector<IntVec> id(n, IntVec(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

void add_row_multiple(std::vector<IntVec>& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] -= q * m[src][j];
}

void swap_cols(std::vector<IntVec>& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

void add_col_multiple(std::vector<IntVec>& m, std::size_t dst, std::size_t src, const Int& q) {
  for (auto& row : m) row[dst] -= q * row[src];
}

void negate_row(std::vector<IntVec>& m, std::size_t i) {
  for (auto& x : m[i]) x = -x;
}

}  // namespace

Snf smith_normal_form(const std::vector<IntVec>& g, std::size_t cols) {
  std::size_t rows = g.size();
  for (const auto& r : g)
    if (r.size() != cols) throw Error(Err::DimensionMismatch, "ragged integer matrix");
  Snf out;
  out.u = int_identity(rows);
  out.v = int_identity(cols);
  out.s = g;

  auto& u = out.u;
  auto& v = out.v;
  auto& s = out.s;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Locate a nonzero entry of smallest magnitude in the trailing block.
    bool found = false;
    std::size_t pi = t, pj = t;
    Int best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (s[i][j] == 0) continue;
        Int mag = abs(s[i][j]);
        if (!found || mag < best) {
          found = true;
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    std::swap(s[t], s[pi]);
    std::swap(u[t], u[pi]);
    swap_cols(s, t, pj);
    swap_cols(v, t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s[i][t] == 0) continue;
        Int q = s[i][t] / s[t][t];  // truncated division
        add_row_multiple(s, i, t, q);
        add_row_multiple(u, i, t, q);
        if (s[i][t] != 0) {  // remainder is strictly smaller: promote it
          std::swap(s[t], s[i]);
          std::swap(u[t], u[i]);
        }
        dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s[t][j] == 0) continue;
        Int q = s[t][j] / s[t][t];
        add_col_multiple(s, j, t, q);
        add_col_multiple(v, j, t, q);
        if (s[t][j] != 0) {
          swap_cols(s, t, j);
          swap_cols(v, t, j);
        }
        dirty = true;
      }
    }

    // Divisibility: the pivot must divide the whole trailing block.
    bool restart = false;
    for (std::size_t i = t + 1; i < rows && !restart; ++i)
      for (std::size_t j = t + 1; j < cols && !restart; ++j)
        if (s[i][j] % s[t][t] != 0) {
          add_row_multiple(s, t, i, Int(-1));  // row t += row i
          add_row_multiple(u, t, i, Int(-1));
          restart = true;
        }
    if (restart) continue;

    if (s[t][t] < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
    ++t;
  }
  out.rank = t;
  for (std::size_t i = 0; i < t; ++i) out.diag.push_back(s[i][i]);
  return out;
}

Mat lattice_quotient_projection(const Mat& span_rows) {
  std::size_t n = span_rows.cols();
  Subspace s = Subspace::span_of(span_rows);
  std::vector<IntVec> g;
  for (std::size_t i = 0; i < s.dim(); ++i)
    g.push_back(primitive_of_rational(s.basis().row(i)));
  Snf snf = smith_normal_form(g, n);
  std::size_t r = snf.rank;
  // x ↦ last n−r coordinates of xV: the projection matrix is rows r..n−1 of Vᵀ.
  Mat proj(n - r, n);
  for (std::size_t i = 0; i < n - r; ++i)
    for (std::size_t j = 0; j < n; ++j) proj.at(i, j) = Rat(snf.v[j][r + i]);
  return proj;
}

bool is_integer_matrix(const Mat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j).get_den() != 1) return false;
  return true;
}

bool is_unimodular(const Mat& m) {
  if (m.rows() != m.cols() || !is_integer_matrix(m)) return false;
  Rat d = det(m);
  return d == 1 || d == -1;
}

bool is_surjective_lattice_map(const Mat& m) {
  if (!is_integer_matrix(m)) return false;
  std::vector<IntVec> g(m.rows(), IntVec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m.at(i, j).get_num();
  Snf snf = smith_normal_form(g, m.cols());
  if (snf.rank != m.rows()) return false;
  for (const Int& d : snf.diag)
    if (d != 1) return false;
  return true;
}

}  // namespace trop
