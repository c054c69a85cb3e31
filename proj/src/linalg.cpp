#include "trop/linalg.hpp"

#include <algorithm>
#include <map>

#include "trop/error.hpp"

namespace trop {

Rref row_reduce(const Mat& m) {
  Mat a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t sel = r;
    while (sel < a.rows() && a.at(sel, c) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(r, j));
    Rat inv = 1 / a.at(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a.at(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      Rat factor = a.at(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a.at(i, j) -= factor * a.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Mat reduced(r, a.cols());
  for (std::size_t i = 0; i < r; ++i) reduced.set_row(i, a.row(i));
  return Rref{std::move(reduced), std::move(pivots)};
}

std::size_t rank_of(const Mat& m) { return row_reduce(m).rank(); }

Subspace Subspace::zero(std::size_t ambient_dim) {
  Subspace s;
  s.m_ambient = ambient_dim;
  s.m_basis = Mat(0, ambient_dim);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  return span_of(Mat::identity(ambient_dim));
}

Subspace Subspace::span_of(const Mat& rows) {
  Rref r = row_reduce(rows);
  Subspace s;
  s.m_ambient = rows.cols();
  s.m_basis = std::move(r.reduced);
  s.m_pivots = std::move(r.pivot_cols);
  return s;
}

bool Subspace::contains(const RatVec& v) const {
  if (v.size() != m_ambient) throw Error(Err::DimensionMismatch, "membership in wrong ambient");
  RatVec rest = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    const Rat& c = rest[m_pivots[i]];
    if (c == 0) continue;
    Rat factor = c;
    for (std::size_t j = 0; j < m_ambient; ++j) rest[j] -= factor * m_basis.at(i, j);
  }
  for (const Rat& x : rest)
    if (x != 0) return false;
  return true;
}

bool Subspace::contains_subspace(const Subspace& other) const {
  if (other.ambient_dim() != m_ambient)
    throw Error(Err::DimensionMismatch, "subspace comparison in different ambients");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis().row(i))) return false;
  return true;
}

std::optional<RatVec> Subspace::coordinates(const RatVec& v) const {
  if (v.size() != m_ambient) throw Error(Err::DimensionMismatch, "coordinates in wrong ambient");
  // Pivot columns read the coefficients off directly; verify the remainder.
  RatVec coeffs(dim());
  RatVec rest = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    coeffs[i] = rest[m_pivots[i]];
    if (coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < m_ambient; ++j) rest[j] -= coeffs[i] * m_basis.at(i, j);
  }
  for (const Rat& x : rest)
    if (x != 0) return std::nullopt;
  return coeffs;
}

bool Subspace::operator==(const Subspace& rhs) const {
  return m_ambient == rhs.m_ambient && m_basis == rhs.m_basis;
}

Subspace kernel(const Mat& m) {
  Rref r = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
  Mat gens(m.cols() - r.rank(), m.cols());
  std::size_t g = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    gens.at(g, f) = 1;
    for (std::size_t i = 0; i < r.rank(); ++i) gens.at(g, r.pivot_cols[i]) = -r.reduced.at(i, f);
    ++g;
  }
  return Subspace::span_of(gens);
}

Subspace row_space(const Mat& m) { return Subspace::span_of(m); }

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(Err::DimensionMismatch, "sum of subspaces in different ambients");
  return Subspace::span_of(a.basis().vstack(b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(Err::DimensionMismatch, "intersection of subspaces in different ambients");
  // x ∈ a∩b iff x is annihilated by both annihilators.
  return kernel(annihilator(a).basis().vstack(annihilator(b).basis()));
}

Subspace annihilator(const Subspace& s) { return kernel(s.basis()); }

std::optional<RatVec> solve(const Mat& a, const RatVec& b) {
  if (b.size() != a.rows()) throw Error(Err::DimensionMismatch, "solve rhs height");
  Mat rhs(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) rhs.at(i, 0) = b[i];
  Rref r = row_reduce(a.hstack(rhs));
  RatVec x(a.cols(), Rat(0));
  for (std::size_t i = 0; i < r.rank(); ++i) {
    if (r.pivot_cols[i] == a.cols()) return std::nullopt;  // inconsistent system
    x[r.pivot_cols[i]] = r.reduced.at(i, a.cols());
  }
  return x;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(Err::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  // Gauss-Jordan on [m | I]: invertible iff every pivot stays in the left
  // half, in which case the right half is the inverse.
  Rref r = row_reduce(m.hstack(Mat::identity(n)));
  for (std::size_t i = 0; i < r.rank(); ++i)
    if (r.pivot_cols[i] >= n) return std::nullopt;
  if (r.rank() < n) return std::nullopt;
  Mat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = r.reduced.at(i, n + j);
  return out;
}

QuotientSpace::QuotientSpace(Subspace numerator, Subspace killed)
    : m_numerator(std::move(numerator)), m_killed(std::move(killed)) {
  if (m_numerator.ambient_dim() != m_killed.ambient_dim())
    throw Error(Err::DimensionMismatch, "quotient numerator/killed ambient mismatch");
  if (!m_numerator.contains_subspace(m_killed))
    throw Error(Err::Internal, "quotient killed subspace not inside numerator");
  // Canonical complement: numerator basis rows independent of killed, greedily.
  Mat running = m_killed.basis();
  Subspace span = m_killed;
  m_section = Mat(0, m_numerator.ambient_dim());
  for (std::size_t i = 0; i < m_numerator.dim(); ++i) {
    RatVec v = m_numerator.basis().row(i);
    if (span.contains(v)) continue;
    m_section.append_row(v);
    running.append_row(v);
    span = Subspace::span_of(running);
  }
}

RatVec QuotientSpace::reduce(const RatVec& v) const {
  // Write v = (killed part) + (coefficients · section rows).
  Mat stacked = m_killed.basis().vstack(m_section);
  std::optional<RatVec> coeffs = solve(stacked.transposed(), v);
  if (!coeffs) throw Error(Err::Internal, "reduce: vector outside quotient numerator");
  RatVec out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = (*coeffs)[m_killed.dim() + i];
  return out;
}

RatVec QuotientSpace::lift(const RatVec& coords) const {
  if (coords.size() != dim()) throw Error(Err::DimensionMismatch, "lift coordinate count");
  return m_section.apply_left(coords);
}

std::size_t binomial(std::size_t n, std::size_t p) {
  if (p > n) return 0;
  if (p > n - p) p = n - p;
  std::size_t result = 1;
  for (std::size_t i = 0; i < p; ++i) result = result * (n - i) / (i + 1);
  return result;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  if (p > n) return out;
  std::vector<std::size_t> current(p);
  for (std::size_t i = 0; i < p; ++i) current[i] = i;
  while (true) {
    out.push_back(current);
    // advance lexicographically
    std::size_t i = p;
    while (i > 0) {
      --i;
      if (current[i] != i + n - p) {
        ++current[i];
        for (std::size_t j = i + 1; j < p; ++j) current[j] = current[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
    if (p == 0) return out;
  }
}

std::size_t subset_index(const std::vector<std::size_t>& subset, std::size_t n) {
  std::size_t p = subset.size();
  std::size_t rank = 0;
  std::size_t next = 0;
  for (std::size_t t = 0; t < p; ++t) {
    for (std::size_t j = next; j < subset[t]; ++j) rank += binomial(n - 1 - j, p - 1 - t);
    next = subset[t] + 1;
  }
  return rank;
}

RatVec wedge_vectors(const RatVec& x, std::size_t a, const RatVec& y, std::size_t b,
                     std::size_t n) {
  if (x.size() != binomial(n, a) || y.size() != binomial(n, b))
    throw Error(Err::DimensionMismatch, "wedge coordinate sizes");
  RatVec out(binomial(n, a + b), Rat(0));
  if (out.empty()) return out;
  auto lhs_subsets = subsets_of_size(n, a);
  auto rhs_subsets = subsets_of_size(n, b);
  for (std::size_t i = 0; i < lhs_subsets.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < rhs_subsets.size(); ++j) {
      if (y[j] == 0) continue;
      const auto& I = lhs_subsets[i];
      const auto& J = rhs_subsets[j];
      // Disjointness and the merge sign: count transpositions needed to sort.
      bool disjoint = true;
      std::size_t inversions = 0;
      for (std::size_t u : I) {
        for (std::size_t v : J) {
          if (u == v) disjoint = false;
          if (v < u) ++inversions;
        }
        if (!disjoint) break;
      }
      if (!disjoint) continue;
      std::vector<std::size_t> merged;
      merged.reserve(a + b);
      merged.insert(merged.end(), I.begin(), I.end());
      merged.insert(merged.end(), J.begin(), J.end());
      std::sort(merged.begin(), merged.end());
      Rat term = x[i] * y[j];
      if (inversions % 2 == 1) term = -term;
      out[subset_index(merged, n)] += term;
    }
  }
  return out;
}

Mat wedge_rows(const Mat& m, std::size_t p) {
  std::size_t n = m.cols();
  auto row_sets = subsets_of_size(m.rows(), p);
  Mat out(row_sets.size(), binomial(n, p));
  for (std::size_t s = 0; s < row_sets.size(); ++s) {
    RatVec acc(1, Rat(1));  // scalar in ⋀^0
    std::size_t degree = 0;
    for (std::size_t idx : row_sets[s]) {
      acc = wedge_vectors(acc, degree, m.row(idx), 1, n);
      ++degree;
    }
    out.set_row(s, acc);
  }
  return out;
}

ExteriorPowers::ExteriorPowers(QuotientSpace base, std::size_t cap) : m_base(std::move(base)) {
  std::size_t n = m_base.ambient_dim();
  const Mat& v_basis = m_base.numerator().basis();
  const Mat& w_basis = m_base.killed().basis();
  m_powers.reserve(cap + 1);
  for (std::size_t p = 0; p <= cap; ++p) {
    if (p == 0) {
      m_powers.emplace_back(Subspace::full(1), Subspace::zero(1));
      continue;
    }
    Subspace numerator = row_space(wedge_rows(v_basis, p));
    // killed = W ∧ ⋀^{p-1}V, spanned by wedges of one W row with p-1 V rows.
    Mat lower = wedge_rows(v_basis, p - 1);
    Mat killed_gens(0, binomial(n, p));
    for (std::size_t w = 0; w < w_basis.rows(); ++w)
      for (std::size_t s = 0; s < lower.rows(); ++s)
        killed_gens.append_row(wedge_vectors(w_basis.row(w), 1, lower.row(s), p - 1, n));
    m_powers.emplace_back(std::move(numerator), Subspace::span_of(killed_gens));
  }
}

const QuotientSpace& ExteriorPowers::power(std::size_t p) const {
  if (p >= m_powers.size()) throw Error(Err::LengthCapExceeded, "exterior power beyond cap");
  return m_powers[p];
}

RatVec ExteriorPowers::mult(std::size_t a, const RatVec& x, std::size_t b,
                            const RatVec& y) const {
  const RatVec lhs = power(a).lift(x);
  const RatVec rhs = power(b).lift(y);
  return power(a + b).reduce(wedge_vectors(lhs, a, rhs, b, m_base.ambient_dim()));
}

QuotientSpace wedge_power(const QuotientSpace& q, std::size_t p) {
  return ExteriorPowers(q, p).power(p);
}

}  // namespace trop
