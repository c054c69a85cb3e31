#include "trop/matrix.hpp"

#include "trop/error.hpp"

namespace trop {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<RatVec>& rows) {
  if (rows.empty()) return Mat();
  Mat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols())
      throw Error(Err::DimensionMismatch, "ragged row list in matrix construction");
    m.set_row(i, rows[i]);
  }
  return m;
}

Mat Mat::from_int_rows(const std::vector<std::vector<long>>& rows) {
  std::vector<RatVec> converted;
  converted.reserve(rows.size());
  for (const auto& r : rows) {
    RatVec row(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) row[j] = Rat(r[j]);
    converted.push_back(std::move(row));
  }
  return from_rows(converted);
}

RatVec Mat::row(std::size_t i) const {
  RatVec out(m_cols);
  for (std::size_t j = 0; j < m_cols; ++j) out[j] = at(i, j);
  return out;
}

void Mat::set_row(std::size_t i, const RatVec& values) {
  for (std::size_t j = 0; j < m_cols; ++j) at(i, j) = values[j];
}

void Mat::append_row(const RatVec& values) {
  if (m_rows == 0 && m_cols == 0) m_cols = values.size();
  if (values.size() != m_cols) throw Error(Err::DimensionMismatch, "append_row width mismatch");
  m_data.insert(m_data.end(), values.begin(), values.end());
  ++m_rows;
}

Mat Mat::transposed() const {
  Mat out(m_cols, m_rows);
  for (std::size_t i = 0; i < m_rows; ++i)
    for (std::size_t j = 0; j < m_cols; ++j) out.at(j, i) = at(i, j);
  return out;
}

Mat Mat::operator*(const Mat& rhs) const {
  if (m_cols != rhs.m_rows) throw Error(Err::DimensionMismatch, "matrix product shapes");
  Mat out(m_rows, rhs.m_cols);
  for (std::size_t i = 0; i < m_rows; ++i)
    for (std::size_t k = 0; k < m_cols; ++k) {
      const Rat& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < rhs.m_cols; ++j) out.at(i, j) += aik * rhs.at(k, j);
    }
  return out;
}

RatVec Mat::apply(const RatVec& x) const {
  if (x.size() != m_cols) throw Error(Err::DimensionMismatch, "matrix apply width");
  RatVec out(m_rows, Rat(0));
  for (std::size_t i = 0; i < m_rows; ++i)
    for (std::size_t j = 0; j < m_cols; ++j)
      if (at(i, j) != 0) out[i] += at(i, j) * x[j];
  return out;
}

RatVec Mat::apply_left(const RatVec& x) const {
  if (x.size() != m_rows) throw Error(Err::DimensionMismatch, "matrix apply_left height");
  RatVec out(m_cols, Rat(0));
  for (std::size_t i = 0; i < m_rows; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m_cols; ++j)
      if (at(i, j) != 0) out[j] += x[i] * at(i, j);
  }
  return out;
}

Mat Mat::operator+(const Mat& rhs) const {
  if (m_rows != rhs.m_rows || m_cols != rhs.m_cols)
    throw Error(Err::DimensionMismatch, "matrix sum shapes");
  Mat out(m_rows, m_cols);
  for (std::size_t i = 0; i < m_data.size(); ++i) out.m_data[i] = m_data[i] + rhs.m_data[i];
  return out;
}

Mat Mat::operator-(const Mat& rhs) const {
  if (m_rows != rhs.m_rows || m_cols != rhs.m_cols)
    throw Error(Err::DimensionMismatch, "matrix difference shapes");
  Mat out(m_rows, m_cols);
  for (std::size_t i = 0; i < m_data.size(); ++i) out.m_data[i] = m_data[i] - rhs.m_data[i];
  return out;
}

Mat Mat::scaled(const Rat& c) const {
  Mat out(m_rows, m_cols);
  for (std::size_t i = 0; i < m_data.size(); ++i) out.m_data[i] = m_data[i] * c;
  return out;
}

bool Mat::operator==(const Mat& rhs) const {
  if (m_rows != rhs.m_rows || m_cols != rhs.m_cols) return false;
  for (std::size_t i = 0; i < m_data.size(); ++i)
    if (m_data[i] != rhs.m_data[i]) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const Rat& x : m_data)
    if (x != 0) return false;
  return true;
}

Mat Mat::vstack(const Mat& below) const {
  if (m_rows == 0) return below;
  if (below.rows() == 0) return *this;
  if (m_cols != below.cols()) throw Error(Err::DimensionMismatch, "vstack widths");
  Mat out(m_rows + below.rows(), m_cols);
  out.m_data = m_data;
  out.m_data.insert(out.m_data.end(), below.m_data.begin(), below.m_data.end());
  return out;
}

Mat Mat::hstack(const Mat& right) const {
  if (m_rows != right.rows()) throw Error(Err::DimensionMismatch, "hstack heights");
  Mat out(m_rows, m_cols + right.cols());
  for (std::size_t i = 0; i < m_rows; ++i) {
    for (std::size_t j = 0; j < m_cols; ++j) out.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) out.at(i, m_cols + j) = right.at(i, j);
  }
  return out;
}

Mat Mat::rows_subset(const std::vector<std::size_t>& indices) const {
  Mat out(indices.size(), m_cols);
  for (std::size_t i = 0; i < indices.size(); ++i) out.set_row(i, row(indices[i]));
  return out;
}

Mat Mat::kronecker(const Mat& rhs) const {
  Mat out(m_rows * rhs.rows(), m_cols * rhs.cols());
  for (std::size_t i = 0; i < m_rows; ++i)
    for (std::size_t j = 0; j < m_cols; ++j) {
      const Rat& a = at(i, j);
      if (a == 0) continue;
      for (std::size_t k = 0; k < rhs.rows(); ++k)
        for (std::size_t l = 0; l < rhs.cols(); ++l)
          out.at(i * rhs.rows() + k, j * rhs.cols() + l) = a * rhs.at(k, l);
    }
  return out;
}

Rat det(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(Err::DimensionMismatch, "determinant of non-square");
  std::size_t n = m.rows();
  Mat a = m;
  Rat result = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && a.at(sel, c) == 0) ++sel;
    if (sel == n) return Rat(0);
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(sel, j), a.at(c, j));
      result = -result;
    }
    result *= a.at(c, c);
    Rat inv = 1 / a.at(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a.at(i, c) == 0) continue;
      Rat factor = a.at(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a.at(i, j) -= factor * a.at(c, j);
    }
  }
  return result;
}

}  // namespace trop
