#pragma once

#include <cstddef>
#include <vector>

#include "trop/rational.hpp"

namespace trop {

// Dense rational matrix, row-major. Values are immutable in spirit: library
// operations build new matrices rather than mutating shared ones.
class Mat {
 public:
  Mat() : m_rows(0), m_cols(0) {}
  Mat(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_data(rows * cols) {}

  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<RatVec>& rows);
  // Test/readability convenience: integer literals.
  static Mat from_int_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return m_rows; }
  std::size_t cols() const { return m_cols; }

  Rat& at(std::size_t i, std::size_t j) { return m_data[i * m_cols + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return m_data[i * m_cols + j]; }

  RatVec row(std::size_t i) const;
  void set_row(std::size_t i, const RatVec& values);
  void append_row(const RatVec& values);

  Mat transposed() const;
  Mat operator*(const Mat& rhs) const;
  RatVec apply(const RatVec& x) const;        // column convention: A x
  RatVec apply_left(const RatVec& x) const;   // row convention: x A
  Mat operator+(const Mat& rhs) const;
  Mat operator-(const Mat& rhs) const;
  Mat scaled(const Rat& c) const;
  bool operator==(const Mat& rhs) const;
  bool is_zero() const;

  Mat vstack(const Mat& below) const;
  Mat hstack(const Mat& right) const;
  Mat rows_subset(const std::vector<std::size_t>& indices) const;

  // Kronecker product under the lex basis e_i ⊗ f_j (i major).
  Mat kronecker(const Mat& rhs) const;

 private:
  std::size_t m_rows, m_cols;
  std::vector<Rat> m_data;
};

Rat det(const Mat& m);

}  // namespace trop
