#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "trop/lattice.hpp"
#include "trop/linalg.hpp"

using namespace trop;

namespace {

std::vector<IntVec> random_int_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> entry(-9, 9);
  std::vector<IntVec> m(rows, IntVec(cols));
  for (auto& row : m)
    for (auto& x : row) x = entry(rng);
  return m;
}

std::vector<IntVec> int_product(const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  std::vector<IntVec> out(n, IntVec(m, Int(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < m; ++c) out[i][c] += a[i][j] * b[j][c];
  return out;
}

Mat to_mat(const std::vector<IntVec>& m, std::size_t cols) {
  Mat out(m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = Rat(m[i][j]);
  return out;
}

}  // namespace

TEST_CASE("smith normal form: decomposition identities on random matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t rows = 1 + static_cast<std::size_t>(rng() % 4);
    std::size_t cols = 1 + static_cast<std::size_t>(rng() % 4);
    auto g = random_int_matrix(rng, rows, cols);
    Snf snf = smith_normal_form(g, cols);

    // u·g·v reproduces s.
    auto ugv = int_product(int_product(snf.u, g), snf.v);
    CHECK(ugv == snf.s);

    // s is diagonal with the positive chained divisors on the diagonal.
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j) CHECK(snf.s[i][j] == 0);
    for (std::size_t i = 0; i < snf.rank; ++i) {
      CHECK(snf.diag[i] > 0);
      if (i + 1 < snf.rank) {
        Int rem = snf.diag[i + 1] % snf.diag[i];
        CHECK(rem == 0);
      }
    }

    // u and v are unimodular; rank matches the rational rank.
    CHECK(is_unimodular(to_mat(snf.u, rows)));
    CHECK(is_unimodular(to_mat(snf.v, cols)));
    CHECK(snf.rank == oracle::rank(oracle::Matrix(
                          [&] {
                            oracle::Matrix om(rows, oracle::Row(cols));
                            for (std::size_t i = 0; i < rows; ++i)
                              for (std::size_t j = 0; j < cols; ++j) om[i][j] = Rat(g[i][j]);
                            return om;
                          }())));
  }
}

TEST_CASE("smith normal form: known invariant factors") {
  // diag(2,6) has factors 2,6 already; [[2,0],[0,3]] has factors 1,6.
  Snf a = smith_normal_form({{2, 0}, {0, 6}}, 2);
  REQUIRE(a.rank == 2);
  CHECK(a.diag[0] == 2);
  CHECK(a.diag[1] == 6);
  Snf b = smith_normal_form({{2, 0}, {0, 3}}, 2);
  REQUIRE(b.rank == 2);
  CHECK(b.diag[0] == 1);
  CHECK(b.diag[1] == 6);
  Snf zero = smith_normal_form({{0, 0, 0}}, 3);
  CHECK(zero.rank == 0);
}

TEST_CASE("lattice quotient projection") {
  // Quotient of ℤ² by the span of (1,1): projection is surjective onto ℤ,
  // kills exactly multiples of (1,1).
  Mat span = Mat::from_int_rows({{1, 1}});
  Mat proj = lattice_quotient_projection(span);
  REQUIRE(proj.rows() == 1);
  REQUIRE(proj.cols() == 2);
  CHECK(is_surjective_lattice_map(proj));
  CHECK(proj.apply(RatVec{Rat(1), Rat(1)}) == RatVec{Rat(0)});
  CHECK(proj.apply(RatVec{Rat(2), Rat(2)}) == RatVec{Rat(0)});
  RatVec img = proj.apply(RatVec{Rat(1), Rat(0)});
  CHECK((img[0] == 1 || img[0] == -1));  // (1,0) generates the quotient

  // Saturation: span (2,0) in ℤ² — the quotient of the saturation kills (1,0) too.
  Mat span2 = Mat::from_int_rows({{2, 0}});
  Mat proj2 = lattice_quotient_projection(span2);
  CHECK(proj2.apply(RatVec{Rat(1), Rat(0)}) == RatVec{Rat(0)});
  CHECK(is_surjective_lattice_map(proj2));

  // Non-axis subspace in ℚ³.
  Mat span3 = Mat::from_int_rows({{1, 2, 3}, {0, 1, 1}});
  Mat proj3 = lattice_quotient_projection(span3);
  REQUIRE(proj3.rows() == 1);
  CHECK(is_surjective_lattice_map(proj3));
  CHECK(is_zero_vec(proj3.apply(RatVec{Rat(1), Rat(2), Rat(3)})));
  CHECK(is_zero_vec(proj3.apply(RatVec{Rat(0), Rat(1), Rat(1)})));

  // Kernel of the projection is exactly the rational span.
  Subspace ker = kernel(proj3);
  CHECK(ker == Subspace::span_of(span3));

  // Full-dimensional span: nothing left.
  Mat full = Mat::identity(3);
  CHECK(lattice_quotient_projection(full).rows() == 0);
}

TEST_CASE("unimodularity and surjectivity predicates") {
  CHECK(is_unimodular(Mat::identity(4)));
  CHECK(is_unimodular(Mat::from_int_rows({{1, 5}, {0, -1}})));
  CHECK_FALSE(is_unimodular(Mat::from_int_rows({{2, 0}, {0, 1}})));
  CHECK_FALSE(is_unimodular(Mat::from_int_rows({{1, 0, 0}, {0, 1, 0}})));
  Mat half(1, 1);
  half.at(0, 0) = Rat(1, 2);
  CHECK_FALSE(is_unimodular(half));

  CHECK(is_surjective_lattice_map(Mat::from_int_rows({{1, 0, 3}, {0, 1, -2}})));
  CHECK_FALSE(is_surjective_lattice_map(Mat::from_int_rows({{2, 0}, {0, 1}})));
  CHECK_FALSE(is_surjective_lattice_map(Mat::from_int_rows({{1, 1}, {1, 1}})));
}
