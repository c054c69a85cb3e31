#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "oracle.hpp"
#include "trop/bar.hpp"
#include "trop/complex.hpp"
#include "trop/error.hpp"
#include "trop/examples.hpp"
#include "trop/matroid.hpp"

using namespace trop;
using namespace testutil;

namespace {

std::size_t pow_size(std::size_t base, std::size_t e) {
  std::size_t n = 1;
  while (e-- > 0) n *= base;
  return n;
}

std::vector<std::size_t> decode(std::size_t index, std::size_t m, std::size_t length) {
  std::vector<std::size_t> word(length);
  for (std::size_t t = length; t-- > 0;) {
    word[t] = index % m;
    index /= m;
  }
  return word;
}

RatVec add(const RatVec& a, const RatVec& b) {
  REQUIRE(a.size() == b.size());
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

BarSetup whole_setup(const PolyComplex& complex, std::size_t cap = 4) {
  return make_bar_setup(complex, complex.whole_open(), cap);
}

// Constraint rows for length-s words, assembled with plain index loops
// independent of the library's Kronecker-product machinery.
oracle::Matrix stacked_constraints(const Mat& wedge, std::size_t m, std::size_t s) {
  oracle::Matrix rows;
  const std::size_t words = pow_size(m, s);
  for (std::size_t i = 1; i < s; ++i) {
    const std::size_t prefixes = pow_size(m, i - 1);
    const std::size_t suffixes = pow_size(m, s - i - 1);
    for (std::size_t u = 0; u < prefixes; ++u)
      for (std::size_t r = 0; r < wedge.rows(); ++r)
        for (std::size_t v = 0; v < suffixes; ++v) {
          oracle::Row row(words, 0);
          for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
              row[((u * m + a) * m + b) * suffixes + v] = wedge.at(r, a * m + b);
          rows.push_back(row);
        }
  }
  return rows;
}

// Split-k component of the compatibility identity's right-hand side,
// sum over i + j = k of (shuffle x shuffle) applied to the deconcatenations
// of a and b, expanded over basis words.
RatVec hopf_rhs_split(const BarElement& a, const BarElement& b, std::size_t k) {
  const std::size_t m = a.letters;
  const std::size_t s = a.length + b.length;
  RatVec out(pow_size(m, s));
  for (std::size_t i = 0; i <= k && i <= a.length; ++i) {
    const std::size_t j = k - i;
    if (j > b.length) continue;
    for (std::size_t ua = 0; ua < a.coeffs.size(); ++ua) {
      if (a.coeffs[ua] == 0) continue;
      const auto u = decode(ua, m, a.length);
      for (std::size_t vb = 0; vb < b.coeffs.size(); ++vb) {
        if (b.coeffs[vb] == 0) continue;
        const auto v = decode(vb, m, b.length);
        using Word = std::vector<std::size_t>;
        BarElement left =
            shuffle(BarElement::word(m, Word(u.begin(), u.begin() + static_cast<long>(i))),
                    BarElement::word(m, Word(v.begin(), v.begin() + static_cast<long>(j))));
        BarElement right =
            shuffle(BarElement::word(m, Word(u.begin() + static_cast<long>(i), u.end())),
                    BarElement::word(m, Word(v.begin() + static_cast<long>(j), v.end())));
        const Rat c = a.coeffs[ua] * b.coeffs[vb];
        for (std::size_t wl = 0; wl < left.coeffs.size(); ++wl) {
          if (left.coeffs[wl] == 0) continue;
          for (std::size_t wr = 0; wr < right.coeffs.size(); ++wr) {
            if (right.coeffs[wr] == 0) continue;
            out[wl * pow_size(m, s - k) + wr] += c * left.coeffs[wl] * right.coeffs[wr];
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("bar dimensions of free form algebras") {
  // No 2-forms means no relations: the kernel is the whole tensor coalgebra.
  BarSetup line = whole_setup(tropical_line());
  CHECK(line.one.dim() == 2);
  CHECK(line.two.dim() == 0);
  H0Report free2 = h0_dims(line);
  CHECK(free2.dims == std::vector<std::size_t>{1, 2, 4, 8, 16});
  for (std::size_t s = 0; s <= 4; ++s) CHECK(free2.kernels[s].dim() == free2.dims[s]);

  BarSetup ell = whole_setup(elliptic_curve());
  CHECK(ell.one.dim() == 1);
  CHECK(ell.two.dim() == 0);
  CHECK(h0_dims(ell).dims == std::vector<std::size_t>{1, 1, 1, 1, 1});
}

TEST_CASE("bar dimensions with symmetric relations grow polynomially") {
  // The sector fan has a 2-dimensional space of 1-forms and a 1-dimensional
  // space of 2-forms, so the quadratic relations are exactly the symmetric
  // tensors and the kernel is the symmetric coalgebra on two letters.
  BarSetup sectors = whole_setup(sectors_fan());
  REQUIRE(sectors.one.dim() == 2);
  REQUIRE(sectors.two.dim() == 1);
  H0Report report = h0_dims(sectors);
  CHECK(report.dims == std::vector<std::size_t>{1, 2, 3, 4, 5});

  // The length-2 kernel is spanned by the two squares and the symmetrizer.
  CHECK(report.kernels[2].contains(rv({1, 0, 0, 0})));
  CHECK(report.kernels[2].contains(rv({0, 0, 0, 1})));
  CHECK(report.kernels[2].contains(rv({0, 1, 1, 0})));
  CHECK_FALSE(report.kernels[2].contains(rv({0, 1, -1, 0})));

  // Same story on three letters for the complete barycentric fan: the forms
  // are the full exterior algebra and the kernel dimensions are those of the
  // symmetric coalgebra on three letters.
  BarSetup complete = whole_setup(bergman_fan(uniform_matroid(4, 4)));
  REQUIRE(complete.one.dim() == 3);
  REQUIRE(complete.two.dim() == 3);
  REQUIRE(complete.three.dim() == 1);
  CHECK(h0_dims(complete).dims == std::vector<std::size_t>{1, 3, 6, 10, 15});
}

TEST_CASE("bar dimensions match the independent constraint oracle") {
  std::vector<PolyComplex> hosts;
  hosts.push_back(bergman_fan(uniform_matroid(3, 4)));
  hosts.push_back(bergman_fan(uniform_matroid(4, 4)));
  hosts.push_back(sectors_fan());
  for (const PolyComplex& host : hosts) {
    BarSetup setup = whole_setup(host);
    H0Report report = h0_dims(setup);
    const std::size_t m = setup.one.dim();
    for (std::size_t s = 2; s <= 4; ++s) {
      CHECK(report.dims[s] == oracle::nullity(stacked_constraints(setup.wedge_one_one, m, s)));
    }
  }

  // Pinned values for the rank-3 uniform matroid: the wedge pairing has full
  // rank 3 on nine length-2 words, so its kernel is exactly the symmetric
  // tensors and the graded dimensions follow the symmetric coalgebra.
  H0Report u34 = h0_dims(whole_setup(bergman_fan(uniform_matroid(3, 4))));
  CHECK(u34.dims == std::vector<std::size_t>{1, 3, 6, 10, 15});
}

TEST_CASE("bar differential squares to zero") {
  std::vector<PolyComplex> hosts;
  hosts.push_back(tropical_line());
  hosts.push_back(sectors_fan());
  hosts.push_back(bergman_fan(uniform_matroid(3, 4)));
  hosts.push_back(bergman_fan(uniform_matroid(4, 4)));
  for (const PolyComplex& host : hosts) {
    BarSetup setup = whole_setup(host);
    for (std::size_t s = 2; s <= 4; ++s) {
      Mat first = bar_differential(setup, s);
      Mat second = bar_differential_next(setup, s);
      Mat composed = second * first;
      CHECK(composed == Mat(composed.rows(), composed.cols()));
    }
  }

  // On length-2 words the differential is minus the wedge pairing.
  BarSetup setup = whole_setup(sectors_fan());
  Mat d2 = bar_differential(setup, 2);
  REQUIRE(d2.rows() == setup.wedge_one_one.rows());
  for (std::size_t r = 0; r < d2.rows(); ++r)
    for (std::size_t c = 0; c < d2.cols(); ++c) CHECK(d2.at(r, c) == -setup.wedge_one_one.at(r, c));
}

TEST_CASE("shuffle product expands as expected") {
  BarElement x = BarElement::word(3, {0}), y = BarElement::word(3, {1});
  BarElement xy = shuffle(x, y);
  CHECK(xy.coeffs == add(BarElement::word(3, {0, 1}).coeffs, BarElement::word(3, {1, 0}).coeffs));

  // Three terms for a length-2 against a length-1 word.
  BarElement lhs = shuffle(BarElement::word(3, {0, 1}), BarElement::word(3, {2}));
  RatVec expected = add(add(BarElement::word(3, {0, 1, 2}).coeffs,
                            BarElement::word(3, {0, 2, 1}).coeffs),
                        BarElement::word(3, {2, 0, 1}).coeffs);
  CHECK(lhs.coeffs == expected);

  // Repeated letters pick up multiplicities.
  BarElement square = shuffle(x, x);
  RatVec two_xx = BarElement::word(3, {0, 0}).coeffs;
  for (Rat& c : two_xx) c *= 2;
  CHECK(square.coeffs == two_xx);

  // The empty word is the unit.
  BarElement a{3, 2, RatVec(9)};
  a.coeffs[1] = Rat(2);
  a.coeffs[5] = Rat(-3, 7);
  CHECK(shuffle(BarElement::unit(3), a).coeffs == a.coeffs);
  CHECK(shuffle(a, BarElement::unit(3)).coeffs == a.coeffs);

  // Commutative and associative in degree zero.
  BarElement b{3, 1, RatVec(3)};
  b.coeffs[0] = Rat(1);
  b.coeffs[2] = Rat(4);
  CHECK(shuffle(a, b).coeffs == shuffle(b, a).coeffs);
  CHECK(shuffle(shuffle(a, b), x).coeffs == shuffle(a, shuffle(b, x)).coeffs);

  CHECK_THROWS_AS(shuffle(a, BarElement::word(2, {0})), Error);
  CHECK_THROWS_AS(BarElement::word(2, {2}), Error);
}

TEST_CASE("deconcatenation coproduct and Hopf compatibility") {
  // Splits of a basis word are its prefix-suffix pairs.
  BarElement w = BarElement::word(3, {0, 1, 2});
  BarTensor split = coproduct(w);
  REQUIRE(split.splits.size() == 4);
  for (std::size_t i = 0; i <= 3; ++i) {
    RatVec expected(27);
    // prefix (w_0..w_{i-1}) tensor suffix (w_i..w_2): recompute the pair
    // index from scratch for the word (0, 1, 2).
    std::size_t prefix = 0, suffix = 0;
    for (std::size_t t = 0; t < i; ++t) prefix = prefix * 3 + t;
    for (std::size_t t = i; t < 3; ++t) suffix = suffix * 3 + t;
    expected[prefix * pow_size(3, 3 - i) + suffix] = 1;
    CHECK(split.splits[i] == expected);
  }

  // Counit: the extreme splits reproduce the element.
  BarElement e{2, 3, RatVec(8)};
  e.coeffs[3] = Rat(5);
  e.coeffs[6] = Rat(-1, 2);
  BarTensor de = coproduct(e);
  CHECK(de.splits[0] == e.coeffs);
  CHECK(de.splits[3] == e.coeffs);

  // Compatibility: deconcatenation of a shuffle equals the componentwise
  // shuffle of the deconcatenations.
  std::vector<std::pair<BarElement, BarElement>> pairs;
  {
    BarElement a{2, 1, RatVec(2)};
    a.coeffs[0] = Rat(2);
    a.coeffs[1] = Rat(3);
    BarElement b{2, 2, RatVec(4)};
    b.coeffs[1] = Rat(1);
    b.coeffs[2] = Rat(-1);
    pairs.emplace_back(a, b);
    pairs.emplace_back(b, a);
    BarElement c{2, 2, RatVec(4)};
    c.coeffs[0] = Rat(1);
    c.coeffs[3] = Rat(1, 3);
    pairs.emplace_back(b, c);
    BarElement unit = BarElement::unit(2);
    pairs.emplace_back(unit, b);
  }
  for (const auto& [a, b] : pairs) {
    BarElement both = shuffle(a, b);
    BarTensor lhs = coproduct(both);
    for (std::size_t k = 0; k <= both.length; ++k) {
      CHECK(lhs.splits[k] == hopf_rhs_split(a, b, k));
    }
  }
}

TEST_CASE("kernels are closed under shuffle and deconcatenation") {
  std::vector<PolyComplex> hosts;
  hosts.push_back(sectors_fan());
  hosts.push_back(bergman_fan(uniform_matroid(3, 4)));
  for (const PolyComplex& host : hosts) {
    BarSetup setup = whole_setup(host);
    H0Report report = h0_dims(setup);
    const std::size_t m = setup.one.dim();

    for (std::size_t s1 = 0; s1 <= 4; ++s1)
      for (std::size_t s2 = 0; s1 + s2 <= 4; ++s2)
        for (std::size_t i = 0; i < report.kernels[s1].dim(); ++i)
          for (std::size_t j = 0; j < report.kernels[s2].dim(); ++j) {
            BarElement a{m, s1, report.kernels[s1].basis().row(i)};
            BarElement b{m, s2, report.kernels[s2].basis().row(j)};
            CHECK(report.kernels[s1 + s2].contains(shuffle(a, b).coeffs));
          }

    for (std::size_t s = 0; s <= 4; ++s)
      for (std::size_t i = 0; i < report.kernels[s].dim(); ++i) {
        BarElement a{m, s, report.kernels[s].basis().row(i)};
        BarTensor split = coproduct(a);
        for (std::size_t k = 0; k <= s; ++k) {
          Subspace pure = Subspace::span_of(
              report.kernels[k].basis().kronecker(report.kernels[s - k].basis()));
          CHECK(pure.contains(split.splits[k]));
        }
      }
  }
}

TEST_CASE("bar computations validate their inputs") {
  BarSetup runaway = whole_setup(tropical_line(), 40);
  try {
    h0_dims(runaway);
    FAIL("expected the length cap guard to fire");
  } catch (const Error& error) {
    CHECK(error.code() == Err::LengthCapExceeded);
  }
  CHECK_THROWS_AS(bar_differential(runaway, 40), Error);
}
