#include "trop/bar.hpp"

#include <cstddef>
#include <utility>
#include <vector>

#include "trop/error.hpp"

namespace trop {

namespace {

// Materialization guard for word spaces: lengths whose word count would pass
// this bound are refused instead of exhausting memory. Kernels of free word
// spaces are stored densely, so the quadratic footprint is the binding
// constraint.
constexpr std::size_t kWordGuard = std::size_t{1} << 10;

std::size_t word_count(std::size_t letters, std::size_t length) {
  std::size_t n = 1;
  for (std::size_t t = 0; t < length; ++t) {
    if (letters != 0 && n > kWordGuard / letters) {
      throw Error(Err::LengthCapExceeded, "bar word space exceeds the materialization guard");
    }
    n *= letters;
  }
  return n;
}

std::vector<std::size_t> decode_word(std::size_t index, std::size_t letters, std::size_t length) {
  std::vector<std::size_t> word(length);
  for (std::size_t t = length; t-- > 0;) {
    word[t] = index % letters;
    index /= letters;
  }
  return word;
}

std::size_t encode_word(const std::vector<std::size_t>& word, std::size_t letters) {
  std::size_t index = 0;
  for (std::size_t letter : word) index = index * letters + letter;
  return index;
}

// I_left (x) core (x) I_right on word-space coordinates.
Mat sandwich(std::size_t left, const Mat& core, std::size_t right) {
  return Mat::identity(left).kronecker(core).kronecker(Mat::identity(right));
}

void place_block(Mat& big, const Mat& block, std::size_t row0, std::size_t col0, int sign) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) {
      if (sign > 0) {
        big.at(row0 + r, col0 + c) += block.at(r, c);
      } else {
        big.at(row0 + r, col0 + c) -= block.at(r, c);
      }
    }
}

BarSetup finish_setup(FormSpace one, FormSpace two, FormSpace three, std::size_t max_length) {
  Mat w11 = wedge_pairing(one, one, two);
  Mat w12 = wedge_pairing(one, two, three);
  Mat w21 = wedge_pairing(two, one, three);
  return BarSetup{std::move(one),  std::move(two), std::move(three), std::move(w11),
                  std::move(w12),  std::move(w21), max_length};
}

}  // namespace

BarSetup make_bar_setup(const PolyComplex& complex, const OpenSet& open, std::size_t max_length) {
  return finish_setup(one_forms(complex, open), p_forms(complex, open, 2),
                      p_forms(complex, open, 3), max_length);
}

BarSetup make_bar_setup(const EnrichedFan& fan, const OpenSet& open, std::size_t max_length) {
  return finish_setup(one_forms(fan, open), p_forms(fan, open, 2), p_forms(fan, open, 3),
                      max_length);
}

bool same_setup(const BarSetup& a, const BarSetup& b) {
  return a.one.open().members == b.one.open().members && a.one.stars() == b.one.stars() &&
         a.one.dim() == b.one.dim() && a.two.dim() == b.two.dim() &&
         a.wedge_one_one == b.wedge_one_one;
}

BarElement BarElement::unit(std::size_t letters) { return BarElement{letters, 0, RatVec(1, Rat(1))}; }

BarElement BarElement::word(std::size_t letters, const std::vector<std::size_t>& seq) {
  for (std::size_t letter : seq) {
    if (letter >= letters) throw Error(Err::DimensionMismatch, "bar word letter out of range");
  }
  BarElement out{letters, seq.size(), RatVec(word_count(letters, seq.size()))};
  out.coeffs[encode_word(seq, letters)] = 1;
  return out;
}

Mat bar_differential(const BarSetup& setup, std::size_t length) {
  const std::size_t m = setup.one.dim();
  const std::size_t cols = word_count(m, length);
  if (length < 2) return Mat(0, cols);
  const std::size_t d2 = setup.two.dim();
  const std::size_t summand = word_count(m, length - 2) * d2;
  Mat out((length - 1) * summand, cols);
  for (std::size_t i = 1; i < length; ++i) {
    // [x_1|...|x_s] -> (-1)^(i+1) [Jx_1|...|Jx_i ^ x_(i+1)|...|x_s]; the J on
    // the i leading degree-1 letters makes every summand's total sign -1.
    Mat block = sandwich(word_count(m, i - 1), setup.wedge_one_one, word_count(m, length - i - 1));
    place_block(out, block, (i - 1) * summand, 0, -1);
  }
  return out;
}

Mat bar_differential_next(const BarSetup& setup, std::size_t length) {
  const std::size_t m = setup.one.dim();
  const std::size_t d2 = setup.two.dim();
  const std::size_t d3 = setup.three.dim();
  if (length < 2) return Mat(0, 0);
  const std::size_t source_summand = word_count(m, length - 2) * d2;
  const std::size_t cols = (length - 1) * source_summand;
  if (length == 2) return Mat(0, cols);

  // Row layout: single-3-form summands for t = 1..length-2, then
  // two-2-form summands for slot pairs p < q in lexicographic order.
  const std::size_t triple_summand = word_count(m, length - 3) * d3;
  const std::size_t triple_rows = (length - 2) * triple_summand;
  auto triple_offset = [&](std::size_t t) { return (t - 1) * triple_summand; };
  std::vector<std::vector<std::size_t>> pair_offset(length - 1, std::vector<std::size_t>(length - 1, 0));
  std::size_t rows = triple_rows;
  for (std::size_t p = 1; p + 1 <= length - 2; ++p) {
    for (std::size_t q = p + 1; q <= length - 2; ++q) {
      pair_offset[p][q] = rows;
      rows += word_count(m, length - 4) * d2 * d2;
    }
  }

  Mat out(rows, cols);
  for (std::size_t i = 1; i < length; ++i) {
    // Source: words of length-1 letters with one 2-form letter at slot i.
    const std::size_t col0 = (i - 1) * source_summand;
    for (std::size_t j = 1; j + 1 <= length - 1; ++j) {
      if (j + 2 <= i) {
        // Wedge of two 1-form letters left of the 2-form slot; the new
        // 2-form sits at slot j, the old one shifts to slot i - 1.
        std::size_t right = word_count(m, i - j - 2) * d2 * word_count(m, length - 1 - i);
        place_block(out, sandwich(word_count(m, j - 1), setup.wedge_one_one, right),
                    pair_offset[j][i - 1], col0, -1);
      } else if (j + 1 == i) {
        // 1-form wedged into the 2-form from the left: a 3-form at slot i-1.
        place_block(out,
                    sandwich(word_count(m, i - 2), setup.wedge_one_two, word_count(m, length - 1 - i)),
                    triple_offset(i - 1), col0, -1);
      } else if (j == i) {
        // 2-form wedged with the next 1-form: a 3-form at slot i. The J on
        // the even-degree letter flips this summand's sign relative to the
        // others.
        place_block(out,
                    sandwich(word_count(m, i - 1), setup.wedge_two_one, word_count(m, length - 2 - i)),
                    triple_offset(i), col0, +1);
      } else {
        // Wedge of two 1-form letters right of the 2-form slot.
        std::size_t left = word_count(m, i - 1) * d2 * word_count(m, j - i - 1);
        place_block(out, sandwich(left, setup.wedge_one_one, word_count(m, length - 2 - j)),
                    pair_offset[i][j], col0, +1);
      }
    }
  }
  return out;
}

H0Report h0_dims(const BarSetup& setup) {
  word_count(setup.one.dim(), setup.max_length);  // refuse oversized caps up front
  H0Report report;
  for (std::size_t s = 0; s <= setup.max_length; ++s) {
    Subspace ker = kernel(bar_differential(setup, s));
    report.dims.push_back(ker.dim());
    report.kernels.push_back(std::move(ker));
  }
  return report;
}

BarElement shuffle(const BarElement& a, const BarElement& b) {
  if (a.letters != b.letters) {
    throw Error(Err::DimensionMismatch, "shuffle needs elements over the same alphabet");
  }
  const std::size_t m = a.letters;
  BarElement out{m, a.length + b.length, RatVec(word_count(m, a.length + b.length))};
  const auto positions = subsets_of_size(a.length + b.length, a.length);
  std::vector<std::size_t> merged(a.length + b.length);
  for (std::size_t ua = 0; ua < a.coeffs.size(); ++ua) {
    if (a.coeffs[ua] == 0) continue;
    const std::vector<std::size_t> u = decode_word(ua, m, a.length);
    for (std::size_t vb = 0; vb < b.coeffs.size(); ++vb) {
      if (b.coeffs[vb] == 0) continue;
      const std::vector<std::size_t> v = decode_word(vb, m, b.length);
      const Rat c = a.coeffs[ua] * b.coeffs[vb];
      for (const auto& slots : positions) {
        std::size_t ia = 0, ib = 0, slot = 0;
        for (std::size_t t = 0; t < merged.size(); ++t) {
          if (slot < slots.size() && slots[slot] == t) {
            merged[t] = u[ia++];
            ++slot;
          } else {
            merged[t] = v[ib++];
          }
        }
        out.coeffs[encode_word(merged, m)] += c;
      }
    }
  }
  return out;
}

BarTensor coproduct(const BarElement& element) {
  BarTensor out{element.letters, element.length, {}};
  out.splits.assign(element.length + 1, RatVec(element.coeffs.size()));
  for (std::size_t i = 0; i <= element.length; ++i) {
    const std::size_t suffixes = word_count(element.letters, element.length - i);
    if (suffixes == 0) continue;
    for (std::size_t w = 0; w < element.coeffs.size(); ++w) {
      if (element.coeffs[w] == 0) continue;
      const std::size_t prefix = w / suffixes, suffix = w % suffixes;
      out.splits[i][prefix * suffixes + suffix] += element.coeffs[w];
    }
  }
  return out;
}

}  // namespace trop
