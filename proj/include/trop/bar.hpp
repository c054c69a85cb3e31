#pragma once

#include <cstddef>
#include <vector>

#include "trop/forms.hpp"
#include "trop/linalg.hpp"
#include "trop/matrix.hpp"

namespace trop {

// Inputs for the reduced bar complex of the form algebra on an open set: the
// spaces of 1-, 2- and 3-forms together with the wedge pairings between them,
// and a cap on the word lengths that are materialized.
//
// Degree-0 bar words are tensor words in 1-form basis classes. A word
// (a_1, ..., a_s) over the alphabet {0, ..., m-1} (m = dim of the 1-forms)
// is stored at index sum a_t * m^(s-t), i.e. the first letter is the most
// significant digit.
struct BarSetup {
  FormSpace one;
  FormSpace two;
  FormSpace three;
  Mat wedge_one_one;  // dim two  x m*m,        columns (i, j) with i major
  Mat wedge_one_two;  // dim three x m*dim two
  Mat wedge_two_one;  // dim three x dim two*m
  std::size_t max_length = 4;
};

BarSetup make_bar_setup(const PolyComplex& complex, const OpenSet& open,
                        std::size_t max_length = 4);
BarSetup make_bar_setup(const EnrichedFan& fan, const OpenSet& open,
                        std::size_t max_length = 4);

// Whether two setups describe the same open set with identical form spaces
// and wedge table, so elements and connections over them are interchangeable.
bool same_setup(const BarSetup& a, const BarSetup& b);

// A degree-0 element of the bar complex of fixed word length: a rational
// linear combination of tensor words in the 1-form basis classes.
struct BarElement {
  std::size_t letters = 0;  // alphabet size m
  std::size_t length = 0;   // word length s
  RatVec coeffs;            // size m^s, indexed as documented on BarSetup

  // The empty word with coefficient 1 (the unit of the shuffle product).
  static BarElement unit(std::size_t letters);
  // A single basis word.
  static BarElement word(std::size_t letters, const std::vector<std::size_t>& seq);
};

// An element of the direct sum over splits i = 0..s of (length-i words)
// tensor (length-(s-i) words). The component at split i is indexed by pairs
// (u, v) of basis words at index index(u) * m^(s-i) + index(v).
struct BarTensor {
  std::size_t letters = 0;
  std::size_t length = 0;
  std::vector<RatVec> splits;  // size length + 1, each of size m^length
};

// Graded dimensions of the degree-0 bar cohomology, one entry per word
// length 0..max_length, together with canonical bases of the kernels of the
// bar differential inside the word spaces.
struct H0Report {
  std::vector<std::size_t> dims;
  std::vector<Subspace> kernels;
};

// Computes the kernels of the bar differential on degree-0 words of each
// length up to the cap. Throws LengthCapExceeded when the word spaces would
// grow past the materialization guard.
H0Report h0_dims(const BarSetup& setup);

// Matrix of the bar differential on degree-0 words of the given length. The
// target is the direct sum over positions i = 1..length-1 of the word spaces
// with a single 2-form letter at slot i, concatenated in order of i.
Mat bar_differential(const BarSetup& setup, std::size_t length);

// Matrix of the bar differential out of that target: sources are the
// one-2-form-letter summands above, targets are first the summands with a
// single 3-form letter at slot t = 1..length-2 (in order of t), then the
// summands with two 2-form letters at slots p < q (in lexicographic order of
// (p, q)). Composing with bar_differential of the same length gives zero.
Mat bar_differential_next(const BarSetup& setup, std::size_t length);

// Shuffle product of degree-0 elements (all signs are +1 in degree 0).
BarElement shuffle(const BarElement& a, const BarElement& b);

// Deconcatenation coproduct of a degree-0 element.
BarTensor coproduct(const BarElement& element);

}  // namespace trop
