#include "trop/connection.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "trop/error.hpp"

namespace trop {

namespace {

bool is_zero(const Mat& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.at(r, c) != 0) return false;
  return true;
}

Mat negated(const Mat& m) {
  Mat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = -m.at(r, c);
  return out;
}

Mat commutator(const Mat& a, const Mat& b) {
  Mat ab = a * b, ba = b * a;
  for (std::size_t r = 0; r < ab.rows(); ++r)
    for (std::size_t c = 0; c < ab.cols(); ++c) ab.at(r, c) -= ba.at(r, c);
  return ab;
}

// Row-major vectorization index of entry (i, j) of a rows x cols matrix.
std::size_t vec_index(std::size_t i, std::size_t j, std::size_t cols) { return i * cols + j; }

}  // namespace

TropConnection make_connection(BarSetup base, std::size_t rank, std::vector<Mat> theta) {
  if (theta.size() != base.one.dim()) {
    throw Error(Err::DimensionMismatch, "need one connection matrix per 1-form basis class");
  }
  for (const Mat& a : theta) {
    if (a.rows() != rank || a.cols() != rank) {
      throw Error(Err::DimensionMismatch, "connection matrices must be rank x rank");
    }
  }
  return TropConnection{std::move(base), rank, std::move(theta)};
}

TropConnection trivial_connection(BarSetup base, std::size_t rank) {
  std::vector<Mat> theta(base.one.dim(), Mat(rank, rank));
  return TropConnection{std::move(base), rank, std::move(theta)};
}

bool same_base(const TropConnection& a, const TropConnection& b) {
  return same_setup(a.base, b.base);
}

IntegrabilityReport is_integrable(const TropConnection& c) {
  const std::size_t m = c.base.one.dim();
  const std::size_t d2 = c.base.two.dim();
  // theta ^ theta = sum_{k<l} (class_k ^ class_l) (x) [theta_k, theta_l];
  // collect the End-valued coefficient of each 2-form basis class.
  std::vector<Mat> coefficient(d2, Mat(c.rank, c.rank));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = k + 1; l < m; ++l) {
      Mat bracket = commutator(c.theta[k], c.theta[l]);
      if (is_zero(bracket)) continue;
      for (std::size_t t = 0; t < d2; ++t) {
        const Rat& weight = c.base.wedge_one_one.at(t, k * m + l);
        if (weight == 0) continue;
        for (std::size_t r = 0; r < c.rank; ++r)
          for (std::size_t s = 0; s < c.rank; ++s)
            coefficient[t].at(r, s) += weight * bracket.at(r, s);
      }
    }
  }
  for (std::size_t t = 0; t < d2; ++t) {
    if (!is_zero(coefficient[t])) {
      return IntegrabilityReport{false, t, std::move(coefficient[t])};
    }
  }
  return IntegrabilityReport{true, 0, Mat(0, 0)};
}

Subspace horizontal_sections(const TropConnection& c) {
  if (!is_integrable(c).integrable) {
    throw Error(Err::NotIntegrable, "horizontal sections need an integrable connection");
  }
  Mat stacked(0, c.rank);
  for (const Mat& a : c.theta) stacked = stacked.vstack(a);
  return kernel(stacked);
}

TropConnection tensor(const TropConnection& a, const TropConnection& b) {
  if (!same_base(a, b)) throw Error(Err::BaseMismatch, "tensor needs connections over one base");
  std::vector<Mat> theta;
  theta.reserve(a.theta.size());
  for (std::size_t k = 0; k < a.theta.size(); ++k) {
    Mat sum = a.theta[k].kronecker(Mat::identity(b.rank));
    Mat second = Mat::identity(a.rank).kronecker(b.theta[k]);
    for (std::size_t r = 0; r < sum.rows(); ++r)
      for (std::size_t c = 0; c < sum.cols(); ++c) sum.at(r, c) += second.at(r, c);
    theta.push_back(std::move(sum));
  }
  TropConnection out{a.base, a.rank * b.rank, std::move(theta)};
  if (is_integrable(a).integrable && is_integrable(b).integrable &&
      !is_integrable(out).integrable) {
    throw Error(Err::Internal, "tensor product failed to preserve integrability");
  }
  return out;
}

TropConnection dual(const TropConnection& c) {
  std::vector<Mat> theta;
  theta.reserve(c.theta.size());
  for (const Mat& a : c.theta) theta.push_back(negated(a.transposed()));
  return TropConnection{c.base, c.rank, std::move(theta)};
}

Subspace hom_space(const TropConnection& a, const TropConnection& b) {
  if (!same_base(a, b)) throw Error(Err::BaseMismatch, "hom needs connections over one base");
  // Unknown T is rank_b x rank_a, vectorized row-major; the intertwining
  // equation theta_b T - T theta_a = 0 becomes
  // (theta_b (x) I - I (x) theta_a^t) vec(T) = 0.
  Mat stacked(0, a.rank * b.rank);
  for (std::size_t k = 0; k < a.theta.size(); ++k) {
    Mat block = b.theta[k].kronecker(Mat::identity(a.rank));
    Mat right = Mat::identity(b.rank).kronecker(a.theta[k].transposed());
    for (std::size_t r = 0; r < block.rows(); ++r)
      for (std::size_t c = 0; c < block.cols(); ++c) block.at(r, c) -= right.at(r, c);
    stacked = stacked.vstack(block);
  }
  Subspace direct = kernel(stacked);

  if (is_integrable(a).integrable && is_integrable(b).integrable) {
    // Cross-check against horizontal sections of dual(a) (x) b, whose tensor
    // coordinates (i, j) = dual-basis i with b-basis j hold T(j, i).
    Subspace via_hom = horizontal_sections(tensor(dual(a), b));
    Mat converted(via_hom.dim(), a.rank * b.rank);
    for (std::size_t row = 0; row < via_hom.dim(); ++row) {
      RatVec g = via_hom.basis().row(row);
      for (std::size_t j = 0; j < b.rank; ++j)
        for (std::size_t i = 0; i < a.rank; ++i)
          converted.at(row, vec_index(j, i, a.rank)) = g[vec_index(i, j, b.rank)];
    }
    if (!(Subspace::span_of(converted) == direct)) {
      throw Error(Err::Internal, "hom space disagrees with horizontal sections of the inner hom");
    }
  }
  return direct;
}

UnipotenceReport is_unipotent(const TropConnection& c) {
  UnipotenceReport report;
  Subspace v = Subspace::zero(c.rank);
  while (v.dim() < c.rank) {
    // Next layer: all x with theta_k x inside the current layer for every k.
    Subspace ann = annihilator(v);
    Mat stacked(0, c.rank);
    for (const Mat& a : c.theta) stacked = stacked.vstack(ann.basis() * a);
    Subspace next = kernel(stacked);
    if (next.dim() == v.dim()) {
      report.unipotent = false;
      return report;
    }
    report.chain.push_back(next);
    v = std::move(next);
  }
  report.unipotent = true;
  return report;
}

ComoduleData connection_to_comodule(const TropConnection& c) {
  const std::size_t m = c.base.one.dim();
  ComoduleData data{c.rank, m, {}};
  // Word products up to length rank - 1; a unipotent system kills every word
  // of length rank, which is verified rather than assumed.
  std::vector<Mat> current = {Mat::identity(c.rank)};
  for (std::size_t k = 0; k < c.rank; ++k) {
    data.words.push_back(current);
    std::vector<Mat> next;
    next.reserve(current.size() * m);
    for (const Mat& product : current)
      for (std::size_t last = 0; last < m; ++last) next.push_back(product * c.theta[last]);
    current = std::move(next);
  }
  for (const Mat& product : current) {
    if (!is_zero(product)) {
      throw Error(Err::NotUnipotent,
                  "a word of length " + std::to_string(c.rank) + " acts nonzero");
    }
  }
  // Every component must lie in the bar kernel of its length, entry by entry.
  for (std::size_t k = 2; k < data.words.size(); ++k) {
    Subspace ker = kernel(bar_differential(c.base, k));
    for (std::size_t r = 0; r < c.rank; ++r)
      for (std::size_t s = 0; s < c.rank; ++s) {
        RatVec component(data.words[k].size());
        for (std::size_t w = 0; w < data.words[k].size(); ++w)
          component[w] = data.words[k][w].at(r, s);
        if (!ker.contains(component)) {
          throw Error(Err::NotComodule, "length-" + std::to_string(k) +
                                            " component lies outside the bar kernel");
        }
      }
  }
  return data;
}

TropConnection comodule_to_connection(const ComoduleData& data, BarSetup base) {
  const std::size_t m = base.one.dim();
  if (data.letters != m) {
    throw Error(Err::DimensionMismatch, "comodule alphabet disagrees with the base 1-forms");
  }
  if (data.words.size() != data.rank) {
    throw Error(Err::DimensionMismatch, "expected word components for lengths below the rank");
  }
  std::vector<Mat> theta(m, Mat(data.rank, data.rank));
  if (data.words.size() >= 2) {
    if (data.words[1].size() != m) {
      throw Error(Err::DimensionMismatch, "length-1 component needs one matrix per letter");
    }
    theta = data.words[1];
  }
  TropConnection out = make_connection(std::move(base), data.rank, std::move(theta));
  // Valid data is exactly the image of the forward map; recomputing it also
  // re-runs the unipotence and kernel checks, making both round trips the
  // identity on accepted inputs.
  ComoduleData again = connection_to_comodule(out);
  for (std::size_t k = 0; k < data.words.size(); ++k) {
    if (data.words[k].size() != again.words[k].size()) {
      throw Error(Err::NotComodule, "word component count mismatch at length " + std::to_string(k));
    }
    for (std::size_t w = 0; w < data.words[k].size(); ++w) {
      if (!(data.words[k][w] == again.words[k][w])) {
        throw Error(Err::NotComodule,
                    "length-" + std::to_string(k) + " component is not the matching word product");
      }
    }
  }
  return out;
}

}  // namespace trop
