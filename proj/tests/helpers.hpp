#pragma once

// Small constructors shared by the test binaries.

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "oracle.hpp"
#include "trop/complex.hpp"
#include "trop/matrix.hpp"
#include "trop/polyhedron.hpp"
#include "trop/rational.hpp"

namespace testutil {

inline trop::RatVec rv(std::initializer_list<int> xs) {
  trop::RatVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

inline trop::IntVec iv(std::initializer_list<int> xs) {
  trop::IntVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

inline trop::Polyhedron ray_cone(const trop::IntVec& dir) {
  return trop::Polyhedron::from_generators(dir.size(), {trop::RatVec(dir.size(), trop::Rat(0))},
                                           {dir}, {});
}

inline trop::Polyhedron cone2(const trop::IntVec& a, const trop::IntVec& b) {
  return trop::Polyhedron::from_generators(a.size(), {trop::RatVec(a.size(), trop::Rat(0))},
                                           {a, b}, {});
}

inline trop::Polyhedron segment(const trop::RatVec& a, const trop::RatVec& b) {
  return trop::Polyhedron::from_generators(a.size(), {a, b}, {}, {});
}

inline trop::Polyhedron ray_from(const trop::RatVec& base, const trop::IntVec& dir) {
  return trop::Polyhedron::from_generators(base.size(), {base}, {dir}, {});
}

inline trop::Polyhedron cell(std::size_t n, const std::vector<trop::RatVec>& vs,
                             const std::vector<trop::IntVec>& rs) {
  return trop::Polyhedron::from_generators(n, vs, rs, {});
}

inline std::size_t vertex_index(const trop::PolyComplex& sigma, const trop::RatVec& p) {
  return sigma.find_face(trop::Polyhedron::point(p));
}

inline oracle::Matrix to_oracle(const trop::Mat& m) {
  oracle::Matrix out(m.rows(), oracle::Row(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j);
  return out;
}

}  // namespace testutil
