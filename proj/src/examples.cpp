#include "trop/examples.hpp"

#include <utility>

#include "trop/polyhedron.hpp"

namespace trop {

namespace {

IntVec iv(std::initializer_list<int> xs) {
  IntVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

RatVec rv(std::initializer_list<int> xs) {
  RatVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

Polyhedron ray_cone(const IntVec& dir) {
  return Polyhedron::from_generators(dir.size(), {RatVec(dir.size(), Rat(0))}, {dir}, {});
}

Polyhedron cone2(const IntVec& a, const IntVec& b) {
  return Polyhedron::from_generators(a.size(), {RatVec(a.size(), Rat(0))}, {a, b}, {});
}

Polyhedron segment(const RatVec& a, const RatVec& b) {
  return Polyhedron::from_generators(a.size(), {a, b}, {}, {});
}

Polyhedron ray_from(const RatVec& base, const IntVec& dir) {
  return Polyhedron::from_generators(base.size(), {base}, {dir}, {});
}

Polyhedron cell(std::size_t n, const std::vector<RatVec>& vs, const std::vector<IntVec>& rs) {
  return Polyhedron::from_generators(n, vs, rs, {});
}

}  // namespace

PolyComplex tropical_line(std::vector<IntVec> compactification) {
  return PolyComplex::build(2,
                            {ray_cone(iv({1, 0})), ray_cone(iv({0, 1})), ray_cone(iv({-1, -1}))},
                            std::move(compactification));
}

PolyComplex figure_one_complex() {
  RatVec a = rv({-2, 0}), v = rv({2, 0});
  std::vector<Polyhedron> cells = {
      cell(2, {a, v}, {iv({0, 1})}),
      cell(2, {v}, {iv({0, 1}), iv({1, -1})}),
      cell(2, {a}, {iv({0, 1}), iv({-1, -1})}),
      cell(2, {a, v}, {iv({1, -1}), iv({-1, -1})}),
  };
  return PolyComplex::build(2, cells, {iv({1, 0})});
}

PolyComplex elliptic_curve() {
  RatVec pa = rv({-1, 1}), pb = rv({1, 1}), pc = rv({1, -1}), pd = rv({0, -1}), pe = rv({-1, 0});
  std::vector<Polyhedron> faces = {
      segment(pa, pb),          segment(pb, pc),           segment(pc, pd),
      segment(pd, pe),          segment(pe, pa),           ray_from(pa, iv({-1, 1})),
      ray_from(pb, iv({1, 1})), ray_from(pc, iv({1, -1})), ray_from(pd, iv({0, -1})),
      ray_from(pe, iv({-1, 0}))};
  return PolyComplex::build(
      2, faces, {iv({-1, 1}), iv({1, 1}), iv({1, -1}), iv({0, -1}), iv({-1, 0})});
}

PolyComplex sectors_fan() {
  return PolyComplex::build(2, {cone2(iv({1, 0}), iv({0, 1})), cone2(iv({0, 1}), iv({-1, -1})),
                                cone2(iv({-1, -1}), iv({1, 0}))},
                            {});
}

}  // namespace trop
