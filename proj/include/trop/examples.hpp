#pragma once

#include <vector>

#include "trop/complex.hpp"
#include "trop/rational.hpp"

namespace trop {

// Bundled example geometries, shared between the test suite and the
// command-line corpus.

// The tropical line in the plane: the origin with rays e1, e2 and -e1-e2,
// optionally with compactified directions.
PolyComplex tropical_line(std::vector<IntVec> compactification = {});

// Two vertices joined by a horizontal segment, three unbounded 2-cells
// between the rays above and below, and the horizontal direction
// compactified.
PolyComplex figure_one_complex();

// A pentagon of bounded edges with one outward ray per vertex; all five ray
// directions are compactified.
PolyComplex elliptic_curve();

// The complete fan in the plane with three maximal sectors.
PolyComplex sectors_fan();

}  // namespace trop
