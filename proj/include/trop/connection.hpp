#pragma once

#include <cstddef>
#include <vector>

#include "trop/bar.hpp"
#include "trop/linalg.hpp"
#include "trop/matrix.hpp"

namespace trop {

// A tropical vector bundle with connection over one open set. Bundles here
// are trivial of the stated rank; the connection is determined by one r x r
// rational matrix per basis class of the 1-forms on the base:
// theta = sum_k (class k) (x) theta[k]. The base carries the form spaces and
// wedge table of the open set (a BarSetup), which also fixes the word-length
// cap used by the comodule translation.
struct TropConnection {
  BarSetup base;
  std::size_t rank = 0;
  std::vector<Mat> theta;  // one matrix per 1-form basis class
};

// Validates shapes: one matrix per 1-form basis class, each rank x rank.
TropConnection make_connection(BarSetup base, std::size_t rank, std::vector<Mat> theta);

// The rank-r connection with theta = 0; rank 1 is the unit object.
TropConnection trivial_connection(BarSetup base, std::size_t rank);

// Whether two connections live over the same base, i.e. the same open set
// with identical form spaces and wedge table.
bool same_base(const TropConnection& a, const TropConnection& b);

struct IntegrabilityReport {
  bool integrable = false;
  // When not integrable: a 2-form basis class whose End-valued coefficient
  // in theta ^ theta is nonzero, and that coefficient.
  std::size_t witness_class = 0;
  Mat witness;
};

// Checks theta ^ theta = 0: the coefficient of every 2-form basis class in
// sum_{k<l} (class_k ^ class_l) (x) [theta_k, theta_l] must vanish.
IntegrabilityReport is_integrable(const TropConnection& c);

// Joint kernel of the theta matrices. Requires an integrable connection.
Subspace horizontal_sections(const TropConnection& c);

// Solution space of theta2_k T = T theta1_k for all k, as row-major
// vectorizations of the rank2 x rank1 matrices T. Computed directly, and
// cross-checked against horizontal sections of Hom(a, b) = dual(a) (x) b
// whenever both inputs are integrable.
Subspace hom_space(const TropConnection& a, const TropConnection& b);

// Tensor product: Kronecker sums theta1_k (x) I + I (x) theta2_k on the
// i-major tensor basis. Preserves integrability (asserted when the inputs
// are integrable).
TropConnection tensor(const TropConnection& a, const TropConnection& b);

// Dual connection: negated transposes on the dual basis.
TropConnection dual(const TropConnection& c);

// Result of the unipotence peel: an increasing chain of subspaces
// 0 = V_0 < V_1 < ... with theta_k V_{i+1} inside V_i for all k. The
// connection is unipotent exactly when the chain reaches the full space.
struct UnipotenceReport {
  bool unipotent = false;
  std::vector<Subspace> chain;  // V_1, V_2, ...; last entry full on success
};

UnipotenceReport is_unipotent(const TropConnection& c);

// The coaction data of a unipotent connection: for each word length k, the
// matrix products theta_{i_1} ... theta_{i_k} indexed by words over the
// 1-form alphabet in the bar module's word order.
struct ComoduleData {
  std::size_t rank = 0;
  std::size_t letters = 0;
  std::vector<std::vector<Mat>> words;  // words[k] has letters^k entries
};

// Assembles the word components up to the rank-based nilpotency bound;
// verifies all words of length rank vanish (NotUnipotent otherwise) and that
// every component lies in the bar kernel of its length (NotComodule
// otherwise).
ComoduleData connection_to_comodule(const TropConnection& c);

// Reads the length-1 component back into a connection over the given base
// and verifies the higher components are its word products, so that the
// round trips are identities on valid data.
TropConnection comodule_to_connection(const ComoduleData& data, BarSetup base);

}  // namespace trop
