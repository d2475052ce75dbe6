#pragma once

#include <string>
#include <vector>

#include "tstack/polyhedral.hpp"
#include "tstack/structure.hpp"

namespace tstack {

/// Commuting nilpotent monodromy logarithms N_1, ..., N_r of size k x k.
struct NilpotentGenerators {
  Index size = 0;
  std::vector<IntMat> mats;
};

/// Confirms nilpotency and pairwise commutativity.
ValidationReport validateGenerators(const NilpotentGenerators& ng);

/// Exact exp of each generator and of each pairwise sum; non-integral
/// entries downgrade the sigma cap Lambda approximation of Gamma(sigma) to a
/// heuristic, reported as warnings.
struct ExpIntegrality {
  struct Entry {
    std::string label;
    bool integral = true;
  };
  std::vector<Entry> entries;
  bool all_integral = true;
  std::vector<std::string> warnings;
};

ExpIntegrality expIntegrality(const NilpotentGenerators& ng);

/// The monodromy cone in the flattened matrix space Z^{k^2}: the cone on the
/// primitive flattenings, the saturated span lattice Lambda, and the Z-span
/// of the generators.
struct MonodromyCone {
  Index size = 0;  // k
  std::vector<IntVec> flattenings;  // raw row-major flattenings, one per generator
  Cone flattened_cone;              // on the primitive flattenings
  IntMat span_lattice;              // Lambda: k^2 x r, saturated
  IntMat gen_lattice;               // Z-span of the flattenings, HNF basis
};

MonodromyCone monodromyCone(const NilpotentGenerators& ng);

/// The boundary chart: Hilbert basis of the dual monoid of sigma cap Lambda,
/// the binomial relation lattice of its exponent matrix, and the torus rank.
struct MonoidChart {
  HilbertBasis dual_hilbert_basis;  // in Lambda^*
  IntMat relation_lattice;          // kernel of the exponent matrix
  Index torus_rank = 0;
  std::string rendering;
};

MonoidChart chart(const MonodromyCone& mc);

/// Fan of faces of sigma: either the face fan (sigma with all its faces) or
/// an explicit list of generator-index subsets, each required to span a face.
struct MTFanChoice {
  bool face_fan = true;
  std::vector<std::vector<int>> faces;  // used when face_fan is false

  static MTFanChoice faces_of_sigma() { return MTFanChoice{}; }
  static MTFanChoice explicitFaces(std::vector<std::vector<int>> f) {
    return MTFanChoice{false, std::move(f)};
  }
};

/// The stacky triple with beta = e: Z^r -> Lambda (flattened generators in
/// Lambda coordinates), its rigidity, and the decomposition data.
struct MTStackReport {
  StackyFan stacky_fan;
  bool is_rigid = false;
  std::vector<Int> image_index_factors;  // invariant factors of coker(e) in Lambda
  RayMultiplicities multiplicities;
  std::vector<StackyFan> factors;
  std::vector<std::string> warnings;
  std::string rendering;
};

MTStackReport mtStackyFan(const NilpotentGenerators& ng, const MTFanChoice& fanChoice);

std::vector<StackyFan> mtProductSplit(const MTStackReport& report);

}  // namespace tstack
