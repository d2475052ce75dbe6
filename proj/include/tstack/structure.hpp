#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tstack/stackyfan.hpp"

namespace tstack {

/// Root-stack orders a_i: the image of the i-th primitive ray generator in
/// N/torsion is a_i times a primitive vector.
struct RayMultiplicities {
  std::vector<Int> a;

  bool allOne() const {
    for (const Int& v : a)
      if (v != 1) return false;
    return true;
  }
};

RayMultiplicities rayMultiplicities(const StackyFan& sf);

/// Corestriction of beta to its image inside N/torsion: the target becomes
/// the image lattice in its HNF basis, the fan is unchanged, and the result
/// is an orbifold.
StackyFan rigidify(const StackyFan& sf);

/// Rigidify, then divide each ray image by its multiplicity. When the
/// primitive images do not extend to a map on the same L, the result is
/// emitted in ray-lifted form (L = Z^#rays plus complementary torus
/// coordinates).
StackyFan canonicalize(const StackyFan& sf);

/// Cl(X) of an orbifold stacky fan: cokernel of the divisor map
/// theta -> (theta(beta(u_i)))_i.
struct ClassGroup {
  FgAbGroup group;
  IntMat divisor_matrix;  // #rays x free rank of N
  std::shared_ptr<const CokernelMap> projection;
};

ClassGroup classGroup(const StackyFan& sf);

/// Gerbe banding data of Prop 1.1(1): invariant factors b_1 | ... | b_l of
/// coker(beta), d = gcd(b) (0 when the gerbe is trivial), and the classes of
/// the line bundles L_j in Cl(X^rig) / b_j Cl(X^rig).
struct GerbeData {
  std::vector<Int> b;
  Int d = 0;
  std::vector<IntVec> class_reps;
  FgAbGroup rig_class_group;

  bool trivial() const { return b.empty(); }
};

std::pair<std::vector<Int>, Int> gerbeInvariants(const StackyFan& sf);

GerbeData gerbeClasses(const StackyFan& sf);

/// Finest splitting of the rays such that the fan is the product of the
/// induced subfans and the ray-image spans of distinct blocks are independent
/// with saturated direct sum. Factors are emitted in ray-lifted form; a
/// rayless residual factor carries leftover torus directions and the torsion
/// of N, when present.
std::vector<StackyFan> productDecomposition(const StackyFan& sf);

/// Direct sum of factors: block beta, product fan, concatenated targets.
StackyFan recombine(const std::vector<StackyFan>& factors);

/// Permutes L-coordinates and ray indices so beta columns are sorted
/// lexicographically; used to compare ray-lifted stacky fans up to ordering.
StackyFan canonicalOrdering(const StackyFan& sf);

struct DecompositionReport {
  StackyFan input;
  StackyFan rigidified;
  StackyFan canonical;
  RayMultiplicities input_multiplicities;  // of the input's own ray images
  RayMultiplicities multiplicities;        // of X^rig, the a_i of Prop 1.1(2)
  GerbeData gerbe;
  std::vector<StackyFan> factors;
  std::vector<std::string> warnings;
  std::string rendering;
};

DecompositionReport decompositionReport(const StackyFan& sf);

}  // namespace tstack
