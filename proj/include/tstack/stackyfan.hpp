#pragma once

#include <vector>

#include "tstack/error.hpp"
#include "tstack/numeric.hpp"
#include "tstack/polyhedral.hpp"
#include "tstack/zlinalg.hpp"

namespace tstack {

/// Finitely generated abelian target N, given by a presentation
/// coker(Q: Z^s -> Z^{t'}). The lattice case is s = 0. The canonical
/// projection onto N/torsion is cached on construction.
class FgTarget {
 public:
  static FgTarget lattice(Index rank);
  static FgTarget withTorsion(Index free_rank, const std::vector<Int>& divisors);
  static FgTarget fromPresentation(IntMat q);

  Index freeRank() const { return free_rank_; }
  Index generatorCount() const { return generator_count_; }
  const IntMat& presentation() const { return q_; }
  /// Surjection Z^{t'} -> Z^t with kernel the saturation of im(Q).
  const IntMat& freeProjection() const { return free_projection_; }
  bool isLattice() const { return q_.cols() == 0 && free_rank_ == generator_count_; }

  bool operator==(const FgTarget& other) const {
    return free_rank_ == other.free_rank_ && generator_count_ == other.generator_count_ &&
           matEq<Int>(q_, other.q_);
  }

 private:
  FgTarget() = default;
  Index free_rank_ = 0;
  Index generator_count_ = 0;
  IntMat q_;                // t' x s
  IntMat free_projection_;  // t x t'
};

/// Stacky fan (Sigma, beta, N): fan on L = Z^n plus beta: L -> N with finite
/// cokernel, beta given on the chosen generators of N (t' rows, n columns).
struct StackyFan {
  Index lattice_rank = 0;
  Fan fan;
  FgTarget target = FgTarget::lattice(0);
  IntMat beta;

  /// Images of the fan rays in the chosen generators of N.
  std::vector<IntVec> rayImages() const;
  /// Images of the fan rays in N/torsion.
  std::vector<IntVec> rayImagesFree() const;

  bool operator==(const StackyFan& other) const {
    return lattice_rank == other.lattice_rank && fan == other.fan && target == other.target &&
           matEq<Int>(beta, other.beta);
  }
};

struct ExtendedStackyFan {
  StackyFan base;
  std::vector<IntVec> extra;  // additional elements of N, in Z^{t'} coordinates

  Index totalVectorCount() const {
    return static_cast<Index>(base.fan.rays.size() + extra.size());
  }
};

ValidationReport validate(const StackyFan& sf);
ValidationReport validate(const ExtendedStackyFan& esf);

/// Gale dual DG(beta) = coker([B | Q]^T) with the action characters: images
/// of the first m coordinate vectors in canonical coordinates. The sign of
/// each free coordinate is normalized so the first nonzero entry across the
/// character list is positive.
struct GaleDualData {
  FgAbGroup dg_group;
  std::vector<IntVec> action_characters;
};

GaleDualData galeDual(const ExtendedStackyFan& esf);
GaleDualData galeDual(const StackyFan& sf);

DiagonalizableGroup structureGroup(const ExtendedStackyFan& esf);
DiagonalizableGroup structureGroup(const StackyFan& sf);

/// The Deligne-Mumford torus T x BG: T of rank = free rank of N, G = coker(beta).
struct DMTorusData {
  Index torus_rank = 0;
  FgAbGroup finite_group;
};

DMTorusData dmTorus(const StackyFan& sf);

bool isOrbifold(const StackyFan& sf);

/// Combinatorial [Z^e / G^e]: ambient coordinates = rays then extra vectors;
/// removed_loci lists, per maximal cone, the ray coordinates outside it
/// (the exponents of one irrelevant-ideal generator).
struct QuotientPresentation {
  Index ambient_dim = 0;
  std::vector<std::vector<int>> removed_loci;
  DiagonalizableGroup group;
  GaleDualData characters;
};

QuotientPresentation quotientPresentation(const ExtendedStackyFan& esf);

/// Converts the (N, Sigma, b-vectors) convention into the fan-on-L form:
/// L = Z^n with e_i mapping to b_i and the fan lifted through the
/// ray <-> coordinate bijection.
StackyFan fromBcsForm(const FgTarget& target, const std::vector<IntVec>& bVectors,
                      const std::vector<std::vector<int>>& maxCones);

}  // namespace tstack
