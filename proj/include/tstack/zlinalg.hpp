#pragma once

#include <optional>
#include <vector>

#include "tstack/error.hpp"
#include "tstack/numeric.hpp"

namespace tstack {

/// Smith normal form U * A * V = S with U, V unimodular and S diagonal,
/// diagonal entries nonnegative and each dividing the next.
struct SmithForm {
  IntMat U;
  IntMat S;
  IntMat V;

  Index rank() const;
  /// Diagonal entries d_1, ..., d_rank (all positive).
  std::vector<Int> diagonal() const;
};

SmithForm snf(const IntMat& a);

/// Column-style Hermite normal form: same column span over Z, pivot rows
/// strictly increasing, pivots positive, entries left of a pivot reduced
/// into [0, pivot). Zero columns are moved to the end.
IntMat hnf(const IntMat& a);

/// Columns form a basis of ker(A: Z^cols -> Z^rows) generating a saturated
/// sublattice; the basis is HNF-reduced so the result is canonical.
IntMat kernelBasis(const IntMat& a);

/// Some integral solution of A x = b, or nullopt if none exists. The
/// particular solution is the canonical SNF-based one.
std::optional<IntVec> solveIntegral(const IntMat& a, const IntVec& b);

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
Int determinant(IntMat m);

Index rationalRank(const IntMat& a);

/// Inverse of a matrix with determinant +-1.
IntMat inverseUnimodular(const IntMat& u);

/// Saturated basis of the column span: the columns extend to a basis of the
/// ambient lattice, so every integer vector in the rational span is an
/// integer combination of them.
IntMat satSpanBasis(const IntMat& a);

/// Basis of the column span's saturation together with complementary columns;
/// [basis | complement] is a basis of Z^rows.
struct SatSpanSplit {
  IntMat basis;
  IntMat complement;
};

SatSpanSplit satSpanSplit(const IntMat& a);

/// Finitely generated abelian group in canonical form: free rank plus
/// invariant factors (each >= 2, each dividing the next, factors of 1 never
/// stored).
struct FgAbGroup {
  Index free_rank = 0;
  std::vector<Int> invariant_factors;

  bool trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  Index torsionCount() const { return static_cast<Index>(invariant_factors.size()); }
  bool operator==(const FgAbGroup&) const = default;

  std::string render() const;  // e.g. "Z^2 x Z/2 x Z/4"
};

FgAbGroup cokernel(const IntMat& a);

/// Hom(A, C^*) for a finitely generated A: a torus times a finite group.
struct DiagonalizableGroup {
  Index torus_rank = 0;
  FgAbGroup finite_part;  // free_rank always 0

  bool operator==(const DiagonalizableGroup&) const = default;
  std::string render() const;  // e.g. "(C^*)^2 x mu_2 x mu_4"
};

DiagonalizableGroup dualGroup(const FgAbGroup& a);

/// The projection Z^rows -> coker(A) with explicit canonical coordinates.
/// Elements are encoded as integer vectors [free coords..., torsion coords...]
/// with torsion coordinate i reduced into [0, d_i).
class CokernelMap {
 public:
  explicit CokernelMap(const IntMat& a);

  const FgAbGroup& group() const { return group_; }
  /// Canonical coordinates of the class of v.
  IntVec reduce(const IntVec& v) const;
  /// Canonical coordinates of the class of v in coker(A) / b * coker(A).
  IntVec reduceModulo(const IntVec& v, const Int& b) const;
  /// Lifts of the canonical generators of the torsion summands, one per
  /// invariant factor, as elements of Z^rows.
  std::vector<IntVec> torsionGeneratorLifts() const;

 private:
  IntMat u_;      // row transform of the SNF
  IntMat u_inv_;
  std::vector<Int> diag_;  // positive diagonal entries d_1..d_rank
  Index rank_ = 0;
  Index rows_ = 0;
  FgAbGroup group_;
};

}  // namespace tstack
