#pragma once

#include <vector>

#include "tstack/error.hpp"
#include "tstack/numeric.hpp"
#include "tstack/zlinalg.hpp"

namespace tstack {

/// Rational polyhedral cone given by generators. Canonical form: generators
/// primitive, deduplicated, lexicographically sorted. The empty generator
/// list is the zero cone.
struct Cone {
  Index ambient_rank = 0;
  std::vector<IntVec> generators;

  /// Normalizes to canonical form; throws ZeroVector on a zero generator.
  static Cone fromGenerators(Index ambient_rank, std::vector<IntVec> gens);

  bool operator==(const Cone& other) const {
    if (ambient_rank != other.ambient_rank) return false;
    if (generators.size() != other.generators.size()) return false;
    for (size_t i = 0; i < generators.size(); ++i)
      if (!vecEq(generators[i], other.generators[i])) return false;
    return true;
  }

  IntMat generatorMatrix() const;  // ambient_rank x #generators
  Index dim() const;               // rank of the generator matrix
};

/// v / gcd(coordinates); sign preserved. Throws ZeroVector.
IntVec primitive(const IntVec& v);

/// { u : <u, v> >= 0 for all v in C }. Exact double description; ambient
/// rank capped at 8. For cones with lineality the result lists a +- pair
/// per lineality basis vector plus the extreme rays of the pointed part.
Cone dualCone(const Cone& c);

/// Cone cut out by  A u >= 0  (one inequality per row of A).
Cone coneFromInequalities(const IntMat& a, Index ambient_rank);

/// Rows are the dual cone's generators; v is in C iff inequalities(C)*v >= 0.
IntMat inequalities(const Cone& c);

bool contains(const Cone& c, const IntVec& v);

bool isPointed(const Cone& c);
bool isSimplicial(const Cone& c);
/// Simplicial with multiplicity one: the generators extend to a lattice basis.
bool isSmooth(const Cone& c);

/// Minimal generating set of the monoid C cap Z^n for a pointed cone C.
struct HilbertBasis {
  std::vector<IntVec> elements;  // lex sorted
};

HilbertBasis hilbertBasis(const Cone& c);

/// Lattice point of the half-open parallelepiped of linearly independent
/// generators, with its fractional coordinates (all in [0,1)).
struct ParaPoint {
  IntVec point;
  std::vector<Rat> coords;
};

/// All lattice points of { sum t_i g_i : t_i in [0,1) } for independent g_i,
/// origin included. Deterministic order.
std::vector<ParaPoint> parallelepipedPoints(const std::vector<IntVec>& indep);

/// Index subsets forming a stellar triangulation into simplicial subcones;
/// subdivision vertex is the lexicographically least generator at each level.
std::vector<std::vector<int>> triangulateGenerators(const std::vector<IntVec>& gens);

/// Fan on a lattice: primitive rays plus maximal cones as ray index sets.
struct Fan {
  Index ambient_rank = 0;
  std::vector<IntVec> rays;
  std::vector<std::vector<int>> max_cones;

  Cone cone(const std::vector<int>& rayIndices) const;
  Cone maxCone(size_t i) const { return cone(max_cones[i]); }

  bool operator==(const Fan& other) const;
};

/// Checks the Fan invariants: rays primitive/distinct/used, cones pointed,
/// pairwise intersections faces of both.
ValidationReport validateFan(const Fan& f);

/// True iff the fan is pure full-dimensional, every facet of a maximal cone
/// is shared by exactly two maximal cones, and the dual graph is connected.
/// Throws NotPure when a maximal cone is not full-dimensional.
bool isComplete(const Fan& f);

}  // namespace tstack
