#pragma once

#include <map>
#include <string>
#include <vector>

#include "tstack/stackyfan.hpp"

namespace tstack {

/// Twisted-sector index: a lattice point c = sum q_i b_i with all q_i in
/// [0,1) over the rays of its minimal cone; age = sum q_i.
struct BoxElement {
  IntVec c;               // in N/torsion coordinates
  std::vector<int> cone;  // ray indices of the minimal cone, sorted
  std::vector<Rat> q;     // fractional coordinates, aligned with `cone`
  Rat age = 0;
};

/// Element of the deformed group ring: finitely supported rational
/// combination of monomials y^c.
struct RingElement {
  std::map<IntVec, Rat, VecLexLess> terms;

  static RingElement monomial(const IntVec& c, const Rat& coeff = Rat(1));
  void add(const IntVec& c, const Rat& coeff);
  bool isZero() const { return terms.empty(); }
  bool operator==(const RingElement& other) const;
  std::string render() const;
};

/// Data shared by the ring operations: ray and extended-vector images in
/// N/torsion plus the image cones of the maximal cones.
struct ImageFanData {
  Index free_rank = 0;
  std::vector<IntVec> ray_images;
  std::vector<IntVec> extended_images;
  std::vector<std::vector<int>> max_cones;
  std::vector<IntMat> cone_inequalities;  // one block per maximal cone

  /// All ray and extended images, rays first.
  std::vector<IntVec> allImages() const;
  bool inSomeCone(const IntVec& c) const;
  bool inCommonCone(const IntVec& a, const IntVec& b) const;
  /// Geometric fan spanned by the primitive ray images.
  Fan imageFan() const;
};

ImageFanData imageFanData(const ExtendedStackyFan& esf);

/// Lattice points of the half-open parallelepipeds of all maximal cones,
/// attributed to their minimal cones; c = 0 always included. Requires all
/// image cones simplicial.
std::vector<BoxElement> boxElements(const ExtendedStackyFan& esf);

/// Deformed product: monomials multiply to y^{c+c'} when a common cone of
/// the image fan contains both supports, and to 0 otherwise.
RingElement mul(const RingElement& x, const RingElement& y, const ExtendedStackyFan& esf);

/// One relation per basis vector theta_k of (N/torsion)^*:
/// sum_i theta_k(b_i) y^{b_i} over rays and extended vectors.
std::vector<RingElement> linearRelations(const ExtendedStackyFan& esf);

enum class BaseMode { Point, Formal };

struct CohomologyPresentation {
  std::vector<IntVec> ray_generators;
  std::vector<IntVec> extended_generators;
  std::vector<BoxElement> box_generators;  // nonzero box elements
  /// Generator pairs (indices into rays+extended+box, i <= j) whose product
  /// vanishes: no cone contains both supports.
  std::vector<std::pair<int, int>> vanishing_pairs;
  std::vector<RingElement> linear_relations;
  /// First-Chern-class tokens attached per relation in formal mode; empty
  /// over a point base.
  std::vector<std::string> base_symbols;
  std::string rendering;
};

CohomologyPresentation presentation(const ExtendedStackyFan& esf, BaseMode base);

struct GradedDims {
  std::map<Rat, Index> dims;  // degree (= 2 * age) -> dimension, nonzero only
  Index truncation_radius = 0;
  bool stabilized = false;

  Index total() const;
};

/// Graded dimensions of the Eq.-style quotient over a point base: monomials
/// within the truncation box modulo the span of the deformed-product
/// multiples of the linear relations, eliminated degree by degree.
/// truncation_radius 0 selects the default (3 * max image coordinate),
/// doubling until dims at radius and radius+1 agree or the cap of 12.
GradedDims gradedDimensions(const ExtendedStackyFan& esf, const Rat& max_degree,
                            Index truncation_radius = 0);

}  // namespace tstack
