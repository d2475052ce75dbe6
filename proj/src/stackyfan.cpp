#include "tstack/stackyfan.hpp"

#include <algorithm>

namespace tstack {

namespace {

// [B | Q]: the presentation of coker(beta) as a quotient of Z^{t'}.
IntMat liftedMatrix(const IntMat& beta, const IntMat& q) {
  IntMat m(beta.rows(), beta.cols() + q.cols());
  m.leftCols(beta.cols()) = beta;
  m.rightCols(q.cols()) = q;
  return m;
}

IntMat extendedBeta(const ExtendedStackyFan& esf) {
  const IntMat& b = esf.base.beta;
  IntMat be(b.rows(), b.cols() + static_cast<Index>(esf.extra.size()));
  be.leftCols(b.cols()) = b;
  for (size_t i = 0; i < esf.extra.size(); ++i)
    be.col(b.cols() + static_cast<Index>(i)) = esf.extra[i];
  return be;
}

}  // namespace

FgTarget FgTarget::lattice(Index rank) {
  FgTarget t;
  t.free_rank_ = rank;
  t.generator_count_ = rank;
  t.q_ = IntMat(rank, 0);
  t.free_projection_ = IntMat::Identity(rank, rank);
  return t;
}

FgTarget FgTarget::withTorsion(Index free_rank, const std::vector<Int>& divisors) {
  Index k = static_cast<Index>(divisors.size());
  IntMat q = IntMat::Zero(free_rank + k, k);
  for (Index i = 0; i < k; ++i) {
    const Int& d = divisors[static_cast<size_t>(i)];
    if (d < 2) throw Error(ErrorKind::InvariantError, "torsion divisor must be >= 2");
    q(free_rank + i, i) = d;
  }
  return fromPresentation(std::move(q));
}

FgTarget FgTarget::fromPresentation(IntMat q) {
  FgTarget t;
  t.generator_count_ = q.rows();
  SmithForm f = snf(q);
  t.free_rank_ = q.rows() - f.rank();
  t.free_projection_ = f.U.bottomRows(t.free_rank_);
  t.q_ = std::move(q);
  return t;
}

std::vector<IntVec> StackyFan::rayImages() const {
  std::vector<IntVec> out;
  for (size_t i = 0; i < fan.rays.size(); ++i) out.push_back(beta * fan.rays[i]);
  return out;
}

std::vector<IntVec> StackyFan::rayImagesFree() const {
  const IntMat& pi = target.freeProjection();
  std::vector<IntVec> out;
  for (size_t i = 0; i < fan.rays.size(); ++i) out.push_back(pi * (beta * fan.rays[i]));
  return out;
}

ValidationReport validate(const StackyFan& sf) {
  ValidationReport report;
  if (sf.fan.ambient_rank != sf.lattice_rank) {
    report.add(ErrorKind::InvariantError, "fan ambient rank differs from lattice rank");
    return report;
  }
  if (sf.beta.rows() != sf.target.generatorCount() || sf.beta.cols() != sf.lattice_rank) {
    report.add(ErrorKind::InvariantError, "beta has wrong dimensions");
    return report;
  }
  ValidationReport fanReport = validateFan(sf.fan);
  for (const Violation& v : fanReport.violations)
    report.add(ErrorKind::InvalidFan, v.detail + " (" + errorKindName(v.kind) + ")");
  IntMat lifted = liftedMatrix(sf.beta, sf.target.presentation());
  if (rationalRank(lifted) != sf.target.generatorCount())
    report.add(ErrorKind::NonFiniteCokernel, "coker(beta) is infinite");
  return report;
}

ValidationReport validate(const ExtendedStackyFan& esf) {
  ValidationReport report = validate(esf.base);
  for (size_t i = 0; i < esf.extra.size(); ++i)
    if (esf.extra[i].size() != esf.base.target.generatorCount()) {
      report.add(ErrorKind::InvariantError,
                 "extended vector " + std::to_string(i) + " has wrong dimension");
      break;
    }
  return report;
}

GaleDualData galeDual(const ExtendedStackyFan& esf) {
  validate(esf).require();
  IntMat be = extendedBeta(esf);
  IntMat lifted = liftedMatrix(be, esf.base.target.presentation());
  CokernelMap cm{IntMat(lifted.transpose())};
  GaleDualData out;
  out.dg_group = cm.group();
  const Index m = be.cols();
  const Index total = lifted.cols();
  for (Index i = 0; i < m; ++i) {
    IntVec e = IntVec::Zero(total);
    e(i) = 1;
    out.action_characters.push_back(cm.reduce(e));
  }
  // Sign normalization of the free coordinates.
  for (Index f = 0; f < out.dg_group.free_rank; ++f) {
    for (const IntVec& chi : out.action_characters) {
      if (chi(f) == 0) continue;
      if (chi(f) < 0)
        for (IntVec& c : out.action_characters) c(f) = -c(f);
      break;
    }
  }
  return out;
}

GaleDualData galeDual(const StackyFan& sf) { return galeDual(ExtendedStackyFan{sf, {}}); }

DiagonalizableGroup structureGroup(const ExtendedStackyFan& esf) {
  return dualGroup(galeDual(esf).dg_group);
}

DiagonalizableGroup structureGroup(const StackyFan& sf) {
  return structureGroup(ExtendedStackyFan{sf, {}});
}

DMTorusData dmTorus(const StackyFan& sf) {
  validate(sf).require();
  DMTorusData out;
  out.torus_rank = sf.target.freeRank();
  out.finite_group = cokernel(liftedMatrix(sf.beta, sf.target.presentation()));
  return out;
}

bool isOrbifold(const StackyFan& sf) {
  validate(sf).require();
  return cokernel(liftedMatrix(sf.beta, sf.target.presentation())).trivial();
}

QuotientPresentation quotientPresentation(const ExtendedStackyFan& esf) {
  validate(esf).require();
  QuotientPresentation out;
  const Index n = static_cast<Index>(esf.base.fan.rays.size());
  out.ambient_dim = n + static_cast<Index>(esf.extra.size());
  for (const auto& cone : esf.base.fan.max_cones) {
    std::vector<int> removed;
    for (Index i = 0; i < n; ++i)
      if (std::find(cone.begin(), cone.end(), static_cast<int>(i)) == cone.end())
        removed.push_back(static_cast<int>(i));
    out.removed_loci.push_back(std::move(removed));
  }
  GaleDualData gd = galeDual(esf);
  out.group = dualGroup(gd.dg_group);
  out.characters = std::move(gd);
  return out;
}

StackyFan fromBcsForm(const FgTarget& target, const std::vector<IntVec>& bVectors,
                      const std::vector<std::vector<int>>& maxCones) {
  const Index n = static_cast<Index>(bVectors.size());
  const IntMat& pi = target.freeProjection();
  std::vector<IntVec> freeImages;
  for (size_t i = 0; i < bVectors.size(); ++i) {
    if (bVectors[i].size() != target.generatorCount())
      throw Error(ErrorKind::InvariantError, "b-vector " + std::to_string(i) + " has wrong dimension");
    IntVec img = pi * bVectors[i];
    if (content(img) == 0)
      throw Error(ErrorKind::RayMismatch,
                  "b-vector " + std::to_string(i) + " has zero image in N/torsion and spans no ray");
    freeImages.push_back(std::move(img));
  }
  for (size_t ci = 0; ci < maxCones.size(); ++ci) {
    IntMat m(target.freeRank(), static_cast<Index>(maxCones[ci].size()));
    for (size_t k = 0; k < maxCones[ci].size(); ++k) {
      int idx = maxCones[ci][k];
      if (idx < 0 || idx >= n)
        throw Error(ErrorKind::InvariantError, "cone " + std::to_string(ci) + " references a missing b-vector");
      m.col(static_cast<Index>(k)) = freeImages[static_cast<size_t>(idx)];
    }
    if (rationalRank(m) != m.cols())
      throw Error(ErrorKind::NonSimplicialInput,
                  "cone " + std::to_string(ci) + " has linearly dependent b-vectors");
  }

  StackyFan sf;
  sf.lattice_rank = n;
  sf.fan.ambient_rank = n;
  for (Index i = 0; i < n; ++i) {
    IntVec e = IntVec::Zero(n);
    e(i) = 1;
    sf.fan.rays.push_back(std::move(e));
  }
  sf.fan.max_cones = maxCones;
  for (auto& cone : sf.fan.max_cones) std::sort(cone.begin(), cone.end());
  sf.target = target;
  sf.beta = IntMat(target.generatorCount(), n);
  for (Index i = 0; i < n; ++i) sf.beta.col(i) = bVectors[static_cast<size_t>(i)];
  return sf;
}

}  // namespace tstack
