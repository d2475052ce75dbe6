#include "tstack/structure.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tstack {

namespace {

IntMat liftedMatrix(const IntMat& beta, const IntMat& q) {
  IntMat m(beta.rows(), beta.cols() + q.cols());
  m.leftCols(beta.cols()) = beta;
  m.rightCols(q.cols()) = q;
  return m;
}

IntMat matFromCols(Index rank, const std::vector<IntVec>& cols) {
  IntMat m(rank, static_cast<Index>(cols.size()));
  for (Index j = 0; j < m.cols(); ++j) m.col(j) = cols[static_cast<size_t>(j)];
  return m;
}

// Solve H * X = B column by column; every column must be solvable.
IntMat solveMatrix(const IntMat& h, const IntMat& b, const char* what) {
  IntMat x(h.cols(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    auto col = solveIntegral(h, b.col(j));
    if (!col) throw Error(ErrorKind::InvariantError, std::string(what) + ": unsolvable column");
    x.col(j) = *col;
  }
  return x;
}

struct RigidifyData {
  StackyFan rig;
  IntMat image_basis;  // HNF basis H of im(beta) in N/torsion; beta_rig = H^{-1} beta_free
};

RigidifyData rigidifyData(const StackyFan& sf) {
  validate(sf).require();
  const Index t = sf.target.freeRank();
  IntMat betaFree = sf.target.freeProjection() * sf.beta;  // t x n
  IntMat h = hnf(betaFree).leftCols(t);                    // full column rank by validity
  RigidifyData out;
  out.image_basis = h;
  out.rig.lattice_rank = sf.lattice_rank;
  out.rig.fan = sf.fan;
  out.rig.target = FgTarget::lattice(t);
  out.rig.beta = t == 0 ? IntMat(0, sf.lattice_rank) : solveMatrix(h, betaFree, "rigidify");
  return out;
}

// Reduce v modulo the lattice spanned by the columns of the column-HNF h.
IntVec reduceModLattice(IntVec v, const IntMat& h) {
  for (Index j = 0; j < h.cols(); ++j) {
    Index pivotRow = -1;
    for (Index i = 0; i < h.rows(); ++i)
      if (h(i, j) != 0) {
        pivotRow = i;
        break;
      }
    if (pivotRow < 0) continue;
    Int q = floorDiv(v(pivotRow), h(pivotRow, j));
    if (q != 0) v -= q * h.col(j);
  }
  return v;
}

// The fan rays as a square unimodular matrix, if they form a basis of L.
std::optional<IntMat> rayBasisTransform(const StackyFan& sf) {
  if (static_cast<Index>(sf.fan.rays.size()) != sf.lattice_rank) return std::nullopt;
  IntMat t = matFromCols(sf.lattice_rank, sf.fan.rays);
  Int det = determinant(t);
  if (det != 1 && det != -1) return std::nullopt;
  return t;
}

std::string renderIntList(const std::vector<Int>& xs) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ", ";
    os << xs[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

RayMultiplicities rayMultiplicities(const StackyFan& sf) {
  validate(sf).require();
  RayMultiplicities out;
  std::vector<IntVec> images = sf.rayImagesFree();
  for (size_t i = 0; i < images.size(); ++i) {
    Int c = content(images[i]);
    if (c == 0)
      throw Error(ErrorKind::RayImageZero, "beta kills ray " + std::to_string(i));
    out.a.push_back(c);
  }
  return out;
}

StackyFan rigidify(const StackyFan& sf) { return rigidifyData(sf).rig; }

StackyFan canonicalize(const StackyFan& sf) {
  StackyFan rig = rigidify(sf);
  RayMultiplicities mult = rayMultiplicities(rig);
  if (mult.allOne()) return rig;

  const Index t = rig.target.freeRank();
  std::vector<IntVec> prim;
  {
    std::vector<IntVec> images = rig.rayImagesFree();
    for (const IntVec& w : images) prim.push_back(primitive(w));
  }
  IntMat v = matFromCols(t, prim);

  IntMat rays = matFromCols(rig.lattice_rank, rig.fan.rays);
  if (rationalRank(rays) == rig.lattice_rank) {
    // The primitive images extend uniquely over L when they stay integral.
    IntMat raysT = rays.transpose();
    bool solvable = true;
    IntMat betaCan(t, rig.lattice_rank);
    for (Index r = 0; r < t && solvable; ++r) {
      auto row = solveIntegral(raysT, v.row(r).transpose());
      if (!row)
        solvable = false;
      else
        betaCan.row(r) = row->transpose();
    }
    if (solvable) {
      StackyFan out = rig;
      out.beta = betaCan;
      return out;
    }
  }

  // Ray-lifted fallback: one coordinate per ray plus a complement of the
  // image span, so the cokernel stays finite.
  SatSpanSplit split = satSpanSplit(v);
  const Index k = static_cast<Index>(prim.size());
  const Index c = split.complement.cols();
  StackyFan out;
  out.lattice_rank = k + c;
  out.fan.ambient_rank = k + c;
  for (Index i = 0; i < k; ++i) {
    IntVec e = IntVec::Zero(k + c);
    e(i) = 1;
    out.fan.rays.push_back(std::move(e));
  }
  out.fan.max_cones = rig.fan.max_cones;
  out.target = FgTarget::lattice(t);
  out.beta = IntMat(t, k + c);
  for (Index i = 0; i < k; ++i) out.beta.col(i) = prim[static_cast<size_t>(i)];
  out.beta.rightCols(c) = split.complement;
  return out;
}

ClassGroup classGroup(const StackyFan& sf) {
  validate(sf).require();
  if (!cokernel(liftedMatrix(sf.beta, sf.target.presentation())).trivial())
    throw Error(ErrorKind::NotOrbifold, "class group needs an orbifold stacky fan");
  const Index t = sf.target.freeRank();
  std::vector<IntVec> images = sf.rayImagesFree();
  IntMat imageMat = matFromCols(t, images);
  if (rationalRank(imageMat) != t)
    throw Error(ErrorKind::RaysDoNotSpan, "ray images do not span N over Q");
  IntMat divisor = imageMat.transpose();  // #rays x t
  ClassGroup out;
  out.divisor_matrix = divisor;
  out.projection = std::make_shared<CokernelMap>(divisor);
  out.group = out.projection->group();
  return out;
}

std::pair<std::vector<Int>, Int> gerbeInvariants(const StackyFan& sf) {
  validate(sf).require();
  FgAbGroup g = cokernel(liftedMatrix(sf.beta, sf.target.presentation()));
  Int d = 0;
  for (const Int& b : g.invariant_factors) d = gcdInt(d, b);
  return {g.invariant_factors, d};
}

GerbeData gerbeClasses(const StackyFan& sf) {
  validate(sf).require();
  IntMat lifted = liftedMatrix(sf.beta, sf.target.presentation());
  CokernelMap coker(lifted);
  GerbeData out;
  out.b = coker.group().invariant_factors;
  for (const Int& b : out.b) out.d = gcdInt(out.d, b);
  if (out.b.empty()) throw Error(ErrorKind::NotAGerbe, "coker(beta) is trivial");

  // The divisor coordinates of an element of L need the ray <-> coordinate
  // bijection; accept inputs whose rays form a basis of L and change basis.
  StackyFan cox = sf;
  if (auto transform = rayBasisTransform(sf)) {
    cox.beta = sf.beta * (*transform);
    for (size_t i = 0; i < cox.fan.rays.size(); ++i) {
      IntVec e = IntVec::Zero(sf.lattice_rank);
      e(static_cast<Index>(i)) = 1;
      cox.fan.rays[i] = std::move(e);
    }
  } else {
    throw Error(ErrorKind::CoxFormRequired,
                "gerbe classes need fan rays forming a basis of L");
  }

  RigidifyData rigData = rigidifyData(cox);
  ClassGroup cl = classGroup(rigData.rig);
  out.rig_class_group = cl.group;

  IntMat imageLattice = hnf(lifted);
  IntMat kernel = kernelBasis(rigData.rig.beta);
  const IntMat& pi = cox.target.freeProjection();

  std::vector<IntVec> lifts = coker.torsionGeneratorLifts();
  for (size_t j = 0; j < out.b.size(); ++j) {
    const Int& bj = out.b[j];
    // Any two lattice shifts of the lift change the class by b_j * Cl, so the
    // HNF-reduced representative is canonical.
    IntVec nj = reduceModLattice(lifts[j], imageLattice);
    IntVec target = pi * IntVec(bj * nj);
    auto inRig = solveIntegral(rigData.image_basis, target);
    if (!inRig) throw Error(ErrorKind::InvariantError, "gerbe class target escapes the image lattice");
    auto ell = solveIntegral(rigData.rig.beta, *inRig);
    if (!ell) throw Error(ErrorKind::InvariantError, "gerbe class has no lift in L");
    // Lift ambiguity lives in ker(beta_rig); it must die in Cl / b_j Cl.
    for (Index kcol = 0; kcol < kernel.cols(); ++kcol) {
      IntVec shift = cl.projection->reduceModulo(kernel.col(kcol), bj);
      for (Index i = 0; i < shift.size(); ++i)
        if (shift(i) != 0)
          throw Error(ErrorKind::NonInjectiveRigidification,
                      "gerbe class is not independent of the chosen lift");
    }
    out.class_reps.push_back(cl.projection->reduceModulo(*ell, bj));
  }
  return out;
}

std::vector<StackyFan> productDecomposition(const StackyFan& sf) {
  validate(sf).require();
  const Index t = sf.target.freeRank();
  const size_t nRays = sf.fan.rays.size();
  std::vector<IntVec> images = sf.rayImagesFree();

  std::vector<std::vector<int>> blocks;
  for (size_t i = 0; i < nRays; ++i) blocks.push_back({static_cast<int>(i)});

  auto blockSpan = [&](const std::vector<int>& block) {
    std::vector<IntVec> cols;
    for (int i : block) cols.push_back(images[static_cast<size_t>(i)]);
    return satSpanBasis(matFromCols(t, cols));
  };
  auto mergeBlocks = [&](size_t i, size_t j) {
    blocks[i].insert(blocks[i].end(), blocks[j].begin(), blocks[j].end());
    std::sort(blocks[i].begin(), blocks[i].end());
    blocks.erase(blocks.begin() + static_cast<long>(j));
  };

  if (!blocks.empty())
    for (;;) {
      std::vector<IntMat> spans;
      for (const auto& b : blocks) spans.push_back(blockSpan(b));

      // Pairwise independence of the image spans.
      bool merged = false;
      for (size_t i = 0; i < blocks.size() && !merged; ++i)
        for (size_t j = i + 1; j < blocks.size() && !merged; ++j) {
          IntMat joint(t, spans[i].cols() + spans[j].cols());
          joint.leftCols(spans[i].cols()) = spans[i];
          joint.rightCols(spans[j].cols()) = spans[j];
          if (rationalRank(joint) != spans[i].cols() + spans[j].cols()) {
            mergeBlocks(i, j);
            merged = true;
          }
        }
      if (merged) continue;

      // Global direct sum must be saturated.
      Index total = 0;
      for (const IntMat& s : spans) total += s.cols();
      IntMat all(t, total);
      {
        Index at = 0;
        for (const IntMat& s : spans) {
          all.middleCols(at, s.cols()) = s;
          at += s.cols();
        }
      }
      bool saturated = rationalRank(all) == total;
      if (saturated)
        for (const Int& d : snf(all).diagonal())
          if (d != 1) saturated = false;
      if (!saturated && blocks.size() > 1) {
        mergeBlocks(0, 1);
        continue;
      }

      // The fan must be the product of the induced subfans: every
      // combination of per-block pieces of maximal cones is a maximal cone.
      std::set<std::vector<int>> maxSet;
      for (auto cone : sf.fan.max_cones) {
        std::sort(cone.begin(), cone.end());
        maxSet.insert(cone);
      }
      std::vector<std::vector<std::vector<int>>> pieces(blocks.size());
      for (size_t b = 0; b < blocks.size(); ++b) {
        std::set<std::vector<int>> seen;
        for (const auto& cone : sf.fan.max_cones) {
          std::vector<int> piece;
          for (int idx : cone)
            if (std::binary_search(blocks[b].begin(), blocks[b].end(), idx)) piece.push_back(idx);
          std::sort(piece.begin(), piece.end());
          seen.insert(piece);
        }
        pieces[b].assign(seen.begin(), seen.end());
      }
      std::vector<size_t> choice(blocks.size(), 0);
      bool failed = false;
      std::vector<int> witness;
      for (;;) {
        std::vector<int> combo;
        for (size_t b = 0; b < blocks.size(); ++b)
          combo.insert(combo.end(), pieces[b][choice[b]].begin(), pieces[b][choice[b]].end());
        std::sort(combo.begin(), combo.end());
        if (!maxSet.count(combo)) {
          failed = true;
          witness = combo;
          break;
        }
        size_t pos = 0;
        while (pos < blocks.size()) {
          if (++choice[pos] < pieces[pos].size()) break;
          choice[pos] = 0;
          ++pos;
        }
        if (pos == blocks.size()) break;
      }
      if (!failed) break;
      if (blocks.size() == 1) break;

      // Merge two blocks implicated by the failing combination.
      std::vector<size_t> nonempty;
      for (size_t b = 0; b < blocks.size(); ++b)
        for (int idx : witness)
          if (std::binary_search(blocks[b].begin(), blocks[b].end(), idx)) {
            nonempty.push_back(b);
            break;
          }
      if (nonempty.size() >= 2) {
        mergeBlocks(nonempty[0], nonempty[1]);
      } else if (nonempty.size() == 1) {
        size_t b0 = nonempty[0];
        size_t partner = blocks.size();
        for (const auto& cone : sf.fan.max_cones) {
          bool covers = true;
          for (int idx : witness)
            if (std::find(cone.begin(), cone.end(), idx) == cone.end()) {
              covers = false;
              break;
            }
          if (!covers) continue;
          for (size_t b = 0; b < blocks.size() && partner == blocks.size(); ++b) {
            if (b == b0) continue;
            for (int idx : cone)
              if (std::binary_search(blocks[b].begin(), blocks[b].end(), idx)) {
                partner = b;
                break;
              }
          }
          if (partner != blocks.size()) break;
        }
        if (partner == blocks.size()) partner = b0 == 0 ? 1 : 0;
        mergeBlocks(std::min(b0, partner), std::max(b0, partner));
      } else {
        mergeBlocks(0, 1);
      }
    }

  // Assemble the factors in ray-lifted form.
  std::vector<StackyFan> factors;
  IntMat allSpans(t, 0);
  for (const auto& block : blocks) {
    IntMat w = hnf(blockSpan(block));
    IntMat joined(t, allSpans.cols() + w.cols());
    joined.leftCols(allSpans.cols()) = allSpans;
    joined.rightCols(w.cols()) = w;
    allSpans = joined;

    StackyFan factor;
    const Index k = static_cast<Index>(block.size());
    factor.lattice_rank = k;
    factor.fan.ambient_rank = k;
    for (Index i = 0; i < k; ++i) {
      IntVec e = IntVec::Zero(k);
      e(i) = 1;
      factor.fan.rays.push_back(std::move(e));
    }
    std::set<std::vector<int>> coneSet;
    for (const auto& cone : sf.fan.max_cones) {
      std::vector<int> local;
      for (size_t p = 0; p < block.size(); ++p)
        if (std::find(cone.begin(), cone.end(), block[p]) != cone.end())
          local.push_back(static_cast<int>(p));
      coneSet.insert(local);
    }
    // Keep only maximal pieces so the factor fan has no nested cone lists.
    for (const auto& cone : coneSet) {
      bool dominated = false;
      for (const auto& other : coneSet) {
        if (&other == &cone || other.size() <= cone.size()) continue;
        if (std::includes(other.begin(), other.end(), cone.begin(), cone.end())) {
          dominated = true;
          break;
        }
      }
      if (!dominated) factor.fan.max_cones.push_back(cone);
    }
    std::sort(factor.fan.max_cones.begin(), factor.fan.max_cones.end());
    factor.target = FgTarget::lattice(w.cols());
    factor.beta = IntMat(w.cols(), k);
    for (Index i = 0; i < k; ++i) {
      auto coords = solveIntegral(w, images[static_cast<size_t>(block[static_cast<size_t>(i)])]);
      factor.beta.col(i) = *coords;
    }
    factors.push_back(std::move(factor));
  }

  // Residual factor: leftover torus directions and the torsion of N.
  SatSpanSplit split = satSpanSplit(allSpans);
  Index leftover = split.complement.cols();
  std::vector<Int> torsion;
  {
    FgAbGroup nTors = cokernel(sf.target.presentation());
    torsion = nTors.invariant_factors;
  }
  if (leftover > 0 || !torsion.empty()) {
    StackyFan residual;
    residual.lattice_rank = leftover;
    residual.fan.ambient_rank = leftover;
    residual.target = torsion.empty() ? FgTarget::lattice(leftover)
                                      : FgTarget::withTorsion(leftover, torsion);
    residual.beta = IntMat::Zero(residual.target.generatorCount(), leftover);
    residual.beta.topRows(leftover) = IntMat::Identity(leftover, leftover);
    factors.push_back(std::move(residual));
  }

  if (factors.empty()) factors.push_back(sf);
  return factors;
}

StackyFan recombine(const std::vector<StackyFan>& factors) {
  StackyFan out;
  Index totalL = 0, totalT = 0, totalRays = 0;
  std::vector<Int> torsion;
  for (const StackyFan& f : factors) {
    totalL += f.lattice_rank;
    totalT += f.target.freeRank();
    totalRays += static_cast<Index>(f.fan.rays.size());
    FgAbGroup tors = cokernel(f.target.presentation());
    torsion.insert(torsion.end(), tors.invariant_factors.begin(), tors.invariant_factors.end());
  }
  out.lattice_rank = totalL;
  out.fan.ambient_rank = totalL;
  out.target = torsion.empty() ? FgTarget::lattice(totalT) : FgTarget::withTorsion(totalT, torsion);
  out.beta = IntMat::Zero(out.target.generatorCount(), totalL);

  Index rayBase = 0, lBase = 0, tBase = 0;
  std::vector<std::vector<std::vector<int>>> shiftedCones;
  (void)totalRays;
  for (const StackyFan& f : factors) {
    for (size_t i = 0; i < f.fan.rays.size(); ++i) {
      IntVec ray = IntVec::Zero(totalL);
      ray.segment(lBase, f.lattice_rank) = f.fan.rays[i];
      out.fan.rays.push_back(std::move(ray));
    }
    // Only the free parts enter beta's row blocks; torsion rows follow after
    // all free rows in FgTarget::withTorsion generator order.
    IntMat betaFree = f.target.freeProjection() * f.beta;
    out.beta.block(tBase, lBase, f.target.freeRank(), f.lattice_rank) = betaFree;
    std::vector<std::vector<int>> cones;
    for (const auto& cone : f.fan.max_cones) {
      std::vector<int> shifted;
      for (int idx : cone) shifted.push_back(idx + static_cast<int>(rayBase));
      cones.push_back(std::move(shifted));
    }
    if (cones.empty()) cones.push_back({});
    shiftedCones.push_back(std::move(cones));
    rayBase += static_cast<Index>(f.fan.rays.size());
    lBase += f.lattice_rank;
    tBase += f.target.freeRank();
  }

  std::vector<size_t> choice(factors.size(), 0);
  if (!factors.empty()) {
    for (;;) {
      std::vector<int> combo;
      for (size_t b = 0; b < factors.size(); ++b)
        combo.insert(combo.end(), shiftedCones[b][choice[b]].begin(), shiftedCones[b][choice[b]].end());
      std::sort(combo.begin(), combo.end());
      out.fan.max_cones.push_back(std::move(combo));
      size_t pos = 0;
      while (pos < factors.size()) {
        if (++choice[pos] < shiftedCones[pos].size()) break;
        choice[pos] = 0;
        ++pos;
      }
      if (pos == factors.size()) break;
    }
  }
  std::sort(out.fan.max_cones.begin(), out.fan.max_cones.end());
  out.fan.max_cones.erase(std::unique(out.fan.max_cones.begin(), out.fan.max_cones.end()),
                          out.fan.max_cones.end());
  return out;
}

StackyFan canonicalOrdering(const StackyFan& sf) {
  std::vector<int> perm(sf.lattice_rank);
  for (Index i = 0; i < sf.lattice_rank; ++i) perm[static_cast<size_t>(i)] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    return lexLess(sf.beta.col(a), sf.beta.col(b));
  });
  StackyFan out = sf;
  for (Index j = 0; j < sf.lattice_rank; ++j)
    out.beta.col(j) = sf.beta.col(perm[static_cast<size_t>(j)]);
  std::vector<int> inverse(sf.lattice_rank);
  for (Index j = 0; j < sf.lattice_rank; ++j) inverse[static_cast<size_t>(perm[static_cast<size_t>(j)])] = static_cast<int>(j);
  // Ray-lifted fans have rays = coordinate vectors; transport them through
  // the same permutation.
  for (size_t i = 0; i < out.fan.rays.size(); ++i) {
    IntVec ray = IntVec::Zero(sf.lattice_rank);
    for (Index c = 0; c < sf.lattice_rank; ++c)
      ray(inverse[static_cast<size_t>(c)]) = sf.fan.rays[i](c);
    out.fan.rays[i] = std::move(ray);
  }
  std::vector<size_t> rayPerm(out.fan.rays.size());
  for (size_t i = 0; i < rayPerm.size(); ++i) rayPerm[i] = i;
  std::sort(rayPerm.begin(), rayPerm.end(), [&](size_t a, size_t b) {
    return lexLess(out.fan.rays[a], out.fan.rays[b]);
  });
  std::vector<IntVec> sortedRays;
  std::vector<int> rayInverse(out.fan.rays.size());
  for (size_t i = 0; i < rayPerm.size(); ++i) {
    sortedRays.push_back(out.fan.rays[rayPerm[i]]);
    rayInverse[rayPerm[i]] = static_cast<int>(i);
  }
  out.fan.rays = std::move(sortedRays);
  for (auto& cone : out.fan.max_cones) {
    for (int& idx : cone) idx = rayInverse[static_cast<size_t>(idx)];
    std::sort(cone.begin(), cone.end());
  }
  std::sort(out.fan.max_cones.begin(), out.fan.max_cones.end());
  return out;
}

DecompositionReport decompositionReport(const StackyFan& sf) {
  validate(sf).require();
  DecompositionReport report;
  report.input = sf;
  report.rigidified = rigidify(sf);
  report.canonical = canonicalize(sf);
  report.input_multiplicities = rayMultiplicities(sf);
  report.multiplicities = rayMultiplicities(report.rigidified);

  auto [b, d] = gerbeInvariants(sf);
  report.gerbe.b = b;
  report.gerbe.d = d;
  if (!b.empty()) {
    try {
      report.gerbe = gerbeClasses(sf);
    } catch (const Error& e) {
      report.warnings.push_back(std::string("gerbe classes not computed: ") + e.what());
    }
  }
  report.factors = productDecomposition(sf);

  std::ostringstream os;
  os << "decomposition report\n";
  os << "input: " << sf.fan.rays.size() << " rays, " << sf.fan.max_cones.size()
     << " maximal cones, lattice rank " << sf.lattice_rank << ", target "
     << (sf.target.isLattice() ? "Z^" + std::to_string(sf.target.freeRank())
                               : "presented on " + std::to_string(sf.target.generatorCount()) +
                                     " generators")
     << "\n";
  os << "chain: X -> X^rig -> X^can -> X_bar\n";
  if (report.gerbe.trivial()) {
    os << "gerbe: none\n";
  } else {
    os << "gerbe: banding";
    for (const Int& bj : report.gerbe.b) os << " mu_" << bj;
    os << ", d = gcd" << renderIntList(report.gerbe.b) << " = " << report.gerbe.d << "\n";
    os << "X ≅ ";
    for (size_t j = 0; j < report.gerbe.b.size(); ++j) {
      if (j) os << " ×_{X^rig} ";
      os << "√[" << report.gerbe.b[j] << "]{L_" << (j + 1) << "/X^rig}";
    }
    os << "\n";
    if (!report.gerbe.class_reps.empty()) {
      os << "classes: ";
      for (size_t j = 0; j < report.gerbe.class_reps.size(); ++j) {
        if (j) os << ", ";
        os << "L_" << (j + 1) << " = " << toString(report.gerbe.class_reps[j]) << " in Cl/"
           << report.gerbe.b[j] << "Cl";
      }
      os << "  (Cl(X^rig) = " << report.gerbe.rig_class_group.render() << ")\n";
    }
    os << "note: Thm 2.1 writes the root-stack chain over D itself; Prop 1.1's base X^rig is used here\n";
  }
  os << "multiplicities a = " << renderIntList(report.multiplicities.a) << "\n";
  if (!report.multiplicities.a.empty()) {
    os << "X^rig ≅ ";
    for (size_t i = 0; i < report.multiplicities.a.size(); ++i) {
      if (i) os << " ×_{X^can} ";
      os << "√[" << report.multiplicities.a[i] << "]{D_" << (i + 1) << "^can/X^can}";
    }
    os << "\n";
  }
  if (report.factors.size() <= 1) {
    os << "factors: 1 (indecomposable)\n";
  } else {
    os << "factors: " << report.factors.size() << "\n";
    for (size_t i = 0; i < report.factors.size(); ++i) {
      const StackyFan& f = report.factors[i];
      auto [fb, fd] = gerbeInvariants(f);
      os << "  factor " << (i + 1) << ": " << f.fan.rays.size() << " rays, target rank "
         << f.target.freeRank() << ", gerbe "
         << (fb.empty() ? std::string("none") : "d = " + fd.str()) << "\n";
    }
  }
  for (const std::string& w : report.warnings) os << "warning: " << w << "\n";
  report.rendering = os.str();
  return report;
}

}  // namespace tstack
