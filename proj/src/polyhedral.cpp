#include "tstack/polyhedral.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tstack {

namespace {

constexpr Index kDualDimCap = 8;

IntMat matFromCols(Index rank, const std::vector<IntVec>& cols) {
  IntMat m(rank, static_cast<Index>(cols.size()));
  for (Index j = 0; j < m.cols(); ++j) m.col(j) = cols[static_cast<size_t>(j)];
  return m;
}

void sortDedupVectors(std::vector<IntVec>& v) {
  std::sort(v.begin(), v.end(), lexLess);
  v.erase(std::unique(v.begin(), v.end(), vecEq), v.end());
}

Int adjugateEntry(const IntMat& m, Index i, Index j) {
  const Index n = m.rows();
  IntMat minor(n - 1, n - 1);
  for (Index r = 0, rr = 0; r < n; ++r) {
    if (r == j) continue;
    for (Index c = 0, cc = 0; c < n; ++c) {
      if (c == i) continue;
      minor(rr, cc) = m(r, c);
      ++cc;
    }
    ++rr;
  }
  Int d = determinant(minor);
  return ((i + j) % 2 == 0) ? d : -d;
}

// Extreme rays of the pointed cone { y : B y >= 0 }, B m x r of rank r.
std::vector<IntVec> pointedConeRays(const IntMat& b) {
  const Index r = b.cols();
  const Index m = b.rows();
  if (r == 0) return {};
  if (r == 1) {
    bool hasPos = false, hasNeg = false;
    for (Index i = 0; i < m; ++i) {
      if (b(i, 0) > 0) hasPos = true;
      if (b(i, 0) < 0) hasNeg = true;
    }
    if (hasPos && hasNeg) return {};
    IntVec ray(1);
    ray(0) = hasNeg ? -1 : 1;
    return {ray};
  }

  // Greedy maximal independent row subset as the seed system.
  std::vector<Index> seed;
  {
    IntMat acc(0, r);
    for (Index i = 0; i < m && static_cast<Index>(seed.size()) < r; ++i) {
      IntMat trial(acc.rows() + 1, r);
      trial.topRows(acc.rows()) = acc;
      trial.row(acc.rows()) = b.row(i);
      if (rationalRank(trial) == trial.rows()) {
        acc = trial;
        seed.push_back(i);
      }
    }
  }
  IntMat b0(r, r);
  for (Index k = 0; k < r; ++k) b0.row(k) = b.row(seed[static_cast<size_t>(k)]);
  Int det = determinant(b0);
  int sgn = det > 0 ? 1 : -1;
  std::vector<IntVec> rays;
  for (Index j = 0; j < r; ++j) {
    IntVec col(r);
    for (Index i = 0; i < r; ++i) col(i) = sgn * adjugateEntry(b0, i, j);
    rays.push_back(primitive(col));
  }
  sortDedupVectors(rays);

  std::set<Index> seedSet(seed.begin(), seed.end());
  std::vector<Index> processed = seed;
  for (Index row = 0; row < m; ++row) {
    if (seedSet.count(row)) continue;
    processed.push_back(row);
    std::vector<IntVec> pos, zero, neg;
    std::vector<Int> posVal, negVal;
    for (const IntVec& ray : rays) {
      Int v = b.row(row).dot(ray);
      if (v > 0) {
        pos.push_back(ray);
        posVal.push_back(v);
      } else if (v < 0) {
        neg.push_back(ray);
        negVal.push_back(v);
      } else {
        zero.push_back(ray);
      }
    }
    std::vector<IntVec> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    for (size_t p = 0; p < pos.size(); ++p)
      for (size_t q = 0; q < neg.size(); ++q) {
        IntVec w = posVal[p] * neg[q] - negVal[q] * pos[p];
        next.push_back(primitive(w));
      }
    sortDedupVectors(next);

    // Keep extreme rays only: active constraints must have rank r-1.
    std::vector<IntVec> kept;
    for (const IntVec& ray : next) {
      std::vector<Index> active;
      for (Index pr : processed)
        if (b.row(pr).dot(ray) == 0) active.push_back(pr);
      if (static_cast<Index>(active.size()) < r - 1) continue;
      IntMat am(static_cast<Index>(active.size()), r);
      for (Index k = 0; k < am.rows(); ++k) am.row(k) = b.row(active[static_cast<size_t>(k)]);
      if (rationalRank(am) >= r - 1) kept.push_back(ray);
    }
    rays = std::move(kept);
  }
  return rays;
}

bool containsWithInequalities(const IntMat& ineq, const IntVec& v) {
  for (Index i = 0; i < ineq.rows(); ++i)
    if (ineq.row(i).dot(v) < 0) return false;
  return true;
}

bool coneEquals(const Cone& a, const Cone& b) {
  IntMat ia = inequalities(a), ib = inequalities(b);
  for (const IntVec& g : a.generators)
    if (!containsWithInequalities(ib, g)) return false;
  for (const IntVec& g : b.generators)
    if (!containsWithInequalities(ia, g)) return false;
  return true;
}

}  // namespace

Cone Cone::fromGenerators(Index ambient_rank, std::vector<IntVec> gens) {
  std::vector<IntVec> prim;
  prim.reserve(gens.size());
  for (const IntVec& g : gens) {
    if (g.size() != ambient_rank)
      throw Error(ErrorKind::InvariantError, "cone generator has wrong dimension");
    prim.push_back(primitive(g));
  }
  sortDedupVectors(prim);
  return Cone{ambient_rank, std::move(prim)};
}

IntMat Cone::generatorMatrix() const { return matFromCols(ambient_rank, generators); }

Index Cone::dim() const { return rationalRank(generatorMatrix()); }

IntVec primitive(const IntVec& v) {
  Int g = content(v);
  if (g == 0) throw Error(ErrorKind::ZeroVector, "primitive part of the zero vector");
  IntVec w = v;
  if (g > 1)
    for (Index i = 0; i < w.size(); ++i) w(i) /= g;
  return w;
}

Cone coneFromInequalities(const IntMat& a, Index ambient_rank) {
  if (ambient_rank > kDualDimCap)
    throw Error(ErrorKind::DimensionTooLarge, "ambient rank exceeds the double-description cap");
  SmithForm f = snf(a);
  Index r = f.rank();
  std::vector<IntVec> gens;
  // Lineality: +- pairs for each kernel basis vector.
  IntMat kernel = f.V.rightCols(a.cols() - r);
  kernel = hnf(kernel);
  for (Index j = 0; j < kernel.cols(); ++j) {
    gens.push_back(primitive(kernel.col(j)));
    gens.push_back(primitive(IntVec(-kernel.col(j))));
  }
  if (r > 0) {
    IntMat v1 = f.V.leftCols(r);
    IntMat b = a * v1;  // m x r, rank r: pointed system in the quotient
    for (const IntVec& y : pointedConeRays(b)) gens.push_back(primitive(IntVec(v1 * y)));
  }
  return Cone::fromGenerators(ambient_rank, std::move(gens));
}

Cone dualCone(const Cone& c) {
  if (c.ambient_rank > kDualDimCap)
    throw Error(ErrorKind::DimensionTooLarge, "ambient rank exceeds the double-description cap");
  IntMat a(static_cast<Index>(c.generators.size()), c.ambient_rank);
  for (Index i = 0; i < a.rows(); ++i) a.row(i) = c.generators[static_cast<size_t>(i)].transpose();
  return coneFromInequalities(a, c.ambient_rank);
}

IntMat inequalities(const Cone& c) {
  Cone d = dualCone(c);
  IntMat ineq(static_cast<Index>(d.generators.size()), c.ambient_rank);
  for (Index i = 0; i < ineq.rows(); ++i) ineq.row(i) = d.generators[static_cast<size_t>(i)].transpose();
  return ineq;
}

bool contains(const Cone& c, const IntVec& v) {
  if (v.size() != c.ambient_rank)
    throw Error(ErrorKind::InvariantError, "contains: ambient rank mismatch");
  return containsWithInequalities(inequalities(c), v);
}

bool isPointed(const Cone& c) {
  Cone d = dualCone(c);
  if (d.generators.empty()) return c.generators.empty();
  return rationalRank(d.generatorMatrix()) == c.ambient_rank;
}

bool isSimplicial(const Cone& c) {
  return c.dim() == static_cast<Index>(c.generators.size());
}

bool isSmooth(const Cone& c) {
  if (!isSimplicial(c)) return false;
  SmithForm f = snf(c.generatorMatrix());
  for (const Int& d : f.diagonal())
    if (d != 1) return false;
  return true;
}

std::vector<ParaPoint> parallelepipedPoints(const std::vector<IntVec>& indep) {
  std::vector<ParaPoint> out;
  if (indep.empty()) {
    out.push_back(ParaPoint{IntVec(), {}});
    return out;
  }
  const Index ambient = indep.front().size();
  const Index k = static_cast<Index>(indep.size());
  IntMat g = matFromCols(ambient, indep);
  if (rationalRank(g) != k)
    throw Error(ErrorKind::InvariantError, "parallelepipedPoints: generators dependent");
  IntMat span = satSpanBasis(g);  // ambient x k
  IntMat coords(k, k);
  for (Index j = 0; j < k; ++j) {
    auto c = solveIntegral(span, indep[static_cast<size_t>(j)]);
    coords.col(j) = *c;
  }
  SmithForm f = snf(coords);
  std::vector<Int> diag = f.diagonal();
  IntMat uinv = inverseUnimodular(f.U);
  RatMat coordsInv(k, k);
  {
    // coords is k x k nonsingular: invert exactly over Q.
    RatMat m = toRat(coords);
    RatMat inv = RatMat::Identity(k, k);
    for (Index col = 0; col < k; ++col) {
      Index pivot = -1;
      for (Index i = col; i < k; ++i)
        if (m(i, col) != 0) {
          pivot = i;
          break;
        }
      m.row(pivot).swap(m.row(col));
      inv.row(pivot).swap(inv.row(col));
      Rat p = m(col, col);
      m.row(col) /= p;
      inv.row(col) /= p;
      for (Index i = 0; i < k; ++i) {
        if (i == col || m(i, col) == 0) continue;
        Rat fac = m(i, col);
        m.row(i) -= fac * m.row(col);
        inv.row(i) -= fac * inv.row(col);
      }
    }
    coordsInv = inv;
  }

  // Enumerate Z^k / coords Z^k through the SNF residues.
  std::vector<Int> residue(diag.size(), 0);
  for (;;) {
    IntVec z = IntVec::Zero(k);
    for (Index i = 0; i < static_cast<Index>(diag.size()); ++i) z(i) = residue[static_cast<size_t>(i)];
    IntVec rep = uinv * z;
    RatVec t = coordsInv * toRat(rep);
    std::vector<Rat> frac(static_cast<size_t>(k));
    RatVec tf(k);
    for (Index i = 0; i < k; ++i) {
      tf(i) = fracPart(t(i));
      frac[static_cast<size_t>(i)] = tf(i);
    }
    RatVec pointRat = toRat(g) * tf;
    IntVec point(ambient);
    for (Index i = 0; i < ambient; ++i) {
      if (boost::multiprecision::denominator(pointRat(i)) != 1)
        throw Error(ErrorKind::InvariantError, "parallelepipedPoints: non-integral point");
      point(i) = boost::multiprecision::numerator(pointRat(i));
    }
    out.push_back(ParaPoint{std::move(point), std::move(frac)});

    Index pos = 0;
    while (pos < static_cast<Index>(diag.size())) {
      residue[static_cast<size_t>(pos)] += 1;
      if (residue[static_cast<size_t>(pos)] < diag[static_cast<size_t>(pos)]) break;
      residue[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == static_cast<Index>(diag.size())) break;
  }
  std::sort(out.begin(), out.end(),
            [](const ParaPoint& a, const ParaPoint& b) { return lexLess(a.point, b.point); });
  return out;
}

std::vector<std::vector<int>> triangulateGenerators(const std::vector<IntVec>& gens) {
  if (gens.empty()) return {};
  const Index ambient = gens.front().size();
  IntMat g = matFromCols(ambient, gens);
  Index dim = rationalRank(g);
  std::vector<int> all(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) all[i] = static_cast<int>(i);
  if (dim == static_cast<Index>(gens.size())) return {all};

  int vertex = 0;
  for (size_t i = 1; i < gens.size(); ++i)
    if (lexLess(gens[i], gens[static_cast<size_t>(vertex)])) vertex = static_cast<int>(i);

  IntMat a(static_cast<Index>(gens.size()), ambient);
  for (Index i = 0; i < a.rows(); ++i) a.row(i) = gens[static_cast<size_t>(i)].transpose();
  Cone dual = coneFromInequalities(a, ambient);

  std::vector<std::vector<int>> pieces;
  std::set<std::vector<int>> seen;
  for (const IntVec& u : dual.generators) {
    std::vector<int> face;
    for (size_t i = 0; i < gens.size(); ++i)
      if (u.dot(gens[i]) == 0) face.push_back(static_cast<int>(i));
    if (face.size() == gens.size()) continue;  // lineality functional
    if (std::find(face.begin(), face.end(), vertex) != face.end()) continue;
    if (face.empty()) continue;
    if (!seen.insert(face).second) continue;
    std::vector<IntVec> faceGens;
    for (int i : face) faceGens.push_back(gens[static_cast<size_t>(i)]);
    for (const auto& sub : triangulateGenerators(faceGens)) {
      std::vector<int> piece{vertex};
      for (int local : sub) piece.push_back(face[static_cast<size_t>(local)]);
      std::sort(piece.begin(), piece.end());
      pieces.push_back(std::move(piece));
    }
  }
  std::sort(pieces.begin(), pieces.end());
  pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
  return pieces;
}

HilbertBasis hilbertBasis(const Cone& c) {
  if (!isPointed(c)) throw Error(ErrorKind::NotPointed, "hilbert basis needs a pointed cone");
  HilbertBasis hb;
  if (c.generators.empty()) return hb;

  IntMat g = c.generatorMatrix();
  IntMat span = satSpanBasis(g);  // ambient x r
  const Index r = span.cols();
  std::vector<IntVec> gensR;
  for (const IntVec& gen : c.generators) gensR.push_back(*solveIntegral(span, gen));

  std::vector<IntVec> candidates = gensR;
  for (const auto& piece : triangulateGenerators(gensR)) {
    std::vector<IntVec> pieceGens;
    for (int i : piece) pieceGens.push_back(gensR[static_cast<size_t>(i)]);
    for (const ParaPoint& p : parallelepipedPoints(pieceGens))
      if (content(p.point) != 0) candidates.push_back(p.point);
  }
  sortDedupVectors(candidates);

  Cone coneR = Cone::fromGenerators(r, gensR);
  IntMat ineq = inequalities(coneR);
  std::vector<IntVec> minimal;
  for (const IntVec& cand : candidates) {
    bool reducible = false;
    for (const IntVec& other : candidates) {
      if (vecEq(other, cand)) continue;
      IntVec diff = cand - other;
      if (content(diff) == 0) continue;
      if (containsWithInequalities(ineq, diff)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) minimal.push_back(cand);
  }
  for (const IntVec& m : minimal) hb.elements.push_back(span * m);
  std::sort(hb.elements.begin(), hb.elements.end(), lexLess);
  return hb;
}

Cone Fan::cone(const std::vector<int>& rayIndices) const {
  std::vector<IntVec> gens;
  for (int i : rayIndices) gens.push_back(rays.at(static_cast<size_t>(i)));
  return Cone::fromGenerators(ambient_rank, std::move(gens));
}

bool Fan::operator==(const Fan& other) const {
  if (ambient_rank != other.ambient_rank) return false;
  if (rays.size() != other.rays.size() || max_cones != other.max_cones) return false;
  for (size_t i = 0; i < rays.size(); ++i)
    if (!vecEq(rays[i], other.rays[i])) return false;
  return true;
}

ValidationReport validateFan(const Fan& f) {
  ValidationReport report;
  for (size_t i = 0; i < f.rays.size(); ++i) {
    const IntVec& r = f.rays[i];
    if (r.size() != f.ambient_rank) {
      report.add(ErrorKind::InvariantError, "ray " + std::to_string(i) + " has wrong dimension");
      return report;
    }
    if (content(r) == 0) {
      report.add(ErrorKind::InvariantError, "ray " + std::to_string(i) + " is zero");
      return report;
    }
    if (content(r) != 1)
      report.add(ErrorKind::InvariantError, "ray " + std::to_string(i) + " is not primitive");
    for (size_t j = 0; j < i; ++j)
      if (vecEq(f.rays[i], f.rays[j]))
        report.add(ErrorKind::InvariantError,
                   "rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  if (!report.ok()) return report;

  std::vector<bool> used(f.rays.size(), false);
  for (size_t ci = 0; ci < f.max_cones.size(); ++ci) {
    for (int idx : f.max_cones[ci]) {
      if (idx < 0 || static_cast<size_t>(idx) >= f.rays.size()) {
        report.add(ErrorKind::InvariantError,
                   "cone " + std::to_string(ci) + " references ray " + std::to_string(idx));
        return report;
      }
      used[static_cast<size_t>(idx)] = true;
    }
  }
  for (size_t i = 0; i < f.rays.size(); ++i)
    if (!used[i]) report.add(ErrorKind::UnusedRay, "ray " + std::to_string(i) + " is in no maximal cone");

  std::vector<Cone> cones;
  for (size_t ci = 0; ci < f.max_cones.size(); ++ci) {
    Cone c = f.cone(f.max_cones[ci]);
    if (!isPointed(c))
      report.add(ErrorKind::NonPointedCone, "maximal cone " + std::to_string(ci) + " is not pointed");
    cones.push_back(std::move(c));
  }
  if (!report.ok()) return report;

  for (size_t i = 0; i < cones.size(); ++i) {
    IntMat ineqI = inequalities(cones[i]);
    for (size_t j = i + 1; j < cones.size(); ++j) {
      IntMat ineqJ = inequalities(cones[j]);
      IntMat stacked(ineqI.rows() + ineqJ.rows(), f.ambient_rank);
      stacked.topRows(ineqI.rows()) = ineqI;
      stacked.bottomRows(ineqJ.rows()) = ineqJ;
      Cone meet = coneFromInequalities(stacked, f.ambient_rank);
      auto isFaceOf = [&](const Cone& big, const IntMat& bigIneq) {
        std::vector<IntVec> active;
        for (Index row = 0; row < bigIneq.rows(); ++row) {
          bool vanishes = true;
          for (const IntVec& k : meet.generators)
            if (bigIneq.row(row).dot(k) != 0) {
              vanishes = false;
              break;
            }
          if (vanishes) active.push_back(bigIneq.row(row).transpose());
        }
        std::vector<IntVec> faceGens;
        for (const IntVec& g : big.generators) {
          bool onFace = true;
          for (const IntVec& u : active)
            if (u.dot(g) != 0) {
              onFace = false;
              break;
            }
          if (onFace) faceGens.push_back(g);
        }
        Cone face = Cone::fromGenerators(f.ambient_rank, faceGens);
        return coneEquals(face, meet);
      };
      if (!isFaceOf(cones[i], ineqI) || !isFaceOf(cones[j], ineqJ))
        report.add(ErrorKind::BadIntersection,
                   "cones " + std::to_string(i) + " and " + std::to_string(j) +
                       " do not meet in a common face");
    }
  }
  return report;
}

bool isComplete(const Fan& f) {
  validateFan(f).require();
  if (f.ambient_rank == 0) return true;
  if (f.max_cones.empty()) return false;
  std::vector<Cone> cones;
  for (size_t ci = 0; ci < f.max_cones.size(); ++ci) {
    cones.push_back(f.maxCone(ci));
    if (cones.back().dim() != f.ambient_rank)
      throw Error(ErrorKind::NotPure, "maximal cone " + std::to_string(ci) + " is not full-dimensional");
  }

  std::map<std::vector<int>, std::vector<size_t>> facets;
  for (size_t ci = 0; ci < f.max_cones.size(); ++ci) {
    Cone dual = dualCone(cones[ci]);
    std::set<std::vector<int>> coneFacets;
    for (const IntVec& u : dual.generators) {
      std::vector<int> key;
      for (int ray : f.max_cones[ci])
        if (u.dot(f.rays[static_cast<size_t>(ray)]) == 0) key.push_back(ray);
      std::sort(key.begin(), key.end());
      if (static_cast<Index>(key.size()) == static_cast<Index>(f.max_cones[ci].size())) continue;
      coneFacets.insert(key);
    }
    for (const auto& key : coneFacets) facets[key].push_back(ci);
  }

  std::vector<std::set<size_t>> adj(cones.size());
  for (const auto& [key, owners] : facets) {
    if (owners.size() != 2) return false;
    adj[owners[0]].insert(owners[1]);
    adj[owners[1]].insert(owners[0]);
  }
  std::vector<bool> seen(cones.size(), false);
  std::vector<size_t> stack{0};
  seen[0] = true;
  size_t reached = 0;
  while (!stack.empty()) {
    size_t cur = stack.back();
    stack.pop_back();
    ++reached;
    for (size_t nxt : adj[cur])
      if (!seen[nxt]) {
        seen[nxt] = true;
        stack.push_back(nxt);
      }
  }
  return reached == cones.size();
}

}  // namespace tstack
