#include "tstack/orbicoh.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tstack {

namespace {

IntMat matFromCols(Index rank, const std::vector<IntVec>& cols) {
  IntMat m(rank, static_cast<Index>(cols.size()));
  for (Index j = 0; j < m.cols(); ++j) m.col(j) = cols[static_cast<size_t>(j)];
  return m;
}

// Exact solution of G x = c over Q for G of full column rank.
std::optional<RatVec> rationalSolve(const IntMat& g, const IntVec& c) {
  RatMat m(g.rows(), g.cols() + 1);
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index j = 0; j < g.cols(); ++j) m(i, j) = Rat(g(i, j));
    m(i, g.cols()) = Rat(c(i));
  }
  Index row = 0;
  std::vector<Index> pivotCols;
  for (Index col = 0; col < g.cols() && row < m.rows(); ++col) {
    Index pivot = -1;
    for (Index i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(row));
    Rat p = m(row, col);
    m.row(row) /= p;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rat f = m(i, col);
      m.row(i) -= f * m.row(row);
    }
    pivotCols.push_back(col);
    ++row;
  }
  for (Index i = row; i < m.rows(); ++i)
    if (m(i, g.cols()) != 0) return std::nullopt;
  RatVec x = RatVec::Zero(g.cols());
  for (size_t k = 0; k < pivotCols.size(); ++k) x(pivotCols[k]) = m(static_cast<Index>(k), g.cols());
  return x;
}

Rat degreeOf(const ImageFanData& data, const IntVec& c) {
  for (size_t ci = 0; ci < data.max_cones.size(); ++ci) {
    bool inside = true;
    const IntMat& ineq = data.cone_inequalities[ci];
    for (Index r = 0; r < ineq.rows(); ++r)
      if (ineq.row(r).dot(c) < 0) {
        inside = false;
        break;
      }
    if (!inside) continue;
    std::vector<IntVec> gens;
    for (int idx : data.max_cones[ci]) gens.push_back(data.ray_images[static_cast<size_t>(idx)]);
    auto q = rationalSolve(matFromCols(data.free_rank, gens), c);
    if (!q) continue;
    Rat sum = 0;
    bool nonneg = true;
    for (Index i = 0; i < q->size(); ++i) {
      if ((*q)(i) < 0) {
        nonneg = false;
        break;
      }
      sum += (*q)(i);
    }
    if (nonneg) return 2 * sum;
  }
  throw Error(ErrorKind::SupportOutsideFan, "monomial " + toString(c) + " lies in no cone");
}

}  // namespace

RingElement RingElement::monomial(const IntVec& c, const Rat& coeff) {
  RingElement e;
  if (coeff != 0) e.terms.emplace(c, coeff);
  return e;
}

void RingElement::add(const IntVec& c, const Rat& coeff) {
  auto it = terms.find(c);
  if (it == terms.end()) {
    if (coeff != 0) terms.emplace(c, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms.erase(it);
}

bool RingElement::operator==(const RingElement& other) const {
  if (terms.size() != other.terms.size()) return false;
  auto it = terms.begin();
  auto jt = other.terms.begin();
  for (; it != terms.end(); ++it, ++jt)
    if (!vecEq(it->first, jt->first) || it->second != jt->second) return false;
  return true;
}

std::string RingElement::render() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, coeff] : terms) {
    if (!first) os << " + ";
    os << toString(coeff) << "*y^" << toString(c);
    first = false;
  }
  return os.str();
}

std::vector<IntVec> ImageFanData::allImages() const {
  std::vector<IntVec> all = ray_images;
  all.insert(all.end(), extended_images.begin(), extended_images.end());
  return all;
}

bool ImageFanData::inSomeCone(const IntVec& c) const {
  for (const IntMat& ineq : cone_inequalities) {
    bool inside = true;
    for (Index r = 0; r < ineq.rows(); ++r)
      if (ineq.row(r).dot(c) < 0) {
        inside = false;
        break;
      }
    if (inside) return true;
  }
  return free_rank == 0;  // the zero fan carries only c = 0
}

bool ImageFanData::inCommonCone(const IntVec& a, const IntVec& b) const {
  for (const IntMat& ineq : cone_inequalities) {
    bool inside = true;
    for (Index r = 0; r < ineq.rows() && inside; ++r)
      if (ineq.row(r).dot(a) < 0 || ineq.row(r).dot(b) < 0) inside = false;
    if (inside) return true;
  }
  return free_rank == 0;
}

Fan ImageFanData::imageFan() const {
  Fan f;
  f.ambient_rank = free_rank;
  std::vector<int> remap(ray_images.size(), -1);
  for (size_t i = 0; i < ray_images.size(); ++i) {
    IntVec p = primitive(ray_images[i]);
    int found = -1;
    for (size_t j = 0; j < f.rays.size(); ++j)
      if (vecEq(f.rays[j], p)) {
        found = static_cast<int>(j);
        break;
      }
    if (found < 0) {
      f.rays.push_back(p);
      found = static_cast<int>(f.rays.size()) - 1;
    }
    remap[i] = found;
  }
  std::set<std::vector<int>> cones;
  for (const auto& cone : max_cones) {
    std::vector<int> mapped;
    for (int idx : cone) mapped.push_back(remap[static_cast<size_t>(idx)]);
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    cones.insert(mapped);
  }
  f.max_cones.assign(cones.begin(), cones.end());
  return f;
}

ImageFanData imageFanData(const ExtendedStackyFan& esf) {
  validate(esf).require();
  ImageFanData data;
  data.free_rank = esf.base.target.freeRank();
  data.ray_images = esf.base.rayImagesFree();
  const IntMat& pi = esf.base.target.freeProjection();
  for (const IntVec& extra : esf.extra) data.extended_images.push_back(pi * extra);
  data.max_cones = esf.base.fan.max_cones;
  for (auto& cone : data.max_cones) std::sort(cone.begin(), cone.end());
  for (const auto& cone : data.max_cones) {
    std::vector<IntVec> gens;
    for (int idx : cone) gens.push_back(data.ray_images[static_cast<size_t>(idx)]);
    data.cone_inequalities.push_back(
        inequalities(Cone::fromGenerators(data.free_rank, gens)));
  }
  return data;
}

std::vector<BoxElement> boxElements(const ExtendedStackyFan& esf) {
  ImageFanData data = imageFanData(esf);
  for (size_t ci = 0; ci < data.max_cones.size(); ++ci) {
    std::vector<IntVec> gens;
    for (int idx : data.max_cones[ci]) gens.push_back(data.ray_images[static_cast<size_t>(idx)]);
    if (rationalRank(matFromCols(data.free_rank, gens)) != static_cast<Index>(gens.size()))
      throw Error(ErrorKind::NotSimplicial,
                  "maximal cone " + std::to_string(ci) + " has dependent ray images");
  }

  std::map<IntVec, BoxElement, VecLexLess> found;
  BoxElement zero;
  zero.c = IntVec::Zero(data.free_rank);
  found.emplace(zero.c, zero);

  for (const auto& cone : data.max_cones) {
    std::vector<IntVec> gens;
    for (int idx : cone) gens.push_back(data.ray_images[static_cast<size_t>(idx)]);
    if (gens.empty()) continue;
    for (const ParaPoint& p : parallelepipedPoints(gens)) {
      if (content(p.point) == 0) continue;
      BoxElement box;
      box.c = p.point;
      for (size_t k = 0; k < cone.size(); ++k) {
        if (p.coords[k] == 0) continue;
        box.cone.push_back(cone[k]);
        box.q.push_back(p.coords[k]);
        box.age += p.coords[k];
      }
      found.emplace(box.c, box);  // minimal-cone data agrees across cones
    }
  }
  std::vector<BoxElement> out;
  for (auto& [c, box] : found) out.push_back(box);
  std::sort(out.begin(), out.end(), [](const BoxElement& a, const BoxElement& b) {
    if (a.age != b.age) return a.age < b.age;
    return lexLess(a.c, b.c);
  });
  return out;
}

RingElement mul(const RingElement& x, const RingElement& y, const ExtendedStackyFan& esf) {
  ImageFanData data = imageFanData(esf);
  for (const auto& [c, coeff] : x.terms)
    if (!data.inSomeCone(c))
      throw Error(ErrorKind::SupportOutsideFan, "left support " + toString(c) + " outside |Sigma|");
  for (const auto& [c, coeff] : y.terms)
    if (!data.inSomeCone(c))
      throw Error(ErrorKind::SupportOutsideFan, "right support " + toString(c) + " outside |Sigma|");
  RingElement out;
  for (const auto& [c, a] : x.terms)
    for (const auto& [cp, b] : y.terms)
      if (data.inCommonCone(c, cp)) out.add(c + cp, a * b);
  return out;
}

std::vector<RingElement> linearRelations(const ExtendedStackyFan& esf) {
  ImageFanData data = imageFanData(esf);
  std::vector<RingElement> relations;
  std::vector<IntVec> images = data.allImages();
  for (Index k = 0; k < data.free_rank; ++k) {
    RingElement r;
    for (const IntVec& b : images) r.add(b, Rat(b(k)));
    relations.push_back(std::move(r));
  }
  return relations;
}

CohomologyPresentation presentation(const ExtendedStackyFan& esf, BaseMode base) {
  ImageFanData data = imageFanData(esf);
  CohomologyPresentation pres;
  pres.ray_generators = data.ray_images;
  pres.extended_generators = data.extended_images;
  for (const BoxElement& box : boxElements(esf))
    if (content(box.c) != 0) pres.box_generators.push_back(box);
  pres.linear_relations = linearRelations(esf);
  if (base == BaseMode::Formal)
    for (size_t k = 0; k < pres.linear_relations.size(); ++k)
      pres.base_symbols.push_back("c1(psi_lambda_" + std::to_string(k + 1) + ")");

  std::vector<IntVec> allGens = data.ray_images;
  allGens.insert(allGens.end(), data.extended_images.begin(), data.extended_images.end());
  for (const BoxElement& box : pres.box_generators) allGens.push_back(box.c);
  for (size_t i = 0; i < allGens.size(); ++i)
    for (size_t j = i; j < allGens.size(); ++j)
      if (!data.inCommonCone(allGens[i], allGens[j]))
        pres.vanishing_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));

  std::ostringstream os;
  os << "deformed group ring presentation\n";
  os << "multiplication: y^c * y^c' = y^{c+c'} when a cone contains both, else 0\n";
  os << "generators:\n";
  for (size_t i = 0; i < data.ray_images.size(); ++i)
    os << "  y^" << toString(data.ray_images[i]) << "  (ray " << i << ")\n";
  for (size_t i = 0; i < data.extended_images.size(); ++i)
    os << "  y^" << toString(data.extended_images[i]) << "  (extended " << i << ")\n";
  for (const BoxElement& box : pres.box_generators)
    os << "  y^" << toString(box.c) << "  (box, age " << toString(box.age) << ")\n";
  os << "linear relations:\n";
  for (size_t k = 0; k < pres.linear_relations.size(); ++k) {
    os << "  ";
    if (base == BaseMode::Formal) os << pres.base_symbols[k] << " + ";
    os << pres.linear_relations[k].render() << " = 0\n";
  }
  os << "vanishing pairs: " << pres.vanishing_pairs.size() << "\n";
  pres.rendering = os.str();
  return pres;
}

Index GradedDims::total() const {
  Index t = 0;
  for (const auto& [deg, dim] : dims) t += dim;
  return t;
}

namespace {

std::map<Rat, Index> dimsAtRadius(const ImageFanData& data,
                                  const std::vector<RingElement>& relations, Index radius,
                                  const Rat& maxDegree) {
  const Index t = data.free_rank;
  std::vector<IntVec> monomials;
  {
    IntVec cur = IntVec::Constant(t, -radius);
    for (;;) {
      if (data.inSomeCone(cur)) monomials.push_back(cur);
      Index pos = 0;
      while (pos < t) {
        cur(pos) += 1;
        if (cur(pos) <= radius) break;
        cur(pos) = -radius;
        ++pos;
      }
      if (pos == t) break;
      if (t == 0) break;
    }
    if (t == 0) monomials.push_back(IntVec());
  }

  std::map<IntVec, size_t, VecLexLess> monomialIndex;
  std::vector<Rat> degree(monomials.size());
  for (size_t i = 0; i < monomials.size(); ++i) {
    monomialIndex.emplace(monomials[i], i);
    degree[i] = degreeOf(data, monomials[i]);
  }

  // Homogeneous ideal elements y^c * r_k whose support stays inside the box.
  std::map<Rat, std::vector<std::map<size_t, Rat>>> idealByDegree;
  for (size_t mi = 0; mi < monomials.size(); ++mi) {
    for (const RingElement& rel : relations) {
      std::map<size_t, Rat> element;
      bool keep = true;
      for (const auto& [b, coeff] : rel.terms) {
        if (!data.inCommonCone(monomials[mi], b)) continue;
        IntVec prod = monomials[mi] + b;
        auto it = monomialIndex.find(prod);
        if (it == monomialIndex.end()) {
          keep = false;  // a term escapes the truncation box
          break;
        }
        auto [slot, inserted] = element.emplace(it->second, coeff);
        if (!inserted) {
          slot->second += coeff;
          if (slot->second == 0) element.erase(slot);
        }
      }
      if (!keep || element.empty()) continue;
      idealByDegree[degree[mi] + 2].push_back(std::move(element));
    }
  }

  std::map<Rat, std::vector<size_t>> monomialsByDegree;
  for (size_t i = 0; i < monomials.size(); ++i) monomialsByDegree[degree[i]].push_back(i);

  std::map<Rat, Index> dims;
  for (const auto& [deg, mons] : monomialsByDegree) {
    if (deg > maxDegree) continue;
    Index rank = 0;
    auto it = idealByDegree.find(deg);
    if (it != idealByDegree.end() && !it->second.empty()) {
      std::map<size_t, Index> local;
      for (size_t m : mons) local.emplace(m, static_cast<Index>(local.size()));
      RatMat mat = RatMat::Zero(static_cast<Index>(it->second.size()),
                                static_cast<Index>(local.size()));
      for (size_t r = 0; r < it->second.size(); ++r)
        for (const auto& [mono, coeff] : it->second[r]) mat(static_cast<Index>(r), local.at(mono)) = coeff;
      // Row echelon rank over Q.
      Index row = 0;
      for (Index col = 0; col < mat.cols() && row < mat.rows(); ++col) {
        Index pivot = -1;
        for (Index i = row; i < mat.rows(); ++i)
          if (mat(i, col) != 0) {
            pivot = i;
            break;
          }
        if (pivot < 0) continue;
        mat.row(pivot).swap(mat.row(row));
        for (Index i = row + 1; i < mat.rows(); ++i) {
          if (mat(i, col) == 0) continue;
          Rat f = mat(i, col) / mat(row, col);
          mat.row(i) -= f * mat.row(row);
        }
        ++row;
      }
      rank = row;
    }
    Index dim = static_cast<Index>(mons.size()) - rank;
    if (dim > 0) dims[deg] = dim;
  }
  return dims;
}

}  // namespace

GradedDims gradedDimensions(const ExtendedStackyFan& esf, const Rat& max_degree,
                            Index truncation_radius) {
  ImageFanData data = imageFanData(esf);
  for (size_t ci = 0; ci < data.max_cones.size(); ++ci) {
    std::vector<IntVec> gens;
    for (int idx : data.max_cones[ci]) gens.push_back(data.ray_images[static_cast<size_t>(idx)]);
    if (rationalRank(matFromCols(data.free_rank, gens)) != static_cast<Index>(gens.size()))
      throw Error(ErrorKind::NotSimplicial,
                  "maximal cone " + std::to_string(ci) + " has dependent ray images");
  }
  if (!isComplete(data.imageFan()))
    throw Error(ErrorKind::NotComplete, "the image fan is not complete");
  for (const IntVec& extra : data.extended_images)
    if (!data.inSomeCone(extra))
      throw Error(ErrorKind::SupportOutsideFan, "extended vector outside |Sigma|");

  std::vector<RingElement> relations = linearRelations(esf);

  Int maxCoord = 1;
  for (const IntVec& b : data.allImages())
    for (Index i = 0; i < b.size(); ++i) maxCoord = std::max(maxCoord, absInt(b(i)));

  constexpr Index kRadiusCap = 12;
  Index radius = truncation_radius > 0
                     ? truncation_radius
                     : std::min<Index>(kRadiusCap, 3 * static_cast<Index>(maxCoord.convert_to<long>()));
  GradedDims out;
  for (;;) {
    std::map<Rat, Index> now = dimsAtRadius(data, relations, radius, max_degree);
    std::map<Rat, Index> next = dimsAtRadius(data, relations, radius + 1, max_degree);
    out.dims = now;
    out.truncation_radius = radius;
    if (now == next) {
      out.stabilized = true;
      break;
    }
    if (radius >= kRadiusCap) {
      out.stabilized = false;  // reported as data, not an error
      break;
    }
    radius = std::min<Index>(kRadiusCap, radius * 2);
  }
  return out;
}

}  // namespace tstack
