#include "tstack/hodgecharts.hpp"

#include <algorithm>
#include <sstream>

namespace tstack {

namespace {

bool isZeroMat(const IntMat& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

RatMat expNilpotent(const IntMat& n) {
  const Index k = n.rows();
  RatMat sum = RatMat::Identity(k, k);
  RatMat power = toRat(n);
  Int factorial = 1;
  for (Index i = 1; i <= k; ++i) {
    factorial *= i;
    sum += power / Rat(factorial);
    power = RatMat(power * toRat(n));
    if (power.isZero(Rat(0))) break;
  }
  return sum;
}

bool isIntegral(const RatMat& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (boost::multiprecision::denominator(m(i, j)) != 1) return false;
  return true;
}

IntVec flattenRowMajor(const IntMat& m) {
  IntVec v(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

}  // namespace

ValidationReport validateGenerators(const NilpotentGenerators& ng) {
  ValidationReport report;
  for (size_t j = 0; j < ng.mats.size(); ++j) {
    const IntMat& m = ng.mats[j];
    if (m.rows() != ng.size || m.cols() != ng.size) {
      report.add(ErrorKind::InvariantError, "matrix " + std::to_string(j) + " is not " +
                                                std::to_string(ng.size) + "x" + std::to_string(ng.size));
      return report;
    }
    IntMat power = IntMat::Identity(ng.size, ng.size);
    for (Index i = 0; i < ng.size; ++i) power = IntMat(power * m);
    if (!isZeroMat(power))
      report.add(ErrorKind::NotNilpotent, "generator " + std::to_string(j) + " is not nilpotent");
  }
  if (!report.ok()) return report;
  for (size_t i = 0; i < ng.mats.size(); ++i)
    for (size_t j = i + 1; j < ng.mats.size(); ++j) {
      IntMat bracket = IntMat(ng.mats[i] * ng.mats[j]) - IntMat(ng.mats[j] * ng.mats[i]);
      if (!isZeroMat(bracket))
        report.add(ErrorKind::NotCommuting,
                   "generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
    }
  return report;
}

ExpIntegrality expIntegrality(const NilpotentGenerators& ng) {
  validateGenerators(ng).require();
  ExpIntegrality out;
  auto record = [&](const std::string& label, const IntMat& m) {
    bool integral = isIntegral(expNilpotent(m));
    out.entries.push_back({label, integral});
    if (!integral) {
      out.all_integral = false;
      out.warnings.push_back(label + " is not integral; Gamma(sigma) ~ sigma cap Lambda is heuristic");
    }
  };
  for (size_t j = 0; j < ng.mats.size(); ++j) record("exp(N_" + std::to_string(j + 1) + ")", ng.mats[j]);
  for (size_t i = 0; i < ng.mats.size(); ++i)
    for (size_t j = i + 1; j < ng.mats.size(); ++j)
      record("exp(N_" + std::to_string(i + 1) + "+N_" + std::to_string(j + 1) + ")",
             IntMat(ng.mats[i] + ng.mats[j]));
  return out;
}

MonodromyCone monodromyCone(const NilpotentGenerators& ng) {
  validateGenerators(ng).require();
  MonodromyCone mc;
  mc.size = ng.size;
  std::vector<IntVec> prim;
  for (size_t j = 0; j < ng.mats.size(); ++j) {
    IntVec flat = flattenRowMajor(ng.mats[j]);
    if (content(flat) == 0)
      throw Error(ErrorKind::ZeroGenerator, "generator " + std::to_string(j) + " is zero");
    mc.flattenings.push_back(flat);
    prim.push_back(primitive(flat));
  }
  IntMat flatMat(ng.size * ng.size, static_cast<Index>(mc.flattenings.size()));
  for (Index j = 0; j < flatMat.cols(); ++j) flatMat.col(j) = mc.flattenings[static_cast<size_t>(j)];
  mc.flattened_cone = Cone::fromGenerators(ng.size * ng.size, prim);
  mc.span_lattice = satSpanBasis(flatMat);
  IntMat h = hnf(flatMat);
  mc.gen_lattice = h.leftCols(mc.span_lattice.cols());
  return mc;
}

MonoidChart chart(const MonodromyCone& mc) {
  const Index r = mc.span_lattice.cols();
  std::vector<IntVec> gensR;
  for (const IntVec& g : mc.flattened_cone.generators) {
    auto coords = solveIntegral(mc.span_lattice, g);
    if (!coords) throw Error(ErrorKind::InvariantError, "cone generator escapes Lambda");
    gensR.push_back(*coords);
  }
  Cone coneR = Cone::fromGenerators(r, gensR);
  if (!isPointed(coneR))
    throw Error(ErrorKind::NotPointed, "the monodromy cone is not pointed within Lambda");

  MonoidChart out;
  out.torus_rank = r;
  Cone dual = dualCone(coneR);
  out.dual_hilbert_basis = hilbertBasis(dual);
  const Index h = static_cast<Index>(out.dual_hilbert_basis.elements.size());
  IntMat exponent(r, h);
  for (Index j = 0; j < h; ++j) exponent.col(j) = out.dual_hilbert_basis.elements[static_cast<size_t>(j)];
  out.relation_lattice = kernelBasis(exponent);

  std::ostringstream os;
  os << "boundary chart\n";
  os << "torus T_sigma = (C^*)^" << r << "\n";
  os << "D_sigma = Hom(dual monoid, C): " << h << " monoid generator(s), "
     << out.relation_lattice.cols() << " binomial relation(s)\n";
  for (Index j = 0; j < h; ++j)
    os << "  u_" << (j + 1) << " = " << toString(out.dual_hilbert_basis.elements[static_cast<size_t>(j)])
       << "\n";
  for (Index c = 0; c < out.relation_lattice.cols(); ++c)
    os << "  relation exponent " << toString(IntVec(out.relation_lattice.col(c))) << "\n";
  out.rendering = os.str();
  return out;
}

MTStackReport mtStackyFan(const NilpotentGenerators& ng, const MTFanChoice& fanChoice) {
  MonodromyCone mc = monodromyCone(ng);
  const Index r = mc.span_lattice.cols();
  const Index g = static_cast<Index>(mc.flattenings.size());

  MTStackReport report;
  StackyFan& sf = report.stacky_fan;
  sf.lattice_rank = g;
  sf.fan.ambient_rank = g;
  for (Index i = 0; i < g; ++i) {
    IntVec e = IntVec::Zero(g);
    e(i) = 1;
    sf.fan.rays.push_back(std::move(e));
  }
  if (fanChoice.face_fan) {
    std::vector<int> all;
    for (Index i = 0; i < g; ++i) all.push_back(static_cast<int>(i));
    sf.fan.max_cones.push_back(std::move(all));
  } else {
    IntMat sigmaIneq = inequalities(mc.flattened_cone);
    for (size_t fi = 0; fi < fanChoice.faces.size(); ++fi) {
      std::vector<IntVec> faceGens;
      for (int idx : fanChoice.faces[fi]) {
        if (idx < 0 || idx >= g)
          throw Error(ErrorKind::InvariantError, "face " + std::to_string(fi) + " references a missing generator");
        faceGens.push_back(mc.flattenings[static_cast<size_t>(idx)]);
      }
      Cone face = Cone::fromGenerators(mc.size * mc.size, faceGens);
      // Minimal face of sigma containing the listed generators must agree
      // with their cone.
      std::vector<IntVec> active;
      for (Index row = 0; row < sigmaIneq.rows(); ++row) {
        bool vanishes = true;
        for (const IntVec& v : face.generators)
          if (sigmaIneq.row(row).dot(v) != 0) {
            vanishes = false;
            break;
          }
        if (vanishes) active.push_back(sigmaIneq.row(row).transpose());
      }
      std::vector<IntVec> minimalGens;
      for (const IntVec& v : mc.flattened_cone.generators) {
        bool onFace = true;
        for (const IntVec& u : active)
          if (u.dot(v) != 0) {
            onFace = false;
            break;
          }
        if (onFace) minimalGens.push_back(v);
      }
      Cone minimalFace = Cone::fromGenerators(mc.size * mc.size, minimalGens);
      if (!(face == minimalFace))
        throw Error(ErrorKind::NotAFace,
                    "face " + std::to_string(fi) + " does not span a face of sigma");
      std::vector<int> sorted = fanChoice.faces[fi];
      std::sort(sorted.begin(), sorted.end());
      sf.fan.max_cones.push_back(std::move(sorted));
    }
  }
  sf.target = FgTarget::lattice(r);
  sf.beta = IntMat(r, g);
  for (Index j = 0; j < g; ++j) {
    auto coords = solveIntegral(mc.span_lattice, mc.flattenings[static_cast<size_t>(j)]);
    sf.beta.col(j) = *coords;
  }
  validate(sf).require();

  FgAbGroup coker = cokernel(sf.beta);
  report.is_rigid = coker.trivial();
  report.image_index_factors = coker.invariant_factors;
  report.multiplicities = rayMultiplicities(sf);
  report.factors = productDecomposition(sf);
  if (!report.is_rigid)
    report.warnings.push_back(
        "e is not onto a saturated sublattice: the triple is a gerbe over its rigidification "
        "rather than rigid (coker invariant factors " +
        [&] {
          std::string s = "(";
          for (size_t i = 0; i < coker.invariant_factors.size(); ++i) {
            if (i) s += ", ";
            s += coker.invariant_factors[i].str();
          }
          return s + ")";
        }() +
        ")");

  std::ostringstream os;
  os << "Mumford-Tate stacky triple\n";
  os << "generators: " << g << ", Lambda rank: " << r << "\n";
  os << "e: Z^" << g << " -> Lambda given by " << toString(sf.beta) << "\n";
  os << "rigid: " << (report.is_rigid ? "yes" : "no") << "\n";
  os << "multiplicities a = (";
  for (size_t i = 0; i < report.multiplicities.a.size(); ++i) {
    if (i) os << ", ";
    os << report.multiplicities.a[i];
  }
  os << ")\n";
  os << "product factors: " << report.factors.size() << "\n";
  for (const std::string& w : report.warnings) os << "warning: " << w << "\n";
  report.rendering = os.str();
  return report;
}

std::vector<StackyFan> mtProductSplit(const MTStackReport& report) {
  return productDecomposition(report.stacky_fan);
}

}  // namespace tstack
