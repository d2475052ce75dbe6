// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "support.hpp"
#include "tstack/hodgecharts.hpp"
#include "tstack/io.hpp"
#include "tstack/orbicoh.hpp"
#include "tstack/structure.hpp"

using namespace tstack;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool pass) {
  std::cout << (pass ? "PASS" : "FAIL") << "  C" << number << ": " << what << "\n";
  if (!pass) ++failures;
}

Json loadDoc(const std::string& name) {
  std::ifstream in(std::filesystem::path(TSTACK_DATA_DIR) / name);
  return Json::parse(in);
}

// --------------------------------------------------------------------------
// C1: weighted projective gcd criteria, exact, all weights <= 4, length <= 4.

bool weightedProjectiveCriteria() {
  std::vector<std::vector<Int>> stack{{}};
  for (size_t len = 2; len <= 4; ++len) {
    std::vector<long long> w(len, 1);
    for (;;) {
      std::vector<Int> weights(w.begin(), w.end());
      StackyFan sf = tsupport::weightedProjective(weights);

      Int g = 0;
      for (const Int& wi : weights) g = gcdInt(g, wi);
      bool orbifoldExpected = g == 1;
      if (isOrbifold(sf) != orbifoldExpected) return false;

      bool canonicalExpected = true;
      for (size_t skip = 0; skip < weights.size(); ++skip) {
        Int dg = 0;
        for (size_t i = 0; i < weights.size(); ++i)
          if (i != skip) dg = gcdInt(dg, weights[i]);
        if (dg != 1) canonicalExpected = false;
      }
      bool canonicalGot = canonicalize(sf) == sf;
      if (canonicalGot != canonicalExpected) return false;

      size_t pos = 0;
      while (pos < len && ++w[pos] > 4) w[pos++] = 1;
      if (pos == len) break;
    }
  }
  return true;
}

// --------------------------------------------------------------------------
// C2: the B mu_3 document.

bool bmu3Criterion() {
  InputDocument input = parseInput(loadDoc("bmu3.json"));
  if (structureGroup(input.esf).render() != "mu_3") return false;
  DMTorusData dm = dmTorus(input.esf.base);
  if (dm.torus_rank != 0) return false;
  if (!(dm.finite_group == FgAbGroup{0, {Int(3)}})) return false;
  StackyFan rig = rigidify(input.esf.base);
  return rig.lattice_rank == 0 && rig.fan.rays.empty() && rig.target.freeRank() == 0;
}

// --------------------------------------------------------------------------
// C3: uniqueness of the multiplicities under basis changes.

bool multiplicityUniqueness() {
  for (int sample = 0; sample < 50; ++sample) {
    StackyFan sf = tsupport::randomStackyFan(3);
    std::vector<Int> base = rayMultiplicities(sf).a;
    for (int change = 0; change < 10; ++change) {
      IntMat v = tsupport::randomUnimodular(sf.lattice_rank);
      StackyFan moved = tsupport::transportL(sf, v);
      if (!validate(moved).ok()) continue;
      if (rayMultiplicities(moved).a != base) return false;
    }
  }
  return true;
}

// --------------------------------------------------------------------------
// C4: d = gcd(b) against the independent minor-gcd oracle.

bool gerbeGcdCriterion() {
  std::vector<StackyFan> corpus = {tsupport::rankOneFan(2, -2), tsupport::rankOneFan(2, -4),
                                   tsupport::rankOneFan(4, -6), tsupport::bmu3()};
  StackyFan torsion1;  // N = Z + Z/4, image (2, 2 mod 4)
  torsion1.lattice_rank = 1;
  torsion1.fan = Fan{1, {tsupport::vec({1})}, {{0}}};
  torsion1.target = FgTarget::withTorsion(1, {Int(4)});
  torsion1.beta = tsupport::mat(2, 1, {2, 2});
  corpus.push_back(torsion1);
  StackyFan torsion2;  // N = Z/2 + Z/6, no rays
  torsion2.lattice_rank = 0;
  torsion2.fan = Fan{0, {}, {}};
  torsion2.target = FgTarget::withTorsion(0, {Int(2), Int(6)});
  torsion2.beta = IntMat(2, 0);
  corpus.push_back(torsion2);

  for (const StackyFan& sf : corpus) {
    DecompositionReport rep = decompositionReport(sf);
    IntMat lifted(sf.beta.rows(), sf.beta.cols() + sf.target.presentation().cols());
    lifted.leftCols(sf.beta.cols()) = sf.beta;
    lifted.rightCols(sf.target.presentation().cols()) = sf.target.presentation();
    Int expected = 0;
    for (const Int& f : tsupport::invariantFactorsViaMinors(lifted))
      if (f > 1) expected = gcdInt(expected, f);
    if (rep.gerbe.d != expected) return false;
  }
  return true;
}

// --------------------------------------------------------------------------
// C5: Eq.-ring of P^n against an independent truncated elimination oracle.

std::map<long long, Index> oracleProjDims(Index n, Index radius, long long maxDegree) {
  // Rays of the image fan and the maximal cones (all n-subsets).
  std::vector<IntVec> rays;
  for (Index i = 0; i < n; ++i) {
    IntVec e = IntVec::Zero(n);
    e(i) = 1;
    rays.push_back(std::move(e));
  }
  rays.push_back(IntVec::Constant(n, -1));
  std::vector<std::vector<size_t>> cones;
  for (size_t skip = 0; skip <= static_cast<size_t>(n); ++skip) {
    std::vector<size_t> cone;
    for (size_t i = 0; i <= static_cast<size_t>(n); ++i)
      if (i != skip) cone.push_back(i);
    cones.push_back(std::move(cone));
  }

  std::vector<IntVec> monomials;
  std::vector<std::vector<bool>> inCone;  // per monomial, per cone
  std::vector<long long> coords(static_cast<size_t>(n), -radius);
  for (;;) {
    IntVec c(n);
    for (Index i = 0; i < n; ++i) c(i) = coords[static_cast<size_t>(i)];
    std::vector<bool> membership;
    bool anywhere = false;
    for (const auto& cone : cones) {
      std::vector<IntVec> gens;
      for (size_t idx : cone) gens.push_back(rays[idx]);
      bool inside = tsupport::nonnegCombinationFeasible(gens, c);
      membership.push_back(inside);
      anywhere = anywhere || inside;
    }
    if (anywhere) {
      monomials.push_back(c);
      inCone.push_back(std::move(membership));
    }
    size_t pos = 0;
    while (pos < coords.size() && ++coords[pos] > radius) coords[pos++] = -radius;
    if (pos == coords.size()) break;
  }

  // Degrees by Cramer solves in the first containing cone.
  auto degreeOf = [&](size_t mi) -> long long {
    for (size_t ci = 0; ci < cones.size(); ++ci) {
      if (!inCone[mi][ci]) continue;
      IntMat g(n, n);
      for (Index j = 0; j < n; ++j) g.col(j) = rays[cones[ci][static_cast<size_t>(j)]];
      Int det = tsupport::laplaceDet(g);
      Rat sum = 0;
      bool ok = true;
      for (Index j = 0; j < n; ++j) {
        IntMat replaced = g;
        replaced.col(j) = monomials[mi];
        Rat q = Rat(tsupport::laplaceDet(replaced)) / Rat(det);
        if (q < 0) ok = false;
        sum += q;
      }
      if (!ok) continue;
      Rat deg = 2 * sum;
      return boost::multiprecision::numerator(deg).convert_to<long long>() /
             boost::multiprecision::denominator(deg).convert_to<long long>();
    }
    return -1;
  };
  std::map<std::string, size_t> index;
  auto keyOf = [](const IntVec& v) { return toString(v); };
  for (size_t i = 0; i < monomials.size(); ++i) index[keyOf(monomials[i])] = i;
  std::vector<long long> degree(monomials.size());
  for (size_t i = 0; i < monomials.size(); ++i) degree[i] = degreeOf(i);

  // Relations: theta_k over the rays.
  std::vector<std::vector<std::pair<size_t, Rat>>> idealByDegreeBuckets;
  std::map<long long, std::vector<std::vector<std::pair<size_t, Rat>>>> ideal;
  for (size_t mi = 0; mi < monomials.size(); ++mi) {
    for (Index k = 0; k < n; ++k) {
      std::vector<std::pair<size_t, Rat>> element;
      bool keep = true;
      for (size_t ri = 0; ri < rays.size(); ++ri) {
        Rat coeff = Rat(rays[ri](k));
        if (coeff == 0) continue;
        bool common = false;
        for (size_t ci = 0; ci < cones.size() && !common; ++ci) {
          if (!inCone[mi][ci]) continue;
          bool rayInCone = false;
          for (size_t idx : cones[ci]) rayInCone = rayInCone || idx == ri;
          common = rayInCone;
        }
        if (!common) continue;
        IntVec prod = monomials[mi] + rays[ri];
        auto it = index.find(keyOf(prod));
        if (it == index.end()) {
          keep = false;
          break;
        }
        element.emplace_back(it->second, coeff);
      }
      if (!keep || element.empty()) continue;
      ideal[degree[mi] + 2].push_back(std::move(element));
    }
  }

  std::map<long long, std::vector<size_t>> byDegree;
  for (size_t i = 0; i < monomials.size(); ++i) byDegree[degree[i]].push_back(i);
  std::map<long long, Index> dims;
  for (const auto& [deg, mons] : byDegree) {
    if (deg > maxDegree) continue;
    std::map<size_t, Index> local;
    for (size_t m : mons) local.emplace(m, static_cast<Index>(local.size()));
    std::vector<std::map<Index, Rat>> rows;
    auto it = ideal.find(deg);
    if (it != ideal.end())
      for (const auto& element : it->second) {
        std::map<Index, Rat> row;
        for (const auto& [mono, coeff] : element) {
          row[local.at(mono)] += coeff;
          if (row[local.at(mono)] == 0) row.erase(local.at(mono));
        }
        if (!row.empty()) rows.push_back(std::move(row));
      }
    // Sparse elimination pivoting on the least monomial index.
    Index rank = 0;
    while (!rows.empty()) {
      size_t best = 0;
      for (size_t r = 1; r < rows.size(); ++r)
        if (rows[r].begin()->first < rows[best].begin()->first) best = r;
      std::map<Index, Rat> pivot = rows[best];
      rows.erase(rows.begin() + static_cast<long>(best));
      ++rank;
      Index pcol = pivot.begin()->first;
      Rat pval = pivot.begin()->second;
      std::vector<std::map<Index, Rat>> next;
      for (auto& row : rows) {
        auto hit = row.find(pcol);
        if (hit != row.end()) {
          Rat factor = hit->second / pval;
          for (const auto& [col, val] : pivot) {
            row[col] -= factor * val;
            if (row[col] == 0) row.erase(col);
          }
        }
        if (!row.empty()) next.push_back(std::move(row));
      }
      rows = std::move(next);
    }
    Index dim = static_cast<Index>(mons.size()) - rank;
    if (dim > 0) dims[deg] = dim;
  }
  return dims;
}

bool projRingCriterion() {
  for (Index n = 1; n <= 3; ++n) {
    auto started = std::chrono::steady_clock::now();
    ExtendedStackyFan esf{tsupport::projSpace(n), {}};
    GradedDims dims = gradedDimensions(esf, Rat(2 * n));
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    if (!dims.stabilized) return false;
    if (dims.total() != n + 1) return false;
    for (Index k = 0; k <= n; ++k)
      if (dims.dims.at(Rat(2 * k)) != 1) return false;
    if (n == 3 && elapsed.count() >= 5000) return false;

    std::map<long long, Index> oracle = oracleProjDims(n, dims.truncation_radius, 2 * n);
    for (Index k = 0; k <= n; ++k)
      if (oracle[2 * k] != 1) return false;
    std::map<long long, Index> got;
    for (const auto& [deg, dim] : dims.dims)
      got[boost::multiprecision::numerator(deg).convert_to<long long>()] = dim;
    if (got != oracle) return false;
  }
  return true;
}

// --------------------------------------------------------------------------
// C6: twisted sectors of P(1,2) and P(1,1,2).

bool twistedSectorCriterion() {
  ExtendedStackyFan p12{tsupport::rankOneFan(1, -2), {}};
  GradedDims d12 = gradedDimensions(p12, Rat(8));
  if (d12.total() != 3) return false;
  auto boxes12 = boxElements(p12);
  size_t nonzero = 0;
  for (const BoxElement& b : boxes12)
    if (content(b.c) != 0) {
      ++nonzero;
      if (!vecEq(b.c, tsupport::vec({-1}))) return false;
      if (b.age != Rat(1, 2)) return false;
      if (b.cone != std::vector<int>{1}) return false;  // the weight-2 ray
    }
  if (nonzero != 1) return false;

  ExtendedStackyFan p112{tsupport::p112(), {}};
  GradedDims d112 = gradedDimensions(p112, Rat(8));
  if (d112.total() != 4) return false;
  auto boxes112 = boxElements(p112);
  nonzero = 0;
  for (const BoxElement& b : boxes112)
    if (content(b.c) != 0) {
      ++nonzero;
      if (!vecEq(b.c, tsupport::vec({0, -1}))) return false;
      if (b.age != Rat(1)) return false;
    }
  return nonzero == 1;
}

// --------------------------------------------------------------------------
// C7: boundary charts of Eqs. (6)-(7).

bool chartCriterion() {
  InputDocument elliptic = parseInput(loadDoc("elliptic.json"));
  MonoidChart ch = chart(monodromyCone(elliptic.generators));
  if (ch.dual_hilbert_basis.elements.size() != 1) return false;
  if (ch.relation_lattice.cols() != 0) return false;
  if (ch.torus_rank != 1) return false;

  InputDocument pair = parseInput(loadDoc("e12e13.json"));
  MonoidChart ch2 = chart(monodromyCone(pair.generators));
  return ch2.dual_hilbert_basis.elements.size() == 2 && ch2.relation_lattice.cols() == 0 &&
         ch2.torus_rank == 2;
}

// --------------------------------------------------------------------------
// C8: foundation properties.

bool foundationCriterion() {
  for (int trial = 0; trial < 200; ++trial) {
    Index rows = tsupport::randomInt(1, 5);
    Index cols = tsupport::randomInt(1, 5);
    IntMat a = tsupport::randomMatrix(rows, cols, 5);
    SmithForm f = snf(a);
    if (!matEq<Int>(IntMat(f.U * a * f.V), f.S)) return false;
    if (absInt(tsupport::laplaceDet(f.U)) != 1) return false;
    if (absInt(tsupport::laplaceDet(f.V)) != 1) return false;
    auto diag = f.diagonal();
    for (size_t i = 0; i + 1 < diag.size(); ++i)
      if (diag[i + 1] % diag[i] != 0) return false;
  }

  for (int trial = 0; trial < 6; ++trial) {
    Index rank = tsupport::randomInt(2, 3);
    Cone c;
    for (;;) {
      std::vector<IntVec> gens;
      for (Index i = 0; i < rank + 1; ++i) {
        IntVec g(rank);
        for (Index j = 0; j < rank; ++j) g(j) = tsupport::randomInt(-3, 3);
        if (content(g) != 0) gens.push_back(std::move(g));
      }
      if (gens.size() < static_cast<size_t>(rank)) continue;
      c = Cone::fromGenerators(rank, gens);
      if (c.dim() == rank && isPointed(c)) break;
    }
    HilbertBasis hb = hilbertBasis(c);
    IntMat ineq = inequalities(c);
    std::vector<long long> coords(static_cast<size_t>(rank), -6);
    for (;;) {
      IntVec p(rank);
      for (Index i = 0; i < rank; ++i) p(i) = coords[static_cast<size_t>(i)];
      bool inside = true;
      for (Index r = 0; r < ineq.rows(); ++r)
        if (ineq.row(r).dot(p) < 0) inside = false;
      if (inside && !tsupport::monoidMember(p, hb.elements, ineq)) return false;
      size_t pos = 0;
      while (pos < coords.size() && ++coords[pos] > 6) coords[pos++] = -6;
      if (pos == coords.size()) break;
    }
    for (size_t skip = 0; skip < hb.elements.size(); ++skip) {
      std::vector<IntVec> reduced;
      for (size_t i = 0; i < hb.elements.size(); ++i)
        if (i != skip) reduced.push_back(hb.elements[i]);
      if (tsupport::monoidMember(hb.elements[skip], reduced, ineq)) return false;
    }
  }

  for (int trial = 0; trial < 100; ++trial) {
    Index rank = tsupport::randomInt(2, 4);
    Cone c;
    for (;;) {
      std::vector<IntVec> gens;
      size_t want = static_cast<size_t>(tsupport::randomInt(rank, rank + 2));
      for (size_t i = 0; i < want; ++i) {
        IntVec g(rank);
        for (Index j = 0; j < rank; ++j) g(j) = tsupport::randomInt(-3, 3);
        if (content(g) != 0) gens.push_back(std::move(g));
      }
      if (gens.size() < static_cast<size_t>(rank)) continue;
      c = Cone::fromGenerators(rank, gens);
      if (c.dim() == rank && isPointed(c)) break;
    }
    if (!(dualCone(dualCone(c)) == c)) return false;
  }
  return true;
}

// --------------------------------------------------------------------------
// C9: product decomposition of P^1 x P^1.

bool productCriterion() {
  InputDocument input = parseInput(loadDoc("p1xp1.json"));
  std::vector<StackyFan> factors = productDecomposition(input.esf.base);
  if (factors.size() != 2) return false;
  for (const StackyFan& f : factors)
    if (!(f == tsupport::rankOneFan(1, -1))) return false;
  return canonicalOrdering(recombine(factors)) == canonicalOrdering(input.esf.base);
}

// --------------------------------------------------------------------------
// C10: CLI byte-determinism and exit codes.

int runCli(const std::string& args, const std::filesystem::path& out) {
  std::string cmd = std::string(TSTACK_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool cliDeterminismCriterion() {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "tstack_acceptance";
  fs::create_directories(tmp);
  fs::path data = fs::path(TSTACK_DATA_DIR);

  std::vector<std::pair<std::string, std::string>> runs = {
      {"validate", "p112.json"}, {"validate", "bmu3.json"},    {"group", "p112.json"},
      {"group", "bmu3.json"},    {"torus", "p22.json"},        {"decompose", "p22.json"},
      {"decompose", "p24.json"}, {"decompose", "p1xp1.json"},  {"decompose", "p112.json"},
      {"cohomology", "p2.json"}, {"cohomology", "p12.json"},   {"cohomology", "p112_extended.json"},
      {"chart", "elliptic.json"}, {"mtstack", "e12e13.json"},
  };
  for (size_t i = 0; i < runs.size(); ++i) {
    const auto& [verb, doc] = runs[i];
    std::string extra;
    if (verb == "cohomology") extra = " --max-degree 8";
    fs::path out1 = tmp / ("run" + std::to_string(i) + "a.json");
    fs::path out2 = tmp / ("run" + std::to_string(i) + "b.json");
    std::string args = verb + " -i " + (data / doc).string() + extra;
    int code1 = runCli(args + " -o " + out1.string(), tmp / "stdout1");
    int code2 = runCli(args + " -o " + out2.string(), tmp / "stdout2");
    if (code1 != 0 || code2 != 0) return false;
    if (slurp(out1) != slurp(out2) || slurp(out1).empty()) return false;
  }

  // Exit-code contract: 1 for validation failures, 2 for schema errors.
  fs::path scratch = tmp / "scratch.json";
  if (runCli("validate -i " + (data / "invalid_zero_beta.json").string(), scratch) != 1) return false;
  if (runCli("decompose -i " + (data / "invalid_zero_beta.json").string(), scratch) != 1) return false;
  if (runCli("group -i " + (data / "invalid_missing_beta.json").string(), scratch) != 2) return false;
  return true;
}

}  // namespace

int main() {
  report(1, "weighted projective gcd criteria (orbifold and canonical)", weightedProjectiveCriteria());
  report(2, "B mu_3 document: structure group, DM torus, rigidification", bmu3Criterion());
  report(3, "multiplicities invariant under 10x50 random basis changes", multiplicityUniqueness());
  report(4, "gerbe d = gcd(b) against the minor-gcd oracle", gerbeGcdCriterion());
  report(5, "P^n ring dims (1,...,1) with stabilization vs oracle, n <= 3", projRingCriterion());
  report(6, "twisted sectors of P(1,2) and P(1,1,2)", twistedSectorCriterion());
  report(7, "boundary charts: elliptic N and the E12/E13 pair", chartCriterion());
  report(8, "foundations: SNF identities, Hilbert bases, double duality", foundationCriterion());
  report(9, "P^1 x P^1 splits and recombines", productCriterion());
  report(10, "CLI byte-determinism and exit codes", cliDeterminismCriterion());
  return failures;
}
