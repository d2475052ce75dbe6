#pragma once

// Shared test support: seeded RNG, input builders, and the independent
// oracles the suites check the library against. Everything here must stay
// independent of the library code paths it is used to verify.

#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "tstack/polyhedral.hpp"
#include "tstack/stackyfan.hpp"

namespace tsupport {

using namespace tstack;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine = [] {
    const char* seed = std::getenv("TSTACK_SEED");
    return std::mt19937_64(seed ? std::strtoull(seed, nullptr, 10) : 20240917ull);
  }();
  return engine;
}

inline long long randomInt(long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline IntVec vec(std::initializer_list<long long> xs) {
  IntVec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long long x : xs) v(i++) = x;
  return v;
}

inline IntMat mat(Index rows, Index cols, std::initializer_list<long long> xs) {
  IntMat m(rows, cols);
  Index k = 0;
  for (long long x : xs) {
    m(k / cols, k % cols) = x;
    ++k;
  }
  return m;
}

inline IntMat randomMatrix(Index rows, Index cols, long long bound) {
  IntMat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = randomInt(-bound, bound);
  return m;
}

/// Product of random elementary operations; determinant is +-1 by build.
inline IntMat randomUnimodular(Index n, int steps = 8) {
  IntMat u = IntMat::Identity(n, n);
  for (int s = 0; s < steps; ++s) {
    Index i = randomInt(0, n - 1), j = randomInt(0, n - 1);
    switch (randomInt(0, 2)) {
      case 0:
        if (i != j) u.row(i) += Int(randomInt(-2, 2)) * u.row(j);
        break;
      case 1:
        if (i != j) u.row(i).swap(u.row(j));
        break;
      default:
        u.row(i) *= Int(-1);
    }
  }
  return u;
}

// ---------------------------------------------------------------------------
// Builders

/// Canonical P^1-like rank-one datum: L = Z^2, rays e1, e2, beta = [b0, b1].
inline StackyFan rankOneFan(long long b0, long long b1) {
  StackyFan sf;
  sf.lattice_rank = 2;
  sf.fan = Fan{2, {vec({1, 0}), vec({0, 1})}, {{0}, {1}}};
  sf.target = FgTarget::lattice(1);
  sf.beta = mat(1, 2, {b0, b1});
  return sf;
}

/// P(1,1,2) with the rays (1,0),(0,1),(-1,-2).
inline StackyFan p112() {
  return fromBcsForm(FgTarget::lattice(2), {vec({1, 0}), vec({0, 1}), vec({-1, -2})},
                     {{0, 1}, {1, 2}, {0, 2}});
}

inline StackyFan projSpace(Index n) {
  std::vector<IntVec> b;
  for (Index i = 0; i < n; ++i) {
    IntVec e = IntVec::Zero(n);
    e(i) = 1;
    b.push_back(std::move(e));
  }
  b.push_back(IntVec::Constant(n, -1));
  std::vector<std::vector<int>> cones;
  for (Index skip = 0; skip <= n; ++skip) {
    std::vector<int> cone;
    for (Index i = 0; i <= n; ++i)
      if (i != skip) cone.push_back(static_cast<int>(i));
    cones.push_back(std::move(cone));
  }
  return fromBcsForm(FgTarget::lattice(n), b, cones);
}

inline StackyFan bmu3() {
  StackyFan sf;
  sf.lattice_rank = 0;
  sf.fan = Fan{0, {}, {}};
  sf.target = FgTarget::withTorsion(0, {Int(3)});
  sf.beta = IntMat(1, 0);
  return sf;
}

/// The weighted projective stack datum: fan of P^n lifted to one coordinate
/// per ray, b_i = gcd(w) times the image of e_i in Z^{n+1} / Z * (w / gcd(w)).
inline StackyFan weightedProjective(const std::vector<Int>& w) {
  const Index m = static_cast<Index>(w.size());
  Int g = 0;
  for (const Int& wi : w) g = gcdInt(g, wi);
  IntMat wcol(m, 1);
  for (Index i = 0; i < m; ++i) wcol(i, 0) = w[static_cast<size_t>(i)] / g;
  SmithForm f = snf(wcol);
  IntMat projection = f.U.bottomRows(m - 1);  // kills the primitive weight vector
  std::vector<IntVec> b;
  for (Index i = 0; i < m; ++i) b.push_back(IntVec(g * projection.col(i)));
  std::vector<std::vector<int>> cones;
  for (Index skip = 0; skip < m; ++skip) {
    std::vector<int> cone;
    for (Index i = 0; i < m; ++i)
      if (i != skip) cone.push_back(static_cast<int>(i));
    cones.push_back(std::move(cone));
  }
  return fromBcsForm(FgTarget::lattice(m - 1), b, cones);
}

/// Random valid stacky fan with single-ray cones; lattice rank <= 3.
inline StackyFan randomStackyFan(Index maxRank = 3, long long bound = 4) {
  for (;;) {
    Index n = randomInt(1, maxRank);
    Index t = randomInt(1, n);
    IntMat beta = randomMatrix(t, n, bound);
    if (rationalRank(beta) != t) continue;
    bool zeroCol = false;
    for (Index j = 0; j < n; ++j)
      if (content(beta.col(j)) == 0) zeroCol = true;
    if (zeroCol) continue;
    StackyFan sf;
    sf.lattice_rank = n;
    sf.fan.ambient_rank = n;
    for (Index i = 0; i < n; ++i) {
      IntVec e = IntVec::Zero(n);
      e(i) = 1;
      sf.fan.rays.push_back(std::move(e));
      sf.fan.max_cones.push_back({static_cast<int>(i)});
    }
    sf.target = FgTarget::lattice(t);
    sf.beta = std::move(beta);
    return sf;
  }
}

/// Change of basis on L: rays through V^{-1}, beta through V. The stack is
/// unchanged; ray images are literally equal.
inline StackyFan transportL(const StackyFan& sf, const IntMat& v) {
  StackyFan out = sf;
  out.beta = sf.beta * v;
  IntMat vinv = inverseUnimodular(v);
  for (size_t i = 0; i < sf.fan.rays.size(); ++i) out.fan.rays[i] = vinv * sf.fan.rays[i];
  return out;
}

// ---------------------------------------------------------------------------
// Oracles (independent implementations)

/// Determinant by Laplace expansion; independent of the library's Bareiss.
inline Int laplaceDet(const IntMat& m) {
  const Index n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int det = 0;
  for (Index j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMat minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r) {
      Index cc = 0;
      for (Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    Int term = m(0, j) * laplaceDet(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

/// Invariant factors through gcds of k x k minors: d_1...d_k = gcd(minors_k).
inline std::vector<Int> invariantFactorsViaMinors(const IntMat& a) {
  const Index m = a.rows(), n = a.cols();
  std::vector<Int> gcds;  // gcds[k-1] = gcd of all k x k minors
  for (Index k = 1; k <= std::min(m, n); ++k) {
    Int g = 0;
    std::vector<Index> rows(k), cols(k);
    std::function<void(Index, Index)> overRows = [&](Index start, Index depth) {
      if (depth == k) {
        std::function<void(Index, Index)> overCols = [&](Index cstart, Index cdepth) {
          if (cdepth == k) {
            IntMat minor(k, k);
            for (Index i = 0; i < k; ++i)
              for (Index j = 0; j < k; ++j) minor(i, j) = a(rows[i], cols[j]);
            g = gcdInt(g, laplaceDet(minor));
            return;
          }
          for (Index c = cstart; c < n; ++c) {
            cols[cdepth] = c;
            overCols(c + 1, cdepth + 1);
          }
        };
        overCols(0, 0);
        return;
      }
      for (Index r = start; r < m; ++r) {
        rows[depth] = r;
        overRows(r + 1, depth + 1);
      }
    };
    overRows(0, 0);
    gcds.push_back(g);
  }
  std::vector<Int> factors;
  Int prev = 1;
  for (const Int& g : gcds) {
    if (g == 0) break;
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

/// Exact feasibility of  G lambda = v, lambda >= 0  by Fourier-Motzkin
/// elimination over the multipliers.
inline bool nonnegCombinationFeasible(const std::vector<IntVec>& gens, const IntVec& v) {
  const size_t k = gens.size();
  const Index n = v.size();
  // Inequality rows (c_0.., c_k | rhs) meaning sum c_i lambda_i >= rhs.
  std::vector<std::pair<RatVec, Rat>> ineqs;
  for (size_t i = 0; i < k; ++i) {
    RatVec row = RatVec::Zero(static_cast<Index>(k));
    row(static_cast<Index>(i)) = 1;
    ineqs.push_back({row, Rat(0)});
  }
  for (Index r = 0; r < n; ++r) {
    RatVec row(static_cast<Index>(k));
    for (size_t i = 0; i < k; ++i) row(static_cast<Index>(i)) = Rat(gens[i](r));
    ineqs.push_back({row, Rat(v(r))});
    RatVec neg = -row;
    ineqs.push_back({neg, Rat(-v(r))});
  }
  for (size_t var = 0; var < k; ++var) {
    std::vector<std::pair<RatVec, Rat>> lower, upper, rest;
    for (auto& [row, rhs] : ineqs) {
      Rat c = row(static_cast<Index>(var));
      if (c > 0)
        lower.push_back({row, rhs});
      else if (c < 0)
        upper.push_back({row, rhs});
      else
        rest.push_back({row, rhs});
    }
    std::vector<std::pair<RatVec, Rat>> next = rest;
    for (auto& [lr, lrhs] : lower)
      for (auto& [ur, urhs] : upper) {
        Rat lc = lr(static_cast<Index>(var));
        Rat uc = -ur(static_cast<Index>(var));
        RatVec combined = uc * lr + lc * ur;
        next.push_back({combined, uc * lrhs + lc * urhs});
      }
    ineqs = std::move(next);
  }
  for (auto& [row, rhs] : ineqs)
    if (rhs > 0) return false;  // 0 >= rhs fails
  return true;
}

/// Brute-force test that p is an N-combination of the basis inside the cone.
inline bool monoidMember(const IntVec& p, const std::vector<IntVec>& basis, const IntMat& coneIneq) {
  auto inCone = [&](const IntVec& x) {
    for (Index r = 0; r < coneIneq.rows(); ++r)
      if (coneIneq.row(r).dot(x) < 0) return false;
    return true;
  };
  if (!inCone(p)) return false;
  std::set<std::vector<std::string>> seen;
  auto key = [](const IntVec& x) {
    std::vector<std::string> k;
    for (Index i = 0; i < x.size(); ++i) k.push_back(x(i).str());
    return k;
  };
  std::function<bool(const IntVec&)> go = [&](const IntVec& x) -> bool {
    if (content(x) == 0) return true;
    if (!seen.insert(key(x)).second) return false;
    for (const IntVec& b : basis) {
      IntVec next = x - b;
      if (inCone(next) && go(next)) return true;
    }
    return false;
  };
  return go(p);
}

/// h-vector of a complete simplicial fan from its face counts; gives the
/// graded dimensions of the classical presentation for smooth fans.
inline std::vector<Int> hVector(const Fan& f) {
  std::set<std::vector<int>> faces;
  faces.insert({});
  for (const auto& cone : f.max_cones) {
    const size_t k = cone.size();
    for (size_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> face;
      for (size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) face.push_back(cone[i]);
      faces.insert(face);
    }
  }
  const Index n = f.ambient_rank;
  std::vector<Int> fcount(static_cast<size_t>(n) + 1, 0);  // fcount[i] = #faces of dim i
  for (const auto& face : faces) fcount[face.size()] += 1;
  auto binom = [](Index a, Index b) {
    if (b < 0 || b > a) return Int(0);
    Int r = 1;
    for (Index i = 0; i < b; ++i) r = r * Int(a - i) / Int(i + 1);
    return r;
  };
  std::vector<Int> h(static_cast<size_t>(n) + 1, 0);
  for (Index k = 0; k <= n; ++k) {
    Int sum = 0;
    for (Index i = 0; i <= k; ++i) {
      Int term = binom(n - i, k - i) * fcount[static_cast<size_t>(i)];
      sum += ((k - i) % 2 == 0) ? term : -term;
    }
    h[static_cast<size_t>(k)] = sum;
  }
  return h;
}

}  // namespace tsupport
