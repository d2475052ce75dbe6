#include "tstack/zlinalg.hpp"

#include <algorithm>
#include <sstream>

namespace tstack {

namespace {

// Forward elementary operations to U (rows) and V (cols) so U*A*V = S stays
// true throughout the reduction.
struct SnfWork {
  IntMat s, u, v;

  void swapRows(Index a, Index b) {
    if (a == b) return;
    s.row(a).swap(s.row(b));
    u.row(a).swap(u.row(b));
  }
  void swapCols(Index a, Index b) {
    if (a == b) return;
    s.col(a).swap(s.col(b));
    v.col(a).swap(v.col(b));
  }
  void addRow(Index dst, Index src, const Int& factor) {
    s.row(dst) += factor * s.row(src);
    u.row(dst) += factor * u.row(src);
  }
  void addCol(Index dst, Index src, const Int& factor) {
    s.col(dst) += factor * s.col(src);
    v.col(dst) += factor * v.col(src);
  }
  void negateRow(Index r) {
    s.row(r) *= Int(-1);
    u.row(r) *= Int(-1);
  }
};

// Minimal-absolute-value pivot in the trailing submatrix, to limit
// coefficient growth.
bool findPivot(const IntMat& s, Index t, Index& pi, Index& pj) {
  bool found = false;
  Int best = 0;
  for (Index i = t; i < s.rows(); ++i) {
    for (Index j = t; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      Int a = absInt(s(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  }
  return found;
}

}  // namespace

Index SmithForm::rank() const {
  Index r = 0;
  Index n = std::min(S.rows(), S.cols());
  for (Index i = 0; i < n; ++i)
    if (S(i, i) != 0) ++r;
  return r;
}

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> d;
  Index n = std::min(S.rows(), S.cols());
  for (Index i = 0; i < n; ++i)
    if (S(i, i) != 0) d.push_back(S(i, i));
  return d;
}

SmithForm snf(const IntMat& a) {
  const Index m = a.rows(), n = a.cols();
  SnfWork w{a, IntMat::Identity(m, m), IntMat::Identity(n, n)};

  for (Index t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      Index pi, pj;
      if (!findPivot(w.s, t, pi, pj)) goto done;
      w.swapRows(t, pi);
      w.swapCols(t, pj);

      bool clean = true;
      for (Index i = t + 1; i < m; ++i) {
        if (w.s(i, t) == 0) continue;
        Int q = roundDiv(w.s(i, t), w.s(t, t));
        if (q != 0) w.addRow(i, t, -q);
        if (w.s(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < n; ++j) {
        if (w.s(t, j) == 0) continue;
        Int q = roundDiv(w.s(t, j), w.s(t, t));
        if (q != 0) w.addCol(j, t, -q);
        if (w.s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the rest of the submatrix for the divisibility
      // chain; pull a bad entry into the working row and restart.
      bool divides = true;
      for (Index i = t + 1; i < m && divides; ++i)
        for (Index j = t + 1; j < n && divides; ++j)
          if (w.s(i, j) % w.s(t, t) != 0) {
            w.addRow(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
  }
done:
  for (Index t = 0; t < std::min(m, n); ++t)
    if (w.s(t, t) < 0) w.negateRow(t);
  return SmithForm{std::move(w.u), std::move(w.s), std::move(w.v)};
}

IntMat hnf(const IntMat& a) {
  IntMat h = a;
  const Index rows = h.rows(), cols = h.cols();
  Index pivotCol = 0;
  for (Index r = 0; r < rows && pivotCol < cols; ++r) {
    for (;;) {
      Index best = -1;
      for (Index j = pivotCol; j < cols; ++j) {
        if (h(r, j) == 0) continue;
        if (best < 0 || absInt(h(r, j)) < absInt(h(r, best))) best = j;
      }
      if (best < 0) break;
      if (best != pivotCol) h.col(best).swap(h.col(pivotCol));
      bool clean = true;
      for (Index j = pivotCol + 1; j < cols; ++j) {
        if (h(r, j) == 0) continue;
        Int q = roundDiv(h(r, j), h(r, pivotCol));
        if (q != 0) h.col(j) -= q * h.col(pivotCol);
        if (h(r, j) != 0) clean = false;
      }
      if (clean) {
        if (h(r, pivotCol) < 0) h.col(pivotCol) *= Int(-1);
        for (Index j = 0; j < pivotCol; ++j) {
          Int q = floorDiv(h(r, j), h(r, pivotCol));
          if (q != 0) h.col(j) -= q * h.col(pivotCol);
        }
        ++pivotCol;
        break;
      }
    }
  }
  return h;
}

IntMat kernelBasis(const IntMat& a) {
  SmithForm f = snf(a);
  Index r = f.rank();
  IntMat k = f.V.rightCols(a.cols() - r);
  return hnf(k);
}

std::optional<IntVec> solveIntegral(const IntMat& a, const IntVec& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::InvariantError, "solveIntegral: size mismatch");
  SmithForm f = snf(a);
  Index r = f.rank();
  IntVec c = f.U * b;
  IntVec y = IntVec::Zero(a.cols());
  for (Index i = 0; i < r; ++i) {
    if (c(i) % f.S(i, i) != 0) return std::nullopt;
    y(i) = c(i) / f.S(i, i);
  }
  for (Index i = r; i < c.size(); ++i)
    if (c(i) != 0) return std::nullopt;
  return IntVec(f.V * y);
}

Int determinant(IntMat m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvariantError, "determinant: not square");
  const Index n = m.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Index swap = -1;
      for (Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

Index rationalRank(const IntMat& a) {
  RatMat m = toRat(a);
  Index rank = 0;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = -1;
    for (Index i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(row));
    for (Index i = row + 1; i < m.rows(); ++i) {
      if (m(i, col) == 0) continue;
      Rat f = m(i, col) / m(row, col);
      m.row(i) -= f * m.row(row);
    }
    ++row;
    ++rank;
  }
  return rank;
}

IntMat inverseUnimodular(const IntMat& u) {
  const Index n = u.rows();
  if (u.cols() != n) throw Error(ErrorKind::InvariantError, "inverseUnimodular: not square");
  RatMat m = toRat(u);
  RatMat inv = RatMat::Identity(n, n);
  for (Index col = 0; col < n; ++col) {
    Index pivot = -1;
    for (Index i = col; i < n; ++i)
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw Error(ErrorKind::InvariantError, "inverseUnimodular: singular");
    m.row(pivot).swap(m.row(col));
    inv.row(pivot).swap(inv.row(col));
    Rat p = m(col, col);
    m.row(col) /= p;
    inv.row(col) /= p;
    for (Index i = 0; i < n; ++i) {
      if (i == col || m(i, col) == 0) continue;
      Rat f = m(i, col);
      m.row(i) -= f * m.row(col);
      inv.row(i) -= f * inv.row(col);
    }
  }
  IntMat out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (boost::multiprecision::denominator(inv(i, j)) != 1)
        throw Error(ErrorKind::InvariantError, "inverseUnimodular: matrix not unimodular");
      out(i, j) = boost::multiprecision::numerator(inv(i, j));
    }
  return out;
}

IntMat satSpanBasis(const IntMat& a) {
  SmithForm f = snf(a);
  IntMat uinv = inverseUnimodular(f.U);
  return uinv.leftCols(f.rank());
}

SatSpanSplit satSpanSplit(const IntMat& a) {
  SmithForm f = snf(a);
  IntMat uinv = inverseUnimodular(f.U);
  Index r = f.rank();
  return SatSpanSplit{uinv.leftCols(r), uinv.rightCols(a.rows() - r)};
}

std::string FgAbGroup::render() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank == 1) {
    os << "Z";
    first = false;
  } else if (free_rank > 1) {
    os << "Z^" << free_rank;
    first = false;
  }
  for (const Int& d : invariant_factors) {
    if (!first) os << " x ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

FgAbGroup cokernel(const IntMat& a) {
  SmithForm f = snf(a);
  FgAbGroup g;
  g.free_rank = a.rows() - f.rank();
  for (const Int& d : f.diagonal())
    if (d > 1) g.invariant_factors.push_back(d);
  return g;
}

std::string DiagonalizableGroup::render() const {
  if (torus_rank == 0 && finite_part.trivial()) return "1";
  std::ostringstream os;
  bool first = true;
  if (torus_rank == 1) {
    os << "C^*";
    first = false;
  } else if (torus_rank > 1) {
    os << "(C^*)^" << torus_rank;
    first = false;
  }
  for (const Int& d : finite_part.invariant_factors) {
    if (!first) os << " x ";
    os << "mu_" << d;
    first = false;
  }
  return os.str();
}

DiagonalizableGroup dualGroup(const FgAbGroup& a) {
  DiagonalizableGroup g;
  g.torus_rank = a.free_rank;
  g.finite_part.free_rank = 0;
  g.finite_part.invariant_factors = a.invariant_factors;
  return g;
}

CokernelMap::CokernelMap(const IntMat& a) {
  SmithForm f = snf(a);
  rank_ = f.rank();
  rows_ = a.rows();
  u_ = f.U;
  u_inv_ = inverseUnimodular(u_);
  diag_ = f.diagonal();
  group_.free_rank = rows_ - rank_;
  for (const Int& d : diag_)
    if (d > 1) group_.invariant_factors.push_back(d);
}

IntVec CokernelMap::reduce(const IntVec& v) const {
  if (v.size() != rows_) throw Error(ErrorKind::InvariantError, "CokernelMap::reduce: size mismatch");
  IntVec w = u_ * v;
  IntVec out(group_.free_rank + group_.torsionCount());
  Index k = 0;
  for (Index i = rank_; i < rows_; ++i) out(k++) = w(i);
  for (Index i = 0; i < rank_; ++i) {
    if (diag_[i] <= 1) continue;
    Int r = w(i) % diag_[i];
    if (r < 0) r += diag_[i];
    out(k++) = r;
  }
  return out;
}

IntVec CokernelMap::reduceModulo(const IntVec& v, const Int& b) const {
  IntVec red = reduce(v);
  Index free = group_.free_rank;
  for (Index i = 0; i < free; ++i) {
    if (b == 0) continue;
    Int r = red(i) % b;
    if (r < 0) r += b;
    red(i) = r;
  }
  for (Index i = 0; i < group_.torsionCount(); ++i) {
    Int mod = gcdInt(group_.invariant_factors[static_cast<size_t>(i)], b);
    if (mod == 0) continue;
    Int r = red(free + i) % mod;
    if (r < 0) r += mod;
    red(free + i) = r;
  }
  return red;
}

std::vector<IntVec> CokernelMap::torsionGeneratorLifts() const {
  std::vector<IntVec> lifts;
  for (Index i = 0; i < rank_; ++i)
    if (diag_[i] > 1) lifts.push_back(u_inv_.col(i));
  return lifts;
}

const char* errorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::NonPointedCone: return "NonPointedCone";
    case ErrorKind::BadIntersection: return "BadIntersection";
    case ErrorKind::UnusedRay: return "UnusedRay";
    case ErrorKind::NonFiniteCokernel: return "NonFiniteCokernel";
    case ErrorKind::InvalidFan: return "InvalidFan";
    case ErrorKind::NonSimplicialInput: return "NonSimplicialInput";
    case ErrorKind::RayMismatch: return "RayMismatch";
    case ErrorKind::RayImageZero: return "RayImageZero";
    case ErrorKind::NotOrbifold: return "NotOrbifold";
    case ErrorKind::RaysDoNotSpan: return "RaysDoNotSpan";
    case ErrorKind::NotAGerbe: return "NotAGerbe";
    case ErrorKind::NonInjectiveRigidification: return "NonInjectiveRigidification";
    case ErrorKind::CoxFormRequired: return "CoxFormRequired";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::SupportOutsideFan: return "SupportOutsideFan";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::ZeroGenerator: return "ZeroGenerator";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvariantError: return "InvariantError";
  }
  return "UnknownError";
}

}  // namespace tstack
