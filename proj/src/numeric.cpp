#include "tstack/numeric.hpp"

#include <sstream>

namespace tstack {

Int content(const IntVec& v) {
  Int g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcdInt(g, v(i));
  return g;
}

Int floorDiv(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  if ((a % b) != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Int roundDiv(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (2 * absInt(r) > absInt(b)) q += ((r < 0) != (b < 0)) ? -1 : 1;
  return q;
}

Rat fracPart(const Rat& q) {
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  return q - Rat(floorDiv(num, den));
}

bool lexLess(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

RatMat toRat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

RatVec toRat(const IntVec& v) {
  RatVec r(v.size());
  for (Index i = 0; i < v.size(); ++i) r(i) = Rat(v(i));
  return r;
}

IntVec scaleToPrimitiveInt(const RatVec& v) {
  Int den = 1;
  for (Index i = 0; i < v.size(); ++i)
    den = lcmInt(den, boost::multiprecision::denominator(v(i)));
  IntVec w(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    Rat scaled = v(i) * Rat(den);
    w(i) = boost::multiprecision::numerator(scaled);
  }
  Int g = content(w);
  if (g > 1)
    for (Index i = 0; i < w.size(); ++i) w(i) /= g;
  return w;
}

std::string toString(const Int& v) { return v.str(); }

std::string toString(const Rat& v) {
  Int den = boost::multiprecision::denominator(v);
  if (den == 1) return boost::multiprecision::numerator(v).str();
  return boost::multiprecision::numerator(v).str() + "/" + den.str();
}

std::string toString(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v(i);
  }
  os << ")";
  return os.str();
}

std::string toString(const IntMat& m) {
  std::ostringstream os;
  os << "[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << m(i, j);
    }
  }
  os << "]";
  return os.str();
}

}  // namespace tstack
