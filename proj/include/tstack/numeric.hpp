#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

// boost's is_byte_container trait is not SFINAE-friendly when probed with
// Eigen expression types (their const_iterator can be void). Exclude every
// Eigen type from the byte-container constructor overloads up front.
namespace boost::multiprecision::detail {
template <class T>
  requires requires { typename Eigen::internal::traits<std::remove_cv_t<T>>::Scalar; } ||
           requires { typename std::remove_cv_t<T>::StorageKind; }
struct is_byte_container<T> : public std::false_type {};
}  // namespace boost::multiprecision::detail

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace tstack {

/// Arbitrary-precision integer scalar. All lattice arithmetic uses this type;
/// fixed-width integers are never used for matrix entries.
using Int = boost::multiprecision::cpp_int;
/// Exact rational scalar, used wherever division is unavoidable.
using Rat = boost::multiprecision::cpp_rational;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMat = Mat<Int>;
using IntVec = Vec<Int>;
using RatMat = Mat<Rat>;
using RatVec = Vec<Rat>;

using Index = Eigen::Index;

inline Int gcdInt(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcmInt(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int absInt(const Int& a) { return boost::multiprecision::abs(a); }

/// gcd of all coordinates, 0 for the zero vector.
Int content(const IntVec& v);

/// floor(a / b) for b != 0 (cpp_int division truncates toward zero).
Int floorDiv(const Int& a, const Int& b);

/// Quotient minimizing |a - q*b|; used as the reduction step in normal forms.
Int roundDiv(const Int& a, const Int& b);

Rat fracPart(const Rat& q);  // q - floor(q), in [0,1)

bool lexLess(const IntVec& a, const IntVec& b);

struct VecLexLess {
  bool operator()(const IntVec& a, const IntVec& b) const { return lexLess(a, b); }
};

template <class Scalar>
bool matEq(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline bool vecEq(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

RatMat toRat(const IntMat& m);
RatVec toRat(const IntVec& v);

/// Clears denominators and divides by the content; zero vectors map to zero.
IntVec scaleToPrimitiveInt(const RatVec& v);

std::string toString(const Int& v);
std::string toString(const Rat& v);
std::string toString(const IntVec& v);
std::string toString(const IntMat& m);

}  // namespace tstack
