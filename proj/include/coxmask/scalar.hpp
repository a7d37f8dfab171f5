#pragma once

// Scalar backends for the geometric representation.
//
// Two tiers: when every m(i,j) lies in {2, 3, inf} all coefficients
// 2cos(pi/m) are integers and arithmetic is exact (arbitrary precision).
// Otherwise coordinates are 128-bit binary floats; anything smaller than
// kSnapThreshold is stored as an exact zero, and any sign or equality test
// on a value in (kSnapThreshold, kSignMargin] raises PrecisionError.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace coxmask {

enum class ScalarTier { exact_integer, high_precision };

namespace detail {

using ExactScalar = boost::multiprecision::cpp_int;
using RealScalar = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

inline const RealScalar kSignMargin{"1e-12"};
inline const RealScalar kSnapThreshold{"1e-24"};

inline void snap(ExactScalar&) {}
inline void snap(RealScalar& v) {
  if (abs(v) < kSnapThreshold) v = 0;
}

// -1, 0, +1. Throws PrecisionError for reals inside the margin.
int sign_of(const ExactScalar& v);
int sign_of(const RealScalar& v);

bool scalar_equal(const ExactScalar& a, const ExactScalar& b);
bool scalar_equal(const RealScalar& a, const RealScalar& b);

}  // namespace detail
}  // namespace coxmask
