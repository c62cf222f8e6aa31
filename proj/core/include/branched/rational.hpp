#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace branched {

/// Arbitrary-precision integer used by the fraction-free elimination kernel.
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar used throughout the analyzer pathway.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace branched
