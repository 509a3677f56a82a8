#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace neron {

// Exact arbitrary-precision rational coefficients. All arithmetic in the
// library is exact; there is no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline std::string rational_str(const Rational& q) { return q.str(); }

}  // namespace neron
