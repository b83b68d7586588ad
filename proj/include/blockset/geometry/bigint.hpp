#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace blockset {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt big_pow(long base, unsigned exponent);

/// Natural logarithm of a positive big integer. The value is split into a
/// 53-bit mantissa and a binary exponent, so the relative error stays near
/// machine precision regardless of magnitude.
double ln_big(const BigInt& x);

/// "num/den", or just "num" for integers.
std::string to_string(const Rational& r);

/// Nearest double to a rational (for display only).
double to_double(const Rational& r);

}  // namespace blockset
