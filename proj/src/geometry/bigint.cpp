#include "blockset/geometry/bigint.hpp"

#include <cmath>

#include "blockset/error.hpp"

namespace blockset {

BigInt big_pow(long base, unsigned exponent) {
  return boost::multiprecision::pow(BigInt(base), exponent);
}

double ln_big(const BigInt& x) {
  if (x <= 0) throw Error(ErrorCode::OutOfDomain, "logarithm of a non-positive integer");
  const auto bits = static_cast<long>(boost::multiprecision::msb(x));
  if (bits < 60) return std::log(x.convert_to<double>());
  const long shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace blockset
