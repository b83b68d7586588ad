#include "blockset/geometry/qbinomial.hpp"

#include "blockset/error.hpp"

namespace blockset {

BigInt qbin(int k, int s, long q) {
  if (s < 0 || k < 0 || s > k) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (int i = 0; i < s; ++i) {
    num *= big_pow(q, static_cast<unsigned>(k - i)) - 1;
    den *= big_pow(q, static_cast<unsigned>(i + 1)) - 1;
  }
  return num / den;
}

BigInt count_affine(int k, int s, long q) {
  if (s < 0 || s > k) throw Error(ErrorCode::InvalidArgument, "need 0 <= s <= k");
  return big_pow(q, static_cast<unsigned>(k - s)) * qbin(k, s, q);
}

BigInt n_q_formula(int k, int s, long q) {
  if (s < 1 || s > k) throw Error(ErrorCode::InvalidArgument, "need 1 <= s <= k");
  BigInt total = 0;
  for (int i = 1; i <= s; ++i) {
    const int exponent = (s - i) * (k - i - s + 1);
    if (exponent < 0) continue;  // the q-binomial factor vanishes there anyway
    total += big_pow(q, static_cast<unsigned>(exponent)) * qbin(s - 1, i - 1, q) * qbin(k - s, i, q);
  }
  return total;
}

}  // namespace blockset
