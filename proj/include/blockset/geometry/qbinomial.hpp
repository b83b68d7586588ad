#pragma once

#include "blockset/geometry/bigint.hpp"

namespace blockset {

/// Gaussian binomial coefficient [k s]_q: the number of s-dimensional
/// subspaces of F_q^k. Zero outside 0 <= s <= k.
BigInt qbin(int k, int s, long q);

/// Number of s-dimensional affine subspaces of F_q^k, q^{k-s} [k s]_q.
BigInt count_affine(int k, int s, long q);

/// n_q(k, s): the number of s-dimensional subspaces through the origin that
/// miss a fixed codimension-s affine subspace avoiding the origin,
///   sum_{i=1}^{s} q^{(s-i)(k-i-s+1)} [s-1 i-1]_q [k-s i]_q.
/// Requires 1 <= s <= k.
BigInt n_q_formula(int k, int s, long q);

}  // namespace blockset
