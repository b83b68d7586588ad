#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockset/geometry/bigint.hpp"
#include "blockset/geometry/subspace.hpp"

namespace blockset {

/// Brute-force n_q(k, s): enumerates every s-dimensional subspace through the
/// origin and counts those disjoint from `avoided`, which must be a
/// codimension-s affine subspace not containing the origin.
BigInt n_q_oracle(const AffineSubspace& avoided, int s);

/// Same, with the first codimension-s subspace avoiding the origin in
/// enumeration order as the fixed subspace.
BigInt n_q_oracle(int k, int s, long q);

/// Brute-force count of the i-dimensional subspaces through the origin that
/// miss the affine hyperplane x_1 = 1.
BigInt count_disjoint_from_hyperplane(int k, int i, long q);

/// One inequality or identity evaluated exactly: holds <=> lhs <= rhs (or
/// lhs == rhs for identities). Not-applicable entries have holds = true.
struct EstimateCheck {
  std::string name;
  bool applicable = true;
  bool identity = false;
  bool holds = false;
  Rational lhs;
  Rational rhs;
};

struct CountReport {
  int k = 0;
  int s = 0;
  long q = 0;
  BigInt qbin;
  BigInt affine_count;
  BigInt n_q;
  std::vector<EstimateCheck> estimate_checks;

  bool all_hold() const;
  const EstimateCheck* find(const std::string& name) const;
};

/// Rational lower bound on e^y: the Taylor polynomial of the given degree
/// (every omitted term is positive for y >= 0).
Rational exp_lower_bound(const Rational& y, int degree = 24);

/// Evaluates the Gaussian-coefficient estimates, the bound on n_q(k, s), the
/// q-Vandermonde identity and (when the enumeration is small) the disjoint
/// subspace count against a hyperplane, all in exact arithmetic.
/// Requires 1 <= s <= k.
CountReport check_estimates(int k, int s, long q);

}  // namespace blockset
