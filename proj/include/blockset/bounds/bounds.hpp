#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockset/geometry/bigint.hpp"

namespace blockset {

/// (q^s - 1)(k - s + 1) + 1.
BigInt lb_affine(int q, int k, int s);

/// q^s (1 + ln [k s]_q), the fractional covering bound.
double ub_fractional(int q, int k, int s);

/// log_q(q^4 / (q^3 - q + 1)), computed as a ratio of natural logarithms.
double plane_rate(int q);

/// Upper bound from random subspaces through the origin: for q = 2 the
/// random-points form N / log_2(2^s / (2^s - 1)) + 1, otherwise
/// (q^s - 1) N / plane_rate(q) + 1, with N = s(k - s) + s + 2.
double ub_thm_main(int q, int k, int s);

/// (q + 1) 2k / plane_rate(q): strong blocking sets from random planes.
double strong_upper_random(int q, int k);
/// The earlier upper bound on strong blocking sets
/// ((2k - 1) / log_2(4/3) for q = 2).
double strong_upper_previous(int q, int k);

enum class Side { Lower, Upper };

struct BoundEntry {
  std::string name;
  /// Entries bound the same quantity exactly when their quantities match.
  std::string quantity;
  Side side = Side::Lower;
  double value = 0;
  std::optional<BigInt> exact;
  /// Holds only up to an unspecified o(1) term; never compared.
  bool asymptotic = false;
  /// Value is log_3 of a code size.
  bool log3 = false;
};

struct BoundReport {
  int q = 0;
  int k = 0;
  std::optional<int> s;
  std::vector<BoundEntry> entries;
  /// Every finite lower entry is <= every upper entry of the same quantity.
  bool consistent = true;

  const BoundEntry* find(const std::string& name) const;
};

/// Bounds on strong blocking sets in PG(k-1, q) (and on strong (s-1)-blocking
/// sets and affine s-blocking sets when s is given). The asymptotic lower
/// coefficient uses c = c_q - tolerance unless `c` is supplied.
BoundReport strong_bounds(int q, int k, std::optional<int> s = std::nullopt, std::optional<double> c = std::nullopt);

/// First k in [2, k_max] from which the random-planes upper bound stays
/// strictly below the earlier one through k_max.
std::optional<int> strong_upper_crossover(int q, int k_max);

/// q-ary entropy; Error{OutOfDomain} outside [0, 1].
double entropy_q(int q, double x);

/// The MRRW function M_q; Error{OutOfDomain} outside [0, 1 - 1/q].
double mrrw(int q, double delta);

struct CqResult {
  int q = 0;
  double c = 0;
  double lo = 0;
  double hi = 0;
  double tolerance = 0;
  /// f(x) = M_q((q-1)/(x(q+1))) - 1/(x(q+1)) at the bracket ends and at 1.
  double f_lo = 0;
  double f_hi = 0;
  double f_one = 0;
};

double cq_residual(int q, double x);

/// Bisection for the root of cq_residual on [1, X], doubling X until the
/// sign changes. Error{BracketFailure} if f(1) >= 0 or no sign change is
/// found; tolerance must be at least 1e-12.
CqResult compute_cq(int q, double tolerance = 1e-9);

struct TrifferentReport {
  int n = 0;
  /// log_3 of code sizes.
  std::vector<BoundEntry> entries;
  /// |n log_3(81/25) / 8 - (n/4) log_3(9/5)|.
  double identity_gap = 0;
  bool identity_holds = false;
};

TrifferentReport trifferent_bounds(int n);

}  // namespace blockset
