#include "blockset/bounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blockset/algebra/field.hpp"
#include "blockset/error.hpp"
#include "blockset/geometry/qbinomial.hpp"

namespace blockset {

namespace {

void check_sk(int k, int s) {
  if (s < 1 || s > k) throw Error(ErrorCode::InvalidArgument, "need 1 <= s <= k");
}

void check_q(int q) {
  if (q < 2 || prime_power_decomposition(q).first == 0) {
    throw Error(ErrorCode::NotAPrimePower, std::to_string(q) + " is not a prime power");
  }
}

double log_q(double q, double x) { return std::log(x) / std::log(q); }

int budget(int k, int s) { return s * (k - s) + s + 2; }

}  // namespace

BigInt lb_affine(int q, int k, int s) {
  check_sk(k, s);
  return (big_pow(q, s) - 1) * (k - s + 1) + 1;
}

double ub_fractional(int q, int k, int s) {
  check_sk(k, s);
  return std::pow(static_cast<double>(q), s) * (1.0 + ln_big(qbin(k, s, q)));
}

double plane_rate(int q) {
  const double qd = q;
  return log_q(qd, qd * qd * qd * qd / (qd * qd * qd - qd + 1));
}

double ub_thm_main(int q, int k, int s) {
  check_sk(k, s);
  const double qs = std::pow(static_cast<double>(q), s);
  if (q == 2) return budget(k, s) / log_q(2, qs / (qs - 1)) + 1;
  return (qs - 1) * budget(k, s) / plane_rate(q) + 1;
}

double strong_upper_random(int q, int k) { return (q + 1) * 2.0 * k / plane_rate(q); }

double strong_upper_previous(int q, int k) {
  if (q == 2) return (2.0 * k - 1) / std::log2(4.0 / 3.0);
  const double factor = 2.0 / (1.0 + 1.0 / ((q + 1.0) * (q + 1.0) * std::log(static_cast<double>(q))));
  return (q + 1) * std::ceil(factor * (k - 1));
}

const BoundEntry* BoundReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

BoundReport strong_bounds(int q, int k, std::optional<int> s, std::optional<double> c) {
  check_q(q);
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "need k >= 2");
  BoundReport r{q, k, s, {}, true};
  auto add = [&](std::string name, std::string quantity, Side side, double value,
                 std::optional<BigInt> exact = std::nullopt, bool asymptotic = false) {
    r.entries.push_back({std::move(name), std::move(quantity), side, value, std::move(exact), asymptotic, false});
  };
  const BigInt strong_lower = BigInt(q + 1) * (k - 1);
  add("strong_lower", "strong", Side::Lower, strong_lower.convert_to<double>(), strong_lower);
  const double coeff = c.value_or(compute_cq(q).c - 1e-9);
  add("strong_lower_mrrw", "strong", Side::Lower, coeff * (q + 1) * (k - 1), std::nullopt, true);
  add("strong_upper_random", "strong", Side::Upper, strong_upper_random(q, k));
  add("strong_upper_previous", "strong", Side::Upper, strong_upper_previous(q, k));
  if (s) {
    check_sk(k, *s);
    const BigInt lb = lb_affine(q, k, *s);
    add("affine_lower", "affine", Side::Lower, lb.convert_to<double>(), lb);
    add("affine_upper_fractional", "affine", Side::Upper, ub_fractional(q, k, *s));
    if (*s >= 2) {
      add("affine_upper_random", "affine", Side::Upper, ub_thm_main(q, k, *s));
      const BigInt lines = (big_pow(q, *s) - 1) / (q - 1);
      const BigInt t_lower = lines * (k - *s + 1);
      add("strong_t_lower", "strong_t", Side::Lower, t_lower.convert_to<double>(), t_lower);
      add("strong_t_upper_random", "strong_t", Side::Upper,
          lines.convert_to<double>() * budget(k, *s) / plane_rate(q));
    }
  }
  for (const auto& lo : r.entries) {
    if (lo.side != Side::Lower || lo.asymptotic) continue;
    for (const auto& hi : r.entries) {
      if (hi.side == Side::Upper && !hi.asymptotic && hi.quantity == lo.quantity && lo.value > hi.value) {
        r.consistent = false;
      }
    }
  }
  return r;
}

std::optional<int> strong_upper_crossover(int q, int k_max) {
  std::optional<int> start;
  for (int k = 2; k <= k_max; ++k) {
    if (strong_upper_random(q, k) < strong_upper_previous(q, k)) {
      if (!start) start = k;
    } else {
      start.reset();
    }
  }
  return start;
}

double entropy_q(int q, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::OutOfDomain, "entropy argument outside [0, 1]");
  const double lq = std::log(static_cast<double>(q));
  double h = x * std::log(q - 1.0) / lq;
  if (x > 0) h -= x * std::log(x) / lq;
  if (x < 1) h -= (1 - x) * std::log1p(-x) / lq;
  return h;
}

double mrrw(int q, double delta) {
  const double top = 1.0 - 1.0 / q;
  if (!(delta >= 0.0 && delta <= top)) throw Error(ErrorCode::OutOfDomain, "delta outside [0, 1 - 1/q]");
  const double root = std::sqrt((q - 1.0) * delta * (1.0 - delta));
  double x = (q - 1.0 - (q - 2.0) * delta - 2.0 * root) / q;
  x = std::clamp(x, 0.0, 1.0);  // rounding near the endpoints
  return entropy_q(q, x);
}

double cq_residual(int q, double x) {
  const double t = 1.0 / (x * (q + 1.0));
  return mrrw(q, (q - 1.0) * t) - t;
}

CqResult compute_cq(int q, double tolerance) {
  check_q(q);
  if (!(tolerance >= 1e-12)) throw Error(ErrorCode::InvalidArgument, "tolerance must be at least 1e-12");
  CqResult r;
  r.q = q;
  r.tolerance = tolerance;
  r.f_one = cq_residual(q, 1.0);
  if (!(r.f_one < 0)) throw Error(ErrorCode::BracketFailure, "f(1) is not negative");
  double lo = 1.0;
  double hi = 2.0;
  while (cq_residual(q, hi) <= 0) {
    lo = hi;
    hi *= 2;
    if (hi > 1e6) throw Error(ErrorCode::BracketFailure, "no sign change below 1e6");
  }
  while (hi - lo > tolerance) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (cq_residual(q, mid) <= 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.lo = lo;
  r.hi = hi;
  r.c = lo + (hi - lo) / 2;
  r.f_lo = cq_residual(q, lo);
  r.f_hi = cq_residual(q, hi);
  return r;
}

TrifferentReport trifferent_bounds(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need n >= 1");
  const double l95 = std::log(9.0 / 5.0) / std::log(3.0);
  TrifferentReport r;
  r.n = n;
  auto add = [&](std::string name, std::string quantity, Side side, double value, bool asymptotic) {
    r.entries.push_back({std::move(name), std::move(quantity), side, value, std::nullopt, asymptotic, true});
  };
  add("linear_lower", "linear", Side::Lower, -1.0 + n / 4.0 * l95, true);
  add("linear_upper", "linear", Side::Upper, n / 4.55, true);
  add("general_lower", "general", Side::Lower, n / 4.0 * l95, false);
  add("general_upper", "general", Side::Upper, std::log(2.0) / std::log(3.0) + n * std::log(1.5) / std::log(3.0),
      false);
  const double via_planes = n * (std::log(81.0 / 25.0) / std::log(3.0)) / 8.0;
  r.identity_gap = std::fabs(via_planes - n / 4.0 * l95);
  r.identity_holds = r.identity_gap <= 1e-12 * std::max(1.0, std::fabs(via_planes));
  return r;
}

}  // namespace blockset
