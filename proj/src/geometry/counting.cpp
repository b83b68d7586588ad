#include "blockset/geometry/counting.hpp"

#include "blockset/error.hpp"
#include "blockset/geometry/qbinomial.hpp"

namespace blockset {

namespace {

// Counts the subspaces ker(A) of dimension `dim` through the origin that do
// not meet `avoided`.
BigInt count_disjoint(const AffineSubspace& avoided, int dim) {
  const Field& f = avoided.field();
  const int k = avoided.ambient_dim();
  const EchelonFamily family(f, k - dim, k);
  const int extra = avoided.codim();
  Matrix stacked(f, k - dim + extra, k);
  Vec rhs(k - dim + extra, 0);
  for (int r = 0; r < extra; ++r) {
    for (int c = 0; c < k; ++c) stacked(k - dim + r, c) = avoided.dual()(r, c);
    rhs[k - dim + r] = avoided.rhs()[r];
  }
  BigInt count = 0;
  for (std::uint64_t i = 0; i < family.size(); ++i) {
    for (int r = 0; r < k - dim; ++r) {
      const Vec row = vec_from_index(f.q(), k, family.row_index(i, r));
      for (int c = 0; c < k; ++c) stacked(r, c) = row[c];
    }
    if (!solve_affine(stacked, rhs)) ++count;
  }
  return count;
}

Rational ratio(const BigInt& a, const BigInt& b) { return Rational(a, b); }

}  // namespace

BigInt n_q_oracle(const AffineSubspace& avoided, int s) {
  if (avoided.codim() != s) throw Error(ErrorCode::InvalidArgument, "fixed subspace must have codimension s");
  if (avoided.through_origin()) throw Error(ErrorCode::InvalidArgument, "fixed subspace must avoid the origin");
  return count_disjoint(avoided, s);
}

BigInt n_q_oracle(int k, int s, long q) {
  if (s < 1 || s > k) throw Error(ErrorCode::InvalidArgument, "need 1 <= s <= k");
  const Field& f = Field::of(static_cast<int>(q));
  const EchelonFamily duals(f, s, k);
  Vec rhs(s, 0);
  rhs[s - 1] = 1;  // first right-hand side in lexicographic order that is nonzero
  const AffineSubspace avoided(duals.matrix(0), rhs);
  return n_q_oracle(avoided, s);
}

BigInt count_disjoint_from_hyperplane(int k, int i, long q) {
  if (i < 0 || i > k) throw Error(ErrorCode::InvalidArgument, "need 0 <= i <= k");
  const Field& f = Field::of(static_cast<int>(q));
  Matrix dual(f, 1, k);
  dual(0, 0) = 1;
  const Vec one{1};
  return count_disjoint(AffineSubspace(dual, one), i);
}

bool CountReport::all_hold() const {
  for (const auto& c : estimate_checks)
    if (!c.holds) return false;
  return true;
}

const EstimateCheck* CountReport::find(const std::string& name) const {
  for (const auto& c : estimate_checks)
    if (c.name == name) return &c;
  return nullptr;
}

Rational exp_lower_bound(const Rational& y, int degree) {
  Rational term = 1;
  Rational sum = 1;
  for (int j = 1; j <= degree; ++j) {
    term = term * y / j;
    sum += term;
  }
  return sum;
}

CountReport check_estimates(int k, int s, long q) {
  if (s < 1 || s > k) throw Error(ErrorCode::InvalidArgument, "need 1 <= s <= k");
  Field::of(static_cast<int>(q));

  CountReport report;
  report.k = k;
  report.s = s;
  report.q = q;
  report.qbin = qbin(k, s, q);
  report.affine_count = count_affine(k, s, q);
  report.n_q = n_q_formula(k, s, q);

  const BigInt scale = big_pow(q, static_cast<unsigned>(s * (k - s)));
  const Rational normalized = ratio(report.qbin, scale);

  auto add = [&](std::string name, bool applicable, bool identity, Rational lhs, Rational rhs) {
    EstimateCheck c;
    c.name = std::move(name);
    c.applicable = applicable;
    c.identity = identity;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.holds = !applicable || (identity ? c.lhs == c.rhs : c.lhs <= c.rhs);
    report.estimate_checks.push_back(std::move(c));
  };

  // [k s]_q q^{-s(k-s)} is at least 1 and at most q/(q-1) e^{q/((q^2-1)(q-1))}.
  // The exponential is replaced by a smaller rational, which can only make
  // the upper comparison harder to pass.
  add("qbinestimate_a_lower", true, false, Rational(1), normalized);
  const Rational y(BigInt(q), BigInt((q * q - 1) * (q - 1)));
  add("qbinestimate_a_upper", true, false, normalized, Rational(BigInt(q), BigInt(q - 1)) * exp_lower_bound(y));

  add("qbinestimate_b", s >= 3 && k >= s + 3, false, Rational(BigInt(q * q * q), BigInt((q * q - 1) * (q - 1))),
      normalized);

  add("grensqvdm", s >= 2, false, Rational(report.n_q),
      Rational(BigInt(q * q * q - q + 1), big_pow(q, 4)) * Rational(report.qbin));

  BigInt vandermonde = 0;
  for (int i = 1; i <= s; ++i) {
    const int exponent = (k - s - i) * (s - i);
    if (exponent < 0) continue;  // [k-s i]_q = 0 there
    vandermonde += qbin(s - 1, s - i, q) * qbin(k - s, i, q) * big_pow(q, static_cast<unsigned>(exponent));
  }
  add("qvandermonde", true, true, Rational(qbin(k - 1, s, q)), Rational(vandermonde));

  const bool small = report.qbin <= 200'000 && big_pow(q, static_cast<unsigned>(k)) <= 1'000'000;
  add("count_hyp", small, true, small ? Rational(count_disjoint_from_hyperplane(k, s, q)) : Rational(0),
      Rational(qbin(k - 1, s, q)));

  return report;
}

}  // namespace blockset
