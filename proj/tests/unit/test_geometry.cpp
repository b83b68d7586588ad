#include <gtest/gtest.h>

#include <array>
#include <map>
#include <set>

#include "blockset/error.hpp"
#include "blockset/geometry/counting.hpp"
#include "blockset/geometry/qbinomial.hpp"
#include "blockset/geometry/subspace.hpp"
#include "oracle.hpp"

using namespace blockset;

namespace {

using Members = std::array<std::uint64_t, 4>;

// Number of subspaces of each dimension of F_q^k, found by closing {0}
// under "add one more vector". Requires q^k <= 256.
std::vector<std::uint64_t> closure_counts(int q, int k) {
  const Field& f = Field::of(q);
  const int n = static_cast<int>(oracle::power(q, k));
  auto key = [](const std::vector<int>& pts) {
    Members m{};
    for (int p : pts) m[p / 64] |= std::uint64_t{1} << (p % 64);
    return m;
  };
  std::vector<std::uint64_t> counts(k + 1, 0);
  std::vector<std::vector<int>> layer = {{0}};
  counts[0] = 1;
  for (int d = 1; d <= k; ++d) {
    std::set<Members> seen;
    std::vector<std::vector<int>> next;
    for (const auto& u : layer) {
      std::vector<char> in(n, 0);
      for (int p : u) in[p] = 1;
      for (int v = 1; v < n; ++v) {
        if (in[v]) continue;
        const Vec vv = oracle::from_index(q, k, v);
        std::vector<int> w;
        for (int p : u) {
          const Vec pv = oracle::from_index(q, k, p);
          for (int lam = 0; lam < q; ++lam) w.push_back(static_cast<int>(oracle::index_of(q, added(f, pv, scaled(f, vv, lam)))));
        }
        if (seen.insert(key(w)).second) next.push_back(w);
      }
    }
    counts[d] = next.size();
    layer = std::move(next);
  }
  return counts;
}

bool is_rref(const Matrix& m) {
  int last_pivot = -1;
  for (int r = 0; r < m.rows(); ++r) {
    int piv = -1;
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) {
        piv = c;
        break;
      }
    if (piv <= last_pivot || m(r, piv) != 1) return false;
    for (int r2 = 0; r2 < m.rows(); ++r2)
      if (r2 != r && m(r2, piv) != 0) return false;
    last_pivot = piv;
  }
  return true;
}

}  // namespace

TEST(QBinomial, Examples) {
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(qbin(k, 0, 3), 1);
  EXPECT_EQ(qbin(3, 1, 2), 7);
  EXPECT_EQ(qbin(4, 2, 3), 130);
  EXPECT_EQ(qbin(5, 2, 3), 1210);
  EXPECT_EQ(qbin(3, 4, 2), 0);
  EXPECT_EQ(qbin(3, -1, 2), 0);
  for (int q : {2, 3, 4, 5})
    for (int k = 0; k <= 12; ++k)
      for (int s = 0; s <= k; ++s) EXPECT_EQ(qbin(k, s, q), qbin(k, k - s, q));
}

TEST(QBinomial, MatchesClosureEnumeration) {
  for (auto [q, kmax] : std::vector<std::pair<int, int>>{{2, 6}, {3, 5}, {4, 4}}) {
    for (int k = 0; k <= kmax; ++k) {
      const auto counts = closure_counts(q, k);
      for (int s = 0; s <= k; ++s) EXPECT_EQ(qbin(k, s, q), counts[s]) << q << ' ' << k << ' ' << s;
    }
  }
}

TEST(QBinomial, MatchesEchelonEnumeration) {
  for (int q : {2, 3, 4}) {
    const Field& f = Field::of(q);
    for (int k = 0; k <= 6; ++k) {
      for (int s = 0; s <= k; ++s) {
        const EchelonFamily family(f, s, k);
        std::set<std::vector<std::uint32_t>> distinct;
        for (std::uint64_t i = 0; i < family.size(); ++i) {
          const Matrix m = family.matrix(i);
          ASSERT_TRUE(is_rref(m));
          ASSERT_EQ(oracle::rank(f, m.row_list()), s);
          std::vector<std::uint32_t> rows;
          for (int r = 0; r < s; ++r) rows.push_back(family.row_index(i, r));
          distinct.insert(rows);
        }
        EXPECT_EQ(distinct.size(), family.size());
        EXPECT_EQ(BigInt(family.size()), qbin(k, s, q)) << q << ' ' << k << ' ' << s;
      }
    }
  }
}

TEST(Counting, CountAffineExamples) {
  EXPECT_EQ(count_affine(4, 4, 3), 1);
  EXPECT_EQ(count_affine(2, 1, 3), 12);
  EXPECT_EQ(count_affine(5, 3, 3), 10890);
  EXPECT_EQ(qbin(5, 3, 3), 1210);
}

TEST(Subspaces, EnumerationCountsAndUniqueness) {
  const Field& f3 = Field::of(3);
  EXPECT_EQ(enumerate_affine_subspaces(f3, 2, 2, OriginFilter::All).size(), 9u);
  EXPECT_EQ(enumerate_affine_subspaces(f3, 4, 2, OriginFilter::AvoidingOrigin).size(), 1040u);
  EXPECT_EQ(enumerate_affine_subspaces(Field::of(2), 3, 1, OriginFilter::ThroughOrigin).size(), 7u);

  for (int q : {2, 3, 4}) {
    const Field& f = Field::of(q);
    for (int k = 1; k <= 4; ++k) {
      for (int codim = 0; codim <= k; ++codim) {
        std::set<std::vector<std::uint64_t>> point_sets;
        std::uint64_t through = 0;
        for (const auto& w : enumerate_affine_subspaces(f, k, codim, OriginFilter::All)) {
          std::vector<std::uint64_t> pts;
          for (const Vec& p : w.points()) {
            ASSERT_TRUE(w.contains(p));
            pts.push_back(oracle::index_of(q, p));
          }
          std::sort(pts.begin(), pts.end());
          ASSERT_EQ(pts.size(), oracle::power(q, k - codim));
          // Membership by the dual form agrees with the parametric points.
          std::uint64_t members = 0;
          for (std::uint64_t i = 0; i < oracle::power(q, k); ++i)
            if (w.contains(oracle::from_index(q, k, i))) ++members;
          ASSERT_EQ(members, pts.size());
          EXPECT_EQ(w.through_origin(), pts.front() == 0);
          if (w.through_origin()) ++through;
          point_sets.insert(pts);
        }
        EXPECT_EQ(BigInt(point_sets.size()), count_affine(k, k - codim, q));
        EXPECT_EQ(BigInt(through), qbin(k, codim, q));
        EXPECT_EQ(BigInt(enumerate_affine_subspaces(f, k, codim, OriginFilter::AvoidingOrigin).size()),
                  (big_pow(q, codim) - 1) * qbin(k, codim, q));
      }
    }
  }
}

TEST(Subspaces, NormalizationMakesEqualCosetsEqual) {
  const Field& f = Field::of(3);
  const Matrix a = Matrix::from_rows(f, 3, {{1, 1, 0}, {0, 1, 2}});
  const Matrix b = Matrix::from_rows(f, 3, {{1, 2, 2}, {2, 2, 0}});  // rows recombined
  const AffineSubspace x(a, Vec{1, 2});
  // Same solution set: (1,1,0)+(0,1,2) = (1,2,2) -> rhs 1+2 = 0; 2(1,1,0) -> rhs 2.
  const AffineSubspace y(b, Vec{0, 2});
  EXPECT_EQ(x, y);
  EXPECT_THROW(AffineSubspace(Matrix::from_rows(f, 3, {{1, 1, 0}, {2, 2, 0}}), Vec{0, 0}), Error);
  EXPECT_THROW(AffineSubspace(a, Vec{1}), Error);
}

TEST(Subspaces, UniverseLimit) {
  try {
    enumerate_affine_subspaces(Field::of(3), 8, 4, OriginFilter::All, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UniverseTooLarge);
  }
}

TEST(Subspaces, ProjectivePoints) {
  for (int q : {2, 3, 4, 5}) {
    const auto pts = projective_points(Field::of(q), 3);
    EXPECT_EQ(BigInt(pts.size()), qbin(3, 1, q));
    for (const auto& p : pts) EXPECT_EQ(oracle::normalized(Field::of(q), p), p);
  }
}

TEST(NQ, Examples) {
  for (int q : {2, 3, 4})
    for (int s = 1; s <= 4; ++s) {
      EXPECT_EQ(n_q_formula(s, s, q), 0);
      EXPECT_EQ(n_q_formula(s + 1, s, q), big_pow(q, s - 1));
    }
  EXPECT_EQ(n_q_formula(4, 2, 3), 37);
  EXPECT_EQ(n_q_oracle(2, 2, 3), 0);
  EXPECT_EQ(n_q_oracle(3, 2, 2), 2);
  EXPECT_EQ(n_q_oracle(4, 2, 3), 37);
}

TEST(NQ, FormulaMatchesOracleGrid) {
  for (int q : {2, 3})
    for (int s = 1; s <= 3; ++s)
      for (int k = s; k <= 6; ++k) EXPECT_EQ(n_q_formula(k, s, q), n_q_oracle(k, s, q)) << q << ' ' << k << ' ' << s;
}

TEST(NQ, OracleIndependentOfFixedSubspace) {
  RandomStream rng(5, 0);
  for (int q : {2, 3}) {
    const Field& f = Field::of(q);
    for (int s = 2; s <= 3; ++s) {
      for (int k = s; k <= 5; ++k) {
        const auto avoiding = enumerate_affine_subspaces(f, k, s, OriginFilter::AvoidingOrigin);
        for (int trial = 0; trial < 5; ++trial) {
          const auto& h = avoiding[rng.below(avoiding.size())];
          EXPECT_EQ(n_q_oracle(h, s), n_q_formula(k, s, q));
        }
      }
    }
  }
}

TEST(NQ, DisjointFromHyperplane) {
  for (int q : {2, 3})
    for (int k = 1; k <= 5; ++k)
      for (int i = 0; i <= k; ++i) EXPECT_EQ(count_disjoint_from_hyperplane(k, i, q), qbin(k - 1, i, q));
}

TEST(Estimates, Examples) {
  const CountReport r = check_estimates(4, 2, 3);
  const auto* g = r.find("grensqvdm");
  ASSERT_NE(g, nullptr);
  EXPECT_TRUE(g->holds);
  EXPECT_EQ(g->lhs, Rational(37));
  EXPECT_EQ(g->rhs, Rational(3250, 81));
  const CountReport b = check_estimates(6, 3, 2);
  EXPECT_TRUE(b.find("qbinestimate_b")->applicable);
  EXPECT_TRUE(b.find("qbinestimate_b")->holds);
  EXPECT_FALSE(check_estimates(5, 3, 2).find("qbinestimate_b")->applicable);
}

TEST(Estimates, ExpLowerBoundIsBelowExp) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {1, 8}, {3, 10}}) {
    const Rational y(n, d);
    // A longer partial sum of the exponential series, computed here; every
    // extra term is positive, so it is strictly larger and still below e^y.
    Rational term = 1;
    Rational longer = 1;
    for (int j = 1; j <= 40; ++j) {
      term = term * y / j;
      longer += term;
    }
    EXPECT_LT(exp_lower_bound(y), longer);
    EXPECT_NEAR(to_double(exp_lower_bound(y)), std::exp(static_cast<double>(n) / d), 1e-12);
  }
}

TEST(Estimates, GridHoldsExactly) {
  for (int q : {2, 3, 4, 5}) {
    for (int k = 1; k <= 12; ++k) {
      for (int s = 1; s <= k; ++s) {
        const CountReport r = check_estimates(k, s, q);
        for (const auto& c : r.estimate_checks) {
          if (c.name == "grensqvdm" && k > 10) continue;
          EXPECT_TRUE(c.holds) << c.name << " q=" << q << " k=" << k << " s=" << s;
        }
        EXPECT_EQ(r.find("grensqvdm")->applicable, s >= 2);
        EXPECT_EQ(r.find("qbinestimate_b")->applicable, s >= 3 && k >= s + 3);
      }
    }
  }
}
