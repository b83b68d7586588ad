#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "blockset/algebra/field.hpp"
#include "blockset/algebra/matrix.hpp"
#include "blockset/error.hpp"
#include "oracle.hpp"

using namespace blockset;

namespace {

const std::vector<int> kOrders = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32};

// Polynomials over F_p as coefficient lists, constant term first.
using Poly = std::vector<int>;

Poly poly_mod(Poly a, const Poly& m, int p) {
  const int dm = static_cast<int>(m.size()) - 1;
  int inv_lead = 1;
  while (inv_lead * m[dm] % p != 1) ++inv_lead;
  for (int d = static_cast<int>(a.size()) - 1; d >= dm; --d) {
    const int c = a[d] * inv_lead % p;
    if (c == 0) continue;
    for (int i = 0; i <= dm; ++i) a[d - dm + i] = ((a[d - dm + i] - c * m[i]) % p + p) % p;
  }
  a.resize(std::max(dm, 1));
  return a;
}

bool irreducible(const Poly& m, int p) {
  const int e = static_cast<int>(m.size()) - 1;
  for (int d = 1; d <= e / 2; ++d) {
    // Every monic divisor candidate of degree d.
    for (std::uint64_t i = 0; i < oracle::power(p, d); ++i) {
      Poly g(d + 1, 0);
      std::uint64_t x = i;
      for (int j = 0; j < d; ++j) {
        g[j] = static_cast<int>(x % p);
        x /= p;
      }
      g[d] = 1;
      const Poly r = poly_mod(m, g, p);
      if (std::all_of(r.begin(), r.end(), [](int c) { return c == 0; })) return false;
    }
  }
  return true;
}

// Lexicographically smallest monic irreducible of degree e, comparing
// (c_0, c_1, ...) with c_0 most significant.
Poly smallest_irreducible(int p, int e) {
  for (std::uint64_t i = 0; i < oracle::power(p, e); ++i) {
    Poly m(e + 1, 0);
    std::uint64_t x = i;
    for (int j = e - 1; j >= 0; --j) {
      m[j] = static_cast<int>(x % p);
      x /= p;
    }
    m[e] = 1;
    if (irreducible(m, p)) return m;
  }
  return {};
}

Poly decode(int n, int p, int e) {
  Poly a(e);
  for (int i = 0; i < e; ++i) {
    a[i] = n % p;
    n /= p;
  }
  return a;
}

int encode(const Poly& a, int p) {
  int n = 0;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) n = n * p + a[i];
  return n;
}

}  // namespace

TEST(Field, RejectsNonPrimePowers) {
  for (int q : {0, 1, 6, 10, 12, 15, 18, 20, 24, 30}) {
    try {
      Field::of(q);
      FAIL() << q;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotAPrimePower) << q;
    }
  }
  try {
    Field::of(37);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedSize);
  }
  EXPECT_EQ(prime_power_decomposition(27), std::make_pair(3, 3));
  EXPECT_EQ(prime_power_decomposition(12), std::make_pair(0, 0));
}

TEST(Field, AxiomsExhaustive) {
  for (int q : kOrders) {
    const Field& f = Field::of(q);
    EXPECT_TRUE(f.satisfies_axioms()) << q;
    // Independent spot of the same axioms.
    for (int a = 0; a < q; ++a) {
      EXPECT_EQ(f.add(a, 0), a);
      EXPECT_EQ(f.mul(a, 1), a);
      EXPECT_EQ(f.add(a, f.neg(a)), 0);
      if (a) EXPECT_EQ(f.mul(a, f.inv(a)), 1);
      for (int b = 0; b < q; ++b) {
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        for (int c = 0; c < q; ++c) {
          ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
          ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        }
      }
    }
  }
}

TEST(Field, SmallFieldsAreForced) {
  const Field& f2 = Field::of(2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      EXPECT_EQ(f2.add(a, b), a ^ b);
      EXPECT_EQ(f2.mul(a, b), a & b);
    }
  const Field& f3 = Field::of(3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      EXPECT_EQ(f3.add(a, b), (a + b) % 3);
      EXPECT_EQ(f3.mul(a, b), a * b % 3);
    }
  const Field& f4 = Field::of(4);
  for (Elem x : {2, 3}) EXPECT_EQ(f4.mul(x, x), f4.add(x, 1));
}

TEST(Field, CanonicalModulusAndEncoding) {
  for (int q : kOrders) {
    const Field& f = Field::of(q);
    const int p = f.p();
    const int e = f.e();
    if (e == 1) {
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) ASSERT_EQ(f.mul(a, b), a * b % p);
      continue;
    }
    const Poly m = smallest_irreducible(p, e);
    EXPECT_EQ(f.modulus(), m) << q;
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b) {
        const Poly pa = decode(a, p, e);
        const Poly pb = decode(b, p, e);
        Poly prod(2 * e - 1, 0);
        for (int i = 0; i < e; ++i)
          for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
        Poly sum(e);
        for (int i = 0; i < e; ++i) sum[i] = (pa[i] + pb[i]) % p;
        ASSERT_EQ(f.mul(a, b), encode(poly_mod(prod, m, p), p)) << q << ' ' << a << ' ' << b;
        ASSERT_EQ(f.add(a, b), encode(sum, p));
      }
    }
  }
}

TEST(Field, Frobenius) {
  for (int q : {4, 8, 9}) {
    const Field& f = Field::of(q);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        EXPECT_EQ(f.pow(f.add(a, b), f.p()), f.add(f.pow(a, f.p()), f.pow(b, f.p())));
  }
}

TEST(Matrix, RankExamples) {
  const Field& f3 = Field::of(3);
  EXPECT_EQ(rank(Matrix::identity(f3, 3)), 3);
  EXPECT_EQ(rank(Matrix(Field::of(2), 2, 4)), 0);
  const Matrix g = Matrix::from_rows(f3, 4, {{1, 0, 1, 1}, {0, 1, 1, 2}});
  EXPECT_EQ(rank(g), 2);
  // Oracle: no nontrivial combination of the two rows vanishes.
  int zero_combos = 0;
  for (const auto& c : oracle::codewords(f3, g.row_list()))
    if (is_zero(c)) ++zero_combos;
  EXPECT_EQ(zero_combos, 1);
}

TEST(Matrix, RankAgreesWithOracleAndRowSpaceSize) {
  RandomStream rng(7, 0);
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    const Field& f = Field::of(q);
    for (int trial = 0; trial < 60; ++trial) {
      const int r = 1 + static_cast<int>(rng.below(4));
      const int c = 1 + static_cast<int>(rng.below(5));
      Matrix m(f, r, c);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
          m(i, j) = rng.below(3) == 0 ? 0 : static_cast<Elem>(rng.below(q));
      const int rk = rank(m);
      ASSERT_EQ(rk, oracle::rank(f, m.row_list()));
      const Echelon e = echelon(m);
      EXPECT_EQ(static_cast<int>(e.pivots.size()), rk);
      std::set<Vec> words;
      std::uint64_t n = 0;
      for (const Vec& w : RowSpace(m)) {
        words.insert(w);
        ++n;
      }
      EXPECT_EQ(n, oracle::power(q, rk));
      EXPECT_EQ(words.size(), n);
      std::set<Vec> expected;
      for (const auto& w : oracle::codewords(f, m.row_list())) expected.insert(w);
      EXPECT_EQ(words, expected);
    }
  }
}

TEST(Matrix, RowSpaceExamples) {
  const Field& f3 = Field::of(3);
  std::vector<Vec> words;
  for (const Vec& w : RowSpace(Matrix::from_rows(f3, 3, {{1, 1, 1}}))) words.push_back(w);
  EXPECT_EQ(words, (std::vector<Vec>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}));
  words.clear();
  for (const Vec& w : RowSpace(Matrix(f3, 2, 3))) words.push_back(w);
  EXPECT_EQ(words, (std::vector<Vec>{{0, 0, 0}}));
  EXPECT_EQ(RowSpace(Matrix::identity(Field::of(2), 2)).size(), 4u);
}

TEST(Matrix, SolveAffineExamples) {
  const Field& f3 = Field::of(3);
  const auto all = solve_affine(Matrix(f3, 1, 3), Vec{0});
  ASSERT_TRUE(all);
  EXPECT_EQ(all->kernel.size(), 3u);
  const auto point = solve_affine(Matrix::identity(f3, 3), Vec{2, 0, 1});
  ASSERT_TRUE(point);
  EXPECT_EQ(point->particular, (Vec{2, 0, 1}));
  EXPECT_TRUE(point->kernel.empty());
  const auto line = solve_affine(Matrix::from_rows(f3, 2, {{1, 1}}), Vec{1});
  ASSERT_TRUE(line);
  std::set<Vec> pts;
  for (int t = 0; t < 3; ++t) pts.insert(added(f3, line->particular, scaled(f3, line->kernel[0], t)));
  EXPECT_EQ(pts, (std::set<Vec>{{0, 1}, {1, 0}, {2, 2}}));
  EXPECT_THROW(solve_affine(Matrix(f3, 2, 2), Vec{1}), Error);
}

TEST(Matrix, SolveAffineMatchesEnumeration) {
  RandomStream rng(11, 0);
  for (int q : {2, 3, 4}) {
    const Field& f = Field::of(q);
    for (int k = 1; k <= 4; ++k) {
      for (int trial = 0; trial < 25; ++trial) {
        const int r = 1 + static_cast<int>(rng.below(k + 1));
        Matrix a(f, r, k);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < k; ++j) a(i, j) = static_cast<Elem>(rng.below(q));
        Vec b(r);
        for (auto& x : b) x = static_cast<Elem>(rng.below(q));
        std::set<std::uint64_t> brute;
        for (std::uint64_t i = 0; i < oracle::power(q, k); ++i) {
          const Vec x = oracle::from_index(q, k, i);
          if (a.apply(x) == b) brute.insert(i);
        }
        const auto sol = solve_affine(a, b);
        if (brute.empty()) {
          EXPECT_FALSE(sol);
          continue;
        }
        ASSERT_TRUE(sol);
        std::set<std::uint64_t> got;
        const auto dirs = oracle::span(f, k, sol->kernel);
        for (auto d : dirs) got.insert(oracle::index_of(q, added(f, sol->particular, oracle::from_index(q, k, d))));
        EXPECT_EQ(got, brute);
        EXPECT_EQ(static_cast<int>(sol->kernel.size()), k - oracle::rank(f, a.row_list()));
      }
    }
  }
}

TEST(Matrix, FileRoundTrip) {
  const Matrix m = Matrix::from_rows(Field::of(9), 3, {{1, 8, 0}, {4, 2, 7}});
  std::stringstream ss;
  write_matrix(ss, m);
  EXPECT_EQ(read_matrix(ss), m);
  std::stringstream bad("3 1 2\n1 3\n");
  EXPECT_THROW(read_matrix(bad), Error);
}

TEST(Vectors, IndexAndNormalForm) {
  const Field& f = Field::of(5);
  for (std::uint64_t i = 0; i < 125; ++i) {
    const Vec v = vec_from_index(5, 3, i);
    EXPECT_EQ(vec_index(5, v), i);
    EXPECT_EQ(v, oracle::from_index(5, 3, i));
    if (i) EXPECT_EQ(projective_normal_form(f, v), oracle::normalized(f, v));
  }
}
