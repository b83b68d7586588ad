#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "blockset/blocking/verify.hpp"
#include "blockset/bounds/bounds.hpp"
#include "blockset/codes/code.hpp"
#include "blockset/constructions/graph.hpp"
#include "blockset/constructions/random_blocking.hpp"
#include "blockset/error.hpp"
#include "oracle.hpp"

using namespace blockset;

namespace {

// Largest component of g - removed, by flood fill over adjacency masks.
int largest_component(const Graph& g, std::uint64_t removed) {
  std::vector<std::uint64_t> adj(g.n(), 0);
  for (auto [a, b] : g.edges()) {
    adj[a] |= std::uint64_t{1} << b;
    adj[b] |= std::uint64_t{1} << a;
  }
  std::uint64_t left = ((std::uint64_t{1} << g.n()) - 1) & ~removed;
  int best = 0;
  while (left) {
    std::uint64_t comp = left & -left;
    std::uint64_t frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t m = frontier; m; m &= m - 1) next |= adj[std::countr_zero(m)];
      frontier = next & left & ~comp;
      comp |= frontier;
    }
    left &= ~comp;
    best = std::max(best, std::popcount(comp));
  }
  return best;
}

// Exhaustive integrity with the lexicographically smallest optimal S.
IntegrityResult brute_integrity(const Graph& g) {
  IntegrityResult best{g.n() + 1, {}, true};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n()); ++mask) {
    std::vector<int> s;
    for (int v = 0; v < g.n(); ++v)
      if (mask >> v & 1) s.push_back(v);
    const int value = static_cast<int>(s.size()) + largest_component(g, mask);
    if (value < best.value || (value == best.value && s < best.separator)) best = {value, s, true};
  }
  return best;
}

Graph random_graph(int n, double p, RandomStream& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.unit() < p) edges.emplace_back(i, j);
  return Graph(n, edges);
}

PointSet projective(int q, int k, std::vector<Vec> pts) {
  return PointSet(Field::of(q), k, PointKind::Projective, std::move(pts));
}

}  // namespace

TEST(Graph, ConstructionAndFile) {
  const Graph g(4, {{1, 0}, {0, 1}, {2, 3}});
  EXPECT_EQ(g.edges(), (std::vector<std::pair<int, int>>{{0, 1}, {2, 3}}));
  EXPECT_THROW(Graph(3, {{1, 1}}), Error);
  EXPECT_THROW(Graph(3, {{0, 3}}), Error);
  EXPECT_TRUE(Graph(3, {{0, 1}}).has_isolated_vertex());
  EXPECT_FALSE(Graph::complete(3).has_isolated_vertex());
  std::stringstream ss;
  write_graph(ss, Graph::path(5));
  EXPECT_EQ(read_graph(ss).edges(), Graph::path(5).edges());
  std::stringstream bad("3 2\n0 1\n");
  EXPECT_THROW(read_graph(bad), Error);
}

TEST(Integrity, Examples) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(vertex_integrity(Graph::complete(n)).value, n);
    EXPECT_EQ(vertex_integrity(Graph(n, {})).value, 1);
    EXPECT_TRUE(vertex_integrity(Graph(n, {})).separator.empty());
  }
  EXPECT_EQ(vertex_integrity(Graph::path(4)).value, 3);
}

TEST(Integrity, ExhaustiveMatchesBruteForce) {
  RandomStream rng(50, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const Graph g = random_graph(n, rng.unit(), rng);
    const IntegrityResult got = vertex_integrity(g);
    const IntegrityResult want = brute_integrity(g);
    EXPECT_EQ(got.value, want.value);
    EXPECT_EQ(got.separator, want.separator);
    EXPECT_TRUE(got.exhaustive);
  }
}

TEST(Integrity, BranchAndBoundRange) {
  RandomStream rng(51, 0);
  for (int trial = 0; trial < 3; ++trial) {
    const Graph g = random_graph(22, 0.15 + 0.1 * trial, rng);
    const IntegrityResult got = vertex_integrity(g);
    EXPECT_FALSE(got.exhaustive);
    EXPECT_EQ(got.value, brute_integrity(g).value);
    std::uint64_t mask = 0;
    for (int v : got.separator) mask |= std::uint64_t{1} << v;
    EXPECT_EQ(static_cast<int>(got.separator.size()) + largest_component(g, mask), got.value);
  }
  EXPECT_EQ(vertex_integrity(Graph::complete(30)).value, 30);
  EXPECT_THROW(vertex_integrity(Graph(41, {})), Error);
}

TEST(Tetrahedron, SizeAndStrongBlocking) {
  for (int q : {2, 3, 4}) {
    for (int k = 2; k <= 6; ++k) {
      const PointSet t = tetrahedron(k, q);
      EXPECT_EQ(static_cast<int>(t.size()), k * (k - 1) / 2 * (q - 1) + k);
      if (k <= 5 || q <= 3) EXPECT_TRUE(is_strong_blocking(t, 1).holds()) << q << ' ' << k;
    }
    EXPECT_EQ(tetrahedron(2, q).size(), static_cast<std::size_t>(q + 1));
  }
  EXPECT_EQ(tetrahedron(3, 3).size(), 9u);
  EXPECT_EQ(tetrahedron(4, 2).size(), 10u);
}

TEST(GraphLines, CompleteGraphOnBasisIsTetrahedron) {
  for (int k = 2; k <= 5; ++k) {
    std::vector<Vec> basis;
    for (int i = 0; i < k; ++i) {
      Vec e(k, 0);
      e[i] = 1;
      basis.push_back(e);
    }
    const GraphLinesResult r = graph_lines_construction(projective(3, k, basis), Graph::complete(k));
    EXPECT_EQ(r.set, tetrahedron(k, 3));
    EXPECT_TRUE(r.condition);
    EXPECT_TRUE(check_main_const_hypothesis(projective(3, k, basis), Graph::complete(k)));
  }
}

TEST(GraphLines, BinarySixThreeThreeCode) {
  // Columns of a [6,3,3]_2 generator: the three basis points and the three
  // sums of two of them.
  const PointSet p = projective(2, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  EXPECT_EQ(min_distance(code_from_points(p)), 3);
  const GraphLinesResult r = graph_lines_construction(p, Graph::complete(6));
  EXPECT_EQ(r.d, 3);
  EXPECT_EQ(r.integrity, 6);
  EXPECT_TRUE(r.condition);
  EXPECT_TRUE(is_strong_blocking(r.set, 1).holds());

  const GraphLinesResult sparse = graph_lines_construction(p, Graph(6, {{0, 1}}));
  EXPECT_FALSE(sparse.condition);
  EXPECT_THROW(graph_lines_construction(p, Graph::complete(5)), Error);
  EXPECT_THROW(graph_lines_construction(projective(2, 3, {{1, 0, 0}, {0, 1, 0}}), Graph::complete(2)), Error);
}

TEST(GraphLines, HypothesisExamples) {
  for (int k = 2; k <= 4; ++k) {
    const PointSet t = tetrahedron(k, 3);
    EXPECT_TRUE(check_main_const_hypothesis(t, Graph::complete(static_cast<int>(t.size()))));
    EXPECT_FALSE(check_main_const_hypothesis(t, Graph(static_cast<int>(t.size()), {})));
  }
  EXPECT_THROW(check_main_const_hypothesis(tetrahedron(5, 3), Graph::complete(25)), Error);
}

TEST(GraphLines, RandomSuite) {
  RandomStream rng(52, 0);
  int condition_true = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int q = 2 + static_cast<int>(rng.below(2));
    const int k = 3 + static_cast<int>(rng.below(2));
    const Field& f = Field::of(q);
    auto pts = oracle::random_projective_set(f, k, 0.4, rng);
    if (pts.size() > 8) pts.resize(8);
    if (pts.empty() || oracle::rank(f, pts) < k) continue;
    const PointSet p = projective(q, k, pts);
    const Graph g = random_graph(static_cast<int>(p.size()), 0.4 + 0.6 * rng.unit(), rng);
    const GraphLinesResult r = graph_lines_construction(p, g);
    const bool strong = is_strong_blocking(r.set, 1).holds();
    if (r.condition) {
      ++condition_true;
      EXPECT_TRUE(strong);
    }
    if (check_main_const_hypothesis(p, g)) EXPECT_TRUE(strong);
    if (!g.has_isolated_vertex())
      for (const Vec& v : p.points()) EXPECT_TRUE(r.set.contains(v));
    EXPECT_EQ(r.integrity, vertex_integrity(g).value);
    EXPECT_EQ(r.d, min_distance(code_from_points(p)));
  }
  EXPECT_GT(condition_true, 5);
}

TEST(RandomBlocking, DrawCounts) {
  EXPECT_EQ(subspace_draws(3, 5, 2), 9);
  // Smallest m with (m + 1) rate >= N, checked in floating point away from ties.
  for (int q : {3, 4, 5}) {
    for (int k = 3; k <= 10; ++k) {
      for (int s = 2; s <= std::min(k, 4); ++s) {
        const double n = s * (k - s) + s + 2;
        const double rate = std::log(std::pow(q, 4) / (std::pow(q, 3) - q + 1)) / std::log(q);
        const int m = subspace_draws(q, k, s);
        EXPECT_GE((m + 1) * rate, n - 1e-9);
        if (m > 1) EXPECT_LT(m * rate, n + 1e-9);
      }
    }
  }
  for (int q : {2, 3}) {
    for (int k = 3; k <= 8; ++k) {
      const int s = 2;
      const double n = s * (k - s) + s + 2;
      const double rate = std::log(std::pow(q, s) / (std::pow(q, s) - 1)) / std::log(q);
      const int m = point_draws(q, k, s);
      EXPECT_GE(m * rate, n - 1e-9);
      EXPECT_LT((m - 1) * rate, n + 1e-9);
    }
  }
}

TEST(RandomBlocking, ReproducibleVerifiedAndSized) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RandomBlockingRequest req;
    req.q = 3;
    req.k = 5;
    req.s = 2;
    req.seed = seed;
    const ConstructionResult a = random_subspace_blocking(req);
    const ConstructionResult b = random_subspace_blocking(req);
    EXPECT_EQ(a.set, b.set);
    EXPECT_EQ(a.attempts, b.attempts);
    EXPECT_TRUE(a.verified);
    EXPECT_TRUE(is_affine_blocking(a.set, 2).holds());
    EXPECT_EQ(a.m, 9);
    EXPECT_LE(static_cast<int>(a.set.size()), 8 * a.m + 1);
    EXPECT_TRUE(is_union_of_lines(a.set));
  }
  RandomBlockingRequest other;
  other.k = 5;
  other.seed = 1;
  RandomBlockingRequest base;
  base.k = 5;
  EXPECT_NE(random_subspace_blocking(other).set, random_subspace_blocking(base).set);
}

TEST(RandomBlocking, StrategyOptions) {
  RandomBlockingRequest req;
  req.q = 2;
  req.k = 4;
  req.s = 2;
  req.strategy = Strategy::Points;
  const ConstructionResult r = random_subspace_blocking(req);
  EXPECT_EQ(r.m, point_draws(2, 4, 2));
  EXPECT_TRUE(is_affine_blocking(r.set, 2).holds());

  RandomBlockingRequest lines;
  lines.q = 3;
  lines.k = 4;
  lines.dim = 1;
  try {
    random_subspace_blocking(lines);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedStrategy);
  }
  lines.m = 40;
  EXPECT_TRUE(random_subspace_blocking(lines).verified);

  RandomBlockingRequest hopeless;
  hopeless.q = 3;
  hopeless.k = 4;
  hopeless.m = 1;
  hopeless.max_attempts = 3;
  try {
    random_subspace_blocking(hopeless);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RetriesExhausted);
  }
}

TEST(UniformSubspace, WholeSpaceAndUniformity) {
  const Field& f2 = Field::of(2);
  RandomStream rng(60, 0);
  const auto whole = uniform_subspace(Field::of(3), 3, 3, rng);
  EXPECT_EQ(whole.subspace, AffineSubspace::whole_space(Field::of(3), 3));

  // Chi-squared over the 7 lines of F_2^3 with 7000 draws; 6 degrees of
  // freedom, so the statistic stays far below 30 unless something is off.
  std::map<std::vector<Vec>, int> counts;
  int max_tries = 0;
  for (int i = 0; i < 7000; ++i) {
    const auto u = uniform_subspace(f2, 3, 1, rng);
    counts[u.subspace.points()]++;
    max_tries = std::max(max_tries, u.tries);
  }
  EXPECT_EQ(counts.size(), 7u);
  double chi2 = 0;
  for (auto& [pts, c] : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
  EXPECT_LT(chi2, 30.0);

  // Acceptance probability is at least 1/4 for every shape, so long retry
  // runs are vanishingly rare.
  long total = 0;
  for (int i = 0; i < 2000; ++i) total += uniform_subspace(f2, 4, 4, rng).tries;
  EXPECT_LT(total / 2000.0, 4.0);
}

TEST(RandomBlocking, SubspacesBeatPointsAtKEight) {
  double subspaces = 0;
  double points = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomBlockingRequest req;
    req.q = 3;
    req.k = 8;
    req.s = 2;
    req.seed = seed;
    subspaces += random_subspace_blocking(req).set.size();
    req.strategy = Strategy::Points;
    points += random_subspace_blocking(req).set.size();
  }
  EXPECT_LT(subspaces / 20, points / 20);
}
