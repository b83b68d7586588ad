#include "blockset/constructions/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "blockset/codes/code.hpp"
#include "blockset/error.hpp"

namespace blockset {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (a == b) throw Error(ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

bool Graph::has_isolated_vertex() const {
  std::vector<bool> touched(n_, false);
  for (auto [a, b] : edges_) touched[a] = touched[b] = true;
  return std::find(touched.begin(), touched.end(), false) != touched.end();
}

Graph read_graph(std::istream& in) {
  int n = -1;
  long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw Error(ErrorCode::ParseError, "graph header must be `n m`");
  std::vector<std::pair<int, int>> edges;
  for (long i = 0; i < m; ++i) {
    int a = 0;
    int b = 0;
    if (!(in >> a >> b)) throw Error(ErrorCode::ParseError, "graph body ended early");
    edges.emplace_back(a, b);
  }
  return Graph(n, std::move(edges));
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edges().size() << '\n';
  for (auto [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency(const Graph& g) {
  std::vector<Mask> adj(g.n(), 0);
  for (auto [a, b] : g.edges()) {
    adj[a] |= Mask{1} << b;
    adj[b] |= Mask{1} << a;
  }
  return adj;
}

Mask component_of(const std::vector<Mask>& adj, Mask alive, int start) {
  Mask comp = Mask{1} << start;
  Mask frontier = comp;
  while (frontier) {
    const int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    const Mask fresh = adj[v] & alive & ~comp;
    comp |= fresh;
    frontier |= fresh;
  }
  return comp;
}

int largest_component(const std::vector<Mask>& adj, Mask alive) {
  int best = 0;
  while (alive) {
    const Mask comp = component_of(adj, alive, std::countr_zero(alive));
    best = std::max(best, std::popcount(comp));
    alive &= ~comp;
  }
  return best;
}

std::vector<int> members(Mask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

// Minimum number of removals leaving only components of size <= cap, by
// deciding vertices one at a time (removed or kept). A kept component K with
// undecided neighbourhood N can absorb at most cap - |K| of N, so the rest of
// N must be removed; components with disjoint neighbourhoods add up.
class CapSearch {
 public:
  CapSearch(const std::vector<Mask>& adj, Mask all, int cap, int limit)
      : adj_(adj), all_(all), cap_(cap), best_(limit) {}

  // Returns true if a solution with fewer than `limit` removals exists.
  bool run() {
    dfs(0, 0);
    return found_;
  }
  Mask removed() const noexcept { return best_mask_; }

 private:
  int lower_bound(Mask removed, Mask kept) const {
    const Mask undecided = all_ & ~removed & ~kept;
    Mask used = 0;
    int total = 0;
    for (Mask rest = kept; rest;) {
      const Mask comp = component_of(adj_, kept, std::countr_zero(rest));
      rest &= ~comp;
      Mask nb = 0;
      for (Mask m = comp; m; m &= m - 1) nb |= adj_[std::countr_zero(m)];
      nb &= undecided;
      const int deficit = std::popcount(nb) - (cap_ - std::popcount(comp));
      if (deficit > 0 && !(nb & used)) {
        total += deficit;
        used |= nb;
      }
    }
    return total;
  }

  void dfs(Mask removed, Mask kept) {
    const int r = std::popcount(removed);
    if (r + lower_bound(removed, kept) >= best_) return;
    const Mask alive = all_ & ~removed;
    Mask big = 0;
    for (Mask rest = alive; rest;) {
      const Mask comp = component_of(adj_, alive, std::countr_zero(rest));
      rest &= ~comp;
      if (std::popcount(comp) > cap_) {
        big = comp;
        break;
      }
    }
    if (!big) {
      best_ = r;
      best_mask_ = removed;
      found_ = true;
      return;
    }
    // Branch on the undecided vertex of the big component with the most
    // kept neighbours, then the most neighbours overall.
    int v = -1;
    std::pair<int, int> key{-1, -1};
    for (Mask m = big & ~kept; m; m &= m - 1) {
      const int w = std::countr_zero(m);
      const std::pair<int, int> k{std::popcount(adj_[w] & kept), std::popcount(adj_[w] & big)};
      if (k > key) {
        key = k;
        v = w;
      }
    }
    if (v < 0) return;  // all kept, cannot happen after the kept-size check
    const Mask bit = Mask{1} << v;
    dfs(removed | bit, kept);
    if (std::popcount(component_of(adj_, kept | bit, v)) <= cap_) dfs(removed, kept | bit);
  }

  const std::vector<Mask>& adj_;
  Mask all_;
  int cap_;
  int best_;
  Mask best_mask_ = 0;
  bool found_ = false;
};

// Incremental rank over a fixed set of vectors.
int span_rank(const Field& f, int k, const std::vector<Vec>& pts, Mask subset) {
  std::vector<Vec> chosen;
  for (int v : members(subset)) chosen.push_back(pts[v]);
  return rank_of(f, k, chosen);
}

}  // namespace

IntegrityResult vertex_integrity(const Graph& g) {
  const int n = g.n();
  if (n > 40) throw Error(ErrorCode::GraphTooLarge, "vertex integrity supports n <= 40");
  const auto adj = adjacency(g);
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  IntegrityResult best{n, {}, n <= 20};
  if (n == 0) return {0, {}, true};
  if (n <= 20) {
    for (Mask s = 0; s <= all; ++s) {
      const int value = std::popcount(s) + largest_component(adj, all & ~s);
      if (value > best.value) continue;
      std::vector<int> sep = members(s);
      if (value < best.value || sep < best.separator) best = {value, std::move(sep), true};
    }
    return best;
  }
  best.value = largest_component(adj, all);
  for (int cap = 1; cap < best.value; ++cap) {
    CapSearch search(adj, all, cap, best.value - cap);
    if (search.run()) {
      best.value = std::popcount(search.removed()) + largest_component(adj, all & ~search.removed());
      best.separator = members(search.removed());
    }
  }
  return best;
}

PointSet tetrahedron(int k, int q) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "tetrahedron needs k >= 2");
  const Field& f = Field::of(q);
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      for (int mu = 0; mu < q; ++mu) {
        Vec v(k, 0);
        v[i] = 1;
        v[j] = static_cast<Elem>(mu);
        pts.push_back(std::move(v));
      }
      Vec e(k, 0);
      e[j] = 1;
      pts.push_back(std::move(e));
    }
  }
  return PointSet(f, k, PointKind::Projective, std::move(pts));
}

GraphLinesResult graph_lines_construction(const PointSet& points, const Graph& g) {
  if (points.kind() != PointKind::Projective) throw Error(ErrorCode::InvalidArgument, "expected projective points");
  if (static_cast<int>(points.size()) != g.n()) {
    throw Error(ErrorCode::DimensionMismatch, "graph must have one vertex per point");
  }
  const Field& f = points.field();
  const int k = points.k();
  if (rank_of(f, k, points.points()) != k) throw Error(ErrorCode::NonSpanningPoints, "points do not span");
  std::vector<Vec> out;
  for (auto [a, b] : g.edges()) {
    const Vec& pa = points.points()[a];
    const Vec& pb = points.points()[b];
    out.push_back(pb);
    for (int mu = 0; mu < f.q(); ++mu) out.push_back(added(f, pa, scaled(f, pb, static_cast<Elem>(mu))));
  }
  const int n = g.n();
  const int d = n - max_hyperplane_intersection(points, std::vector<int>(points.size(), 1));
  const int integrity = vertex_integrity(g).value;
  return {PointSet(f, k, PointKind::Projective, std::move(out)), d, integrity, integrity >= n - d + 1};
}

bool check_main_const_hypothesis(const PointSet& points, const Graph& g) {
  const int n = g.n();
  if (n > 20) throw Error(ErrorCode::GraphTooLarge, "hypothesis check supports n <= 20");
  if (static_cast<int>(points.size()) != n) throw Error(ErrorCode::DimensionMismatch, "one vertex per point");
  const Field& f = points.field();
  const int k = points.k();
  const auto adj = adjacency(g);
  const Mask all = (Mask{1} << n) - 1;
  for (Mask s = 0; s <= all; ++s) {
    Mask alive = all & ~s;
    if (!alive) {
      if (span_rank(f, k, points.points(), s) != k) return false;
      continue;
    }
    bool found = false;
    while (alive && !found) {
      const Mask comp = component_of(adj, alive, std::countr_zero(alive));
      alive &= ~comp;
      found = span_rank(f, k, points.points(), s | comp) == k;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace blockset
