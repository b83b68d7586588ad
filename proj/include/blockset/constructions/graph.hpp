#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "blockset/blocking/point_set.hpp"

namespace blockset {

/// Simple undirected graph; edges are stored as sorted pairs (i < j).
class Graph {
 public:
  /// Throws Error{InvalidArgument} on self-loops or out-of-range vertices.
  /// Duplicate edges are merged.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  static Graph complete(int n);
  static Graph path(int n);

  int n() const noexcept { return n_; }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  bool has_isolated_vertex() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

// Text format: header `n m`, then m lines `i j`.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

struct IntegrityResult {
  int value = 0;
  /// An optimal S, sorted. Lexicographically smallest among optimal sets
  /// when `exhaustive` is true.
  std::vector<int> separator;
  bool exhaustive = true;
};

/// min over S of |S| + (largest component of G - S).
/// Exhaustive for n <= 20, branch and bound for n <= 40, otherwise
/// Error{GraphTooLarge}.
IntegrityResult vertex_integrity(const Graph& g);

/// All points on the lines of PG(k-1, q) through the standard basis points
/// e_i, e_j (i < j).
PointSet tetrahedron(int k, int q);

struct GraphLinesResult {
  PointSet set;
  /// Minimum distance of the code whose columns are the points.
  int d = 0;
  int integrity = 0;
  /// integrity >= n - d + 1, which guarantees a strong blocking set.
  bool condition = false;
};

/// Union of the lines <P_i, P_j> over the edges ij of g. Vertex i is the
/// i-th point of `points` in stored order. Throws Error{NonSpanningPoints}.
GraphLinesResult graph_lines_construction(const PointSet& points, const Graph& g);

/// For every S subset of the vertices, some component C of G - S has
/// <S u C> equal to the whole space; when G - S is empty, <S> itself must
/// span. Throws Error{GraphTooLarge} for n > 20.
bool check_main_const_hypothesis(const PointSet& points, const Graph& g);

}  // namespace blockset
