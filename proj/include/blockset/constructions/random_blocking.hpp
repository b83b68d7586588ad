#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "blockset/blocking/point_set.hpp"
#include "blockset/geometry/subspace.hpp"
#include "blockset/random.hpp"

namespace blockset {

enum class Strategy {
  /// Union of m uniformly random subspaces through the origin.
  Subspaces,
  /// m uniformly random points of F_q^k.
  Points,
};

std::string_view to_string(Strategy strategy) noexcept;

struct RandomBlockingRequest {
  int q = 3;
  int k = 4;
  int s = 2;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::Subspaces;
  /// Dimension of the random subspaces; defaults to s.
  std::optional<int> dim;
  /// Number of draws; defaults to the smallest m the probabilistic argument
  /// allows (required when dim < s).
  std::optional<int> m;
  int max_attempts = 50;
  unsigned threads = 1;
};

struct ConstructionResult {
  PointSet set;
  Strategy strategy = Strategy::Subspaces;
  int q = 0;
  int k = 0;
  int s = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  int m = 0;
  int attempts = 0;
  bool verified = false;
};

/// Smallest integer m with (m + 1) log_q(q^4 / (q^3 - q + 1)) >= s(k-s)+s+2,
/// decided exactly in integers.
int subspace_draws(int q, int k, int s);

/// Smallest integer m with m log_q(q^s / (q^s - 1)) >= s(k-s)+s+2.
int point_draws(int q, int k, int s);

/// Draws until the union is an affine s-blocking set. Draw j of attempt a
/// uses RandomStream(seed, a * 2^32 + j). Throws Error{RetriesExhausted}
/// after max_attempts failures and Error{UnsupportedStrategy} when no m is
/// known for the requested strategy.
ConstructionResult random_subspace_blocking(const RandomBlockingRequest& request);

struct UniformSubspace {
  AffineSubspace subspace;
  int tries = 0;
};

/// Uniform dim-dimensional subspace through the origin (rejection sampling of
/// a dim x k matrix until it has full rank).
UniformSubspace uniform_subspace(const Field& field, int k, int dim, RandomStream& rng);

}  // namespace blockset
