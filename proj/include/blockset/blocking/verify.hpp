#pragma once

#include <cstdint>
#include <optional>

#include "blockset/blocking/point_set.hpp"
#include "blockset/geometry/subspace.hpp"

namespace blockset {

enum class Outcome {
  Holds,
  Violated,
  /// Sampled run without a counterexample. Never upgraded to Holds.
  NoViolationFound,
};

std::string_view to_string(Outcome outcome) noexcept;

struct BlockingVerdict {
  Outcome outcome = Outcome::Violated;
  /// The first violating subspace in enumeration order (or in sample order).
  std::optional<AffineSubspace> witness;
  /// Subspaces examined; for a violation in exhaustive mode this is the
  /// 1-based position of the witness in enumeration order.
  std::uint64_t checked = 0;

  bool holds() const noexcept { return outcome == Outcome::Holds; }
};

struct VerifyOptions {
  unsigned threads = 1;
  /// Check this many uniformly random subspaces instead of all of them.
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
  std::uint64_t limit = 10'000'000;
};

/// Does B meet every affine subspace of codimension s of F_q^k?
/// Requires an affine set and 1 <= s <= k. Throws Error{UniverseTooLarge}.
BlockingVerdict is_affine_blocking(const PointSet& set, int s, const VerifyOptions& options = {});

/// Does L meet every codimension-t subspace W of PG(k-1, q) in a set that
/// spans W? Requires a projective set and 1 <= t <= k-1.
BlockingVerdict is_strong_blocking(const PointSet& set, int t, const VerifyOptions& options = {});

/// Re-checks a witness independently of the verifiers: an affine witness must
/// miss the set; a strong-blocking witness W must have rank(L n W) < dim W.
bool witness_violates_affine(const PointSet& set, const AffineSubspace& witness);
bool witness_violates_strong(const PointSet& set, const AffineSubspace& witness);

}  // namespace blockset
