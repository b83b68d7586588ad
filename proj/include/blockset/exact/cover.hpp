#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blockset/blocking/point_set.hpp"
#include "blockset/geometry/subspace.hpp"

namespace blockset {

/// A linear inequality sum_{l in sets} y_l >= rhs over line variables.
struct CoverCut {
  /// Normal vector a of the hyperplane a.x = c.
  Vec normal;
  /// c = 0 (lines inside the hyperplane) or c != 0 (lines meeting it).
  bool through_origin = false;
  std::vector<std::uint32_t> sets;
  int rhs = 0;
};

/// Minimum symmetric 2-blocking sets of F_3^k as a set cover over the lines
/// through the origin.
///
/// Sets are the points of PG(k-1, 3) in projective_points order. The universe
/// is every codimension-2 affine subspace avoiding the origin; line <p>
/// blocks W = {x : A x = b} iff A p = b or A p = -b.
///
/// Cuts: a symmetric 2-blocking set S meets every affine hyperplane H in an
/// affine 1-blocking set of H, so |S n H| >= 2k - 1. For H avoiding the
/// origin every line not parallel to H meets it in exactly one point, which
/// gives sum_{a.p != 0} y_p >= 2k - 1. For a linear hyperplane,
/// |S n H| = 1 + 2 #(lines inside), which gives sum_{a.p = 0} y_p >= k - 1.
/// H and -H yield the same cut, so there is one cut of each kind per normal.
struct CoverInstance {
  int k = 0;
  std::vector<Vec> sets;
  std::vector<AffineSubspace> universe;
  /// incidence[l]: sorted universe indices blocked by line l.
  std::vector<std::vector<std::uint32_t>> incidence;
  /// blockers[w]: sorted line indices blocking universe element w.
  std::vector<std::vector<std::uint32_t>> blockers;
  std::vector<CoverCut> cuts;
};

/// Throws Error{KTooLarge} unless 2 <= k <= 6.
CoverInstance build_instance(int k);

/// Lines whose union (with the origin) is `chosen`, as an affine point set.
PointSet lift_lines(const CoverInstance& inst, const std::vector<std::uint32_t>& chosen);

enum class SolveMode {
  /// Branch and bound with cut and packing lower bounds.
  BranchAndBound,
  /// All subsets by increasing size, in lexicographic order; no bounds.
  Exhaustive,
};

enum class SearchStatus { Optimal, TimeLimit };

struct SolveOptions {
  SolveMode mode = SolveMode::BranchAndBound;
  double time_limit_seconds = 600;
  /// Re-derive the lexicographically smallest optimal set (branch and bound
  /// mode only; exhaustive mode finds it directly).
  bool canonical = true;
};

struct SearchCertificate {
  int k = 0;
  SearchStatus status = SearchStatus::Optimal;
  /// Bracket on the optimum; lower == upper when status is Optimal.
  int lower = 0;
  int upper = 0;
  /// Best set found, as line indices (sorted) and as normalized points.
  std::vector<std::uint32_t> chosen_index;
  std::vector<Vec> chosen;
  bool canonical = false;
  std::uint64_t node_count = 0;
  double seconds = 0;
  std::vector<std::string> trace;

  int optimum() const noexcept { return upper; }
};

SearchCertificate solve_min_cover(const CoverInstance& inst, const SolveOptions& options = {});

/// One row of known values of b'_3(k, 2), the minimum size of a strong
/// blocking set of PG(k-1, 3), as a bracket.
struct BPrimeEntry {
  int k = 0;
  int lo = 0;
  int hi = 0;
  std::string source;
};

/// k = 1 (trivial), 2..4 as computed here, 5 and 6 as published brackets.
std::vector<BPrimeEntry> reference_bprime();

/// T_L(n) lies in [3^lo_exp, 3^hi_exp].
struct TlRow {
  int n = 0;
  int lo_exp = 0;
  int hi_exp = 0;
  bool exact() const noexcept { return lo_exp == hi_exp; }
};

/// T_L(n) >= 3^k iff b'_3(k, 2) <= n. Entries must cover k = 1.. without
/// gaps (Error{InsufficientData}); beyond the last entry the lower bound
/// 4(k - 1) is used.
std::vector<TlRow> tl_table(int n_max, const std::vector<BPrimeEntry>& bprime);

}  // namespace blockset
