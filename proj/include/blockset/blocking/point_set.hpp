#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "blockset/algebra/matrix.hpp"

namespace blockset {

enum class PointKind { Affine, Projective };

std::string_view to_string(PointKind kind) noexcept;

/// A set of points of F_q^k (affine) or PG(k-1, q) (projective).
///
/// Points are deduplicated and kept sorted by vec_index. Projective points
/// are stored in normal form (first nonzero coordinate 1); the zero vector is
/// rejected for projective sets.
class PointSet {
 public:
  PointSet(const Field& field, int k, PointKind kind, std::vector<Vec> points = {});

  const Field& field() const noexcept { return *field_; }
  int k() const noexcept { return k_; }
  PointKind kind() const noexcept { return kind_; }
  const std::vector<Vec>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  /// Membership; projective queries are normalized first.
  bool contains(std::span<const Elem> v) const;
  bool contains_origin() const;

  friend bool operator==(const PointSet& a, const PointSet& b) noexcept {
    return a.field_ == b.field_ && a.k_ == b.k_ && a.kind_ == b.kind_ && a.points_ == b.points_;
  }

 private:
  const Field* field_;
  int k_;
  PointKind kind_;
  std::vector<Vec> points_;
};

/// Union of the lines through the origin spanned by the points of `lines`.
/// The result always contains the origin and has (q-1)|L| + 1 points.
PointSet lift_to_affine(const PointSet& lines);

/// The projective points [v] for the nonzero v in an affine set.
PointSet projective_support(const PointSet& affine);

/// If S contains the origin and is closed under negation, returns B with
/// S = {0} u B u -B, taking the lexicographically smaller vector of each
/// pair {v, -v}.
std::optional<std::vector<Vec>> symmetric_decomposition(const PointSet& affine);

/// True when S is a union of lines through the origin (including the origin).
bool is_union_of_lines(const PointSet& affine);

// Text format: header `q k n kind`, kind in {affine, projective}, then n rows.
PointSet read_point_set(std::istream& in);
void write_point_set(std::ostream& out, const PointSet& set);

}  // namespace blockset
