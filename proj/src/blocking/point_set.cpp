#include "blockset/blocking/point_set.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "blockset/error.hpp"

namespace blockset {

std::string_view to_string(PointKind kind) noexcept {
  return kind == PointKind::Affine ? "affine" : "projective";
}

namespace {

bool index_less(int q, const Vec& a, const Vec& b) { return vec_index(q, a) < vec_index(q, b); }

}  // namespace

PointSet::PointSet(const Field& field, int k, PointKind kind, std::vector<Vec> points)
    : field_(&field), k_(k), kind_(kind) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "point sets need k >= 1");
  for (auto& p : points) {
    if (static_cast<int>(p.size()) != k) throw Error(ErrorCode::DimensionMismatch, "point has wrong length");
    for (Elem x : p)
      if (x >= field.q()) throw Error(ErrorCode::InvalidArgument, "coordinate out of range");
    if (kind == PointKind::Projective) {
      if (is_zero(p)) throw Error(ErrorCode::InvalidArgument, "the zero vector is not a projective point");
      p = projective_normal_form(field, p);
    }
  }
  const int q = field.q();
  std::sort(points.begin(), points.end(), [q](const Vec& a, const Vec& b) { return index_less(q, a, b); });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points_ = std::move(points);
}

bool PointSet::contains(std::span<const Elem> v) const {
  Vec key(v.begin(), v.end());
  if (kind_ == PointKind::Projective) {
    if (is_zero(key)) return false;
    key = projective_normal_form(*field_, key);
  }
  const int q = field_->q();
  return std::binary_search(points_.begin(), points_.end(), key,
                            [q](const Vec& a, const Vec& b) { return index_less(q, a, b); });
}

bool PointSet::contains_origin() const {
  return kind_ == PointKind::Affine && !points_.empty() && is_zero(points_.front());
}

PointSet lift_to_affine(const PointSet& lines) {
  if (lines.kind() != PointKind::Projective) throw Error(ErrorCode::InvalidArgument, "lift expects projective points");
  if (lines.empty()) throw Error(ErrorCode::InvalidArgument, "lift expects a nonempty set");
  const Field& f = lines.field();
  std::vector<Vec> out;
  out.reserve(lines.size() * (f.q() - 1) + 1);
  out.emplace_back(lines.k(), 0);
  for (const Vec& p : lines.points()) {
    for (int lambda = 1; lambda < f.q(); ++lambda) out.push_back(scaled(f, p, static_cast<Elem>(lambda)));
  }
  return PointSet(f, lines.k(), PointKind::Affine, std::move(out));
}

PointSet projective_support(const PointSet& affine) {
  std::vector<Vec> out;
  for (const Vec& v : affine.points()) {
    if (!is_zero(v)) out.push_back(v);
  }
  return PointSet(affine.field(), affine.k(), PointKind::Projective, std::move(out));
}

std::optional<std::vector<Vec>> symmetric_decomposition(const PointSet& affine) {
  if (affine.kind() != PointKind::Affine || !affine.contains_origin()) return std::nullopt;
  const Field& f = affine.field();
  std::vector<Vec> half;
  for (const Vec& v : affine.points()) {
    if (is_zero(v)) continue;
    const Vec minus = negated(f, v);
    if (!affine.contains(minus)) return std::nullopt;
    if (vec_index(f.q(), v) <= vec_index(f.q(), minus)) half.push_back(v);
  }
  return half;
}

bool is_union_of_lines(const PointSet& affine) {
  if (affine.kind() != PointKind::Affine || !affine.contains_origin()) return false;
  const Field& f = affine.field();
  for (const Vec& v : affine.points()) {
    for (int lambda = 2; lambda < f.q(); ++lambda) {
      if (!affine.contains(scaled(f, v, static_cast<Elem>(lambda)))) return false;
    }
  }
  return true;
}

PointSet read_point_set(std::istream& in) {
  int q = 0;
  int k = 0;
  long n = -1;
  std::string kind;
  if (!(in >> q >> k >> n >> kind) || n < 0) throw Error(ErrorCode::ParseError, "point-set header must be `q k n kind`");
  PointKind parsed;
  if (kind == "affine") {
    parsed = PointKind::Affine;
  } else if (kind == "projective") {
    parsed = PointKind::Projective;
  } else {
    throw Error(ErrorCode::ParseError, "unknown point-set kind `" + kind + "`");
  }
  const Field& f = Field::of(q);
  std::vector<Vec> points;
  points.reserve(n);
  for (long i = 0; i < n; ++i) {
    Vec p(k);
    for (int c = 0; c < k; ++c) {
      int x = -1;
      if (!(in >> x)) throw Error(ErrorCode::ParseError, "point-set body ended early");
      if (x < 0 || x >= q) throw Error(ErrorCode::ParseError, "coordinate " + std::to_string(x) + " out of range");
      p[c] = static_cast<Elem>(x);
    }
    points.push_back(std::move(p));
  }
  return PointSet(f, k, parsed, std::move(points));
}

void write_point_set(std::ostream& out, const PointSet& set) {
  out << set.field().q() << ' ' << set.k() << ' ' << set.size() << ' ' << to_string(set.kind()) << '\n';
  for (const Vec& p : set.points()) {
    for (int c = 0; c < set.k(); ++c) {
      if (c) out << ' ';
      out << static_cast<int>(p[c]);
    }
    out << '\n';
  }
}

}  // namespace blockset
