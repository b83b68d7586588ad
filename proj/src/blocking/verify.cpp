#include "blockset/blocking/verify.hpp"

#include <string>

#include "blockset/error.hpp"
#include "blockset/geometry/qbinomial.hpp"
#include "blockset/parallel.hpp"

namespace blockset {

std::string_view to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::Holds: return "holds";
    case Outcome::Violated: return "violated";
    case Outcome::NoViolationFound: return "no-violation-found";
  }
  return "?";
}

namespace {

// Dot products of every vector of F_q^k with every point, when that table is
// small enough; otherwise rows are decoded on demand.
class DotSource {
 public:
  DotSource(const Field& f, int k, const std::vector<Vec>& points) : f_(f), k_(k), points_(points) {
    const auto space = checked_power(f.q(), k);
    const std::uint64_t cells = *space * points.size();
    if (cells <= (std::uint64_t{1} << 26)) {
      table_.resize(cells);
      for (std::uint64_t r = 0; r < *space; ++r) {
        const Vec row = vec_from_index(f.q(), k, r);
        for (std::size_t j = 0; j < points.size(); ++j) table_[r * points.size() + j] = dot(f, row, points[j]);
      }
    }
  }

  // Writes <row, p_j> for all j into out.
  void fill(std::uint32_t row_index, std::vector<Elem>& out) const {
    const std::size_t n = points_.size();
    out.resize(n);
    if (!table_.empty()) {
      const Elem* base = table_.data() + static_cast<std::size_t>(row_index) * n;
      std::copy(base, base + n, out.begin());
      return;
    }
    const Vec row = vec_from_index(f_.q(), k_, row_index);
    for (std::size_t j = 0; j < n; ++j) out[j] = dot(f_, row, points_[j]);
  }

 private:
  const Field& f_;
  int k_;
  const std::vector<Vec>& points_;
  std::vector<Elem> table_;
};

void check_range(int value, int lo, int hi, const char* what) {
  if (value < lo || value > hi) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// Incremental rank of a list of vectors, stopping once `target` is reached.
bool reaches_rank(const Field& f, const std::vector<const Vec*>& vectors, int target) {
  if (target <= 0) return true;
  std::vector<Vec> basis;
  std::vector<int> pivots;
  for (const Vec* v : vectors) {
    Vec x = *v;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Elem c = x[pivots[i]];
      if (c != 0) x = added(f, x, scaled(f, basis[i], f.neg(c)));
    }
    int pivot = -1;
    for (int c = 0; c < static_cast<int>(x.size()); ++c) {
      if (x[c] != 0) {
        pivot = c;
        break;
      }
    }
    if (pivot < 0) continue;
    x = scaled(f, x, f.inv(x[pivot]));
    // Keep the basis reduced in the new pivot column.
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Elem c = basis[i][pivot];
      if (c != 0) basis[i] = added(f, basis[i], scaled(f, x, f.neg(c)));
    }
    basis.push_back(std::move(x));
    pivots.push_back(pivot);
    if (static_cast<int>(basis.size()) >= target) return true;
  }
  return false;
}

Vec random_vector(const Field& f, int len, RandomStream& rng) {
  Vec v(len);
  for (auto& x : v) x = static_cast<Elem>(rng.below(f.q()));
  return v;
}

}  // namespace

BlockingVerdict is_affine_blocking(const PointSet& set, int s, const VerifyOptions& options) {
  if (set.kind() != PointKind::Affine) throw Error(ErrorCode::InvalidArgument, "affine blocking needs an affine set");
  const int k = set.k();
  check_range(s, 1, k, "s");
  const Field& f = set.field();
  const int q = f.q();
  const std::uint64_t images = *checked_power(q, s);

  BlockingVerdict verdict;
  if (options.sample) {
    for (std::uint64_t i = 0; i < *options.sample; ++i) {
      RandomStream rng(options.seed, i);
      const Matrix a = random_full_rank(f, s, k, rng);
      const AffineSubspace w(a, random_vector(f, s, rng));
      verdict.checked = i + 1;
      if (witness_violates_affine(set, w)) {
        verdict.witness = w;
        return verdict;
      }
    }
    verdict.outcome = Outcome::NoViolationFound;
    return verdict;
  }

  const BigInt universe = qbin(k, s, q) * images;
  if (universe > options.limit) {
    throw Error(ErrorCode::UniverseTooLarge,
                universe.str() + " subspaces exceed the limit of " + std::to_string(options.limit));
  }
  const EchelonFamily family(f, s, k, options.limit);
  const DotSource dots(f, k, set.points());
  const std::size_t n = set.size();

  // Position of a hit: matrix index * q^s + index of the first missed b.
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
    std::vector<std::uint32_t> stamp(images, 0);
    std::vector<Elem> buf;
    std::vector<std::uint32_t> code(n);
    std::uint32_t current = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      ++current;
      std::fill(code.begin(), code.end(), 0);
      for (int r = 0; r < s; ++r) {
        dots.fill(family.row_index(i, r), buf);
        for (std::size_t j = 0; j < n; ++j) code[j] = code[j] * q + buf[j];
      }
      std::uint64_t distinct = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (stamp[code[j]] != current) {
          stamp[code[j]] = current;
          ++distinct;
        }
      }
      if (distinct == images) continue;
      for (std::uint64_t b = 0; b < images; ++b) {
        if (stamp[b] != current) return i * images + b;
      }
    }
    return std::nullopt;
  };

  const auto hit = parallel_first(family.size(), options.threads, scan);
  if (!hit) {
    verdict.outcome = Outcome::Holds;
    verdict.checked = family.size() * images;
    return verdict;
  }
  const std::uint64_t i = *hit / images;
  verdict.witness = AffineSubspace(family.matrix(i), vec_from_index(q, s, *hit % images));
  verdict.checked = *hit + 1;
  return verdict;
}

BlockingVerdict is_strong_blocking(const PointSet& set, int t, const VerifyOptions& options) {
  if (set.kind() != PointKind::Projective) {
    throw Error(ErrorCode::InvalidArgument, "strong blocking needs a projective set");
  }
  const int k = set.k();
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "strong blocking needs k >= 2");
  check_range(t, 1, k - 1, "t");
  const Field& f = set.field();

  BlockingVerdict verdict;
  if (options.sample) {
    for (std::uint64_t i = 0; i < *options.sample; ++i) {
      RandomStream rng(options.seed, i);
      const AffineSubspace w(random_full_rank(f, t, k, rng), Vec(t, 0));
      verdict.checked = i + 1;
      if (witness_violates_strong(set, w)) {
        verdict.witness = w;
        return verdict;
      }
    }
    verdict.outcome = Outcome::NoViolationFound;
    return verdict;
  }

  const EchelonFamily family(f, t, k, options.limit);
  const DotSource dots(f, k, set.points());
  const std::size_t n = set.size();
  const int target = k - t;

  auto scan = [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
    std::vector<Elem> buf;
    std::vector<char> inside(n);
    std::vector<const Vec*> members;
    for (std::uint64_t i = lo; i < hi; ++i) {
      std::fill(inside.begin(), inside.end(), 1);
      for (int r = 0; r < t; ++r) {
        dots.fill(family.row_index(i, r), buf);
        for (std::size_t j = 0; j < n; ++j)
          if (buf[j] != 0) inside[j] = 0;
      }
      members.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (inside[j]) members.push_back(&set.points()[j]);
      if (static_cast<int>(members.size()) < target || !reaches_rank(f, members, target)) return i;
    }
    return std::nullopt;
  };

  const auto hit = parallel_first(family.size(), options.threads, scan);
  if (!hit) {
    verdict.outcome = Outcome::Holds;
    verdict.checked = family.size();
    return verdict;
  }
  verdict.witness = AffineSubspace(family.matrix(*hit), Vec(t, 0));
  verdict.checked = *hit + 1;
  return verdict;
}

bool witness_violates_affine(const PointSet& set, const AffineSubspace& witness) {
  for (const Vec& p : set.points()) {
    if (witness.contains(p)) return false;
  }
  return true;
}

bool witness_violates_strong(const PointSet& set, const AffineSubspace& witness) {
  if (!witness.through_origin()) return false;
  std::vector<Vec> inside;
  for (const Vec& p : set.points()) {
    if (witness.contains(p)) inside.push_back(p);
  }
  return rank_of(set.field(), set.k(), inside) < witness.dim();
}

}  // namespace blockset
