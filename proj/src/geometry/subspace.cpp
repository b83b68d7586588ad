#include "blockset/geometry/subspace.hpp"

#include <string>

#include "blockset/error.hpp"
#include "blockset/geometry/qbinomial.hpp"

namespace blockset {

AffineSubspace::AffineSubspace(const Matrix& dual, std::span<const Elem> rhs)
    : dual_(dual.field(), 0, dual.cols()) {
  if (static_cast<int>(rhs.size()) != dual.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "dual matrix and right-hand side disagree");
  }
  const Field& f = dual.field();
  const int k = dual.cols();
  Matrix aug(f, dual.rows(), k + 1);
  for (int r = 0; r < dual.rows(); ++r) {
    for (int c = 0; c < k; ++c) aug(r, c) = dual(r, c);
    aug(r, k) = rhs[r];
  }
  const Echelon e = echelon(aug);
  if (static_cast<int>(e.pivots.size()) != dual.rows() || (!e.pivots.empty() && e.pivots.back() == k)) {
    throw Error(ErrorCode::RankDeficient, "dual matrix must have full row rank");
  }
  dual_ = Matrix(f, dual.rows(), k);
  rhs_.assign(dual.rows(), 0);
  for (int r = 0; r < dual.rows(); ++r) {
    for (int c = 0; c < k; ++c) dual_(r, c) = e.reduced(r, c);
    rhs_[r] = e.reduced(r, k);
  }
}

AffineSubspace AffineSubspace::from_parametric(const Field& field, int k, const std::vector<Vec>& basis,
                                               std::span<const Elem> offset) {
  if (static_cast<int>(offset.size()) != k) throw Error(ErrorCode::DimensionMismatch, "offset length");
  const Matrix spanning = Matrix::from_rows(field, k, basis);
  const std::vector<Vec> annihilator = kernel_basis(spanning);
  const Matrix dual = Matrix::from_rows(field, k, annihilator);
  const Vec rhs = dual.apply(offset);
  return AffineSubspace(dual, rhs);
}

AffineSubspace AffineSubspace::whole_space(const Field& field, int k) {
  return AffineSubspace(Matrix(field, 0, k), Vec{}, true);
}

bool AffineSubspace::contains(std::span<const Elem> x) const {
  const Field& f = field();
  for (int r = 0; r < dual_.rows(); ++r) {
    if (dot(f, dual_.row(r), x) != rhs_[r]) return false;
  }
  return true;
}

Vec AffineSubspace::base_point() const { return solve_affine(dual_, rhs_)->particular; }

std::vector<Vec> AffineSubspace::points() const {
  const Field& f = field();
  const AffineSolution sol = *solve_affine(dual_, rhs_);
  const int d = static_cast<int>(sol.kernel.size());
  const auto count = checked_power(f.q(), d);
  if (!count || *count > 100'000'000) throw Error(ErrorCode::UniverseTooLarge, "too many points");
  std::vector<Vec> out;
  out.reserve(*count);
  Vec coeffs(d, 0);
  for (std::uint64_t i = 0; i < *count; ++i) {
    Vec x = sol.particular;
    for (int j = 0; j < d; ++j) {
      if (coeffs[j] == 0) continue;
      for (int c = 0; c < ambient_dim(); ++c) x[c] = f.add(x[c], f.mul(coeffs[j], sol.kernel[j][c]));
    }
    out.push_back(std::move(x));
    for (int j = d - 1; j >= 0; --j) {
      if (++coeffs[j] < f.q()) break;
      coeffs[j] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

EchelonFamily::EchelonFamily(const Field& field, int rows, int cols, std::uint64_t limit)
    : field_(&field), rows_(rows), cols_(cols) {
  if (rows < 0 || rows > cols) throw Error(ErrorCode::InvalidArgument, "need 0 <= rows <= cols");
  const auto space = checked_power(field.q(), cols);
  if (!space || *space > std::uint64_t{0xFFFFFFFF}) {
    throw Error(ErrorCode::UniverseTooLarge, "ambient space too large to index");
  }
  const BigInt expected = qbin(cols, rows, field.q());
  if (expected > limit) {
    throw Error(ErrorCode::UniverseTooLarge,
                expected.str() + " subspaces exceed the limit of " + std::to_string(limit));
  }
  count_ = expected.convert_to<std::uint64_t>();
  rows_data_.reserve(count_ * rows);

  const int q = field.q();
  std::vector<int> pivots(rows);
  for (int i = 0; i < rows; ++i) pivots[i] = i;
  std::uint64_t produced = 0;
  while (true) {
    // Free positions (row, col) in row-major order.
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::pair<int, int>> free;
    for (int r = 0; r < rows; ++r)
      for (int c = pivots[r] + 1; c < cols; ++c)
        if (!is_pivot[c]) free.emplace_back(r, c);

    std::vector<int> digits(free.size(), 0);
    while (true) {
      std::vector<Vec> m(rows, Vec(cols, 0));
      for (int r = 0; r < rows; ++r) m[r][pivots[r]] = 1;
      for (std::size_t j = 0; j < free.size(); ++j) {
        m[free[j].first][free[j].second] = static_cast<Elem>(digits[j]);
      }
      for (int r = 0; r < rows; ++r) rows_data_.push_back(static_cast<std::uint32_t>(vec_index(q, m[r])));
      ++produced;
      int j = static_cast<int>(free.size()) - 1;
      for (; j >= 0; --j) {
        if (++digits[j] < q) break;
        digits[j] = 0;
      }
      if (j < 0) break;
    }

    // Next combination of pivot columns.
    int i = rows - 1;
    while (i >= 0 && pivots[i] == cols - rows + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < rows; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  if (produced != count_) throw std::logic_error("echelon enumeration count mismatch");
}

Matrix EchelonFamily::matrix(std::uint64_t i) const {
  Matrix m(*field_, rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    const Vec v = vec_from_index(field_->q(), cols_, row_index(i, r));
    for (int c = 0; c < cols_; ++c) m(r, c) = v[c];
  }
  return m;
}

std::uint64_t filtered_rhs_count(int q, int codim, OriginFilter filter) noexcept {
  const std::uint64_t all = *checked_power(q, codim);
  switch (filter) {
    case OriginFilter::All: return all;
    case OriginFilter::ThroughOrigin: return 1;
    case OriginFilter::AvoidingOrigin: return all - 1;
  }
  return all;
}

void for_each_affine_subspace(const Field& field, int k, int codim, OriginFilter filter,
                              const std::function<void(const AffineSubspace&)>& fn, std::uint64_t limit) {
  if (codim < 0 || codim > k) throw Error(ErrorCode::InvalidArgument, "need 0 <= codim <= k");
  const BigInt total = qbin(k, codim, field.q()) * filtered_rhs_count(field.q(), codim, filter);
  if (total > limit) {
    throw Error(ErrorCode::UniverseTooLarge,
                total.str() + " subspaces exceed the limit of " + std::to_string(limit));
  }
  const EchelonFamily family(field, codim, k, limit);
  const std::uint64_t rhs_count = *checked_power(field.q(), codim);
  for (std::uint64_t i = 0; i < family.size(); ++i) {
    const Matrix dual = family.matrix(i);
    for (std::uint64_t b = 0; b < rhs_count; ++b) {
      if (filter == OriginFilter::ThroughOrigin && b != 0) break;
      if (filter == OriginFilter::AvoidingOrigin && b == 0) continue;
      fn(AffineSubspace(dual, vec_from_index(field.q(), codim, b)));
    }
  }
}

std::vector<AffineSubspace> enumerate_affine_subspaces(const Field& field, int k, int codim,
                                                       OriginFilter filter, std::uint64_t limit) {
  std::vector<AffineSubspace> out;
  for_each_affine_subspace(
      field, k, codim, filter, [&](const AffineSubspace& s) { out.push_back(s); }, limit);
  return out;
}

Matrix random_full_rank(const Field& field, int rows, int cols, RandomStream& rng, int* tries) {
  if (rows < 0 || rows > cols) throw Error(ErrorCode::InvalidArgument, "need 0 <= rows <= cols");
  int drawn = 0;
  while (true) {
    Matrix m(field, rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = static_cast<Elem>(rng.below(field.q()));
    ++drawn;
    if (rank(m) == rows) {
      if (tries) *tries = drawn;
      return m;
    }
  }
}

std::vector<Vec> projective_points(const Field& field, int k) {
  const auto total = checked_power(field.q(), k);
  if (!total || *total > 100'000'000) throw Error(ErrorCode::UniverseTooLarge, "projective space too large");
  std::vector<Vec> out;
  for (std::uint64_t i = 1; i < *total; ++i) {
    Vec v = vec_from_index(field.q(), k, i);
    for (Elem x : v) {
      if (x == 0) continue;
      if (x == 1) out.push_back(std::move(v));
      break;
    }
  }
  return out;
}

}  // namespace blockset
