#include "blockset/algebra/matrix.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "blockset/error.hpp"

namespace blockset {

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) noexcept {
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

Vec scaled(const Field& f, std::span<const Elem> v, Elem lambda) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.mul(v[i], lambda);
  return out;
}

Vec added(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

Vec negated(const Field& f, std::span<const Elem> v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.neg(v[i]);
  return out;
}

bool is_zero(std::span<const Elem> v) noexcept {
  for (Elem x : v)
    if (x != 0) return false;
  return true;
}

int weight(std::span<const Elem> v) noexcept {
  int w = 0;
  for (Elem x : v) w += x != 0;
  return w;
}

Vec projective_normal_form(const Field& f, std::span<const Elem> v) {
  for (Elem x : v) {
    if (x != 0) return scaled(f, v, f.inv(x));
  }
  throw Error(ErrorCode::InvalidArgument, "the zero vector has no projective point");
}

std::uint64_t vec_index(int q, std::span<const Elem> v) noexcept {
  std::uint64_t idx = 0;
  for (Elem x : v) idx = idx * static_cast<std::uint64_t>(q) + x;
  return idx;
}

Vec vec_from_index(int q, int k, std::uint64_t index) {
  Vec v(k);
  for (int i = k - 1; i >= 0; --i) {
    v[i] = static_cast<Elem>(index % q);
    index /= q;
  }
  return v;
}

std::optional<std::uint64_t> checked_power(std::uint64_t q, int k) noexcept {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > (std::uint64_t{1} << 62) / q) return std::nullopt;
    r *= q;
  }
  return r;
}

// ---------------------------------------------------------------------------

Matrix::Matrix(const Field& field, int rows, int cols)
    : field_(&field), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0) throw Error(ErrorCode::DimensionMismatch, "negative matrix dimension");
}

Matrix Matrix::from_rows(const Field& field, int cols, const std::vector<Vec>& rows) {
  Matrix m(field, static_cast<int>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(r) + " has length " +
                                                    std::to_string(rows[r].size()) + ", expected " +
                                                    std::to_string(cols));
    }
    for (int c = 0; c < cols; ++c) {
      if (rows[r][c] >= field.q()) throw Error(ErrorCode::InvalidArgument, "entry out of range");
      m(static_cast<int>(r), c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::identity(const Field& field, int n) {
  Matrix m(field, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vec Matrix::column(int c) const {
  Vec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<Vec> Matrix::row_list() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (int r = 0; r < rows_; ++r) out.push_back(row_vec(r));
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(*field_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vec Matrix::apply(std::span<const Elem> x) const {
  if (static_cast<int>(x.size()) != cols_) throw Error(ErrorCode::DimensionMismatch, "A x: bad length");
  Vec out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = dot(*field_, row(r), x);
  return out;
}

Vec Matrix::left_apply(std::span<const Elem> u) const {
  if (static_cast<int>(u.size()) != rows_) throw Error(ErrorCode::DimensionMismatch, "u A: bad length");
  const Field& f = *field_;
  Vec out(cols_, 0);
  for (int r = 0; r < rows_; ++r) {
    if (u[r] == 0) continue;
    for (int c = 0; c < cols_; ++c) out[c] = f.add(out[c], f.mul(u[r], (*this)(r, c)));
  }
  return out;
}

// ---------------------------------------------------------------------------

Echelon echelon(const Matrix& m) {
  const Field& f = m.field();
  Matrix a = m;
  std::vector<int> pivots;
  int lead = 0;
  for (int c = 0; c < a.cols() && lead < a.rows(); ++c) {
    int pr = -1;
    for (int r = lead; r < a.rows(); ++r) {
      if (a(r, c) != 0) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != lead) {
      for (int j = 0; j < a.cols(); ++j) std::swap(a(pr, j), a(lead, j));
    }
    const Elem inv = f.inv(a(lead, c));
    for (int j = 0; j < a.cols(); ++j) a(lead, j) = f.mul(a(lead, j), inv);
    for (int r = 0; r < a.rows(); ++r) {
      if (r == lead || a(r, c) == 0) continue;
      const Elem factor = a(r, c);
      for (int j = 0; j < a.cols(); ++j) a(r, j) = f.sub(a(r, j), f.mul(factor, a(lead, j)));
    }
    pivots.push_back(c);
    ++lead;
  }
  Matrix reduced(f, lead, a.cols());
  for (int r = 0; r < lead; ++r)
    for (int j = 0; j < a.cols(); ++j) reduced(r, j) = a(r, j);
  return {std::move(reduced), std::move(pivots)};
}

int rank(const Matrix& m) { return static_cast<int>(echelon(m).pivots.size()); }

int rank_of(const Field& field, int cols, const std::vector<Vec>& vectors) {
  return rank(Matrix::from_rows(field, cols, vectors));
}

std::vector<Vec> kernel_basis(const Matrix& a) {
  const Field& f = a.field();
  const Echelon e = echelon(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      v[e.pivots[r]] = f.neg(e.reduced(static_cast<int>(r), free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolution> solve_affine(const Matrix& a, std::span<const Elem> b) {
  if (static_cast<int>(b.size()) != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "right-hand side has length " + std::to_string(b.size()) +
                                                  " but the system has " + std::to_string(a.rows()) +
                                                  " equations");
  }
  const Field& f = a.field();
  Matrix aug(f, a.rows(), a.cols() + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const Echelon e = echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(a.cols(), 0);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    sol.particular[e.pivots[r]] = e.reduced(static_cast<int>(r), a.cols());
  }
  sol.kernel = kernel_basis(a);
  return sol;
}

// ---------------------------------------------------------------------------

RowSpace::RowSpace(const Matrix& m) : basis_(echelon(m).reduced), size_(1) {
  const auto size = checked_power(m.field().q(), basis_.rows());
  if (!size) throw Error(ErrorCode::CodeTooLarge, "row space does not fit in 63 bits");
  size_ = *size;
}

RowSpace::iterator::iterator(const RowSpace* owner, std::uint64_t index)
    : owner_(owner),
      index_(index),
      coeffs_(owner->basis_.rows(), 0),
      current_(owner->basis_.cols(), 0) {}

RowSpace::iterator& RowSpace::iterator::operator++() {
  ++index_;
  if (index_ >= owner_->size_) return *this;
  const Field& f = owner_->basis_.field();
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
    if (++coeffs_[i] < f.q()) break;
    coeffs_[i] = 0;
  }
  current_ = owner_->basis_.left_apply(coeffs_);
  return *this;
}

// ---------------------------------------------------------------------------

Matrix read_matrix(std::istream& in) {
  int q = 0;
  int rows = 0;
  int cols = 0;
  if (!(in >> q >> rows >> cols) || rows < 0 || cols < 0) {
    throw Error(ErrorCode::ParseError, "matrix header must be `q r c`");
  }
  const Field& f = Field::of(q);
  Matrix m(f, rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int x = -1;
      if (!(in >> x)) throw Error(ErrorCode::ParseError, "matrix body ended early");
      if (x < 0 || x >= q) throw Error(ErrorCode::ParseError, "entry " + std::to_string(x) + " out of range");
      m(r, c) = static_cast<Elem>(x);
    }
  }
  return m;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.field().q() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << static_cast<int>(m(r, c));
    }
    out << '\n';
  }
}

}  // namespace blockset
