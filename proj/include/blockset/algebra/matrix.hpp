#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "blockset/algebra/field.hpp"

namespace blockset {

/// A vector of F_q^k; coordinates are canonical element encodings.
using Vec = std::vector<Elem>;

// ---------------------------------------------------------------------------
// Vector helpers. All of them take the field explicitly.

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) noexcept;
Vec scaled(const Field& f, std::span<const Elem> v, Elem lambda);
Vec added(const Field& f, std::span<const Elem> a, std::span<const Elem> b);
Vec negated(const Field& f, std::span<const Elem> v);
bool is_zero(std::span<const Elem> v) noexcept;
int weight(std::span<const Elem> v) noexcept;

/// Scales a nonzero vector so that its first nonzero coordinate is 1.
Vec projective_normal_form(const Field& f, std::span<const Elem> v);

/// Index of v in F_q^k with the first coordinate as most significant digit.
std::uint64_t vec_index(int q, std::span<const Elem> v) noexcept;
Vec vec_from_index(int q, int k, std::uint64_t index);

/// q^k, or nullopt if it does not fit in 63 bits.
std::optional<std::uint64_t> checked_power(std::uint64_t q, int k) noexcept;

// ---------------------------------------------------------------------------

/// Dense row-major matrix over an interned field.
class Matrix {
 public:
  Matrix(const Field& field, int rows, int cols);
  /// All rows must have length `cols`; throws Error{DimensionMismatch}.
  static Matrix from_rows(const Field& field, int cols, const std::vector<Vec>& rows);
  static Matrix identity(const Field& field, int n);

  const Field& field() const noexcept { return *field_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Elem operator()(int r, int c) const noexcept { return data_[r * cols_ + c]; }
  Elem& operator()(int r, int c) noexcept { return data_[r * cols_ + c]; }

  std::span<const Elem> row(int r) const noexcept {
    return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  Vec row_vec(int r) const { return Vec(row(r).begin(), row(r).end()); }
  Vec column(int c) const;
  std::vector<Vec> row_list() const;

  Matrix transposed() const;
  /// A x for x of length cols().
  Vec apply(std::span<const Elem> x) const;
  /// u A for u of length rows().
  Vec left_apply(std::span<const Elem> u) const;

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  const Field* field_;
  int rows_;
  int cols_;
  std::vector<Elem> data_;
};

/// Reduced row echelon form with zero rows dropped. Pivots are chosen as the
/// first nonzero entry scanning columns left to right, rows top to bottom.
struct Echelon {
  Matrix reduced;
  std::vector<int> pivots;  // pivot column of each row of `reduced`
};

Echelon echelon(const Matrix& m);
int rank(const Matrix& m);
/// Rank of a list of vectors of common length `cols`.
int rank_of(const Field& field, int cols, const std::vector<Vec>& vectors);

/// Basis of {x : A x = 0}.
std::vector<Vec> kernel_basis(const Matrix& a);

struct AffineSolution {
  Vec particular;
  std::vector<Vec> kernel;
};

/// Solution set of A x = b, or nullopt when the system is inconsistent.
/// Throws Error{DimensionMismatch} if b.size() != A.rows().
std::optional<AffineSolution> solve_affine(const Matrix& a, std::span<const Elem> b);

/// The codewords of the row space of a matrix, each exactly once.
///
/// Codewords are the combinations c_1 r_1 + ... + c_r r_r of the reduced
/// echelon basis, in lexicographic order of (c_1, ..., c_r).
class RowSpace {
 public:
  explicit RowSpace(const Matrix& m);

  class iterator {
   public:
    using value_type = Vec;
    using difference_type = std::ptrdiff_t;
    using reference = const Vec&;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    reference operator*() const noexcept { return current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) noexcept {
      return a.index_ == b.index_;
    }

   private:
    friend class RowSpace;
    iterator(const RowSpace* owner, std::uint64_t index);

    const RowSpace* owner_ = nullptr;
    std::uint64_t index_ = 0;
    Vec coeffs_;
    Vec current_;
  };

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, size_); }
  std::uint64_t size() const noexcept { return size_; }
  int dimension() const noexcept { return basis_.rows(); }

 private:
  Matrix basis_;
  std::uint64_t size_;
};

// ---------------------------------------------------------------------------
// Text format: header `q r c`, then r lines of c element encodings.

Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace blockset
