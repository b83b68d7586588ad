#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "blockset/algebra/matrix.hpp"
#include "blockset/random.hpp"

namespace blockset {

/// A coset {x in F_q^k : A x = b} of a vector subspace.
///
/// The dual matrix A is kept in reduced row echelon form with full row rank,
/// so two objects describing the same coset compare equal.
class AffineSubspace {
 public:
  /// Normalizes (A, b). Throws Error{RankDeficient} if A does not have full
  /// row rank and Error{DimensionMismatch} on shape errors.
  AffineSubspace(const Matrix& dual, std::span<const Elem> rhs);

  /// The span of `basis` translated by `offset`.
  static AffineSubspace from_parametric(const Field& field, int k, const std::vector<Vec>& basis,
                                        std::span<const Elem> offset);
  static AffineSubspace whole_space(const Field& field, int k);

  const Field& field() const noexcept { return dual_.field(); }
  int ambient_dim() const noexcept { return dual_.cols(); }
  int codim() const noexcept { return dual_.rows(); }
  int dim() const noexcept { return ambient_dim() - codim(); }
  const Matrix& dual() const noexcept { return dual_; }
  const Vec& rhs() const noexcept { return rhs_; }

  bool contains(std::span<const Elem> x) const;
  bool through_origin() const noexcept { return is_zero(rhs_); }

  /// Basis of the direction space (a basis of ker A).
  std::vector<Vec> direction_basis() const { return kernel_basis(dual_); }
  /// Some point of the coset.
  Vec base_point() const;
  /// All q^dim points, in lexicographic order of their parametric coordinates.
  std::vector<Vec> points() const;

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) noexcept {
    return a.dual_ == b.dual_ && a.rhs_ == b.rhs_;
  }

 private:
  AffineSubspace(Matrix dual, Vec rhs, bool /*normalized*/)
      : dual_(std::move(dual)), rhs_(std::move(rhs)) {}

  Matrix dual_;
  Vec rhs_;
};

/// All reduced row echelon r x k matrices of rank r over F_q, stored
/// compactly: each row is kept as its index in F_q^k (see vec_index).
///
/// Order: pivot column sets in lexicographic order; within one pivot set the
/// free entries run as a mixed-radix counter whose most significant digit is
/// the leftmost free entry of the first row.
class EchelonFamily {
 public:
  /// Throws Error{UniverseTooLarge} if more than `limit` matrices would be
  /// produced.
  EchelonFamily(const Field& field, int rows, int cols, std::uint64_t limit = 10'000'000);

  const Field& field() const noexcept { return *field_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::uint64_t size() const noexcept { return count_; }

  /// Row `r` of matrix `i`, as a vec_index.
  std::uint32_t row_index(std::uint64_t i, int r) const noexcept {
    return rows_data_[i * static_cast<std::uint64_t>(rows_) + r];
  }
  Matrix matrix(std::uint64_t i) const;

 private:
  const Field* field_;
  int rows_;
  int cols_;
  std::uint64_t count_ = 0;
  std::vector<std::uint32_t> rows_data_;
};

enum class OriginFilter { All, ThroughOrigin, AvoidingOrigin };

/// Number of right-hand sides b in F_q^codim admitted by the filter.
std::uint64_t filtered_rhs_count(int q, int codim, OriginFilter filter) noexcept;

/// Calls fn(subspace) for every codim-`codim` affine subspace of F_q^k that
/// passes the filter, each exactly once. Order: dual matrices in
/// EchelonFamily order, then right-hand sides lexicographically.
/// Throws Error{UniverseTooLarge} above `limit` subspaces.
void for_each_affine_subspace(const Field& field, int k, int codim, OriginFilter filter,
                              const std::function<void(const AffineSubspace&)>& fn,
                              std::uint64_t limit = 10'000'000);

std::vector<AffineSubspace> enumerate_affine_subspaces(const Field& field, int k, int codim,
                                                       OriginFilter filter,
                                                       std::uint64_t limit = 10'000'000);

/// A uniformly random rows x cols matrix of full row rank, by rejection
/// sampling of uniform matrices. `tries`, when given, receives the number of
/// matrices drawn.
Matrix random_full_rank(const Field& field, int rows, int cols, RandomStream& rng, int* tries = nullptr);

/// Normalized representatives of the points of PG(k-1, q), in increasing
/// vec_index order.
std::vector<Vec> projective_points(const Field& field, int k);

}  // namespace blockset
