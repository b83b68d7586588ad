#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockset/algebra/matrix.hpp"
#include "blockset/blocking/point_set.hpp"

namespace blockset {

/// A linear [n, k]_q code given by a k x n generator matrix of rank k.
///
/// Codewords are enumerated as m G for messages m in vec_index order
/// (first message coordinate most significant).
class LinearCode {
 public:
  /// Throws Error{RankDeficient} unless the generator has full row rank and
  /// at least one row.
  explicit LinearCode(Matrix generator);

  const Field& field() const noexcept { return g_.field(); }
  int n() const noexcept { return g_.cols(); }
  int k() const noexcept { return g_.rows(); }
  const Matrix& generator() const noexcept { return g_; }

  Vec encode(std::span<const Elem> message) const { return g_.left_apply(message); }
  /// Codeword number `i` of the enumeration order.
  Vec codeword(std::uint64_t i) const { return encode(vec_from_index(field().q(), k(), i)); }
  /// All q^k codewords; throws Error{CodeTooLarge} above `limit`.
  std::vector<Vec> codewords(std::uint64_t limit = 10'000'000) const;

 private:
  Matrix g_;
};

enum class CodeProperty { Minimal, Trifferent, PerfectHash, Nondegenerate };

std::string to_string(CodeProperty property, int t = 0);

struct CodeVerdict {
  CodeProperty property = CodeProperty::Minimal;
  int t = 0;  // tuple size for PerfectHash
  bool holds = true;
  /// Offending codewords when holds is false: (u, v) with supp(u) strictly
  /// inside supp(v) for Minimal; a triple or t-tuple otherwise.
  std::vector<Vec> witness;
};

/// Minimum Hamming weight of a nonzero codeword. Throws Error{CodeTooLarge}
/// when q^k > 10^7.
int min_distance(const LinearCode& code);

bool is_nondegenerate(const LinearCode& code);

/// Pairwise support comparison over one representative per projective class.
/// Throws Error{CodeTooLarge} when q^(2k) > 10^8.
CodeVerdict is_minimal(const LinearCode& code, unsigned threads = 1);

enum class TrifferenceMode { Direct, Equivalence };

/// Requires q = 3 (Error{WrongField}). Direct mode inspects every triple of
/// distinct codewords; equivalence mode decides minimality and turns a
/// non-minimal pair (u, v) into the triple (u, v, -u). Codes with fewer than
/// three codewords are trifferent vacuously.
CodeVerdict is_trifferent(const LinearCode& code, TrifferenceMode mode = TrifferenceMode::Direct,
                          unsigned threads = 1);

/// Do every t distinct codewords take pairwise distinct values in some
/// coordinate? Requires 2 <= t <= q (Error{TooManySymbols} for t > q).
CodeVerdict is_perfect_hash(const LinearCode& code, int t);

/// True when the values v_1..v_t are pairwise distinct at some coordinate.
bool separated(const std::vector<const Vec*>& tuple);

struct CodePoints {
  PointSet points;
  /// Multiplicity of points.points()[i] among the columns.
  std::vector<int> multiplicity;
};

/// The columns of G as projective points. Throws Error{DegenerateCode} on a
/// zero column.
CodePoints points_from_code(const LinearCode& code);

/// Generator whose columns are the points in stored order. Throws
/// Error{NonSpanningPoints} if they do not span F_q^k.
LinearCode code_from_points(const PointSet& points);

/// max |H n P| over hyperplanes H of PG(k-1, q), counting multiplicity.
int max_hyperplane_intersection(const PointSet& points, const std::vector<int>& multiplicity);

/// The ternary code whose columns are the elements of B (S = {0} u B u -B),
/// repeated cyclically up to length n. Errors: WrongField, NotSymmetric,
/// NotBlocking, RankDeficient, InvalidArgument (n < |B|).
LinearCode code_from_blocking(const PointSet& symmetric_set, int n);

/// {0} u columns u -columns, for a ternary code.
PointSet blocking_from_code(const LinearCode& code);

struct HashSearchResult {
  int q = 0;
  int max_length = 0;
  std::uint64_t codes_checked = 0;
  /// A generator of a perfect q-hash code, if one was found.
  std::optional<Matrix> found;
};

/// Tries every 2-dimensional code of length 2..max_length over F_q (one
/// reduced echelon generator per code) for the perfect q-hash property.
HashSearchResult search_linear_perfect_hash(int q, int max_length);

}  // namespace blockset
