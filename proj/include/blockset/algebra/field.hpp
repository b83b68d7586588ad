#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace blockset {

/// A field element, encoded as an integer in [0, q).
using Elem = std::uint8_t;

/// Arithmetic context for F_q with q = p^e <= 32.
///
/// Element n encodes the polynomial whose coefficients are the base-p digits
/// of n, lowest degree first. Multiplication reduces modulo the canonical
/// modulus: the lexicographically smallest monic irreducible polynomial of
/// degree e over F_p, comparing coefficient lists from the constant term up.
///
/// Contexts are interned: `Field::of(q)` always returns the same object, so
/// references and pointers to it stay valid for the life of the program.
class Field {
 public:
  static constexpr int kMaxOrder = 32;

  /// Throws Error{NotAPrimePower} or Error{UnsupportedSize}.
  static const Field& of(int q);

  int q() const noexcept { return q_; }
  int p() const noexcept { return p_; }
  int e() const noexcept { return e_; }
  /// Coefficients of the modulus, constant term first, length e + 1.
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  Elem add(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const noexcept { return add_[a * q_ + neg_[b]]; }
  Elem mul(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  /// Inverse of a nonzero element; inv(0) is 0 by convention.
  Elem inv(Elem a) const noexcept { return inv_[a]; }
  Elem pow(Elem a, unsigned n) const noexcept;

  /// Exhaustive check of the field axioms on the lookup tables.
  bool satisfies_axioms() const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  explicit Field(int q);

  int q_;
  int p_;
  int e_;
  std::vector<int> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
};

/// Returns {p, e} with q = p^e, or {0, 0} when q is not a prime power.
std::pair<int, int> prime_power_decomposition(int q) noexcept;

}  // namespace blockset
