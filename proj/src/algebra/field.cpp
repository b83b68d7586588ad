#include "blockset/algebra/field.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <string>

#include "blockset/error.hpp"

namespace blockset {

namespace {

using Poly = std::vector<int>;  // coefficients mod p, constant term first

Poly decode(int n, int p, int e) {
  Poly c(e, 0);
  for (int i = 0; i < e; ++i) {
    c[i] = n % p;
    n /= p;
  }
  return c;
}

int encode(const Poly& c, int p) {
  int n = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) n = n * p + c[i];
  return n;
}

// Remainder of a modulo the monic polynomial m over F_p.
Poly poly_mod(Poly a, const Poly& m, int p) {
  const int dm = static_cast<int>(m.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    const int c = a[i] % p;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) {
      a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
    }
  }
  a.resize(std::max(dm, 0));
  return a;
}

bool is_zero(const Poly& a) {
  for (int c : a)
    if (c != 0) return false;
  return true;
}

// Irreducibility by trial division with every monic polynomial of degree
// 1..deg/2. Adequate for the degrees used here (e <= 5).
bool is_irreducible(const Poly& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int n = 0; n < count; ++n) {
      Poly g = decode(n, p, d);
      g.push_back(1);
      if (is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

Poly canonical_modulus(int p, int e) {
  if (e == 1) return {0, 1};
  int count = 1;
  for (int i = 0; i < e; ++i) count *= p;
  // Lexicographic order on (c_0, c_1, ..., c_{e-1}): enumerate with c_0 as
  // the most significant digit.
  for (int n = 0; n < count; ++n) {
    Poly f(e + 1, 0);
    int rest = n;
    for (int i = e - 1; i >= 0; --i) {
      f[i] = rest % p;
      rest /= p;
    }
    f[e] = 1;
    if (f[0] != 0 && is_irreducible(f, p)) return f;
  }
  throw Error(ErrorCode::NotAPrimePower, "no irreducible polynomial found");
}

}  // namespace

std::pair<int, int> prime_power_decomposition(int q) noexcept {
  if (q < 2) return {0, 0};
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) return {0, 0};
  return {p, e};
}

Field::Field(int q) : q_(q) {
  const auto [p, e] = prime_power_decomposition(q);
  p_ = p;
  e_ = e;
  modulus_ = canonical_modulus(p, e);

  add_.assign(q * q, 0);
  mul_.assign(q * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    const Poly pa = decode(a, p, e);
    for (int b = 0; b < q; ++b) {
      const Poly pb = decode(b, p, e);
      Poly sum(e);
      for (int i = 0; i < e; ++i) sum[i] = (pa[i] + pb[i]) % p;
      add_[a * q + b] = static_cast<Elem>(encode(sum, p));

      Poly prod(2 * e - 1, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
      mul_[a * q + b] = static_cast<Elem>(encode(poly_mod(prod, modulus_, p), p));
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (add_[a * q + b] == 0) neg_[a] = static_cast<Elem>(b);
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<Elem>(b);
    }
  }
}

const Field& Field::of(int q) {
  if (prime_power_decomposition(q).first == 0) {
    throw Error(ErrorCode::NotAPrimePower, std::to_string(q) + " is not a prime power");
  }
  if (q > kMaxOrder) {
    throw Error(ErrorCode::UnsupportedSize,
                "q = " + std::to_string(q) + " exceeds " + std::to_string(kMaxOrder));
  }
  static std::mutex mutex;
  static std::array<std::unique_ptr<Field>, kMaxOrder + 1> cache;
  std::lock_guard lock(mutex);
  if (!cache[q]) cache[q].reset(new Field(q));
  return *cache[q];
}

Elem Field::pow(Elem a, unsigned n) const noexcept {
  Elem r = 1;
  while (n-- > 0) r = mul(r, a);
  return r;
}

bool Field::satisfies_axioms() const {
  const int q = q_;
  for (int a = 0; a < q; ++a) {
    const auto x = static_cast<Elem>(a);
    if (add(x, 0) != x || mul(x, 1) != x) return false;
    if (add(x, neg(x)) != 0) return false;
    if (x != 0 && mul(x, inv(x)) != 1) return false;
    for (int b = 0; b < q; ++b) {
      const auto y = static_cast<Elem>(b);
      if (add(x, y) != add(y, x) || mul(x, y) != mul(y, x)) return false;
      if (x != 0 && y != 0 && mul(x, y) == 0) return false;
      for (int c = 0; c < q; ++c) {
        const auto z = static_cast<Elem>(c);
        if (add(add(x, y), z) != add(x, add(y, z))) return false;
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) return false;
        if (mul(x, add(y, z)) != add(mul(x, y), mul(x, z))) return false;
      }
    }
  }
  return true;
}

}  // namespace blockset
