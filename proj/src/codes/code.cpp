#include "blockset/codes/code.hpp"

#include <algorithm>
#include <map>

#include "blockset/blocking/verify.hpp"
#include "blockset/error.hpp"
#include "blockset/geometry/bigint.hpp"
#include "blockset/geometry/subspace.hpp"
#include "blockset/parallel.hpp"

namespace blockset {

LinearCode::LinearCode(Matrix generator) : g_(std::move(generator)) {
  if (g_.rows() < 1) throw Error(ErrorCode::RankDeficient, "a code needs k >= 1");
  if (rank(g_) != g_.rows()) throw Error(ErrorCode::RankDeficient, "generator matrix must have full row rank");
}

std::vector<Vec> LinearCode::codewords(std::uint64_t limit) const {
  const auto size = checked_power(field().q(), k());
  if (!size || *size > limit) throw Error(ErrorCode::CodeTooLarge, "too many codewords to enumerate");
  std::vector<Vec> out;
  out.reserve(*size);
  for (std::uint64_t i = 0; i < *size; ++i) out.push_back(codeword(i));
  return out;
}

std::string to_string(CodeProperty property, int t) {
  switch (property) {
    case CodeProperty::Minimal: return "minimal";
    case CodeProperty::Trifferent: return "trifferent";
    case CodeProperty::PerfectHash: return "perfect-hash:" + std::to_string(t);
    case CodeProperty::Nondegenerate: return "nondegenerate";
  }
  return "?";
}

int min_distance(const LinearCode& code) {
  const auto size = checked_power(code.field().q(), code.k());
  if (!size || *size > 10'000'000) throw Error(ErrorCode::CodeTooLarge, "q^k exceeds 10^7");
  int best = code.n();
  for (std::uint64_t i = 1; i < *size; ++i) best = std::min(best, weight(code.codeword(i)));
  return best;
}

bool is_nondegenerate(const LinearCode& code) {
  for (int c = 0; c < code.n(); ++c) {
    if (is_zero(code.generator().column(c))) return false;
  }
  return true;
}

namespace {

struct Support {
  std::vector<std::uint64_t> bits;
  int weight = 0;
};

Support support_of(const Vec& v) {
  Support s;
  s.bits.assign((v.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      s.bits[i / 64] |= std::uint64_t{1} << (i % 64);
      ++s.weight;
    }
  }
  return s;
}

// a strictly inside b, given wt(a) < wt(b).
bool subset_of(const Support& a, const Support& b) {
  for (std::size_t w = 0; w < a.bits.size(); ++w) {
    if (a.bits[w] & ~b.bits[w]) return false;
  }
  return true;
}

void require_small(const LinearCode& code, int power, std::uint64_t limit, const char* what) {
  const auto size = checked_power(code.field().q(), power * code.k());
  if (!size || *size > limit) throw Error(ErrorCode::CodeTooLarge, what);
}

// Counter over strictly increasing index tuples of length t below n.
bool next_combination(std::vector<std::uint64_t>& idx, std::uint64_t n) {
  const int t = static_cast<int>(idx.size());
  int i = t - 1;
  while (i >= 0 && idx[i] == n - t + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

BigInt binomial(std::uint64_t n, int t) {
  BigInt r = 1;
  for (int i = 0; i < t; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

CodeVerdict is_minimal(const LinearCode& code, unsigned threads) {
  require_small(code, 2, 100'000'000, "q^(2k) exceeds 10^8");
  const int q = code.field().q();
  const std::uint64_t size = *checked_power(q, code.k());
  // One codeword per projective class: messages whose first nonzero entry is 1.
  std::vector<Vec> reps;
  for (std::uint64_t i = 1; i < size; ++i) {
    const Vec m = vec_from_index(q, code.k(), i);
    const auto lead = std::find_if(m.begin(), m.end(), [](Elem x) { return x != 0; });
    if (*lead == 1) reps.push_back(code.encode(m));
  }
  std::vector<Support> supports;
  supports.reserve(reps.size());
  for (const Vec& r : reps) supports.push_back(support_of(r));

  const std::uint64_t count = reps.size();
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
    for (std::uint64_t u = lo; u < hi; ++u) {
      for (std::uint64_t v = 0; v < count; ++v) {
        if (supports[u].weight >= supports[v].weight) continue;
        if (subset_of(supports[u], supports[v])) return u * count + v;
      }
    }
    return std::nullopt;
  };
  CodeVerdict verdict;
  verdict.property = CodeProperty::Minimal;
  if (const auto hit = parallel_first(count, threads, scan, 64)) {
    verdict.holds = false;
    verdict.witness = {reps[*hit / count], reps[*hit % count]};
  }
  return verdict;
}

bool separated(const std::vector<const Vec*>& tuple) {
  const std::size_t n = tuple.front()->size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t seen = 0;
    bool distinct = true;
    for (const Vec* v : tuple) {
      const std::uint32_t bit = std::uint32_t{1} << (*v)[i];
      if (seen & bit) {
        distinct = false;
        break;
      }
      seen |= bit;
    }
    if (distinct) return true;
  }
  return false;
}

CodeVerdict is_trifferent(const LinearCode& code, TrifferenceMode mode, unsigned threads) {
  if (code.field().q() != 3) throw Error(ErrorCode::WrongField, "trifference is defined over F_3");
  CodeVerdict verdict;
  verdict.property = CodeProperty::Trifferent;
  if (mode == TrifferenceMode::Equivalence) {
    const CodeVerdict minimal = is_minimal(code, threads);
    if (!minimal.holds) {
      const Vec& u = minimal.witness[0];
      verdict.holds = false;
      verdict.witness = {u, minimal.witness[1], negated(code.field(), u)};
    }
    return verdict;
  }
  require_small(code, 3, 1'000'000'000, "3^(3k) exceeds 10^9");
  const std::vector<Vec> words = code.codewords();
  const std::uint64_t m = words.size();
  // Positions encode (x, y, z) as (x*m + y)*m + z, monotone in x.
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) -> std::optional<std::uint64_t> {
    std::vector<const Vec*> triple(3);
    for (std::uint64_t x = lo; x < hi; ++x) {
      for (std::uint64_t y = x + 1; y < m; ++y) {
        for (std::uint64_t z = y + 1; z < m; ++z) {
          triple = {&words[x], &words[y], &words[z]};
          if (!separated(triple)) return (x * m + y) * m + z;
        }
      }
    }
    return std::nullopt;
  };
  if (const auto hit = parallel_first(m, threads, scan, 8)) {
    verdict.holds = false;
    verdict.witness = {words[*hit / (m * m)], words[(*hit / m) % m], words[*hit % m]};
  }
  return verdict;
}

CodeVerdict is_perfect_hash(const LinearCode& code, int t) {
  if (t > code.field().q()) throw Error(ErrorCode::TooManySymbols, "t exceeds the alphabet size");
  if (t < 2) throw Error(ErrorCode::InvalidArgument, "perfect hashing needs t >= 2");
  CodeVerdict verdict;
  verdict.property = CodeProperty::PerfectHash;
  verdict.t = t;
  const std::vector<Vec> words = code.codewords();
  const std::uint64_t m = words.size();
  if (m < static_cast<std::uint64_t>(t)) return verdict;
  if (binomial(m, t) > 200'000'000) throw Error(ErrorCode::CodeTooLarge, "too many tuples");
  std::vector<std::uint64_t> idx(t);
  for (int i = 0; i < t; ++i) idx[i] = i;
  std::vector<const Vec*> tuple(t);
  do {
    for (int i = 0; i < t; ++i) tuple[i] = &words[idx[i]];
    if (!separated(tuple)) {
      verdict.holds = false;
      for (auto i : idx) verdict.witness.push_back(words[i]);
      return verdict;
    }
  } while (next_combination(idx, m));
  return verdict;
}

CodePoints points_from_code(const LinearCode& code) {
  const Field& f = code.field();
  std::map<std::uint64_t, int> counts;
  std::vector<Vec> cols;
  for (int c = 0; c < code.n(); ++c) {
    const Vec col = code.generator().column(c);
    if (is_zero(col)) throw Error(ErrorCode::DegenerateCode, "column " + std::to_string(c) + " is zero");
    const Vec p = projective_normal_form(f, col);
    if (counts[vec_index(f.q(), p)]++ == 0) cols.push_back(p);
  }
  CodePoints out{PointSet(f, code.k(), PointKind::Projective, std::move(cols)), {}};
  for (const Vec& p : out.points.points()) out.multiplicity.push_back(counts[vec_index(f.q(), p)]);
  return out;
}

LinearCode code_from_points(const PointSet& points) {
  const Field& f = points.field();
  if (rank_of(f, points.k(), points.points()) != points.k()) {
    throw Error(ErrorCode::NonSpanningPoints, "points do not span the space");
  }
  return LinearCode(Matrix::from_rows(f, points.k(), points.points()).transposed());
}

int max_hyperplane_intersection(const PointSet& points, const std::vector<int>& multiplicity) {
  if (multiplicity.size() != points.size()) throw Error(ErrorCode::DimensionMismatch, "one multiplicity per point");
  const Field& f = points.field();
  const EchelonFamily hyperplanes(f, 1, points.k());
  int best = 0;
  for (std::uint64_t i = 0; i < hyperplanes.size(); ++i) {
    const Vec h = vec_from_index(f.q(), points.k(), hyperplanes.row_index(i, 0));
    int count = 0;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (dot(f, h, points.points()[j]) == 0) count += multiplicity[j];
    best = std::max(best, count);
  }
  return best;
}

LinearCode code_from_blocking(const PointSet& symmetric_set, int n) {
  const Field& f = symmetric_set.field();
  if (f.q() != 3) throw Error(ErrorCode::WrongField, "symmetric 2-blocking sets live in F_3^k");
  const auto half = symmetric_decomposition(symmetric_set);
  if (!half) throw Error(ErrorCode::NotSymmetric, "set is not of the form {0} u B u -B");
  if (!is_affine_blocking(symmetric_set, 2).holds()) throw Error(ErrorCode::NotBlocking, "set is not 2-blocking");
  const int k = symmetric_set.k();
  if (half->empty() || rank_of(f, k, *half) != k) {
    throw Error(ErrorCode::RankDeficient, "set lies in a linear hyperplane");
  }
  if (n < static_cast<int>(half->size())) throw Error(ErrorCode::InvalidArgument, "n must be at least |B|");
  Matrix g(f, k, n);
  for (int c = 0; c < n; ++c) {
    const Vec& col = (*half)[c % half->size()];
    for (int r = 0; r < k; ++r) g(r, c) = col[r];
  }
  return LinearCode(std::move(g));
}

PointSet blocking_from_code(const LinearCode& code) {
  const Field& f = code.field();
  if (f.q() != 3) throw Error(ErrorCode::WrongField, "expected a ternary code");
  std::vector<Vec> points{Vec(code.k(), 0)};
  for (int c = 0; c < code.n(); ++c) {
    const Vec col = code.generator().column(c);
    points.push_back(negated(f, col));
    points.push_back(col);
  }
  return PointSet(f, code.k(), PointKind::Affine, std::move(points));
}

HashSearchResult search_linear_perfect_hash(int q, int max_length) {
  const Field& f = Field::of(q);
  HashSearchResult result{q, max_length, 0, std::nullopt};
  for (int n = 2; n <= max_length; ++n) {
    const EchelonFamily family(f, 2, n);
    for (std::uint64_t i = 0; i < family.size(); ++i) {
      const LinearCode code(family.matrix(i));
      ++result.codes_checked;
      if (is_perfect_hash(code, q).holds) {
        result.found = code.generator();
        return result;
      }
    }
  }
  return result;
}

}  // namespace blockset
