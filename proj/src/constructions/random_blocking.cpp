#include "blockset/constructions/random_blocking.hpp"

#include <string>

#include "blockset/blocking/verify.hpp"
#include "blockset/error.hpp"
#include "blockset/geometry/bigint.hpp"

namespace blockset {

std::string_view to_string(Strategy strategy) noexcept {
  return strategy == Strategy::Subspaces ? "subspaces" : "points";
}

namespace {

int exponent_budget(int k, int s) { return s * (k - s) + s + 2; }

void check_params(int k, int s) {
  if (s < 1 || s > k) throw Error(ErrorCode::InvalidArgument, "need 1 <= s <= k");
}

}  // namespace

int subspace_draws(int q, int k, int s) {
  check_params(k, s);
  const BigInt lhs_base = big_pow(q, 4);
  const BigInt rhs_base = BigInt(q) * q * q - q + 1;
  const BigInt target = big_pow(q, exponent_budget(k, s));
  BigInt lhs = lhs_base;
  BigInt rhs = target * rhs_base;
  int m = 0;
  while (lhs < rhs) {
    lhs *= lhs_base;
    rhs *= rhs_base;
    ++m;
  }
  return std::max(m, 1);
}

int point_draws(int q, int k, int s) {
  check_params(k, s);
  const BigInt lhs_base = big_pow(q, s);
  const BigInt rhs_base = lhs_base - 1;
  BigInt lhs = 1;
  BigInt rhs = big_pow(q, exponent_budget(k, s));
  int m = 0;
  while (lhs < rhs) {
    lhs *= lhs_base;
    rhs *= rhs_base;
    ++m;
  }
  return m;
}

UniformSubspace uniform_subspace(const Field& field, int k, int dim, RandomStream& rng) {
  if (dim < 1 || dim > k) throw Error(ErrorCode::InvalidArgument, "need 1 <= dim <= k");
  int tries = 0;
  const Matrix basis = random_full_rank(field, dim, k, rng, &tries);
  return {AffineSubspace::from_parametric(field, k, basis.row_list(), Vec(k, 0)), tries};
}

ConstructionResult random_subspace_blocking(const RandomBlockingRequest& req) {
  const Field& f = Field::of(req.q);
  check_params(req.k, req.s);
  if (req.max_attempts < 1) throw Error(ErrorCode::InvalidArgument, "max_attempts must be positive");

  ConstructionResult result{PointSet(f, req.k, PointKind::Affine), req.strategy, req.q, req.k, req.s, 0, req.seed};
  if (req.strategy == Strategy::Subspaces) {
    result.dim = req.dim.value_or(req.s);
    if (result.dim < 1 || result.dim > req.k) throw Error(ErrorCode::InvalidArgument, "need 1 <= dim <= k");
    if (req.m) {
      result.m = *req.m;
    } else if (result.dim == req.s) {
      result.m = subspace_draws(req.q, req.k, req.s);
    } else {
      throw Error(ErrorCode::UnsupportedStrategy,
                  "no draw count is known for dim " + std::to_string(result.dim) + "; pass m explicitly");
    }
  } else {
    result.m = req.m.value_or(point_draws(req.q, req.k, req.s));
  }
  if (result.m < 1) throw Error(ErrorCode::InvalidArgument, "m must be positive");

  VerifyOptions opts;
  opts.threads = req.threads;
  for (int attempt = 0; attempt < req.max_attempts; ++attempt) {
    std::vector<Vec> points;
    for (int j = 0; j < result.m; ++j) {
      RandomStream rng(req.seed, (static_cast<std::uint64_t>(attempt) << 32) | static_cast<std::uint64_t>(j));
      if (req.strategy == Strategy::Subspaces) {
        for (Vec& p : uniform_subspace(f, req.k, result.dim, rng).subspace.points()) points.push_back(std::move(p));
      } else {
        Vec p(req.k);
        for (auto& x : p) x = static_cast<Elem>(rng.below(f.q()));
        points.push_back(std::move(p));
      }
    }
    PointSet candidate(f, req.k, PointKind::Affine, std::move(points));
    result.attempts = attempt + 1;
    if (is_affine_blocking(candidate, req.s, opts).holds()) {
      result.set = std::move(candidate);
      result.verified = true;
      return result;
    }
  }
  throw Error(ErrorCode::RetriesExhausted,
              "no blocking set after " + std::to_string(req.max_attempts) + " attempts");
}

}  // namespace blockset
