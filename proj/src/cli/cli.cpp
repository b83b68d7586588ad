#include "blockset/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "blockset/blocking/verify.hpp"
#include "blockset/bounds/bounds.hpp"
#include "blockset/codes/code.hpp"
#include "blockset/constructions/graph.hpp"
#include "blockset/constructions/random_blocking.hpp"
#include "blockset/error.hpp"
#include "blockset/exact/cover.hpp"
#include "blockset/geometry/counting.hpp"
#include "blockset/geometry/qbinomial.hpp"

namespace blockset::cli {

using Json = nlohmann::ordered_json;

unsigned resolve_threads(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("BLOCKSET_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Raised for flag combinations that are rejected before any work starts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string schema(const std::string& kind) {
  return "blockset." + kind + "/" + std::to_string(kSchemaVersion);
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Elem x : v) a.push_back(static_cast<int>(x));
  return a;
}

Json vecs_json(const std::vector<Vec>& vs) {
  Json a = Json::array();
  for (const Vec& v : vs) a.push_back(vec_json(v));
  return a;
}

Json matrix_json(const Matrix& m) {
  Json a = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(static_cast<int>(m(r, c)));
    a.push_back(row);
  }
  return a;
}

Json subspace_json(const AffineSubspace& w) {
  return Json{{"dual", matrix_json(w.dual())}, {"rhs", vec_json(w.rhs())}};
}

std::string vec_text(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(static_cast<int>(v[i]));
  }
  return s + ")";
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Shortest round-trip text is not needed for display; 12 significant digits
// are stable across platforms for the values printed here.
std::string general(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

template <class T>
T read_file(const std::string& path, T (*reader)(std::istream&)) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open `" + path + "`");
  return reader(in);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write `" + path + "`");
  out << text;
}

// ---------------------------------------------------------------------------
// Per-command options. Each command stores its flags here and registers a
// runner; main dispatch calls the runner of the parsed subcommand.

struct Common {
  bool json = false;
  int threads = 0;
};

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  Common common;
};

// --- count -------------------------------------------------------------------

struct CountArgs {
  int q = 0;
  int k = 0;
  int s = 0;
  bool oracle = false;
};

int run_count(Ctx& ctx, const CountArgs& a) {
  if (!(1 <= a.s && a.s <= a.k)) throw UsageError("count needs 1 <= s <= k");
  const CountReport report = check_estimates(a.k, a.s, a.q);
  std::optional<BigInt> oracle;
  if (a.oracle) oracle = n_q_oracle(a.k, a.s, a.q);
  if (ctx.common.json) {
    Json checks = Json::array();
    for (const auto& c : report.estimate_checks) {
      checks.push_back({{"name", c.name},
                        {"applicable", c.applicable},
                        {"identity", c.identity},
                        {"holds", c.holds},
                        {"lhs", to_string(c.lhs)},
                        {"rhs", to_string(c.rhs)}});
    }
    Json j{{"schema", schema("count")},
           {"q", a.q},
           {"k", a.k},
           {"s", a.s},
           {"qbin", report.qbin.str()},
           {"affine_count", report.affine_count.str()},
           {"n_q", report.n_q.str()}};
    if (oracle) j["n_q_oracle"] = oracle->str();
    j["checks"] = checks;
    j["all_hold"] = report.all_hold();
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << "qbin(" << a.k << "," << a.s << "," << a.q << ") = " << report.qbin << '\n'
            << "affine subspaces of codim " << a.s << ": " << report.affine_count << '\n'
            << "n_q = " << report.n_q << '\n';
    if (oracle) ctx.out << "n_q (enumerated) = " << *oracle << '\n';
    for (const auto& c : report.estimate_checks) {
      ctx.out << "  " << c.name << ": "
              << (!c.applicable ? "n/a" : c.holds ? "holds" : "FAILS") << '\n';
    }
  }
  const bool ok = report.all_hold() && (!oracle || *oracle == report.n_q);
  return ok ? kOk : kPropertyFalse;
}

// --- verify ------------------------------------------------------------------

struct VerifySetArgs {
  std::string file;
  int s = 0;
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
};

int run_verify_set(Ctx& ctx, const VerifySetArgs& a, bool strong) {
  const PointSet set = read_file(a.file, read_point_set);
  VerifyOptions opt;
  opt.threads = resolve_threads(ctx.common.threads);
  opt.sample = a.sample;
  opt.seed = a.seed;
  const BlockingVerdict v = strong ? is_strong_blocking(set, a.s, opt) : is_affine_blocking(set, a.s, opt);
  const std::string property = strong ? "strong-blocking" : "affine-blocking";
  if (ctx.common.json) {
    Json j{{"schema", schema("verify")},
           {"property", property},
           {"q", set.field().q()},
           {"k", set.k()},
           {"size", set.size()},
           {"s", a.s},
           {"outcome", std::string(to_string(v.outcome))},
           {"holds", v.holds()},
           {"checked", v.checked},
           {"sampled", a.sample.has_value()}};
    j["witness"] = v.witness ? subspace_json(*v.witness) : Json(nullptr);
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << property << " (s=" << a.s << "): " << to_string(v.outcome) << ", " << v.checked
            << " subspaces checked\n";
    if (v.witness) {
      ctx.out << "witness: A x = b with\n";
      for (int r = 0; r < v.witness->codim(); ++r) {
        Vec row(v.witness->dual().row(r).begin(), v.witness->dual().row(r).end());
        ctx.out << "  " << vec_text(row) << " . x = " << static_cast<int>(v.witness->rhs()[r]) << '\n';
      }
    }
  }
  return v.outcome == Outcome::Violated ? kPropertyFalse : kOk;
}

struct VerifyCodeArgs {
  std::string file;
  std::string check;
  std::optional<std::string> mode;
};

int run_verify_code(Ctx& ctx, const VerifyCodeArgs& a) {
  int t = 0;
  std::string check = a.check;
  if (check.rfind("perfect-hash:", 0) == 0) {
    const std::string tail = check.substr(13);
    char* end = nullptr;
    t = static_cast<int>(std::strtol(tail.c_str(), &end, 10));
    if (tail.empty() || *end != '\0') throw UsageError("perfect-hash needs an integer, e.g. perfect-hash:3");
    check = "perfect-hash";
  } else if (check != "minimal" && check != "trifferent" && check != "distance" && check != "nondegenerate") {
    throw UsageError("unknown check `" + a.check + "`");
  }
  if (a.mode && check != "trifferent") throw UsageError("--mode applies only to --check trifferent");
  TrifferenceMode mode = TrifferenceMode::Direct;
  if (a.mode) {
    if (*a.mode == "equivalence") {
      mode = TrifferenceMode::Equivalence;
    } else if (*a.mode != "direct") {
      throw UsageError("--mode must be direct or equivalence");
    }
  }

  const LinearCode code(read_file(a.file, read_matrix));
  const unsigned threads = resolve_threads(ctx.common.threads);
  Json j{{"schema", schema("verify-code")},
         {"q", code.field().q()},
         {"n", code.n()},
         {"k", code.k()},
         {"check", a.check}};
  int status = kOk;
  if (check == "distance") {
    const int d = min_distance(code);
    j["distance"] = d;
    if (!ctx.common.json) ctx.out << "[" << code.n() << "," << code.k() << "," << d << "]_" << code.field().q() << '\n';
  } else {
    CodeVerdict v;
    if (check == "minimal") {
      v = is_minimal(code, threads);
    } else if (check == "trifferent") {
      v = is_trifferent(code, mode, threads);
    } else if (check == "nondegenerate") {
      v.property = CodeProperty::Nondegenerate;
      v.holds = is_nondegenerate(code);
    } else {
      v = is_perfect_hash(code, t);
    }
    if (a.mode) j["mode"] = *a.mode;
    j["holds"] = v.holds;
    j["witness"] = vecs_json(v.witness);
    if (!ctx.common.json) {
      ctx.out << to_string(v.property, v.t) << ": " << (v.holds ? "holds" : "violated") << '\n';
      for (const Vec& w : v.witness) ctx.out << "  " << vec_text(w) << '\n';
    }
    status = v.holds ? kOk : kPropertyFalse;
  }
  if (ctx.common.json) ctx.out << j.dump(2) << '\n';
  return status;
}

// --- construct ---------------------------------------------------------------

std::string point_set_text(const PointSet& set) {
  std::ostringstream os;
  write_point_set(os, set);
  return os.str();
}

// Writes the set to --out when given, otherwise prints it (human mode).
void emit_set(Ctx& ctx, const PointSet& set, const std::optional<std::string>& out_path, Json& j) {
  if (out_path) write_text_file(*out_path, point_set_text(set));
  j["size"] = set.size();
  j["points"] = vecs_json(set.points());
  if (ctx.common.json) {
    ctx.out << j.dump(2) << '\n';
  } else if (!out_path) {
    ctx.out << point_set_text(set);
  } else {
    ctx.out << set.size() << " points written to " << *out_path << '\n';
  }
}

struct ConstructRandomArgs {
  int q = 3;
  int k = 4;
  int s = 2;
  std::uint64_t seed = 0;
  std::string strategy = "subspaces";
  std::optional<int> dim;
  std::optional<int> m;
  int max_attempts = 50;
  std::optional<std::string> out;
};

int run_construct_random(Ctx& ctx, const ConstructRandomArgs& a) {
  RandomBlockingRequest req;
  req.q = a.q;
  req.k = a.k;
  req.s = a.s;
  req.seed = a.seed;
  if (a.strategy == "points") {
    req.strategy = Strategy::Points;
    if (a.dim) throw UsageError("--dim applies only to the subspaces strategy");
  } else if (a.strategy != "subspaces") {
    throw UsageError("--strategy must be subspaces or points");
  }
  req.dim = a.dim;
  req.m = a.m;
  req.max_attempts = a.max_attempts;
  req.threads = resolve_threads(ctx.common.threads);
  const ConstructionResult r = random_subspace_blocking(req);
  Json j{{"schema", schema("construction")},
         {"construction", "random"},
         {"strategy", std::string(to_string(r.strategy))},
         {"q", r.q},
         {"k", r.k},
         {"s", r.s},
         {"dim", r.dim},
         {"seed", r.seed},
         {"m", r.m},
         {"attempts", r.attempts},
         {"kind", "affine"},
         {"verified", r.verified}};
  if (!ctx.common.json) {
    ctx.err << "m=" << r.m << " attempts=" << r.attempts << " |B|=" << r.set.size() << " verified\n";
  }
  emit_set(ctx, r.set, a.out, j);
  return kOk;
}

struct ConstructTetraArgs {
  int q = 0;
  int k = 0;
  std::optional<std::string> out;
};

int run_construct_tetra(Ctx& ctx, const ConstructTetraArgs& a) {
  if (a.k < 2) throw UsageError("tetrahedron needs k >= 2");
  const PointSet set = tetrahedron(a.k, a.q);
  Json j{{"schema", schema("construction")},
         {"construction", "tetrahedron"},
         {"q", a.q},
         {"k", a.k},
         {"kind", "projective"}};
  emit_set(ctx, set, a.out, j);
  return kOk;
}

struct ConstructGraphArgs {
  std::string points;
  std::string graph;
  std::optional<std::string> out;
  bool hypothesis = false;
};

int run_construct_graph(Ctx& ctx, const ConstructGraphArgs& a) {
  const PointSet points = read_file(a.points, read_point_set);
  const Graph g = read_file(a.graph, read_graph);
  const GraphLinesResult r = graph_lines_construction(points, g);
  VerifyOptions opt;
  opt.threads = resolve_threads(ctx.common.threads);
  const bool strong = is_strong_blocking(r.set, 1, opt).holds();
  Json j{{"schema", schema("construction")},
         {"construction", "graph"},
         {"q", points.field().q()},
         {"k", points.k()},
         {"n", g.n()},
         {"d", r.d},
         {"integrity", r.integrity},
         {"condition", r.condition},
         {"kind", "projective"},
         {"verified", strong}};
  if (a.hypothesis) j["hypothesis"] = check_main_const_hypothesis(points, g);
  if (!ctx.common.json) {
    ctx.err << "n=" << g.n() << " d=" << r.d << " integrity=" << r.integrity
            << " condition=" << (r.condition ? "yes" : "no") << " strong-blocking=" << (strong ? "yes" : "no")
            << '\n';
  }
  emit_set(ctx, r.set, a.out, j);
  return kOk;
}

// --- bounds, cq --------------------------------------------------------------

Json entries_json(const std::vector<BoundEntry>& entries) {
  Json a = Json::array();
  for (const auto& e : entries) {
    Json x{{"name", e.name},
           {"quantity", e.quantity},
           {"side", e.side == Side::Lower ? "lower" : "upper"},
           {"value", e.value}};
    x["exact"] = e.exact ? Json(e.exact->str()) : Json(nullptr);
    x["asymptotic"] = e.asymptotic;
    x["log3"] = e.log3;
    a.push_back(x);
  }
  return a;
}

void print_entries(std::ostream& out, const std::vector<BoundEntry>& entries) {
  for (const auto& e : entries) {
    out << "  " << e.name << " (" << (e.side == Side::Lower ? "lower" : "upper") << ", " << e.quantity
        << "): " << (e.exact ? e.exact->str() : general(e.value));
    if (e.log3) out << " [log3]";
    if (e.asymptotic) out << " [asymptotic, o(1) unspecified]";
    out << '\n';
  }
}

struct BoundsArgs {
  std::optional<int> q;
  std::optional<int> k;
  std::optional<int> s;
  std::optional<double> c;
  std::optional<int> n;
};

int run_bounds(Ctx& ctx, const BoundsArgs& a) {
  if (a.n) {
    if (a.q || a.k || a.s || a.c) throw UsageError("--n (trifferent bounds) excludes --q/--k/--s/--c");
    if (*a.n < 1) throw UsageError("--n must be positive");
    const TrifferentReport r = trifferent_bounds(*a.n);
    if (ctx.common.json) {
      Json j{{"schema", schema("trifferent-bounds")},
             {"n", r.n},
             {"entries", entries_json(r.entries)},
             {"identity_gap", r.identity_gap},
             {"identity_holds", r.identity_holds}};
      ctx.out << j.dump(2) << '\n';
    } else {
      ctx.out << "trifferent codes, n=" << r.n << " (log_3 of sizes)\n";
      print_entries(ctx.out, r.entries);
      ctx.out << "identity gap " << general(r.identity_gap) << '\n';
    }
    return kOk;
  }
  if (!a.q || !a.k) throw UsageError("bounds needs --q and --k (or --n)");
  if (*a.k < 2) throw UsageError("bounds needs k >= 2");
  if (a.s && !(1 <= *a.s && *a.s <= *a.k)) throw UsageError("bounds needs 1 <= s <= k");
  const BoundReport r = strong_bounds(*a.q, *a.k, a.s, a.c);
  if (ctx.common.json) {
    Json j{{"schema", schema("bounds")}, {"q", r.q}, {"k", r.k}};
    j["s"] = r.s ? Json(*r.s) : Json(nullptr);
    j["entries"] = entries_json(r.entries);
    j["consistent"] = r.consistent;
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << "q=" << r.q << " k=" << r.k;
    if (r.s) ctx.out << " s=" << *r.s;
    ctx.out << '\n';
    print_entries(ctx.out, r.entries);
    ctx.out << (r.consistent ? "consistent" : "INCONSISTENT") << '\n';
  }
  return r.consistent ? kOk : kError;
}

struct CqArgs {
  int q = 0;
  double tol = 1e-9;
};

int run_cq(Ctx& ctx, const CqArgs& a) {
  const CqResult r = compute_cq(a.q, a.tol);
  const double lemma_lhs = mrrw(a.q, (a.q - 1.0) / (a.q + 1.0));
  const double lemma_rhs = 1.0 / (a.q + 1.0);
  if (ctx.common.json) {
    Json j{{"schema", schema("cq")},
           {"q", r.q},
           {"c", r.c},
           {"lo", r.lo},
           {"hi", r.hi},
           {"tolerance", r.tolerance},
           {"f_lo", r.f_lo},
           {"f_hi", r.f_hi},
           {"f_one", r.f_one},
           {"lemma_lhs", lemma_lhs},
           {"lemma_rhs", lemma_rhs},
           {"lemma_holds", lemma_lhs < lemma_rhs}};
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << "c_" << r.q << " = " << fixed(r.c, 10) << "  bracket [" << fixed(r.lo, 12) << ", "
            << fixed(r.hi, 12) << "]  f = (" << general(r.f_lo) << ", " << general(r.f_hi) << ")\n";
  }
  return kOk;
}

// --- exact, table ------------------------------------------------------------

struct ExactArgs {
  int k = 0;
  double time_limit = 600;
  std::string mode = "bnb";
  bool no_canonical = false;
  bool trace = false;
};

SolveOptions solve_options(const std::string& mode, double time_limit, bool canonical) {
  SolveOptions opt;
  if (mode == "exhaustive") {
    opt.mode = SolveMode::Exhaustive;
  } else if (mode != "bnb") {
    throw UsageError("--mode must be bnb or exhaustive");
  }
  if (!(time_limit > 0)) throw UsageError("--time-limit must be positive");
  opt.time_limit_seconds = time_limit;
  opt.canonical = canonical;
  return opt;
}

int run_exact(Ctx& ctx, const ExactArgs& a) {
  const SolveOptions opt = solve_options(a.mode, a.time_limit, !a.no_canonical);
  const CoverInstance inst = build_instance(a.k);
  const SearchCertificate cert = solve_min_cover(inst, opt);
  const bool optimal = cert.status == SearchStatus::Optimal;
  const bool verified = !cert.chosen.empty() && is_affine_blocking(lift_lines(inst, cert.chosen_index), 2).holds();
  if (ctx.common.json) {
    Json j{{"schema", schema("certificate")},
           {"k", cert.k},
           {"status", optimal ? "optimal" : "time-limit"}};
    j["optimum"] = optimal ? Json(cert.optimum()) : Json(nullptr);
    j["lower"] = cert.lower;
    j["upper"] = cert.upper;
    j["chosen"] = vecs_json(cert.chosen);
    j["canonical"] = cert.canonical;
    j["node_count"] = cert.node_count;
    j["seconds"] = cert.seconds;
    j["verified"] = verified;
    j["trace"] = cert.trace;
    ctx.out << j.dump(2) << '\n';
  } else {
    if (optimal) {
      ctx.out << "b'_3(" << a.k << ",2) = " << cert.optimum() << '\n';
    } else {
      ctx.out << "b'_3(" << a.k << ",2) in [" << cert.lower << ", " << cert.upper << "] (time limit)\n";
    }
    ctx.out << "nodes " << cert.node_count << ", " << fixed(cert.seconds, 3) << " s, "
            << (verified ? "verified" : "NOT verified") << (cert.canonical ? ", canonical" : "") << '\n';
    for (const Vec& p : cert.chosen) ctx.out << "  " << vec_text(p) << '\n';
    if (a.trace)
      for (const auto& line : cert.trace) ctx.out << "# " << line << '\n';
  }
  if (!verified) throw Error(ErrorCode::NotBlocking, "certificate failed independent verification");
  if (!optimal) {
    ctx.err << "error: time limit reached; optimum in [" << cert.lower << ", " << cert.upper << "]\n";
    return kError;
  }
  return kOk;
}

// Exact values for k = 2..k_max replace the reference rows.
std::vector<BPrimeEntry> bprime_with_computed(int k_max, double time_limit) {
  std::vector<BPrimeEntry> table = reference_bprime();
  for (int k = 2; k <= k_max; ++k) {
    const SearchCertificate cert = solve_min_cover(build_instance(k), solve_options("bnb", time_limit, false));
    for (auto& e : table) {
      if (e.k != k) continue;
      e.lo = cert.lower;
      e.hi = cert.upper;
      e.source = cert.status == SearchStatus::Optimal ? "computed" : "computed (time limit)";
    }
  }
  return table;
}

std::string tl_csv(const std::vector<TlRow>& rows) {
  std::string s = "n,lo_exp,hi_exp\n";
  for (const auto& r : rows) {
    s += std::to_string(r.n) + "," + std::to_string(r.lo_exp) + "," + std::to_string(r.hi_exp) + "\n";
  }
  return s;
}

struct TableArgs {
  int n_max = 0;
  bool csv = false;
  int compute = 0;
  double time_limit = 600;
};

int run_table_tl(Ctx& ctx, const TableArgs& a) {
  if (a.csv && ctx.common.json) throw UsageError("--csv and --json are exclusive");
  if (a.n_max < 1) throw UsageError("--n-max must be positive");
  if (a.compute != 0 && (a.compute < 2 || a.compute > 5)) throw UsageError("--compute takes K in [2, 5]");
  const auto bprime = a.compute ? bprime_with_computed(a.compute, a.time_limit) : reference_bprime();
  const auto rows = tl_table(a.n_max, bprime);
  if (a.csv) {
    ctx.out << tl_csv(rows);
  } else if (ctx.common.json) {
    Json r = Json::array();
    for (const auto& row : rows) r.push_back({{"n", row.n}, {"lo_exp", row.lo_exp}, {"hi_exp", row.hi_exp}});
    Json src = Json::array();
    for (const auto& e : bprime) src.push_back({{"k", e.k}, {"lo", e.lo}, {"hi", e.hi}, {"source", e.source}});
    ctx.out << Json{{"schema", schema("tl-table")}, {"rows", r}, {"bprime", src}}.dump(2) << '\n';
  } else {
    // Collapse runs of equal rows into ranges of n.
    for (std::size_t i = 0; i < rows.size();) {
      std::size_t j = i;
      while (j + 1 < rows.size() && rows[j + 1].lo_exp == rows[i].lo_exp && rows[j + 1].hi_exp == rows[i].hi_exp) ++j;
      ctx.out << "n = " << rows[i].n;
      if (j > i) ctx.out << ".." << rows[j].n;
      ctx.out << ": T_L(n) = 3^" << rows[i].lo_exp;
      if (!rows[i].exact()) ctx.out << " .. 3^" << rows[i].hi_exp;
      ctx.out << '\n';
      i = j + 1;
    }
  }
  return kOk;
}

// --- repro -------------------------------------------------------------------

struct ReproArgs {
  bool long_run = false;
  std::string expected = "repro/expected";
  std::optional<std::string> out_dir;
  bool update = false;
  double time_limit = 3600;
};

const std::vector<int> kRealisticQ = {2, 3, 4, 5, 7, 8, 9};

std::string bound_grid_csv() {
  std::string s = "q,k,strong_lower,strong_upper_random,strong_upper_previous\n";
  for (int q : kRealisticQ) {
    for (int k : {2, 3, 4, 5, 6, 8, 10, 20, 50, 100}) {
      const BoundReport r = strong_bounds(q, k);
      s += std::to_string(q) + "," + std::to_string(k) + "," + r.find("strong_lower")->exact->str() + "," +
           fixed(r.find("strong_upper_random")->value, 6) + "," + fixed(r.find("strong_upper_previous")->value, 6) +
           "\n";
    }
  }
  s += "\nq,crossover_k_le_2000\n";
  for (int q : kRealisticQ) {
    const auto k = strong_upper_crossover(q, 2000);
    s += std::to_string(q) + "," + (k ? std::to_string(*k) : std::string("none")) + "\n";
  }
  return s;
}

std::string cq_csv() {
  std::string s = "q,c_q,lemma_holds,above_1_plus_1_over_2000q\n";
  for (int q : kRealisticQ) {
    const CqResult r = compute_cq(q, 1e-9);
    const bool lemma = mrrw(q, (q - 1.0) / (q + 1.0)) < 1.0 / (q + 1.0);
    const bool remark = r.lo > 1.0 + 1.0 / (2000.0 * q);
    s += std::to_string(q) + "," + fixed(r.c, 7) + "," + (lemma ? "yes" : "no") + "," + (remark ? "yes" : "no") + "\n";
  }
  return s;
}

// Line diff good enough for short tables: reports every differing line.
std::string diff_lines(const std::string& expected, const std::string& actual) {
  auto split = [](const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    return lines;
  };
  const auto e = split(expected);
  const auto a = split(actual);
  std::string out;
  for (std::size_t i = 0; i < std::max(e.size(), a.size()); ++i) {
    const std::string* x = i < e.size() ? &e[i] : nullptr;
    const std::string* y = i < a.size() ? &a[i] : nullptr;
    if (x && y && *x == *y) continue;
    out += "@@ line " + std::to_string(i + 1) + "\n";
    if (x) out += "- " + *x + "\n";
    if (y) out += "+ " + *y + "\n";
  }
  return out;
}

int run_repro(Ctx& ctx, const ReproArgs& a) {
  namespace fs = std::filesystem;
  const int k_max = a.long_run ? 5 : 4;
  std::vector<std::pair<std::string, std::string>> files;

  std::string row;
  std::vector<BPrimeEntry> computed = reference_bprime();
  for (int k = 2; k <= k_max; ++k) {
    const SearchCertificate cert =
        solve_min_cover(build_instance(k), solve_options("bnb", a.time_limit, true));
    const bool optimal = cert.status == SearchStatus::Optimal;
    ctx.err << "k=" << k << ": " << (optimal ? "optimum " + std::to_string(cert.optimum())
                                              : "time limit, bracket [" + std::to_string(cert.lower) + ", " +
                                                    std::to_string(cert.upper) + "]")
            << " (" << cert.node_count << " nodes, " << fixed(cert.seconds, 1) << " s)\n";
    if (!row.empty()) row += ' ';
    row += optimal ? std::to_string(cert.optimum()) : std::to_string(cert.lower) + "-" + std::to_string(cert.upper);
    for (auto& e : computed) {
      if (e.k == k) {
        e.lo = cert.lower;
        e.hi = cert.upper;
      }
    }
  }
  files.emplace_back(a.long_run ? "bprime_long.txt" : "bprime.txt", row + "\n");
  files.emplace_back("tl.csv", tl_csv(tl_table(24, computed)));
  files.emplace_back("bounds.csv", bound_grid_csv());
  files.emplace_back("cq.csv", cq_csv());

  if (a.out_dir) {
    fs::create_directories(*a.out_dir);
    for (const auto& [name, text] : files) write_text_file((fs::path(*a.out_dir) / name).string(), text);
  }
  if (a.update) {
    fs::create_directories(a.expected);
    for (const auto& [name, text] : files) write_text_file((fs::path(a.expected) / name).string(), text);
    ctx.out << "expected files written to " << a.expected << '\n';
    return kOk;
  }

  Json results = Json::array();
  bool all_match = true;
  for (const auto& [name, text] : files) {
    const fs::path path = fs::path(a.expected) / name;
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "missing expected file `" + path.string() + "`");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string diff = diff_lines(buf.str(), text);
    all_match = all_match && diff.empty();
    results.push_back({{"file", name}, {"match", diff.empty()}, {"diff", diff}});
    if (!ctx.common.json) {
      ctx.out << name << ": " << (diff.empty() ? "match" : "MISMATCH") << '\n';
      if (!diff.empty()) ctx.out << diff;
    }
  }
  if (ctx.common.json) {
    ctx.out << Json{{"schema", schema("repro")}, {"long", a.long_run}, {"files", results}, {"match", all_match}}.dump(2)
            << '\n';
  }
  return all_match ? kOk : kPropertyFalse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine and strong blocking sets, minimal and trifferent codes", "blockset"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Ctx ctx{out, err, {}};
  app.add_flag("--json", ctx.common.json, "Machine-readable output");
  app.add_option("--threads", ctx.common.threads, "Worker threads (default: BLOCKSET_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  std::function<int()> runner;

  CountArgs count;
  auto* cmd_count = app.add_subcommand("count", "Subspace counts and exact estimate checks");
  cmd_count->add_option("--q", count.q)->required();
  cmd_count->add_option("--k", count.k)->required();
  cmd_count->add_option("--s", count.s)->required();
  cmd_count->add_flag("--oracle", count.oracle, "Also count n_q by enumeration");
  cmd_count->callback([&] { runner = [&] { return run_count(ctx, count); }; });

  auto* cmd_verify = app.add_subcommand("verify", "Verify blocking and code properties");
  cmd_verify->require_subcommand(1, 1);
  VerifySetArgs vset;
  for (const char* name : {"affine-blocking", "strong-blocking"}) {
    const bool strong = std::string(name) == "strong-blocking";
    auto* sub = cmd_verify->add_subcommand(name, strong ? "Strong t-blocking set (t = --s)" : "Affine s-blocking set");
    sub->add_option("--file", vset.file, "Point-set file")->required();
    sub->add_option("--s", vset.s)->required();
    sub->add_option("--sample", vset.sample, "Check N random subspaces instead of all")->check(CLI::PositiveNumber);
    sub->add_option("--seed", vset.seed);
    sub->callback([&, strong] { runner = [&, strong] { return run_verify_set(ctx, vset, strong); }; });
  }
  VerifyCodeArgs vcode;
  auto* cmd_code = cmd_verify->add_subcommand("code", "Linear code properties");
  cmd_code->add_option("--file", vcode.file, "Generator matrix file")->required();
  cmd_code->add_option("--check", vcode.check, "minimal|trifferent|distance|nondegenerate|perfect-hash:T")->required();
  cmd_code->add_option("--mode", vcode.mode, "direct|equivalence (trifferent only)");
  cmd_code->callback([&] { runner = [&] { return run_verify_code(ctx, vcode); }; });

  auto* cmd_construct = app.add_subcommand("construct", "Build blocking sets");
  cmd_construct->require_subcommand(1, 1);
  ConstructRandomArgs crand;
  auto* cmd_random = cmd_construct->add_subcommand("random", "Union of random subspaces (or points)");
  cmd_random->add_option("--q", crand.q)->required();
  cmd_random->add_option("--k", crand.k)->required();
  cmd_random->add_option("--s", crand.s)->required();
  cmd_random->add_option("--seed", crand.seed)->required();
  cmd_random->add_option("--strategy", crand.strategy, "subspaces|points");
  cmd_random->add_option("--dim", crand.dim, "Dimension of the random subspaces");
  cmd_random->add_option("--m", crand.m, "Number of draws");
  cmd_random->add_option("--max-attempts", crand.max_attempts)->check(CLI::PositiveNumber);
  cmd_random->add_option("--out", crand.out, "Write the point set here");
  cmd_random->callback([&] { runner = [&] { return run_construct_random(ctx, crand); }; });
  ConstructTetraArgs ctetra;
  auto* cmd_tetra = cmd_construct->add_subcommand("tetrahedron", "Lines through pairs of basis points");
  cmd_tetra->add_option("--q", ctetra.q)->required();
  cmd_tetra->add_option("--k", ctetra.k)->required();
  cmd_tetra->add_option("--out", ctetra.out);
  cmd_tetra->callback([&] { runner = [&] { return run_construct_tetra(ctx, ctetra); }; });
  ConstructGraphArgs cgraph;
  auto* cmd_graph = cmd_construct->add_subcommand("graph", "Lines along the edges of a graph");
  cmd_graph->add_option("--points", cgraph.points, "Projective point-set file")->required();
  cmd_graph->add_option("--graph", cgraph.graph, "Graph file")->required();
  cmd_graph->add_option("--out", cgraph.out);
  cmd_graph->add_flag("--hypothesis", cgraph.hypothesis, "Also check the spanning-component hypothesis (n <= 20)");
  cmd_graph->callback([&] { runner = [&] { return run_construct_graph(ctx, cgraph); }; });

  BoundsArgs bounds;
  auto* cmd_bounds = app.add_subcommand("bounds", "Evaluate the bounds for (q, k[, s]) or for trifferent codes of length n");
  cmd_bounds->add_option("--q", bounds.q);
  cmd_bounds->add_option("--k", bounds.k);
  cmd_bounds->add_option("--s", bounds.s);
  cmd_bounds->add_option("--c", bounds.c, "Coefficient for the asymptotic lower bound (default c_q)");
  cmd_bounds->add_option("--n", bounds.n, "Trifferent code length");
  cmd_bounds->callback([&] { runner = [&] { return run_bounds(ctx, bounds); }; });

  CqArgs cq;
  auto* cmd_cq = app.add_subcommand("cq", "Solve for c_q by bisection");
  cmd_cq->add_option("--q", cq.q)->required();
  cmd_cq->add_option("--tol", cq.tol);
  cmd_cq->callback([&] { runner = [&] { return run_cq(ctx, cq); }; });

  auto* cmd_exact = app.add_subcommand("exact", "Exact searches");
  cmd_exact->require_subcommand(1, 1);
  ExactArgs exact;
  auto* cmd_bprime = cmd_exact->add_subcommand("bprime", "Minimum strong blocking set of PG(k-1, 3)");
  cmd_bprime->add_option("--k", exact.k)->required();
  cmd_bprime->add_option("--time-limit", exact.time_limit, "Seconds");
  cmd_bprime->add_option("--mode", exact.mode, "bnb|exhaustive");
  cmd_bprime->add_flag("--no-canonical", exact.no_canonical, "Skip the lexicographic sweep");
  cmd_bprime->add_flag("--trace", exact.trace, "Print the lower-bound trace");
  cmd_bprime->callback([&] { runner = [&] { return run_exact(ctx, exact); }; });

  auto* cmd_table = app.add_subcommand("table", "Tables");
  cmd_table->require_subcommand(1, 1);
  TableArgs table;
  auto* cmd_tl = cmd_table->add_subcommand("tl", "Maximum size of linear trifferent codes");
  cmd_tl->add_option("--n-max", table.n_max)->required();
  cmd_tl->add_flag("--csv", table.csv);
  cmd_tl->add_option("--compute", table.compute, "Recompute b'_3(k,2) for k <= K instead of the stored values");
  cmd_tl->add_option("--time-limit", table.time_limit, "Seconds per k with --compute");
  cmd_tl->callback([&] { runner = [&] { return run_table_tl(ctx, table); }; });

  ReproArgs repro;
  auto* cmd_repro = app.add_subcommand("repro", "Regenerate the reference tables and diff them");
  cmd_repro->add_flag("--long", repro.long_run, "Include k = 5");
  cmd_repro->add_option("--expected", repro.expected, "Directory of expected files");
  cmd_repro->add_option("--out-dir", repro.out_dir, "Also write the generated files here");
  cmd_repro->add_flag("--update", repro.update, "Overwrite the expected files");
  cmd_repro->add_option("--time-limit", repro.time_limit, "Seconds per k");
  cmd_repro->callback([&] { runner = [&] { return run_repro(ctx, repro); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    return runner();
  } catch (const Error& e) {
    if (ctx.common.json) {
      err << Json{{"schema", schema("error")}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump()
          << '\n';
    } else {
      err << "error: " << e.what() << '\n';
    }
  } catch (const UsageError& e) {
    if (ctx.common.json) {
      err << Json{{"schema", schema("error")}, {"error", "Usage"}, {"message", e.what()}}.dump() << '\n';
    } else {
      err << "error: " << e.what() << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
  }
  return kError;
}

}  // namespace blockset::cli
