#include "blockset/exact/cover.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <limits>
#include <map>
#include <string>

#include "blockset/error.hpp"

namespace blockset {

CoverInstance build_instance(int k) {
  if (k < 2 || k > 6) throw Error(ErrorCode::KTooLarge, "build_instance supports 2 <= k <= 6");
  const Field& f = Field::of(3);
  CoverInstance inst;
  inst.k = k;
  inst.sets = projective_points(f, k);
  const std::size_t lines = inst.sets.size();

  std::vector<std::uint32_t> line_of(*checked_power(3, k), 0);
  for (std::size_t l = 0; l < lines; ++l) {
    line_of[vec_index(3, inst.sets[l])] = static_cast<std::uint32_t>(l);
    line_of[vec_index(3, negated(f, inst.sets[l]))] = static_cast<std::uint32_t>(l);
  }

  inst.incidence.resize(lines);
  for_each_affine_subspace(f, k, 2, OriginFilter::AvoidingOrigin, [&](const AffineSubspace& w) {
    const auto id = static_cast<std::uint32_t>(inst.universe.size());
    std::vector<std::uint32_t> hit;
    for (const Vec& x : w.points()) hit.push_back(line_of[vec_index(3, x)]);
    std::sort(hit.begin(), hit.end());
    for (auto l : hit) inst.incidence[l].push_back(id);
    inst.blockers.push_back(std::move(hit));
    inst.universe.push_back(w);
  });

  for (const Vec& a : inst.sets) {
    CoverCut inside{a, true, {}, k - 1};
    CoverCut meeting{a, false, {}, 2 * k - 1};
    for (std::size_t l = 0; l < lines; ++l) {
      (dot(f, a, inst.sets[l]) == 0 ? inside : meeting).sets.push_back(static_cast<std::uint32_t>(l));
    }
    inst.cuts.push_back(std::move(meeting));
    inst.cuts.push_back(std::move(inside));
  }
  return inst;
}

PointSet lift_lines(const CoverInstance& inst, const std::vector<std::uint32_t>& chosen) {
  std::vector<Vec> pts;
  for (auto l : chosen) pts.push_back(inst.sets.at(l));
  return lift_to_affine(PointSet(Field::of(3), inst.k, PointKind::Projective, std::move(pts)));
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr int kInfeasible = std::numeric_limits<int>::max();

class Solver {
 public:
  Solver(const CoverInstance& inst, double time_limit)
      : inst_(inst),
        f_(Field::of(3)),
        k_(inst.k),
        lines_(static_cast<int>(inst.sets.size())),
        start_(Clock::now()),
        time_limit_(time_limit) {
    // Universe elements blocked by the same lines (W and -W always are) are
    // merged into one class.
    std::map<std::vector<std::uint32_t>, std::uint32_t> classes;
    for (const auto& b : inst.blockers) {
      if (classes.emplace(b, static_cast<std::uint32_t>(class_lines_.size())).second) class_lines_.push_back(b);
    }
    line_classes_.resize(lines_);
    for (std::uint32_t e = 0; e < class_lines_.size(); ++e)
      for (auto l : class_lines_[e]) line_classes_[l].push_back(e);

    inside_.assign(static_cast<std::size_t>(lines_) * lines_, 0);
    for (int l = 0; l < lines_; ++l)
      for (int a = 0; a < lines_; ++a) inside_[l * lines_ + a] = dot(f_, inst.sets[a], inst.sets[l]) == 0;

    state_.assign(lines_, kFree);
    const auto classes_n = class_lines_.size();
    cover_.assign(classes_n, 0);
    free_count_.resize(classes_n);
    for (std::size_t e = 0; e < classes_n; ++e) free_count_[e] = static_cast<int>(class_lines_[e].size());
    uncovered_ = static_cast<int>(classes_n);
    out_chosen_.assign(lines_, 0);
    free_out_.assign(lines_, 0);
    free_in_.assign(lines_, 0);
    for (int a = 0; a < lines_; ++a)
      for (int l = 0; l < lines_; ++l) (inside_[l * lines_ + a] ? free_in_ : free_out_)[a]++;
    basis_.resize(lines_);
    stamp_.assign(lines_, 0);
  }

  std::size_t class_count() const { return class_lines_.size(); }
  std::uint64_t nodes() const { return nodes_; }
  bool timed_out() const { return timed_out_; }
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  int global_floor() const { return 4 * (k_ - 1); }

  // Lower bound on the size of any completion, or kInfeasible.
  int bound() {
    int need = 0;
    for (int a = 0; a < lines_; ++a) {
      const int dout = std::max(0, 2 * k_ - 1 - out_chosen_[a]);
      const int din = (k_ - 1) - basis_[a].size;
      if (free_out_[a] < dout || free_in_[a] < din) return kInfeasible;
      need = std::max(need, dout + din);
    }
    ++generation_;
    int packed = 0;
    for (std::size_t e = 0; e < class_lines_.size(); ++e) {
      if (cover_[e]) continue;
      if (free_count_[e] == 0) return kInfeasible;
      bool disjoint = true;
      for (auto l : class_lines_[e]) {
        if (state_[l] == kFree && stamp_[l] == generation_) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      ++packed;
      for (auto l : class_lines_[e])
        if (state_[l] == kFree) stamp_[l] = generation_;
    }
    need = std::max(need, packed);
    return std::max(static_cast<int>(chosen_.size()) + need, global_floor());
  }

  // Depth-first search for covers smaller than ub_. With stop_on_first the
  // search ends at the first cover found.
  //
  // `group` lists the symmetries (indices into perms_) that fix the current
  // chosen and excluded sets. After the subtree that includes candidate c,
  // the whole orbit of c is excluded: any cover using an image g(c) maps
  // under g to a cover of the same size that uses c and respects the current
  // fixings, and that subtree has already been searched.
  void dfs(const std::vector<std::uint32_t>& group) {
    if (stopped_) return;
    ++nodes_;
    if ((nodes_ & 255) == 0 && elapsed() > time_limit_) {
      timed_out_ = stopped_ = true;
      return;
    }
    if (bound() >= ub_) return;
    if (uncovered_ == 0) {
      ub_ = static_cast<int>(chosen_.size());
      best_ = chosen_;
      std::sort(best_.begin(), best_.end());
      if (stop_on_first_) {
        stopped_ = true;
      } else {
        trace_.push_back("cover of size " + std::to_string(ub_) + " at node " + std::to_string(nodes_));
      }
      return;
    }
    // Branch on the uncovered class with the fewest free lines.
    std::size_t pick = 0;
    int fewest = kInfeasible;
    for (std::size_t e = 0; e < class_lines_.size(); ++e) {
      if (!cover_[e] && free_count_[e] < fewest) {
        fewest = free_count_[e];
        pick = e;
      }
    }
    std::vector<std::pair<int, std::uint32_t>> cands;  // (-gain, line)
    for (auto l : class_lines_[pick]) {
      if (state_[l] != kFree) continue;
      int gain = 0;
      for (auto e : line_classes_[l]) gain += cover_[e] == 0;
      cands.emplace_back(-gain, l);
    }
    std::sort(cands.begin(), cands.end());
    std::vector<std::uint32_t> excluded;
    std::vector<std::uint32_t> child_group;
    for (auto [neg_gain, l] : cands) {
      if (state_[l] != kFree) continue;
      child_group.clear();
      for (auto g : group)
        if (perms_[g][l] == l) child_group.push_back(g);
      choose(l);
      dfs(child_group);
      unchoose(l);
      if (stopped_) break;
      exclude(l);
      excluded.push_back(l);
      for (auto g : group) {
        const std::uint32_t image = perms_[g][l];
        if (state_[image] == kFree) {
          exclude(image);
          excluded.push_back(image);
        }
      }
    }
    for (auto it = excluded.rbegin(); it != excluded.rend(); ++it) unexclude(*it);
  }

  // Optimization from a greedy incumbent. Every strong blocking set spans,
  // and GL(k, 3) maps any basis inside it to the standard basis, so the
  // optimum is attained by a set containing e_1, ..., e_k.
  void minimize() {
    root_bound_ = bound();
    trace_.push_back("root lower bound " + std::to_string(root_bound_));
    std::vector<std::uint32_t> frame;
    for (int l = 0; l < lines_; ++l)
      if (weight(inst_.sets[l]) == 1) frame.push_back(l);
    for (auto l : frame) choose(l);
    trace_.push_back("standard basis fixed; lower bound " + std::to_string(bound()));
    greedy();
    trace_.push_back("greedy cover of size " + std::to_string(ub_));
    build_frame_symmetries();
    std::vector<std::uint32_t> group(perms_.size());
    for (std::uint32_t g = 0; g < group.size(); ++g) group[g] = g;
    dfs(group);
    for (auto it = frame.rbegin(); it != frame.rend(); ++it) unchoose(*it);
  }

  // Is there a cover of size <= target extending the current state?
  bool feasible(int target) {
    const int saved_ub = ub_;
    const auto saved_best = best_;
    ub_ = target + 1;
    stop_on_first_ = true;
    stopped_ = false;
    dfs({});
    const bool found = ub_ <= target;
    stop_on_first_ = false;
    if (!timed_out_) stopped_ = false;
    ub_ = saved_ub;
    best_ = saved_best;
    return found;
  }

  // Lexicographically smallest cover of the given size, by fixing lines in
  // increasing index order whenever a completion still exists.
  std::optional<std::vector<std::uint32_t>> lex_smallest(int target) {
    std::vector<std::uint32_t> forced_out;
    for (int l = 0; l < lines_ && static_cast<int>(chosen_.size()) < target; ++l) {
      if (state_[l] != kFree) continue;
      choose(l);
      if (feasible(target)) continue;
      unchoose(l);
      if (timed_out_) break;
      exclude(l);
      forced_out.push_back(l);
    }
    std::optional<std::vector<std::uint32_t>> out;
    if (!timed_out_ && uncovered_ == 0) {
      out = chosen_;
      std::sort(out->begin(), out->end());
    }
    while (!chosen_.empty()) unchoose(chosen_.back());
    for (auto it = forced_out.rbegin(); it != forced_out.rend(); ++it) unexclude(*it);
    return out;
  }

  // Subsets of each size in lexicographic order; the first cover is optimal
  // and lexicographically smallest.
  void exhaustive() {
    for (int size = 1; size <= lines_ && !stopped_; ++size) {
      trace_.push_back("searching size " + std::to_string(size));
      combos(0, size);
      if (!best_.empty()) {
        ub_ = size;
        return;
      }
    }
  }

  int ub() const { return ub_; }
  int root_bound() const { return root_bound_; }
  const std::vector<std::uint32_t>& best() const { return best_; }
  std::vector<std::string>& trace() { return trace_; }

 private:
  static constexpr std::int8_t kFree = 0;
  static constexpr std::int8_t kChosen = 1;
  static constexpr std::int8_t kExcluded = 2;

  // Signed permutations of the coordinates, as permutations of the lines.
  // They are exactly the collineations fixing the set of basis points.
  void build_frame_symmetries() {
    std::vector<std::uint32_t> line_of(*checked_power(3, k_));
    for (int l = 0; l < lines_; ++l) {
      line_of[vec_index(3, inst_.sets[l])] = l;
      line_of[vec_index(3, negated(f_, inst_.sets[l]))] = l;
    }
    std::vector<int> order(k_);
    for (int i = 0; i < k_; ++i) order[i] = i;
    do {
      // The sign of the first coordinate is absorbed by the scalar -1.
      for (int signs = 0; signs < (1 << (k_ - 1)); ++signs) {
        std::vector<std::uint32_t> perm(lines_);
        for (int l = 0; l < lines_; ++l) {
          const Vec& p = inst_.sets[l];
          Vec image(k_);
          for (int i = 0; i < k_; ++i) {
            const bool flip = i > 0 && ((signs >> (i - 1)) & 1);
            image[order[i]] = flip ? f_.neg(p[i]) : p[i];
          }
          perm[l] = line_of[vec_index(3, image)];
        }
        perms_.push_back(std::move(perm));
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }

  void greedy() {
    std::vector<std::uint32_t> picked;
    while (uncovered_ > 0) {
      int best_gain = -1;
      std::uint32_t best_line = 0;
      for (int l = 0; l < lines_; ++l) {
        if (state_[l] != kFree) continue;
        int gain = 0;
        for (auto e : line_classes_[l]) gain += cover_[e] == 0;
        if (gain > best_gain) {
          best_gain = gain;
          best_line = l;
        }
      }
      choose(best_line);
      picked.push_back(best_line);
    }
    ub_ = static_cast<int>(chosen_.size());
    best_ = chosen_;
    std::sort(best_.begin(), best_.end());
    for (auto it = picked.rbegin(); it != picked.rend(); ++it) unchoose(*it);
  }

  void combos(int next, int size) {
    if (stopped_) return;
    ++nodes_;
    if ((nodes_ & 255) == 0 && elapsed() > time_limit_) {
      timed_out_ = stopped_ = true;
      return;
    }
    if (uncovered_ == 0) {
      best_ = chosen_;
      stopped_ = true;
      return;
    }
    if (static_cast<int>(chosen_.size()) == size) return;
    // The first uncovered class must be blocked by a line not yet passed.
    for (std::size_t e = 0; e < class_lines_.size(); ++e) {
      if (cover_[e]) continue;
      if (static_cast<int>(class_lines_[e].back()) < next) return;
      break;
    }
    for (int l = next; l < lines_ && !stopped_; ++l) {
      if (lines_ - l < size - static_cast<int>(chosen_.size())) break;
      choose(l);
      combos(l + 1, size);
      if (stopped_ && !timed_out_) return;  // keep the cover in place for best_
      unchoose(l);
    }
  }

  // Append-only echelon basis: every row is reduced against the rows before
  // it, so reducing a vector by the rows in order never reintroduces an
  // eliminated pivot.
  bool insert_into_basis(int a, const Vec& p) {
    HyperBasis& hb = basis_[a];
    Row x{};
    for (int c = 0; c < k_; ++c) x[c] = p[c];
    for (int r = 0; r < hb.size; ++r) {
      const int pivot = hb.pivot[r];
      if (x[pivot] == 0) continue;
      const Elem m = f_.neg(x[pivot]);
      for (int c = 0; c < k_; ++c) x[c] = f_.add(x[c], f_.mul(m, hb.rows[r][c]));
    }
    int pivot = 0;
    while (pivot < k_ && x[pivot] == 0) ++pivot;
    if (pivot == k_) return false;
    const Elem inv = f_.inv(x[pivot]);
    for (int c = 0; c < k_; ++c) x[c] = f_.mul(x[c], inv);
    hb.rows[hb.size] = x;
    hb.pivot[hb.size] = pivot;
    ++hb.size;
    return true;
  }

  void choose(std::uint32_t l) {
    state_[l] = kChosen;
    chosen_.push_back(l);
    for (auto e : line_classes_[l]) {
      --free_count_[e];
      if (cover_[e]++ == 0) --uncovered_;
    }
    undo_.emplace_back();
    auto& grown = undo_.back();
    for (int a = 0; a < lines_; ++a) {
      if (inside_[l * lines_ + a]) {
        --free_in_[a];
        if (basis_[a].size < k_ - 1 && insert_into_basis(a, inst_.sets[l])) grown.push_back(a);
      } else {
        ++out_chosen_[a];
        --free_out_[a];
      }
    }
  }

  void unchoose(std::uint32_t l) {
    state_[l] = kFree;
    chosen_.pop_back();
    for (auto e : line_classes_[l]) {
      ++free_count_[e];
      if (--cover_[e] == 0) ++uncovered_;
    }
    for (int a = 0; a < lines_; ++a) {
      if (inside_[l * lines_ + a]) {
        ++free_in_[a];
      } else {
        --out_chosen_[a];
        ++free_out_[a];
      }
    }
    for (int a : undo_.back()) --basis_[a].size;
    undo_.pop_back();
  }

  void exclude(std::uint32_t l) {
    state_[l] = kExcluded;
    for (auto e : line_classes_[l]) --free_count_[e];
    for (int a = 0; a < lines_; ++a) --(inside_[l * lines_ + a] ? free_in_ : free_out_)[a];
  }

  void unexclude(std::uint32_t l) {
    state_[l] = kFree;
    for (auto e : line_classes_[l]) ++free_count_[e];
    for (int a = 0; a < lines_; ++a) ++(inside_[l * lines_ + a] ? free_in_ : free_out_)[a];
  }

  const CoverInstance& inst_;
  const Field& f_;
  int k_;
  int lines_;
  Clock::time_point start_;
  double time_limit_;

  std::vector<std::vector<std::uint32_t>> class_lines_;
  std::vector<std::vector<std::uint32_t>> line_classes_;
  std::vector<char> inside_;  // inside_[l * lines + a]: line l lies in hyperplane a

  std::vector<std::int8_t> state_;
  std::vector<int> cover_;
  std::vector<int> free_count_;
  int uncovered_ = 0;
  std::vector<int> out_chosen_;
  std::vector<int> free_out_;
  std::vector<int> free_in_;
  using Row = std::array<Elem, 6>;
  struct HyperBasis {
    std::array<Row, 5> rows;
    std::array<int, 5> pivot;
    int size = 0;
  };
  std::vector<HyperBasis> basis_;
  std::vector<std::vector<int>> undo_;
  std::vector<std::uint32_t> chosen_;

  std::vector<std::vector<std::uint32_t>> perms_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;

  int ub_ = kInfeasible;
  int root_bound_ = 0;
  std::vector<std::uint32_t> best_;
  bool stop_on_first_ = false;
  bool stopped_ = false;
  bool timed_out_ = false;
  std::uint64_t nodes_ = 0;
  std::vector<std::string> trace_;
};

}  // namespace

SearchCertificate solve_min_cover(const CoverInstance& inst, const SolveOptions& options) {
  Solver solver(inst, options.time_limit_seconds);
  SearchCertificate cert;
  cert.k = inst.k;
  if (options.mode == SolveMode::Exhaustive) {
    solver.exhaustive();
    cert.canonical = !solver.timed_out();
    cert.chosen_index = solver.best();
    if (solver.timed_out()) {
      cert.status = SearchStatus::TimeLimit;
      cert.upper = static_cast<int>(inst.sets.size());
      cert.lower = 0;
    } else {
      cert.lower = cert.upper = solver.ub();
    }
  } else {
    solver.minimize();
    cert.chosen_index = solver.best();
    cert.upper = solver.ub();
    if (solver.timed_out()) {
      cert.status = SearchStatus::TimeLimit;
      cert.lower = solver.root_bound();
      solver.trace().push_back("time limit reached");
    } else {
      cert.lower = cert.upper;
      solver.trace().push_back("no cover of size " + std::to_string(cert.upper - 1) + " (search tree exhausted)");
      if (options.canonical) {
        if (auto lex = solver.lex_smallest(cert.upper)) {
          cert.chosen_index = *lex;
          cert.canonical = true;
        } else {
          solver.trace().push_back("time limit reached during the canonical sweep");
        }
      }
    }
  }
  for (auto l : cert.chosen_index) cert.chosen.push_back(inst.sets[l]);
  cert.node_count = solver.nodes();
  cert.seconds = solver.elapsed();
  cert.trace = std::move(solver.trace());
  return cert;
}

std::vector<BPrimeEntry> reference_bprime() {
  return {{1, 1, 1, "trivial"},     {2, 4, 4, "computed"},     {3, 9, 9, "computed"},
          {4, 14, 14, "computed"},  {5, 19, 19, "published"}, {6, 22, 24, "published"}};
}

std::vector<TlRow> tl_table(int n_max, const std::vector<BPrimeEntry>& bprime) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "need n_max >= 1");
  for (std::size_t i = 0; i < bprime.size(); ++i) {
    if (bprime[i].k != static_cast<int>(i) + 1 || bprime[i].lo > bprime[i].hi) {
      throw Error(ErrorCode::InsufficientData, "b' entries must cover k = 1, 2, ... without gaps");
    }
  }
  if (bprime.empty()) throw Error(ErrorCode::InsufficientData, "no b' values");
  const int last = static_cast<int>(bprime.size());
  std::vector<TlRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    TlRow row{n, 0, 0};
    for (const auto& e : bprime) {
      if (e.hi <= n) row.lo_exp = std::max(row.lo_exp, e.k);
      if (e.lo <= n) row.hi_exp = std::max(row.hi_exp, e.k);
    }
    // Past the table only the lower bound 4(k - 1) is known.
    for (int k = last + 1; 4 * (k - 1) <= n; ++k) row.hi_exp = std::max(row.hi_exp, k);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace blockset
