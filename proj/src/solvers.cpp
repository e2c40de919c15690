#include "minones/solvers.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>

#include "minones/error.hpp"

namespace minones {

std::string_view to_string(SolveStatus s) { return s == SolveStatus::kSat ? "SAT" : "UNSAT"; }

namespace {

struct CompiledConstraint {
  const Relation* relation;
  std::vector<Var> args;
};

std::vector<CompiledConstraint> compile(const Formula& f) {
  f.validate();
  std::vector<CompiledConstraint> out;
  out.reserve(f.constraints.size());
  for (const auto& c : f.constraints) out.push_back({&f.language->at(c.relation), c.args});
  return out;
}

SolveResult sat(int num_vars, const std::vector<Var>& true_vars) {
  auto a = Assignment::from_true_set(num_vars, true_vars);
  const int w = a.weight();
  return {SolveStatus::kSat, std::move(a), w};
}

// --- brute force ------------------------------------------------------------

SolveResult brute(const Formula& f, int k, int cap) {
  if (f.num_vars > cap) {
    throw Error(ErrorKind::kTooLarge, std::to_string(f.num_vars) + " variables exceed the brute-force cap of " +
                                          std::to_string(cap));
  }
  const auto cs = compile(f);
  const int n = f.num_vars;
  auto satisfied = [&](std::uint32_t set) {
    for (const auto& c : cs) {
      std::uint32_t t = 0;
      for (std::size_t i = 0; i < c.args.size(); ++i) {
        const Var v = c.args[i];
        if (v != kConstZero && ((set >> (v - 1)) & 1U)) t |= 1U << i;
      }
      if (!c.relation->contains(t)) return false;
    }
    return true;
  };
  std::vector<int> combo;
  for (int size = 0; size <= std::min(k, n); ++size) {
    combo.resize(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
      std::uint32_t set = 0;
      for (int v : combo) set |= 1U << (v - 1);
      if (satisfied(set)) return sat(n, combo);
      // Next combination in lexicographic order.
      int i = size - 1;
      while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - size + i + 1) --i;
      if (i < 0) break;
      ++combo[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) {
        combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  return {};
}

// --- bounded search tree ----------------------------------------------------

class BranchSearch {
 public:
  BranchSearch(const Formula& f) : cs_(compile(f)), in_set_(static_cast<std::size_t>(f.num_vars) + 1, false) {}

  bool run(int budget) { return rec(budget); }
  std::vector<Var> true_set() const { return order_; }

 private:
  // Index of the first constraint falsified when everything outside the
  // current true-set is false, or -1.
  long first_falsified() const {
    for (std::size_t ci = 0; ci < cs_.size(); ++ci) {
      const auto& c = cs_[ci];
      std::uint32_t t = 0;
      for (std::size_t i = 0; i < c.args.size(); ++i) {
        if (c.args[i] != kConstZero && in_set_[static_cast<std::size_t>(c.args[i])]) t |= 1U << i;
      }
      if (!c.relation->contains(t)) return static_cast<long>(ci);
    }
    return -1;
  }

  bool rec(int budget) {
    const long ci = first_falsified();
    if (ci < 0) return true;
    if (budget == 0) return false;
    const auto& c = cs_[static_cast<std::size_t>(ci)];
    std::vector<Var> tried;
    for (Var v : c.args) {
      if (v == kConstZero || in_set_[static_cast<std::size_t>(v)]) continue;
      if (std::find(tried.begin(), tried.end(), v) != tried.end()) continue;
      tried.push_back(v);
      in_set_[static_cast<std::size_t>(v)] = true;
      order_.push_back(v);
      if (rec(budget - 1)) return true;
      order_.pop_back();
      in_set_[static_cast<std::size_t>(v)] = false;
    }
    return false;
  }

  std::vector<CompiledConstraint> cs_;
  std::vector<bool> in_set_;
  std::vector<Var> order_;
};

// --- propagation-based branch and bound -------------------------------------

class PropagatingSearch {
 public:
  PropagatingSearch(const Formula& f, const MinimizeOptions& opt)
      : n_(f.num_vars), cs_(compile(f)), occurs_(static_cast<std::size_t>(n_) + 1),
        costs_(static_cast<std::size_t>(n_) + 1, opt.cost_vars.empty()), bound_(opt.bound) {
    for (Var v : opt.cost_vars) costs_.at(static_cast<std::size_t>(v)) = true;
    for (std::size_t ci = 0; ci < cs_.size(); ++ci) {
      for (Var v : cs_[ci].args) {
        if (v != kConstZero) occurs_[static_cast<std::size_t>(v)].push_back(ci);
      }
    }
    for (auto& list : occurs_) list.erase(std::unique(list.begin(), list.end()), list.end());
    initial_.assign(static_cast<std::size_t>(n_) + 1, kUnknown);
    for (Var v : opt.fixed_true) fix(initial_, v, 1);
    for (Var v : opt.fixed_false) fix(initial_, v, 0);
  }

  std::optional<Assignment> run() {
    if (!conflict_) {
      std::deque<std::size_t> all;
      for (std::size_t ci = 0; ci < cs_.size(); ++ci) all.push_back(ci);
      if (propagate(initial_, all)) search(initial_);
    }
    if (!best_) return std::nullopt;
    std::vector<Var> ones;
    for (Var v = 1; v <= n_; ++v) {
      if ((*best_)[static_cast<std::size_t>(v)] == 1) ones.push_back(v);
    }
    return Assignment::from_true_set(n_, ones);
  }

 private:
  static constexpr std::int8_t kUnknown = -1;
  using State = std::vector<std::int8_t>;

  void fix(State& s, Var v, std::int8_t value) {
    if (v < 1 || v > n_) throw Error(ErrorKind::kInvalidArgument, "fixed variable out of range");
    auto& slot = s[static_cast<std::size_t>(v)];
    if (slot != kUnknown && slot != value) conflict_ = true;
    slot = value;
  }

  // Narrows unknown arguments of constraint ci; false on conflict.
  bool narrow(State& s, std::size_t ci, std::vector<Var>& changed) const {
    const auto& c = cs_[ci];
    const std::size_t r = c.args.size();
    std::uint32_t any1 = 0, any0 = 0;
    bool found = false;
    for (auto t : c.relation->masks()) {
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i) {
        const bool bit = (t >> i) & 1U;
        const Var v = c.args[i];
        if (v == kConstZero) {
          ok = !bit;
          continue;
        }
        const auto val = s[static_cast<std::size_t>(v)];
        if (val != kUnknown) {
          ok = bit == (val == 1);
          continue;
        }
        // Repeated variables must read the same bit everywhere.
        for (std::size_t j = 0; j < i && ok; ++j) {
          if (c.args[j] == v) ok = (((t >> j) & 1U) != 0) == bit;
        }
      }
      if (!ok) continue;
      found = true;
      any1 |= t;
      any0 |= ~t;
    }
    if (!found) return false;
    for (std::size_t i = 0; i < r; ++i) {
      const Var v = c.args[i];
      if (v == kConstZero || s[static_cast<std::size_t>(v)] != kUnknown) continue;
      const bool can1 = (any1 >> i) & 1U, can0 = (any0 >> i) & 1U;
      if (can1 && !can0) {
        s[static_cast<std::size_t>(v)] = 1;
        changed.push_back(v);
      } else if (can0 && !can1) {
        s[static_cast<std::size_t>(v)] = 0;
        changed.push_back(v);
      }
    }
    return true;
  }

  bool propagate(State& s, std::deque<std::size_t> queue) const {
    std::vector<bool> queued(cs_.size(), false);
    for (auto ci : queue) queued[ci] = true;
    std::vector<Var> changed;
    while (!queue.empty()) {
      const auto ci = queue.front();
      queue.pop_front();
      queued[ci] = false;
      changed.clear();
      if (!narrow(s, ci, changed)) return false;
      for (Var v : changed) {
        for (auto other : occurs_[static_cast<std::size_t>(v)]) {
          if (!queued[other]) {
            queued[other] = true;
            queue.push_back(other);
          }
        }
      }
    }
    return true;
  }

  int cost(const State& s) const {
    int total = 0;
    for (Var v = 1; v <= n_; ++v) {
      if (s[static_cast<std::size_t>(v)] == 1 && costs_[static_cast<std::size_t>(v)]) ++total;
    }
    return total;
  }

  bool holds_zero_extended(const State& s, const CompiledConstraint& c) const {
    std::uint32_t t = 0;
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      const Var v = c.args[i];
      if (v != kConstZero && s[static_cast<std::size_t>(v)] == 1) t |= 1U << i;
    }
    return c.relation->contains(t);
  }

  void search(const State& s) {
    const int lb = cost(s);
    if (lb > bound_ || (best_ && lb >= best_cost_)) return;
    const CompiledConstraint* falsified = nullptr;
    for (const auto& c : cs_) {
      if (!holds_zero_extended(s, c)) {
        falsified = &c;
        break;
      }
    }
    if (!falsified) {
      State sol = s;
      for (auto& v : sol) {
        if (v == kUnknown) v = 0;
      }
      best_ = std::move(sol);
      best_cost_ = lb;
      return;
    }
    std::vector<Var> unknown;
    for (Var v : falsified->args) {
      if (v != kConstZero && s[static_cast<std::size_t>(v)] == kUnknown &&
          std::find(unknown.begin(), unknown.end(), v) == unknown.end()) {
        unknown.push_back(v);
      }
    }
    // Some unknown argument must be true; branch on which one comes first.
    for (std::size_t i = 0; i < unknown.size(); ++i) {
      State next = s;
      std::deque<std::size_t> touched;
      for (std::size_t j = 0; j <= i; ++j) {
        next[static_cast<std::size_t>(unknown[j])] = j == i ? 1 : 0;
        for (auto ci : occurs_[static_cast<std::size_t>(unknown[j])]) touched.push_back(ci);
      }
      if (propagate(next, std::move(touched))) search(next);
    }
  }

  int n_;
  std::vector<CompiledConstraint> cs_;
  std::vector<std::vector<std::size_t>> occurs_;
  std::vector<bool> costs_;
  int bound_;
  State initial_;
  bool conflict_ = false;
  std::optional<State> best_;
  int best_cost_ = 0;
};

}  // namespace

SolveResult solve_brute(const Formula& f, int k, int cap) { return brute(f, k, cap); }

SolveResult solve_branch(const Formula& f, int k) {
  for (int budget = 0; budget <= k; ++budget) {
    BranchSearch search(f);
    if (search.run(budget)) return sat(f.num_vars, search.true_set());
  }
  return {};
}

SolveResult solve_propagate(const Formula& f, int k) {
  MinimizeOptions opt;
  opt.bound = k;
  auto best = PropagatingSearch(f, opt).run();
  if (!best) return {};
  const int w = best->weight();
  return {SolveStatus::kSat, std::move(best), w};
}

std::optional<Assignment> minimize_weight(const Formula& f, const MinimizeOptions& options) {
  return PropagatingSearch(f, options).run();
}

}  // namespace minones
