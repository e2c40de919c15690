#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "minones/formula.hpp"

namespace minones {

enum class SolveStatus { kSat, kUnsat };
std::string_view to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::kUnsat;
  std::optional<Assignment> witness;  // weight <= k, satisfies the formula
  std::optional<int> optimum;         // minimum weight, when SAT
};

inline constexpr int kDefaultBruteCap = 24;

/// Enumerates true-sets by size then lexicographically; the first hit is a
/// minimum-weight solution. Throws kTooLarge above `cap` variables.
SolveResult solve_brute(const Formula& f, int k, int cap = kDefaultBruteCap);

/// Bounded search tree: extend the current true-set by zeros, branch on the
/// false arguments of the first falsified constraint. Iterative deepening on
/// the depth bound makes the first solution a minimum-weight one.
SolveResult solve_branch(const Formula& f, int k);

/// Branch and bound with constraint propagation over partial assignments.
/// Same answers as solve_branch; far smaller trees on gadget-heavy formulas.
SolveResult solve_propagate(const Formula& f, int k);

struct MinimizeOptions {
  std::vector<Var> fixed_true;
  std::vector<Var> fixed_false;
  /// Variables whose truth counts toward the cost; empty means all.
  std::vector<Var> cost_vars;
  /// Only solutions of cost <= bound are considered.
  int bound = 0;
};

/// Minimum-cost satisfying assignment under the fixings, or nullopt if none
/// has cost <= bound.
std::optional<Assignment> minimize_weight(const Formula& f, const MinimizeOptions& options);

}  // namespace minones
