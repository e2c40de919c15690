#pragma once

// Polynomial kernelization for mergeable languages: the sunflower-driven
// reduction to an auxiliary formula and the variable elimination that turns
// it back into a small formula over the original language.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "minones/formula.hpp"
#include "minones/sunflower.hpp"

namespace minones {

struct FooSet {
  std::string relation;
  /// Distinct projections onto the non-zero-closed positions, in first
  /// occurrence order.
  std::vector<VarTuple> tuples;
};

/// Projects every constraint on `relation` onto its non-zero-closed positions.
/// Expects a normalized formula.
FooSet foo_set(const Formula& f, const std::string& relation);

/// Sum of |FOO| over the non-zero-valid relations used by f.
long long foo_measure(const Formula& f);

struct ReductionStep {
  std::string relation;
  PositionSet core;           // original positions of the relation
  VarTuple core_values;
  int replaced = 0;           // constraints rewritten in this step
  std::string replacement;    // relation name of the rewritten constraints
  int implications = 0;       // implication constraints added
};

struct ReductionResult {
  Formula formula;  // F', over `language`
  std::shared_ptr<const ConstraintLanguage> language;
  std::vector<ReductionStep> steps;
  /// Measure before the first iteration and after each one.
  std::vector<long long> measure;
  /// |FOO| per non-zero-valid relation, same indexing as `measure`.
  std::vector<std::map<std::string, std::size_t>> foo_sizes;
  /// Some sunflower restriction came out empty: no solution of weight <= k.
  bool unsatisfiable = false;
};

/// Repeats sunflower replacements until every non-zero-valid relation has
/// |FOO| <= k^d (d!)^2. `d` defaults to the language's maximum arity. Needs
/// k >= 1 and a normalized formula over a mergeable language.
ReductionResult reduce_formula(const Formula& f, int k, int d = 0);

struct KernelReport {
  int input_vars = 0;
  int input_constraints = 0;
  int k = 0;
  int d = 0;
  int iterations = 0;
  std::vector<std::map<std::string, std::size_t>> foo_sizes;
  std::vector<long long> measure;
  int x_size = 0;            // |X| before the heavy-variable pass
  int x_survivors = 0;
  int implication_edges = 0;
  int max_implied = 0;       // largest reachable set from one x in X
  int eliminated_zero_closed = 0;
  int eliminated_heavy = 0;
  int eliminated_unreachable = 0;
  int z_vars = 0;
  int final_vars = 0;
  int final_constraints = 0;
  int nonzero_valid_relations = 0;  // |Γ'_nzv| in the final auxiliary formula
  long long bound = 0;
  /// Set when the input was recognised as having no weight-<=k solution and a
  /// fixed small NO instance was emitted instead.
  bool trivial_no = false;
  std::string note;
};

struct KernelResult {
  Formula formula;  // over the input language
  int k = 0;
  KernelReport report;
};

/// |nzv| d (d!)^2 k^{d+1} + |nzv| d (d!)^2 k^d + k + 1, saturating.
long long kernel_bound(int nonzero_valid_relations, int k, int d);

/// Throws kNotMergeableLanguage if some relation of the language is not
/// mergeable, kBoundViolated if the output exceeds kernel_bound.
KernelResult kernelize(const Formula& f, int k);

}  // namespace minones
