#pragma once

#include <optional>
#include <vector>

#include "minones/formula.hpp"
#include "minones/relation.hpp"

namespace minones {

using VarTuple = std::vector<Var>;

/// Tuples that agree on the core positions and whose petal variables are
/// private to one member each. A petal variable may also occur in the core.
struct Sunflower {
  PositionSet core;
  VarTuple core_values;  // in ascending core-position order
  std::vector<VarTuple> members;
};

/// Structural check of the sunflower definition for tuples of arity t.
bool is_valid_sunflower(const Sunflower& s, int t);

/// Sunflower of cardinality k + 1 in a family of distinct t-tuples, found by
/// the constructive sunflower-lemma recursion. Guaranteed to succeed when
/// |family| > k^t (t!)^2; may succeed below that.
std::optional<Sunflower> find_sunflower(const std::vector<VarTuple>& family, int k);

/// k^t (t!)^2, saturating at the int64 maximum.
long long sunflower_threshold(int k, int t);

}  // namespace minones
