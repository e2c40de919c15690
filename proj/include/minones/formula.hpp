#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minones/relation.hpp"

namespace minones {

/// Variables are 1-based indices into a formula's universe. The value
/// kConstZero in a constraint argument is the constant-0 placeholder.
using Var = int;
inline constexpr Var kConstZero = 0;

class ConstraintLanguage {
 public:
  ConstraintLanguage() = default;
  explicit ConstraintLanguage(std::vector<Relation> relations);

  const std::vector<Relation>& relations() const noexcept { return relations_; }
  std::size_t size() const noexcept { return relations_.size(); }
  bool empty() const noexcept { return relations_.empty(); }
  int max_arity() const noexcept { return max_arity_; }

  bool contains(const std::string& name) const { return index_.contains(name); }
  /// Throws kUnknownRelation.
  const Relation& at(const std::string& name) const;
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Appends a relation; returns the name under which it is stored. If a
  /// relation with the same tuple set already exists, its name is returned
  /// and nothing is added.
  std::string add_or_reuse(const Relation& r);
  /// Appends; throws kInvalidArgument on duplicate names.
  void add(Relation r);

 private:
  std::vector<Relation> relations_;
  std::map<std::string, std::size_t> index_;
  int max_arity_ = 0;
};

struct Constraint {
  std::string relation;
  std::vector<Var> args;

  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend auto operator<=>(const Constraint&, const Constraint&) = default;
};

struct Formula {
  std::shared_ptr<const ConstraintLanguage> language;
  int num_vars = 0;  // universe is {1, ..., num_vars}
  std::vector<Constraint> constraints;

  /// Variables that occur in some constraint, ascending.
  std::vector<Var> occurring_vars() const;
  bool has_placeholders() const;
  /// Throws kUnknownRelation / kArityMismatch / kInvalidArgument.
  void validate() const;
};

class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int num_vars) : values_(static_cast<std::size_t>(num_vars) + 1, false) {}
  static Assignment from_true_set(int num_vars, const std::vector<Var>& true_vars);

  int num_vars() const noexcept { return static_cast<int>(values_.size()) - 1; }
  /// kConstZero always reads false.
  bool operator[](Var v) const { return v != kConstZero && values_[static_cast<std::size_t>(v)]; }
  void set(Var v, bool value);
  int weight() const noexcept { return weight_; }
  std::vector<Var> true_vars() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<bool> values_{false};
  int weight_ = 0;
};

/// Packs the arguments of c under a into a tuple word for the relation.
std::uint32_t tuple_under(const Constraint& c, const Assignment& a);

bool evaluate(const Formula& f, const Assignment& a);

struct NormalizedFormula {
  Formula formula;
  std::shared_ptr<const ConstraintLanguage> language;
};

/// Rewrites every constraint with repeated variables or constant-0 arguments
/// into a constraint with pairwise-distinct variables over an identified
/// relation, extending the language. Constraints that become trivially true
/// are dropped. Throws kUnsatisfiableConstraint when a constraint has no
/// satisfying assignment.
NormalizedFormula normalize_formula(const Formula& f);

/// Replaces the constant-0 placeholder by k + 1 fresh variables: every
/// constraint with a placeholder is copied k + 1 times, copy i using z_i at
/// all of its placeholder positions.
Formula eliminate_zero_constants(const Formula& f, int k);

}  // namespace minones
