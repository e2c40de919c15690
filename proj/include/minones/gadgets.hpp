#pragma once

// Lower-bound machinery for non-mergeable languages: forcing constants and
// equality, selection relations derived from a non-mergeability witness,
// log-cost selection formulas and the reduction from Exact Hitting Set.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minones/classifier.hpp"
#include "minones/formula.hpp"
#include "minones/io.hpp"

namespace minones {

/// Recipe argument values below zero pin a position to a shared constant.
inline constexpr int kPinOne = -1;
inline constexpr int kPinZero = -2;

struct Atom {
  std::string relation;
  std::vector<int> args;  // slot index, kPinOne or kPinZero
};

/// Constraints over the language on `interface + internal` local slots.
/// Interface slots come first. Internal slots are existential.
struct Recipe {
  std::string name;
  int interface = 0;
  int internal = 0;
  std::vector<Atom> atoms;

  int slots() const { return interface + internal; }
  bool uses(int pin) const;
  /// Appends src with its slot i renamed to slot_map[i]; pins are kept.
  void append(const Recipe& src, const std::vector<int>& slot_map);
  std::string to_string() const;
};

/// Relation on the interface slots: pins read as constants, internal slots
/// are projected out. Throws kEmptyRelation if unsatisfiable.
Relation recipe_relation(const Recipe& recipe, const ConstraintLanguage& language);

enum class Guarantee { kUnconditional, kWeightConditional };
std::string_view to_string(Guarantee g);

struct GadgetFragment {
  Recipe recipe;
  /// Stand-alone instance: the recipe plus the shared constant gadgets its
  /// pins need.
  Formula formula;
  std::vector<Var> interface;
  std::vector<Var> internal;
  /// Minimum weight of the stand-alone instance when its contract holds.
  int weight_overhead = 0;
  Guarantee guarantee = Guarantee::kUnconditional;
};

struct ConstantGadgets {
  std::shared_ptr<const ConstraintLanguage> language;
  int k = 0;
  GadgetFragment one;   // x = 1
  GadgetFragment zero;  // x = 0
  GadgetFragment eq;    // x = y (with the shared constants pinned)
  std::string one_path;   // "one_valid", "assignment" or "disequality_chain"
  std::string zero_path;  // "direct" or "equality_chain"
  std::string eq_path;    // "direct" or "pinned_zero"
};

/// Needs a language whose classification is NO_POLY_KERNEL; throws
/// kPreconditionViolated otherwise, kLemmaContractViolated if a fragment
/// fails its exhaustive check.
ConstantGadgets force_constants(std::shared_ptr<const ConstraintLanguage> language, int k);

enum class TemplateKind { kR3, kR5 };
std::string_view to_string(TemplateKind kind);

/// R3: {000, 110, 101} inside, 100 outside.
bool matches_r3(const Relation& r);
/// R5: {10110, 10000, 01101, 01000} inside, 10100 and 01100 outside.
bool matches_r5(const Relation& r);

struct SelectionTemplate {
  TemplateKind kind = TemplateKind::kR3;
  Relation relation = Relation::truth();  // recipe_relation(recipe)
  Recipe recipe;                          // slots (x, left, right) or (l, r, x, left, right)
  std::optional<Recipe> neq;              // R5 only
  std::string source;                     // the non-mergeable relation used
  int case_number = 0;                    // 0 = dual Horn path, else 1..6
  std::vector<std::string> types;         // position types of the source relation
};

/// Uses the classifier's witness.
SelectionTemplate derive_selection_relation(std::shared_ptr<const ConstraintLanguage> language);
/// Uses the given witness, which must be a violating quadruple of a relation
/// of the language (kInvalidArgument otherwise).
SelectionTemplate derive_selection_relation(std::shared_ptr<const ConstraintLanguage> language,
                                            const NamedWitness& witness);

/// Incremental formula construction with one shared (x = 1) variable and one
/// shared (x = 0) variable, created on first use.
class FormulaBuilder {
 public:
  explicit FormulaBuilder(const ConstantGadgets& gadgets);

  Var fresh();
  Var one();
  Var zero();
  /// Instantiates a recipe; returns the variables of its internal slots.
  std::vector<Var> instantiate(const Recipe& recipe, const std::vector<Var>& interface);
  void eq(Var x, Var y);

  int num_vars() const { return num_vars_; }
  Var one_var() const { return one_; }
  Var zero_var() const { return zero_; }
  Formula formula() const;
  /// Minimum weight of the shared constant gadgets on their own.
  int shared_overhead() const;

 private:
  std::vector<Var> instantiate_into(const Recipe& recipe, const std::vector<Var>& interface,
                                    std::vector<Constraint>& out);

  const ConstantGadgets* gadgets_;
  int num_vars_ = 0;
  Var one_ = 0;
  Var zero_ = 0;
  std::vector<Constraint> shared_;
  std::vector<Constraint> constraints_;
};

struct SelectionFormula {
  TemplateKind construction = TemplateKind::kR3;
  std::vector<Var> y;
  std::vector<Var> x;    // tree nodes above the leaves, plus l_i, r_i
  std::vector<Var> pad;  // leaves pinned false
  int w = 0;
};

/// Adds a selection formula over `y` to the builder.
SelectionFormula build_selection_formula(const SelectionTemplate& t, FormulaBuilder& builder,
                                         const std::vector<Var>& y);

struct StandaloneSelection {
  SelectionFormula selection;
  Formula formula;
  Var one_var = 0;
  Var zero_var = 0;
};

/// Fresh builder, n selection variables, then exhaustive validation.
StandaloneSelection build_selection_formula(const SelectionTemplate& t, const ConstantGadgets& gadgets, int n);

/// Checks the selection contract with the shared constants pinned: Y = 0 is
/// infeasible, each unit Y extends with exactly w true X variables, and no
/// solution has fewer. Throws kLemmaContractViolated.
void validate_selection_formula(const StandaloneSelection& s);

struct EhsReduction {
  Formula formula;
  int k = 0;
  int m = 0;
  int sum_w = 0;
  int overhead = 0;
  TemplateKind construction = TemplateKind::kR3;
  /// occurrences[j][i]: variable for the i-th vertex of edge j.
  std::vector<std::vector<Var>> occurrences;
};

/// Throws kOutOfScopeFallback when the hypergraph has more than 2^m vertices.
EhsReduction reduce_exact_hitting_set(const Hypergraph& h, std::shared_ptr<const ConstraintLanguage> language);

}  // namespace minones
