#pragma once

// Boolean relations in truth-table form.
//
// Positions are 1-based throughout the public API. Internally position i of a
// tuple is bit (i - 1) of a 32-bit word; the integer order of these words is
// the enumeration order used for every deterministic search in the library.

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace minones {

/// Hard ceiling on arity imposed by the bit-table representation.
inline constexpr int kArityLimit = 20;

/// Configured MAX_ARITY (default 10). Relations above it are rejected.
int max_arity() noexcept;
void set_max_arity(int arity);

class BoolTuple {
 public:
  BoolTuple() = default;
  BoolTuple(int arity, std::uint32_t bits);

  /// Parses "011" (first character is position 1).
  static BoolTuple from_string(std::string_view text);
  static BoolTuple zeros(int arity) { return BoolTuple(arity, 0); }
  static BoolTuple ones(int arity);

  int arity() const noexcept { return arity_; }
  std::uint32_t bits() const noexcept { return bits_; }

  bool operator[](int position) const { return (bits_ >> (position - 1)) & 1U; }
  BoolTuple with(int position, bool value) const;
  int weight() const noexcept;

  std::string to_string() const;

  friend bool operator==(const BoolTuple&, const BoolTuple&) = default;
  friend auto operator<=>(const BoolTuple& a, const BoolTuple& b) {
    if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  int arity_ = 0;
  std::uint32_t bits_ = 0;
};

BoolTuple meet(const BoolTuple& a, const BoolTuple& b);
BoolTuple join(const BoolTuple& a, const BoolTuple& b);
bool leq(const BoolTuple& a, const BoolTuple& b);

struct TupleOps {
  BoolTuple meet;
  BoolTuple join;
  bool leq;
};
TupleOps tuple_ops(const BoolTuple& a, const BoolTuple& b);

/// A set of 1-based positions.
class PositionSet {
 public:
  PositionSet() = default;
  PositionSet(std::initializer_list<int> positions);
  explicit PositionSet(const std::vector<int>& positions);

  static PositionSet from_mask(std::uint32_t mask) {
    PositionSet s;
    s.mask_ = mask;
    return s;
  }
  static PositionSet all(int arity);

  std::uint32_t mask() const noexcept { return mask_; }
  bool contains(int position) const { return (mask_ >> (position - 1)) & 1U; }
  bool empty() const noexcept { return mask_ == 0; }
  int size() const noexcept;
  std::vector<int> positions() const;
  PositionSet complement(int arity) const;

  std::string to_string() const;  // "{1,2,4}"

  friend bool operator==(const PositionSet&, const PositionSet&) = default;
  friend auto operator<=>(const PositionSet&, const PositionSet&) = default;

 private:
  std::uint32_t mask_ = 0;
};

class Relation {
 public:
  /// Validates arity and tuple lengths; duplicates collapse. Empty tuple sets
  /// are rejected with ErrorKind::kEmptyRelation.
  Relation(std::string name, int arity, const std::vector<BoolTuple>& tuples);

  static Relation from_masks(std::string name, int arity, std::vector<std::uint32_t> masks);
  static Relation from_predicate(std::string name, int arity,
                                 const std::function<bool(std::uint32_t)>& holds);
  /// The 0-ary relation holding the empty tuple.
  static Relation truth(std::string name = "TRUE");

  const std::string& name() const noexcept { return name_; }
  int arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return masks_.size(); }

  bool contains(std::uint32_t mask) const { return mask < table_.size() && table_[mask]; }
  bool contains(const BoolTuple& t) const { return t.arity() == arity_ && contains(t.bits()); }

  /// Tuples as bit words, ascending.
  std::span<const std::uint32_t> masks() const noexcept { return masks_; }
  std::vector<BoolTuple> tuples() const;

  Relation renamed(std::string name) const;
  bool same_tuples(const Relation& other) const {
    return arity_ == other.arity_ && masks_ == other.masks_;
  }
  friend bool operator==(const Relation& a, const Relation& b) {
    return a.name_ == b.name_ && a.same_tuples(b);
  }

 private:
  Relation() = default;
  void build_table();

  std::string name_;
  int arity_ = 0;
  std::vector<std::uint32_t> masks_;
  std::vector<bool> table_;
};

// ---------------------------------------------------------------------------
// Closure properties

enum class Property { kZeroValid, kOneValid, kHorn, kDualHorn, kIhsbMinus, kWidth2Affine };

std::string_view to_string(Property p);

bool check_property(const Relation& r, Property p);

/// Four tuples to which the merge operation applies but whose product lies
/// outside the relation, in core/petal form.
struct WitnessQuad {
  BoolTuple alpha, beta, gamma, delta;
  BoolTuple produced;  // alpha & (beta | gamma)
  PositionSet core_positions;
  PositionSet petal_positions;
};

/// True iff the merge operation applies to (alpha, beta, gamma, delta).
bool merge_applies(const BoolTuple& alpha, const BoolTuple& beta, const BoolTuple& gamma,
                   const BoolTuple& delta);

struct MergeabilityResult {
  bool mergeable = true;
  std::optional<WitnessQuad> witness;
};

/// Exhaustive scan; on failure returns the first violating quadruple in
/// (alpha, beta, gamma, delta) enumeration order.
MergeabilityResult is_mergeable(const Relation& r);

struct PropertyRecord {
  bool zero_valid = false;
  bool one_valid = false;
  bool horn = false;
  bool dual_horn = false;
  bool ihsb_minus = false;
  bool width2_affine = false;
  bool mergeable = false;
  std::optional<WitnessQuad> witness;
};

PropertyRecord property_record(const Relation& r);

// ---------------------------------------------------------------------------
// Zero-closure, non-zero-closed cores and sunflower restrictions

PositionSet zero_closed_positions(const Relation& r);

/// Smallest superset of r that is zero-closed on every position of p.
Relation zero_closure(const Relation& r, PositionSet p);

struct NonzeroCore {
  Relation relation;
  /// positions[i] is the original position of core position i + 1.
  std::vector<int> positions;
};

/// Forces the zero-closed positions to 0 and projects onto the rest. When
/// every position is zero-closed the result is the 0-ary truth relation.
NonzeroCore nonzero_core(const Relation& r);

/// {t in r : t restricted to c, zero elsewhere, is in r}. Throws kEmptyRelation
/// when no tuple survives.
Relation sunflower_restriction(const Relation& r, PositionSet c);

/// |c|-ary relation of core values that extend by zeros to a tuple of r.
Relation core_relation(const Relation& r, PositionSet c);

// ---------------------------------------------------------------------------
// Identification and assignment

/// Per-position binding for transform(): a positive class label groups
/// positions into one variable; kBindZero / kBindOne assign a constant.
inline constexpr int kBindZero = 0;
inline constexpr int kBindOne = -1;

struct TransformResult {
  Relation relation;
  /// Class label of each output position, ascending by least original position.
  std::vector<int> classes;
};

/// Satisfying assignments of r under the identification/assignment. May yield
/// the 0-ary truth relation if every position is assigned. Throws
/// kEmptyRelation if nothing survives.
TransformResult transform(const Relation& r, std::span<const int> bindings);

// ---------------------------------------------------------------------------
// Implementations by implications and negative clauses

struct ClauseAtom {
  enum class Kind { kNegativeClause, kImplication, kAssignment };
  Kind kind;
  PositionSet clause;  // kNegativeClause
  int from = 0;        // kImplication
  int to = 0;
  int position = 0;    // kAssignment
  bool value = false;

  static ClauseAtom negative(PositionSet s) { return {Kind::kNegativeClause, s, 0, 0, 0, false}; }
  static ClauseAtom implication(int i, int j) { return {Kind::kImplication, {}, i, j, 0, false}; }
  static ClauseAtom assignment(int i, bool v) { return {Kind::kAssignment, {}, 0, 0, i, v}; }

  bool holds(std::uint32_t tuple) const;
  std::string to_string() const;
  friend bool operator==(const ClauseAtom&, const ClauseAtom&) = default;
};

struct ClauseImpl {
  int arity = 0;
  std::vector<ClauseAtom> atoms;

  /// Tuple set of the conjunction of atoms.
  std::vector<std::uint32_t> models() const;
};

/// All valid implications plus all minimal valid negative clauses, verified to
/// reproduce r exactly; throws kNotIHSBMinus otherwise.
ClauseImpl implement_zero_valid_ihsb(const Relation& r);

struct SunflowerImplementation {
  Relation closed;
  std::vector<std::pair<int, int>> implications;
};

/// Implements the sunflower restriction of a mergeable r with core c by its
/// petal zero-closure plus the petal implications valid in it. Throws
/// kLemmaContractViolated if the conjunction does not reproduce the
/// restriction or the closure is not mergeable.
SunflowerImplementation implement_sunflower_restriction(const Relation& r, PositionSet c);

}  // namespace minones
