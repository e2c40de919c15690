#include "minones/relation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <sstream>

#include "minones/error.hpp"

namespace minones {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kArityMismatch: return "ArityMismatch";
    case ErrorKind::kArityTooLarge: return "ArityTooLarge";
    case ErrorKind::kEmptyRelation: return "EmptyRelation";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kNotIHSBMinus: return "NotIHSBMinus";
    case ErrorKind::kLemmaContractViolated: return "LemmaContractViolated";
    case ErrorKind::kUnknownRelation: return "UnknownRelation";
    case ErrorKind::kUnsatisfiableConstraint: return "UnsatisfiableConstraint";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kNotMergeableLanguage: return "NotMergeableLanguage";
    case ErrorKind::kBoundViolated: return "BoundViolated";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kOutOfScopeFallback: return "OutOfScopeFallback";
    case ErrorKind::kPreconditionViolated: return "PreconditionViolated";
  }
  return "Unknown";
}

namespace {

std::atomic<int> g_max_arity{10};

std::uint32_t low_bits(int arity) {
  return arity >= 32 ? ~0U : ((1U << arity) - 1U);
}

void check_same_arity(const BoolTuple& a, const BoolTuple& b) {
  if (a.arity() != b.arity()) {
    throw Error(ErrorKind::kArityMismatch, "tuples of arity " + std::to_string(a.arity()) +
                                               " and " + std::to_string(b.arity()));
  }
}

}  // namespace

int max_arity() noexcept { return g_max_arity.load(std::memory_order_relaxed); }

void set_max_arity(int arity) {
  if (arity < 1 || arity > kArityLimit) {
    throw Error(ErrorKind::kInvalidArgument,
                "MAX_ARITY must lie in [1, " + std::to_string(kArityLimit) + "]");
  }
  g_max_arity.store(arity, std::memory_order_relaxed);
}

// --- BoolTuple --------------------------------------------------------------

BoolTuple::BoolTuple(int arity, std::uint32_t bits) : arity_(arity), bits_(bits) {
  if (arity < 0 || arity > kArityLimit) {
    throw Error(ErrorKind::kArityTooLarge, "tuple arity " + std::to_string(arity));
  }
  if ((bits & ~low_bits(arity)) != 0) {
    throw Error(ErrorKind::kInvalidArgument, "tuple bits exceed arity");
  }
}

BoolTuple BoolTuple::from_string(std::string_view text) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= 1U << i;
    } else if (text[i] != '0') {
      throw Error(ErrorKind::kInvalidArgument, "bad tuple literal '" + std::string(text) + "'");
    }
  }
  return BoolTuple(static_cast<int>(text.size()), bits);
}

BoolTuple BoolTuple::ones(int arity) { return BoolTuple(arity, low_bits(arity)); }

BoolTuple BoolTuple::with(int position, bool value) const {
  std::uint32_t bit = 1U << (position - 1);
  return BoolTuple(arity_, value ? (bits_ | bit) : (bits_ & ~bit));
}

int BoolTuple::weight() const noexcept { return std::popcount(bits_); }

std::string BoolTuple::to_string() const {
  std::string s(static_cast<std::size_t>(arity_), '0');
  for (int i = 0; i < arity_; ++i) {
    if ((bits_ >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

BoolTuple meet(const BoolTuple& a, const BoolTuple& b) {
  check_same_arity(a, b);
  return BoolTuple(a.arity(), a.bits() & b.bits());
}

BoolTuple join(const BoolTuple& a, const BoolTuple& b) {
  check_same_arity(a, b);
  return BoolTuple(a.arity(), a.bits() | b.bits());
}

bool leq(const BoolTuple& a, const BoolTuple& b) {
  check_same_arity(a, b);
  return (a.bits() & ~b.bits()) == 0;
}

TupleOps tuple_ops(const BoolTuple& a, const BoolTuple& b) {
  return {meet(a, b), join(a, b), leq(a, b)};
}

// --- PositionSet ------------------------------------------------------------

PositionSet::PositionSet(std::initializer_list<int> positions)
    : PositionSet(std::vector<int>(positions)) {}

PositionSet::PositionSet(const std::vector<int>& positions) {
  for (int p : positions) {
    if (p < 1 || p > kArityLimit) {
      throw Error(ErrorKind::kInvalidArgument, "position " + std::to_string(p) + " out of range");
    }
    mask_ |= 1U << (p - 1);
  }
}

PositionSet PositionSet::all(int arity) { return from_mask(low_bits(arity)); }

int PositionSet::size() const noexcept { return std::popcount(mask_); }

std::vector<int> PositionSet::positions() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if ((mask_ >> i) & 1U) out.push_back(i + 1);
  }
  return out;
}

PositionSet PositionSet::complement(int arity) const {
  return from_mask(low_bits(arity) & ~mask_);
}

std::string PositionSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int p : positions()) {
    if (!first) os << ',';
    os << p;
    first = false;
  }
  os << '}';
  return os.str();
}

// --- Relation ---------------------------------------------------------------

Relation::Relation(std::string name, int arity, const std::vector<BoolTuple>& tuples)
    : name_(std::move(name)), arity_(arity) {
  if (arity < 1) {
    throw Error(ErrorKind::kInvalidArgument, "relation '" + name_ + "' must have positive arity");
  }
  if (arity > max_arity()) {
    throw Error(ErrorKind::kArityTooLarge, "relation '" + name_ + "' has arity " +
                                               std::to_string(arity) + " > MAX_ARITY " +
                                               std::to_string(max_arity()));
  }
  masks_.reserve(tuples.size());
  for (const auto& t : tuples) {
    if (t.arity() != arity) {
      throw Error(ErrorKind::kArityMismatch, "tuple " + t.to_string() + " in relation '" + name_ +
                                                 "' of arity " + std::to_string(arity));
    }
    masks_.push_back(t.bits());
  }
  build_table();
}

Relation Relation::from_masks(std::string name, int arity, std::vector<std::uint32_t> masks) {
  if (arity < 0 || arity > kArityLimit || (arity > max_arity())) {
    throw Error(ErrorKind::kArityTooLarge, "relation '" + name + "' arity " + std::to_string(arity));
  }
  Relation r;
  r.name_ = std::move(name);
  r.arity_ = arity;
  for (auto m : masks) {
    if ((m & ~low_bits(arity)) != 0) {
      throw Error(ErrorKind::kInvalidArgument, "tuple mask exceeds arity in '" + r.name_ + "'");
    }
  }
  r.masks_ = std::move(masks);
  r.build_table();
  return r;
}

Relation Relation::from_predicate(std::string name, int arity,
                                  const std::function<bool(std::uint32_t)>& holds) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (1U << arity); ++m) {
    if (holds(m)) masks.push_back(m);
  }
  return from_masks(std::move(name), arity, std::move(masks));
}

Relation Relation::truth(std::string name) {
  Relation r;
  r.name_ = std::move(name);
  r.arity_ = 0;
  r.masks_ = {0};
  r.table_ = {true};
  return r;
}

void Relation::build_table() {
  std::sort(masks_.begin(), masks_.end());
  masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
  if (masks_.empty()) {
    throw Error(ErrorKind::kEmptyRelation, "relation '" + name_ + "' has no tuples");
  }
  table_.assign(std::size_t{1} << arity_, false);
  for (auto m : masks_) table_[m] = true;
}

std::vector<BoolTuple> Relation::tuples() const {
  std::vector<BoolTuple> out;
  out.reserve(masks_.size());
  for (auto m : masks_) out.emplace_back(arity_, m);
  return out;
}

Relation Relation::renamed(std::string name) const {
  Relation r = *this;
  r.name_ = std::move(name);
  return r;
}

}  // namespace minones
