#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "minones/error.hpp"
#include "minones/relation.hpp"

namespace minones {

namespace {

std::uint32_t full_mask(int arity) { return (1U << arity) - 1U; }

// Packs the bits of `t` at `positions` (0-based bit indices) into a dense word.
std::uint32_t project(std::uint32_t t, const std::vector<int>& bit_indices) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < bit_indices.size(); ++i) {
    if ((t >> bit_indices[i]) & 1U) out |= 1U << i;
  }
  return out;
}

std::vector<int> bit_indices(PositionSet s) {
  std::vector<int> out;
  for (int p : s.positions()) out.push_back(p - 1);
  return out;
}

}  // namespace

PositionSet zero_closed_positions(const Relation& r) {
  std::uint32_t closed = 0;
  for (int i = 0; i < r.arity(); ++i) {
    const std::uint32_t bit = 1U << i;
    bool ok = true;
    for (auto t : r.masks()) {
      if (!r.contains(t & ~bit)) {
        ok = false;
        break;
      }
    }
    if (ok) closed |= bit;
  }
  return PositionSet::from_mask(closed);
}

Relation zero_closure(const Relation& r, PositionSet p) {
  if ((p.mask() & ~full_mask(r.arity())) != 0) {
    throw Error(ErrorKind::kInvalidArgument, "zero_closure positions exceed arity");
  }
  std::vector<bool> seen(std::size_t{1} << r.arity(), false);
  std::deque<std::uint32_t> queue;
  for (auto t : r.masks()) {
    seen[t] = true;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    const auto t = queue.front();
    queue.pop_front();
    for (std::uint32_t rest = t & p.mask(); rest != 0; rest &= rest - 1) {
      const auto flipped = t & ~(rest & -rest);
      if (!seen[flipped]) {
        seen[flipped] = true;
        queue.push_back(flipped);
      }
    }
  }
  std::vector<std::uint32_t> masks;
  for (std::uint32_t t = 0; t < seen.size(); ++t) {
    if (seen[t]) masks.push_back(t);
  }
  std::string name = p.empty() ? r.name() : r.name() + "^0" + p.to_string();
  return Relation::from_masks(std::move(name), r.arity(), std::move(masks));
}

NonzeroCore nonzero_core(const Relation& r) {
  const auto zc = zero_closed_positions(r);
  const auto keep = zc.complement(r.arity());
  if (keep.empty()) return {Relation::truth(r.name() + "/core"), {}};
  const auto idx = bit_indices(keep);
  std::vector<std::uint32_t> masks;
  for (auto t : r.masks()) {
    if ((t & zc.mask()) == 0) masks.push_back(project(t, idx));
  }
  return {Relation::from_masks(r.name() + "/core", keep.size(), std::move(masks)),
          keep.positions()};
}

Relation sunflower_restriction(const Relation& r, PositionSet c) {
  if ((c.mask() & ~full_mask(r.arity())) != 0) {
    throw Error(ErrorKind::kInvalidArgument, "core positions exceed arity");
  }
  std::vector<std::uint32_t> masks;
  for (auto t : r.masks()) {
    if (r.contains(t & c.mask())) masks.push_back(t);
  }
  if (masks.empty()) {
    throw Error(ErrorKind::kEmptyRelation,
                "sunflower restriction of '" + r.name() + "' with core " + c.to_string());
  }
  if (masks.size() == r.size()) return r;
  return Relation::from_masks(r.name() + "|" + c.to_string(), r.arity(), std::move(masks));
}

Relation core_relation(const Relation& r, PositionSet c) {
  if (c.empty()) {
    if (!r.contains(0U)) throw Error(ErrorKind::kEmptyRelation, "core relation is empty");
    return Relation::truth(r.name() + "/corerel");
  }
  const auto idx = bit_indices(c);
  std::vector<std::uint32_t> masks;
  for (auto t : r.masks()) {
    if ((t & ~c.mask()) == 0) masks.push_back(project(t, idx));
  }
  if (masks.empty()) {
    throw Error(ErrorKind::kEmptyRelation,
                "core relation of '" + r.name() + "' with core " + c.to_string());
  }
  return Relation::from_masks(r.name() + "/corerel" + c.to_string(), c.size(), std::move(masks));
}

TransformResult transform(const Relation& r, std::span<const int> bindings) {
  if (static_cast<int>(bindings.size()) != r.arity()) {
    throw Error(ErrorKind::kArityMismatch, "transform bindings do not cover '" + r.name() + "'");
  }
  std::vector<int> classes;
  std::map<int, int> slot_of;
  std::uint32_t fixed_ones = 0;
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    const int b = bindings[i];
    if (b == kBindOne) {
      fixed_ones |= 1U << i;
    } else if (b > 0 && !slot_of.contains(b)) {
      slot_of[b] = static_cast<int>(classes.size());
      classes.push_back(b);
    } else if (b < kBindOne) {
      throw Error(ErrorKind::kInvalidArgument, "bad transform binding");
    }
  }

  std::ostringstream name;
  name << r.name() << '[';
  for (int b : bindings) {
    if (b == kBindZero) name << '0';
    else if (b == kBindOne) name << '1';
    else name << static_cast<char>('a' + slot_of[b]);
  }
  name << ']';

  const int out_arity = static_cast<int>(classes.size());
  std::vector<std::uint32_t> masks;
  for (std::uint32_t o = 0; o < (1U << out_arity); ++o) {
    std::uint32_t t = fixed_ones;
    for (std::size_t i = 0; i < bindings.size(); ++i) {
      if (bindings[i] > 0 && ((o >> slot_of[bindings[i]]) & 1U)) t |= 1U << i;
    }
    if (r.contains(t)) masks.push_back(o);
  }
  if (masks.empty()) {
    throw Error(ErrorKind::kEmptyRelation, "identification " + name.str() + " is unsatisfiable");
  }
  if (out_arity == 0) return {Relation::truth(name.str()), {}};
  return {Relation::from_masks(name.str(), out_arity, std::move(masks)), std::move(classes)};
}

// --- clause implementations -------------------------------------------------

bool ClauseAtom::holds(std::uint32_t t) const {
  switch (kind) {
    case Kind::kNegativeClause: return (t & clause.mask()) != clause.mask();
    case Kind::kImplication: return !((t >> (from - 1)) & 1U) || ((t >> (to - 1)) & 1U);
    case Kind::kAssignment: return static_cast<bool>((t >> (position - 1)) & 1U) == value;
  }
  return false;
}

std::string ClauseAtom::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kNegativeClause: os << "neg" << clause.to_string(); break;
    case Kind::kImplication: os << from << "->" << to; break;
    case Kind::kAssignment: os << position << '=' << (value ? 1 : 0); break;
  }
  return os.str();
}

std::vector<std::uint32_t> ClauseImpl::models() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < (1U << arity); ++t) {
    if (std::all_of(atoms.begin(), atoms.end(), [t](const ClauseAtom& a) { return a.holds(t); })) {
      out.push_back(t);
    }
  }
  return out;
}

namespace {

bool implication_valid(const Relation& r, int i, int j) {
  const std::uint32_t bi = 1U << (i - 1), bj = 1U << (j - 1);
  return std::none_of(r.masks().begin(), r.masks().end(),
                      [&](std::uint32_t t) { return (t & bi) && !(t & bj); });
}

bool negative_clause_valid(const Relation& r, std::uint32_t s) {
  return std::none_of(r.masks().begin(), r.masks().end(),
                      [&](std::uint32_t t) { return (t & s) == s; });
}

}  // namespace

ClauseImpl implement_zero_valid_ihsb(const Relation& r) {
  if (!r.contains(0U)) {
    throw Error(ErrorKind::kInvalidArgument, "'" + r.name() + "' is not zero-valid");
  }
  const int n = r.arity();
  ClauseImpl impl{n, {}};
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j && implication_valid(r, i, j)) impl.atoms.push_back(ClauseAtom::implication(i, j));
    }
  }
  // Minimal: no subset one element smaller is itself a valid clause.
  for (std::uint32_t s = 1; s < (1U << n); ++s) {
    if (!negative_clause_valid(r, s)) continue;
    bool minimal = true;
    for (std::uint32_t rest = s; rest != 0 && minimal; rest &= rest - 1) {
      const std::uint32_t sub = s & ~(rest & -rest);
      if (sub != 0 && negative_clause_valid(r, sub)) minimal = false;
    }
    if (minimal) impl.atoms.push_back(ClauseAtom::negative(PositionSet::from_mask(s)));
  }
  const auto models = impl.models();
  if (!std::equal(models.begin(), models.end(), r.masks().begin(), r.masks().end())) {
    throw Error(ErrorKind::kNotIHSBMinus,
                "'" + r.name() + "' is not implementable by implications and negative clauses");
  }
  return impl;
}

SunflowerImplementation implement_sunflower_restriction(const Relation& r, PositionSet c) {
  const int n = r.arity();
  const auto restricted = sunflower_restriction(r, c);
  const auto petals = c.complement(n);
  auto closed = zero_closure(restricted, petals);

  std::vector<std::pair<int, int>> implications;
  for (int i : petals.positions()) {
    for (int j : petals.positions()) {
      if (i != j && implication_valid(restricted, i, j)) implications.emplace_back(i, j);
    }
  }

  for (std::uint32_t t = 0; t < (1U << n); ++t) {
    bool in = closed.contains(t);
    for (auto [i, j] : implications) {
      if (!in) break;
      in = !((t >> (i - 1)) & 1U) || ((t >> (j - 1)) & 1U);
    }
    if (in != restricted.contains(t)) {
      throw Error(ErrorKind::kLemmaContractViolated,
                  "petal closure of '" + r.name() + "' with core " + c.to_string() +
                      " plus implications does not reproduce the sunflower restriction");
    }
  }
  if (!is_mergeable(closed).mergeable) {
    throw Error(ErrorKind::kLemmaContractViolated,
                "petal closure of '" + r.name() + "' with core " + c.to_string() +
                    " is not mergeable");
  }
  if (closed.same_tuples(r)) {
    closed = r;
  } else {
    closed = closed.renamed(r.name() + "#" + c.to_string());
  }
  return {std::move(closed), std::move(implications)};
}

}  // namespace minones
