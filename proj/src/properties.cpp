#include <algorithm>
#include <vector>

#include "minones/error.hpp"
#include "minones/relation.hpp"

namespace minones {

std::string_view to_string(Property p) {
  switch (p) {
    case Property::kZeroValid: return "zero_valid";
    case Property::kOneValid: return "one_valid";
    case Property::kHorn: return "horn";
    case Property::kDualHorn: return "dual_horn";
    case Property::kIhsbMinus: return "ihsb_minus";
    case Property::kWidth2Affine: return "width2_affine";
  }
  return "unknown";
}

namespace {

bool closed_under_meet(const Relation& r) {
  for (auto a : r.masks()) {
    for (auto b : r.masks()) {
      if (b > a) break;
      if (!r.contains(a & b)) return false;
    }
  }
  return true;
}

bool closed_under_join(const Relation& r) {
  for (auto a : r.masks()) {
    for (auto b : r.masks()) {
      if (b > a) break;
      if (!r.contains(a | b)) return false;
    }
  }
  return true;
}

// a & (b | c) == (a & b) | (a & c): per a, joins of the meets with a.
bool closed_under_ihsb_op(const Relation& r) {
  std::vector<std::uint32_t> meets;
  for (auto a : r.masks()) {
    meets.clear();
    for (auto b : r.masks()) meets.push_back(a & b);
    std::sort(meets.begin(), meets.end());
    meets.erase(std::unique(meets.begin(), meets.end()), meets.end());
    for (std::size_t i = 0; i < meets.size(); ++i) {
      for (std::size_t j = i; j < meets.size(); ++j) {
        if (!r.contains(meets[i] | meets[j])) return false;
      }
    }
  }
  return true;
}

// Conjunction of every valid unary assignment and every valid binary
// equality/disequality must reproduce r.
bool width2_affine(const Relation& r) {
  const int n = r.arity();
  const auto masks = r.masks();
  auto bit = [](std::uint32_t t, int i) { return (t >> i) & 1U; };

  struct Atom {
    int i, j;
    int kind;  // 0: x_i = value(j), 1: x_i == x_j, 2: x_i != x_j
  };
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) {
    bool all0 = true, all1 = true;
    for (auto t : masks) {
      if (bit(t, i)) all0 = false; else all1 = false;
    }
    if (all0) atoms.push_back({i, 0, 0});
    if (all1) atoms.push_back({i, 1, 0});
    for (int j = i + 1; j < n; ++j) {
      bool eq = true, ne = true;
      for (auto t : masks) {
        if (bit(t, i) == bit(t, j)) ne = false; else eq = false;
      }
      if (eq) atoms.push_back({i, j, 1});
      if (ne) atoms.push_back({i, j, 2});
    }
  }
  for (std::uint32_t t = 0; t < (1U << n); ++t) {
    bool sat = true;
    for (const auto& a : atoms) {
      switch (a.kind) {
        case 0: sat = bit(t, a.i) == static_cast<std::uint32_t>(a.j); break;
        case 1: sat = bit(t, a.i) == bit(t, a.j); break;
        default: sat = bit(t, a.i) != bit(t, a.j); break;
      }
      if (!sat) break;
    }
    if (sat != r.contains(t)) return false;
  }
  return true;
}

}  // namespace

bool check_property(const Relation& r, Property p) {
  switch (p) {
    case Property::kZeroValid: return r.contains(0U);
    case Property::kOneValid: return r.contains((1U << r.arity()) - 1U);
    case Property::kHorn: return closed_under_meet(r);
    case Property::kDualHorn: return closed_under_join(r);
    case Property::kIhsbMinus: return closed_under_ihsb_op(r);
    case Property::kWidth2Affine: return width2_affine(r);
  }
  return false;
}

bool merge_applies(const BoolTuple& alpha, const BoolTuple& beta, const BoolTuple& gamma,
                   const BoolTuple& delta) {
  return leq(meet(alpha, delta), beta) && leq(beta, alpha) && leq(meet(beta, gamma), delta) &&
         leq(delta, gamma);
}

MergeabilityResult is_mergeable(const Relation& r) {
  const int n = r.arity();
  // Given alpha, beta <= alpha and gamma, the admissible deltas are exactly
  // (beta & gamma) | s for s a submask of gamma & ~alpha, and the produced
  // tuple does not depend on delta. Submasks are walked in ascending order so
  // the first hit is the first violating quadruple in enumeration order.
  for (auto alpha : r.masks()) {
    for (std::uint32_t beta = 0;; beta = (beta - alpha) & alpha) {
      if (r.contains(beta)) {
        for (auto gamma : r.masks()) {
          const std::uint32_t produced = alpha & (beta | gamma);
          if (r.contains(produced)) continue;
          const std::uint32_t base = beta & gamma;
          const std::uint32_t free = gamma & ~alpha;
          for (std::uint32_t s = 0;; s = (s - free) & free) {
            const std::uint32_t delta = base | s;
            if (r.contains(delta)) {
              WitnessQuad w{BoolTuple(n, alpha),
                            BoolTuple(n, beta),
                            BoolTuple(n, gamma),
                            BoolTuple(n, delta),
                            BoolTuple(n, produced),
                            PositionSet::from_mask(beta | delta),
                            PositionSet::from_mask(beta | delta).complement(n)};
              return {false, w};
            }
            if (s == free) break;
          }
        }
      }
      if (beta == alpha) break;
    }
  }
  return {true, std::nullopt};
}

PropertyRecord property_record(const Relation& r) {
  PropertyRecord rec;
  rec.zero_valid = check_property(r, Property::kZeroValid);
  rec.one_valid = check_property(r, Property::kOneValid);
  rec.horn = check_property(r, Property::kHorn);
  rec.dual_horn = check_property(r, Property::kDualHorn);
  rec.ihsb_minus = check_property(r, Property::kIhsbMinus);
  rec.width2_affine = check_property(r, Property::kWidth2Affine);
  auto m = is_mergeable(r);
  rec.mergeable = m.mergeable;
  rec.witness = m.witness;
  return rec;
}

}  // namespace minones
