#include "minones/sunflower.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "minones/error.hpp"

namespace minones {

namespace {

std::optional<Sunflower> find_rec(const std::vector<VarTuple>& family, int t, int k) {
  const auto want = static_cast<std::size_t>(k) + 1;
  if (family.size() < want) return std::nullopt;

  if (t == 1) {
    return Sunflower{{}, {}, {family.begin(), family.begin() + static_cast<long>(want)}};
  }

  // Greedy maximal subfamily with pairwise disjoint variable sets.
  std::vector<std::size_t> picked;
  std::set<Var> used;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& tuple = family[i];
    if (std::none_of(tuple.begin(), tuple.end(), [&](Var v) { return used.contains(v); })) {
      picked.push_back(i);
      used.insert(tuple.begin(), tuple.end());
    }
  }
  if (picked.size() >= want) {
    Sunflower s;
    for (std::size_t i = 0; i < want; ++i) s.members.push_back(family[picked[i]]);
    return s;
  }

  // Every tuple meets `used`; the most frequent (variable, position) pair
  // among those variables carries at least |family| / (k t^2) tuples.
  std::map<std::pair<Var, int>, std::size_t> count;
  for (const auto& tuple : family) {
    for (int p = 0; p < t; ++p) {
      if (used.contains(tuple[static_cast<std::size_t>(p)])) ++count[{tuple[static_cast<std::size_t>(p)], p}];
    }
  }
  auto best = count.begin();
  for (auto it = count.begin(); it != count.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  const auto [x, p] = best->first;

  std::vector<VarTuple> projected;
  for (const auto& tuple : family) {
    if (tuple[static_cast<std::size_t>(p)] != x) continue;
    VarTuple rest = tuple;
    rest.erase(rest.begin() + p);
    projected.push_back(std::move(rest));
  }
  auto sub = find_rec(projected, t - 1, k);
  if (!sub) return std::nullopt;

  Sunflower s;
  std::uint32_t core = 0;
  for (int q : sub->core.positions()) {
    const int original = q <= p ? q : q + 1;  // 1-based, skipping p + 1
    core |= 1U << (original - 1);
  }
  core |= 1U << p;
  s.core = PositionSet::from_mask(core);
  for (auto& m : sub->members) {
    m.insert(m.begin() + p, x);
    s.members.push_back(std::move(m));
  }
  for (int q : s.core.positions()) s.core_values.push_back(s.members.front()[static_cast<std::size_t>(q - 1)]);
  return s;
}

}  // namespace

bool is_valid_sunflower(const Sunflower& s, int t) {
  if (s.members.size() < 2) return false;
  const auto core = s.core.positions();
  if (core.size() != s.core_values.size()) return false;
  if (!core.empty() && core.back() > t) return false;
  std::set<VarTuple> distinct;
  std::map<Var, std::size_t> petal_owner;
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    const auto& m = s.members[i];
    if (static_cast<int>(m.size()) != t || !distinct.insert(m).second) return false;
    for (std::size_t c = 0; c < core.size(); ++c) {
      if (m[static_cast<std::size_t>(core[c] - 1)] != s.core_values[c]) return false;
    }
    for (int p = 1; p <= t; ++p) {
      if (s.core.contains(p)) continue;
      auto [it, fresh] = petal_owner.emplace(m[static_cast<std::size_t>(p - 1)], i);
      if (!fresh && it->second != i) return false;
    }
  }
  return true;
}

std::optional<Sunflower> find_sunflower(const std::vector<VarTuple>& family, int k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "sunflower search needs k >= 1");
  if (family.empty()) return std::nullopt;
  const int t = static_cast<int>(family.front().size());
  if (t < 1) throw Error(ErrorKind::kInvalidArgument, "sunflower search needs t >= 1");
  for (const auto& tuple : family) {
    if (static_cast<int>(tuple.size()) != t) {
      throw Error(ErrorKind::kArityMismatch, "sunflower family mixes tuple lengths");
    }
  }
  // Set semantics, first-occurrence order.
  std::vector<VarTuple> ordered;
  std::set<VarTuple> seen;
  for (const auto& tuple : family) {
    if (seen.insert(tuple).second) ordered.push_back(tuple);
  }
  auto s = find_rec(ordered, t, k);
  if (s && !is_valid_sunflower(*s, t)) {
    throw Error(ErrorKind::kLemmaContractViolated, "sunflower search returned an invalid sunflower");
  }
  return s;
}

long long sunflower_threshold(int k, int t) {
  constexpr long long kMax = std::numeric_limits<long long>::max();
  long long value = 1;
  auto mul = [&](long long f) {
    if (f != 0 && value > kMax / f) value = kMax;
    else value *= f;
  };
  for (int i = 0; i < t; ++i) mul(k);
  for (int i = 2; i <= t; ++i) {
    mul(i);
    mul(i);
  }
  return value;
}

}  // namespace minones
