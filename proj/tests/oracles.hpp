#pragma once

// Definition-level reference implementations used as test oracles. They work
// on explicit tuple sets and plain loops and share no code with the library
// beyond reading a relation's tuples.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "minones/formula.hpp"
#include "minones/io.hpp"
#include "minones/relation.hpp"

namespace oracle {

using Tuple = std::vector<int>;
using TupleSet = std::set<Tuple>;

inline TupleSet tuples_of(const minones::Relation& r) {
  TupleSet out;
  for (const auto& t : r.tuples()) {
    Tuple v;
    for (int p = 1; p <= r.arity(); ++p) v.push_back(t[p] ? 1 : 0);
    out.insert(v);
  }
  return out;
}

template <class F>
Tuple zip(const Tuple& a, const Tuple& b, F f) {
  Tuple out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
  return out;
}

inline Tuple all(std::size_t n, int v) { return Tuple(n, v); }

inline bool zero_valid(const TupleSet& r, int arity) { return r.contains(all(static_cast<std::size_t>(arity), 0)); }
inline bool one_valid(const TupleSet& r, int arity) { return r.contains(all(static_cast<std::size_t>(arity), 1)); }

inline bool closed2(const TupleSet& r, int (*f)(int, int)) {
  for (const auto& a : r) {
    for (const auto& b : r) {
      if (!r.contains(zip(a, b, f))) return false;
    }
  }
  return true;
}

inline int and_(int a, int b) { return a & b; }
inline int or_(int a, int b) { return a | b; }

inline bool horn(const TupleSet& r) { return closed2(r, and_); }
inline bool dual_horn(const TupleSet& r) { return closed2(r, or_); }

template <class F>
bool closed3(const TupleSet& r, F f) {
  for (const auto& a : r) {
    for (const auto& b : r) {
      for (const auto& c : r) {
        Tuple t(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) t[i] = f(a[i], b[i], c[i]);
        if (!r.contains(t)) return false;
      }
    }
  }
  return true;
}

inline bool ihsb_minus(const TupleSet& r) {
  return closed3(r, [](int a, int b, int c) { return a & (b | c); });
}

// Unary and binary linear equations over GF(2) are exactly the relations
// closed under both majority and minority.
inline bool width2_affine(const TupleSet& r) {
  return closed3(r, [](int a, int b, int c) { return (a & b) | (a & c) | (b & c); }) &&
         closed3(r, [](int a, int b, int c) { return a ^ b ^ c; });
}

inline bool leq(const Tuple& a, const Tuple& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

inline bool mergeable(const TupleSet& r) {
  for (const auto& al : r) {
    for (const auto& be : r) {
      if (!leq(be, al)) continue;
      for (const auto& ga : r) {
        for (const auto& de : r) {
          if (!leq(zip(al, de, and_), be) || !leq(zip(be, ga, and_), de) || !leq(de, ga)) continue;
          if (!r.contains(zip(al, zip(be, ga, or_), and_))) return false;
        }
      }
    }
  }
  return true;
}

/// Minimum weight of a satisfying assignment with weight <= k, by enumerating
/// every assignment; -1 if none.
inline int min_weight(const minones::Formula& f, int k) {
  const int n = f.num_vars;
  std::vector<TupleSet> rels;
  for (const auto& c : f.constraints) rels.push_back(tuples_of(f.language->at(c.relation)));
  int best = -1;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    const int w = __builtin_popcountll(a);
    if (w > k || (best >= 0 && w >= best)) continue;
    bool ok = true;
    for (std::size_t i = 0; i < f.constraints.size() && ok; ++i) {
      Tuple t;
      for (int v : f.constraints[i].args) t.push_back(v == 0 ? 0 : static_cast<int>((a >> (v - 1)) & 1U));
      ok = rels[i].contains(t);
    }
    if (ok) best = w;
  }
  return best;
}

inline bool has_exact_hitting_set(const minones::Hypergraph& h) {
  const int n = h.num_vertices;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (const auto& e : h.edges) {
      int hits = 0;
      for (int v : e) hits += static_cast<int>((s >> (v - 1)) & 1U);
      if (hits != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

/// Random formula: each constraint picks a relation uniformly and arguments
/// uniformly from 1..n (repeats allowed).
inline minones::Formula random_formula(std::mt19937& rng, std::shared_ptr<const minones::ConstraintLanguage> lang,
                                       int n, int m) {
  minones::Formula f{lang, n, {}};
  for (int j = 0; j < m; ++j) {
    const auto& r = lang->relations()[rng() % lang->size()];
    minones::Constraint c{r.name(), {}};
    for (int i = 0; i < r.arity(); ++i) c.args.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(n)));
    f.constraints.push_back(std::move(c));
  }
  return f;
}

inline minones::Relation relation_from_masks_set(const char* name, int arity, std::uint32_t set_bits) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t t = 0; t < (1U << arity); ++t) {
    if ((set_bits >> t) & 1U) masks.push_back(t);
  }
  return minones::Relation::from_masks(name, arity, masks);
}

}  // namespace oracle
