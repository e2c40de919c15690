#include "minones/kernelizer.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "minones/classifier.hpp"
#include "minones/error.hpp"

namespace minones {

namespace {

const Relation& impl_relation() {
  // x -> y over (x, y): tuples 00, 01, 11.
  static const Relation r = Relation::from_masks("_IMPL", 2, {0b00, 0b10, 0b11});
  return r;
}

Relation nand_relation(int arity) {
  const std::uint32_t all = (1U << arity) - 1;
  return Relation::from_predicate("_NAND" + std::to_string(arity), arity,
                                  [all](std::uint32_t t) { return t != all; });
}

// Per-relation facts needed over and over during the pipeline.
class RelationFacts {
 public:
  explicit RelationFacts(const ConstraintLanguage& language) : language_(&language) {}
  void rebind(const ConstraintLanguage& language) { language_ = &language; }

  const Relation& at(const std::string& name) const { return language_->at(name); }
  bool zero_valid(const std::string& name) const { return at(name).contains(0U); }

  PositionSet zero_closed(const std::string& name) {
    auto it = zero_closed_.find(name);
    if (it == zero_closed_.end()) it = zero_closed_.emplace(name, zero_closed_positions(at(name))).first;
    return it->second;
  }

  VarTuple project(const Constraint& c) {
    const auto zc = zero_closed(c.relation);
    VarTuple out;
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (!zc.contains(static_cast<int>(i) + 1)) out.push_back(c.args[i]);
    }
    return out;
  }

 private:
  const ConstraintLanguage* language_;
  std::map<std::string, PositionSet> zero_closed_;
};

void require_normalized(const Formula& f) {
  for (const auto& c : f.constraints) {
    std::set<Var> distinct(c.args.begin(), c.args.end());
    if (distinct.size() != c.args.size() || distinct.contains(kConstZero)) {
      throw Error(ErrorKind::kPreconditionViolated,
                  "constraint on '" + c.relation + "' has repeated or constant arguments");
    }
  }
}

std::vector<Constraint> dedupe(const std::vector<Constraint>& cs) {
  std::set<Constraint> seen;
  std::vector<Constraint> out;
  for (const auto& c : cs) {
    if (seen.insert(c).second) out.push_back(c);
  }
  return out;
}

FooSet foo_with(const Formula& f, const std::string& relation, RelationFacts& facts) {
  FooSet out{relation, {}};
  std::set<VarTuple> seen;
  for (const auto& c : f.constraints) {
    if (c.relation != relation) continue;
    auto t = facts.project(c);
    if (seen.insert(t).second) out.tuples.push_back(std::move(t));
  }
  return out;
}

// |FOO| of every non-zero-valid relation used by f, keyed by name.
std::map<std::string, std::size_t> foo_sizes(const Formula& f, RelationFacts& facts) {
  std::map<std::string, std::set<VarTuple>> sets;
  for (const auto& c : f.constraints) {
    if (facts.zero_valid(c.relation)) continue;
    sets[c.relation].insert(facts.project(c));
  }
  std::map<std::string, std::size_t> out;
  for (const auto& [name, s] : sets) out[name] = s.size();
  return out;
}

long long total(const std::map<std::string, std::size_t>& sizes) {
  long long sum = 0;
  for (const auto& entry : sizes) sum += static_cast<long long>(entry.second);
  return sum;
}

// A fixed formula over the language with no solution of weight <= k.
Formula trivial_no_instance(const std::shared_ptr<const ConstraintLanguage>& language, int k) {
  for (const auto& r : language->relations()) {
    if (!r.contains(0U) && !r.contains((1U << r.arity()) - 1)) {
      return {language, 1, {{r.name(), std::vector<Var>(static_cast<std::size_t>(r.arity()), 1)}}};
    }
  }
  for (const auto& r : language->relations()) {
    if (r.contains(0U)) continue;
    Formula out{language, k + 1, {}};
    for (Var v = 1; v <= k + 1; ++v) {
      out.constraints.push_back({r.name(), std::vector<Var>(static_cast<std::size_t>(r.arity()), v)});
    }
    return out;
  }
  throw Error(ErrorKind::kPreconditionViolated,
              "every relation is zero-valid, so no instance over this language is a NO instance");
}

long long sat_mul(long long a, long long b) {
  constexpr long long kMax = std::numeric_limits<long long>::max();
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

long long sat_add(long long a, long long b) {
  constexpr long long kMax = std::numeric_limits<long long>::max();
  return a > kMax - b ? kMax : a + b;
}

}  // namespace

FooSet foo_set(const Formula& f, const std::string& relation) {
  RelationFacts facts(*f.language);
  facts.at(relation);
  return foo_with(f, relation, facts);
}

long long foo_measure(const Formula& f) {
  RelationFacts facts(*f.language);
  return total(foo_sizes(f, facts));
}

ReductionResult reduce_formula(const Formula& f, int k, int d) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "reduce_formula needs k >= 1");
  f.validate();
  require_normalized(f);
  auto language = std::make_shared<ConstraintLanguage>(*f.language);
  if (d <= 0) d = language->max_arity();
  const long long threshold = sunflower_threshold(k, d);

  ReductionResult out;
  Formula cur{language, f.num_vars, f.constraints};
  RelationFacts facts(*language);

  while (true) {
    auto sizes = foo_sizes(cur, facts);
    const long long measure = total(sizes);
    if (!out.measure.empty() && measure >= out.measure.back()) {
      throw Error(ErrorKind::kLemmaContractViolated, "reduction measure did not decrease");
    }
    out.measure.push_back(measure);
    out.foo_sizes.push_back(sizes);

    const Relation* target = nullptr;
    for (const auto& r : language->relations()) {
      auto it = sizes.find(r.name());
      if (it != sizes.end() && static_cast<long long>(it->second) > threshold) {
        target = &r;
        break;
      }
    }
    if (!target) break;
    const Relation relation = *target;  // language may grow below

    const auto foo = foo_with(cur, relation.name(), facts);
    const auto sunflower = find_sunflower(foo.tuples, k);
    if (!sunflower) {
      throw Error(ErrorKind::kLemmaContractViolated,
                  "no sunflower in an over-threshold FOO set of '" + relation.name() + "'");
    }
    const auto core_map = nonzero_core(relation).positions;
    std::uint32_t core_mask = 0;
    for (int q : sunflower->core.positions()) core_mask |= 1U << (core_map[static_cast<std::size_t>(q - 1)] - 1);
    const auto core = PositionSet::from_mask(core_mask);

    SunflowerImplementation impl{relation, {}};
    try {
      impl = implement_sunflower_restriction(relation, core);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kEmptyRelation) throw;
      out.unsatisfiable = true;
      break;
    }
    ReductionStep step{relation.name(), core, sunflower->core_values, 0, language->add_or_reuse(impl.closed),
                       0};
    std::string impl_name;
    if (!impl.implications.empty()) impl_name = language->add_or_reuse(impl_relation());

    const std::set<VarTuple> members(sunflower->members.begin(), sunflower->members.end());
    std::vector<Constraint> next;
    for (const auto& c : cur.constraints) {
      if (c.relation != relation.name() || !members.contains(facts.project(c))) {
        next.push_back(c);
        continue;
      }
      ++step.replaced;
      next.push_back({step.replacement, c.args});
      for (auto [i, j] : impl.implications) {
        next.push_back({impl_name, {c.args[static_cast<std::size_t>(i - 1)], c.args[static_cast<std::size_t>(j - 1)]}});
        ++step.implications;
      }
    }
    cur.constraints = dedupe(next);
    out.steps.push_back(std::move(step));
  }

  out.formula = std::move(cur);
  out.language = std::move(language);
  return out;
}

long long kernel_bound(int nonzero_valid_relations, int k, int d) {
  long long base = sat_mul(nonzero_valid_relations, d);
  for (int i = 2; i <= d; ++i) base = sat_mul(base, sat_mul(i, i));
  long long kd = 1;
  for (int i = 0; i < d; ++i) kd = sat_mul(kd, k);
  return sat_add(sat_add(sat_mul(base, sat_mul(kd, k)), sat_mul(base, kd)), static_cast<long long>(k) + 1);
}

KernelResult kernelize(const Formula& f, int k) {
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "k must be non-negative");
  f.validate();
  const auto gamma = f.language;
  for (const auto& r : gamma->relations()) {
    if (!is_mergeable(r).mergeable) {
      throw Error(ErrorKind::kNotMergeableLanguage, "relation '" + r.name() + "' is not mergeable");
    }
  }

  KernelResult result{{gamma, 0, {}}, k, {}};
  auto& rep = result.report;
  rep.input_vars = f.num_vars;
  rep.input_constraints = static_cast<int>(f.constraints.size());
  rep.k = k;
  rep.d = gamma->max_arity();

  auto finish_trivial = [&](const std::string& note) {
    result.formula = trivial_no_instance(gamma, k);
    rep.trivial_no = true;
    rep.note = note;
    rep.final_vars = result.formula.num_vars;
    rep.final_constraints = static_cast<int>(result.formula.constraints.size());
    rep.bound = kernel_bound(0, k, rep.d);
    return result;
  };

  if (k == 0) {
    rep.bound = kernel_bound(0, 0, rep.d);
    if (evaluate(f, Assignment(f.num_vars))) {
      rep.note = "k = 0 and the all-zero assignment satisfies the formula";
      return result;
    }
    return finish_trivial("k = 0 and the all-zero assignment fails");
  }

  // (1) normalize, (2) reduce.
  NormalizedFormula normalized;
  try {
    normalized = normalize_formula(f);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUnsatisfiableConstraint) throw;
    return finish_trivial("a constraint has no satisfying assignment");
  }
  auto red = reduce_formula(normalized.formula, k, rep.d);
  rep.iterations = static_cast<int>(red.steps.size());
  rep.foo_sizes = red.foo_sizes;
  rep.measure = red.measure;
  if (red.unsatisfiable) return finish_trivial("an empty sunflower restriction rules out weight <= k");

  auto language = std::make_shared<ConstraintLanguage>(*red.language);
  RelationFacts facts(*language);
  std::vector<Constraint> aux;  // F'
  std::vector<Constraint> orig = f.constraints;

  // (3) zero-valid constraints become implications and negative clauses.
  std::string impl_name;
  for (const auto& c : red.formula.constraints) {
    const auto& r = language->at(c.relation);
    if (!r.contains(0U)) {
      aux.push_back(c);
      continue;
    }
    for (const auto& atom : implement_zero_valid_ihsb(r).atoms) {
      if (atom.kind == ClauseAtom::Kind::kImplication) {
        if (impl_name.empty()) impl_name = language->add_or_reuse(impl_relation());
        aux.push_back({impl_name, {c.args[static_cast<std::size_t>(atom.from - 1)],
                                   c.args[static_cast<std::size_t>(atom.to - 1)]}});
      } else {
        Constraint clause{language->add_or_reuse(nand_relation(atom.clause.size())), {}};
        for (int p : atom.clause.positions()) clause.args.push_back(c.args[static_cast<std::size_t>(p - 1)]);
        aux.push_back(std::move(clause));
      }
    }
  }
  aux = dedupe(aux);

  const auto n = static_cast<std::size_t>(f.num_vars);
  std::vector<bool> zeroed(n + 1, false);
  auto substitute = [&](const std::vector<Var>& vars) {
    for (Var v : vars) zeroed[static_cast<std::size_t>(v)] = true;
    for (auto* list : {&aux, &orig}) {
      for (auto& c : *list) {
        for (Var& v : c.args) {
          if (v != kConstZero && zeroed[static_cast<std::size_t>(v)]) v = kConstZero;
        }
      }
    }
  };

  // (4) variables seen only at zero-closed positions of F'.
  {
    std::vector<bool> occurs(n + 1, false), nonzero_closed(n + 1, false);
    for (const auto& c : aux) {
      const auto zc = facts.zero_closed(c.relation);
      for (std::size_t i = 0; i < c.args.size(); ++i) {
        const auto v = static_cast<std::size_t>(c.args[i]);
        occurs[v] = true;
        if (!zc.contains(static_cast<int>(i) + 1)) nonzero_closed[v] = true;
      }
    }
    std::vector<Var> drop;
    for (std::size_t v = 1; v <= n; ++v) {
      if (occurs[v] && !nonzero_closed[v]) drop.push_back(static_cast<Var>(v));
    }
    rep.eliminated_zero_closed = static_cast<int>(drop.size());
    substitute(drop);
  }

  // (5) implication graph; x in X implying k or more variables must be 0.
  auto build_graph = [&]() {
    std::vector<std::vector<Var>> out(n + 1);
    int edges = 0;
    for (const auto& c : aux) {
      if (c.relation != impl_name || c.args[0] == kConstZero || c.args[1] == kConstZero) continue;
      out[static_cast<std::size_t>(c.args[0])].push_back(c.args[1]);
      ++edges;
    }
    return std::make_pair(out, edges);
  };
  auto reach = [&](const std::vector<std::vector<Var>>& graph, Var start) {
    std::set<Var> seen{start};
    std::vector<Var> stack{start};
    while (!stack.empty()) {
      const Var u = stack.back();
      stack.pop_back();
      for (Var w : graph[static_cast<std::size_t>(u)]) {
        if (seen.insert(w).second) stack.push_back(w);
      }
    }
    seen.erase(start);
    return seen;
  };

  std::set<Var> x_set;
  for (const auto& c : aux) {
    if (facts.zero_valid(c.relation)) continue;
    const auto zc = facts.zero_closed(c.relation);
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (c.args[i] != kConstZero && !zc.contains(static_cast<int>(i) + 1)) x_set.insert(c.args[i]);
    }
  }
  rep.x_size = static_cast<int>(x_set.size());
  {
    const auto [graph, edges] = build_graph();
    rep.implication_edges = edges;
    std::vector<Var> heavy;
    for (Var x : x_set) {
      const int implied = static_cast<int>(reach(graph, x).size());
      rep.max_implied = std::max(rep.max_implied, implied);
      if (implied >= k) heavy.push_back(x);
    }
    rep.eliminated_heavy = static_cast<int>(heavy.size());
    for (Var x : heavy) x_set.erase(x);
    substitute(heavy);
  }
  rep.x_survivors = static_cast<int>(x_set.size());

  // (6) everything outside X and its implication closure.
  {
    const auto graph = build_graph().first;
    std::set<Var> keep = x_set;
    for (Var x : x_set) {
      const auto r = reach(graph, x);
      keep.insert(r.begin(), r.end());
    }
    std::vector<Var> drop;
    for (Var v = 1; v <= f.num_vars; ++v) {
      if (!zeroed[static_cast<std::size_t>(v)] && !keep.contains(v)) drop.push_back(v);
    }
    rep.eliminated_unreachable = static_cast<int>(drop.size());
    substitute(drop);
  }

  std::set<std::string> nzv;
  for (const auto& c : aux) {
    if (!facts.zero_valid(c.relation)) nzv.insert(c.relation);
  }
  rep.nonzero_valid_relations = static_cast<int>(nzv.size());

  // (7) renumber survivors, then trade the placeholder for k + 1 fresh variables.
  std::vector<Constraint> kept;
  for (const auto& c : orig) {
    const bool all_zero = std::all_of(c.args.begin(), c.args.end(), [](Var v) { return v == kConstZero; });
    if (all_zero && gamma->at(c.relation).contains(0U)) continue;
    kept.push_back(c);
  }
  kept = dedupe(kept);
  std::map<Var, Var> rename;
  for (const auto& c : kept) {
    for (Var v : c.args) {
      if (v != kConstZero) rename.emplace(v, 0);
    }
  }
  Var next = 0;
  for (auto& [old, fresh] : rename) fresh = ++next;
  for (auto& c : kept) {
    for (Var& v : c.args) {
      if (v != kConstZero) v = rename.at(v);
    }
  }
  const Formula renamed{gamma, next, std::move(kept)};
  result.formula = eliminate_zero_constants(renamed, k);
  rep.z_vars = result.formula.num_vars - next;

  // (8) size check.
  rep.final_vars = result.formula.num_vars;
  rep.final_constraints = static_cast<int>(result.formula.constraints.size());
  rep.bound = kernel_bound(rep.nonzero_valid_relations, k, rep.d);
  if (rep.final_vars > rep.bound) {
    throw Error(ErrorKind::kBoundViolated, "kernel has " + std::to_string(rep.final_vars) +
                                               " variables, bound is " + std::to_string(rep.bound));
  }
  return result;
}

}  // namespace minones
