#include "minones/gadgets.hpp"

#include <algorithm>
#include <bit>

#include "minones/classifier.hpp"
#include "minones/error.hpp"
#include "minones/solvers.hpp"

namespace minones {

// --- recipes ----------------------------------------------------------------

bool Recipe::uses(int pin) const {
  return std::any_of(atoms.begin(), atoms.end(), [pin](const Atom& a) {
    return std::find(a.args.begin(), a.args.end(), pin) != a.args.end();
  });
}

void Recipe::append(const Recipe& src, const std::vector<int>& slot_map) {
  for (const auto& a : src.atoms) {
    Atom copy = a;
    for (int& s : copy.args) {
      if (s >= 0) s = slot_map.at(static_cast<std::size_t>(s));
    }
    atoms.push_back(std::move(copy));
  }
}

std::string Recipe::to_string() const {
  std::string out;
  for (const auto& a : atoms) {
    if (!out.empty()) out += " & ";
    out += a.relation + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ",";
      const int s = a.args[i];
      if (s == kPinOne) out += "1";
      else if (s == kPinZero) out += "0";
      else out += (s < interface ? "x" : "t") + std::to_string(s);
    }
    out += ")";
  }
  return out;
}

Relation recipe_relation(const Recipe& recipe, const ConstraintLanguage& language) {
  if (recipe.slots() > 24) throw Error(ErrorKind::kTooLarge, "recipe has too many slots to enumerate");
  std::vector<const Relation*> rels;
  for (const auto& a : recipe.atoms) rels.push_back(&language.at(a.relation));
  auto holds = [&](std::uint32_t slots) {
    for (std::size_t i = 0; i < recipe.atoms.size(); ++i) {
      const auto& a = recipe.atoms[i];
      std::uint32_t t = 0;
      for (std::size_t p = 0; p < a.args.size(); ++p) {
        const int s = a.args[p];
        const bool bit = s == kPinOne || (s >= 0 && ((slots >> s) & 1U));
        if (bit) t |= 1U << p;
      }
      if (!rels[i]->contains(t)) return false;
    }
    return true;
  };
  const std::uint32_t inner = 1U << recipe.internal;
  return Relation::from_predicate(recipe.name, recipe.interface, [&](std::uint32_t iface) {
    for (std::uint32_t rest = 0; rest < inner; ++rest) {
      if (holds(iface | (rest << recipe.interface))) return true;
    }
    return false;
  });
}

std::string_view to_string(Guarantee g) {
  return g == Guarantee::kUnconditional ? "unconditional" : "weight_conditional";
}

std::string_view to_string(TemplateKind kind) { return kind == TemplateKind::kR3 ? "R3" : "R5"; }

namespace {

Error contract(const std::string& what) { return Error(ErrorKind::kLemmaContractViolated, what); }

// Mask of a tuple written as a bit string, first character = position 1.
std::uint32_t word(std::string_view bits) { return BoolTuple::from_string(bits).bits(); }

bool has_exactly(const Relation& r, std::initializer_list<std::string_view> tuples) {
  if (r.size() != tuples.size()) return false;
  return std::all_of(tuples.begin(), tuples.end(), [&](std::string_view t) { return r.contains(word(t)); });
}

// One atom on relation r; binding[p] is the slot or pin of position p + 1.
Atom atom_on(const Relation& r, std::vector<int> binding) { return {r.name(), std::move(binding)}; }

Relation relation_of(const Recipe& recipe, const ConstraintLanguage& language) {
  try {
    return recipe_relation(recipe, language);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kEmptyRelation) throw contract("recipe '" + recipe.name + "' is unsatisfiable");
    throw;
  }
}

void require_np_hard(const ConstraintLanguage& language, const char* what) {
  if (classify_language(language).verdict != Verdict::kNoPolyKernel) {
    throw Error(ErrorKind::kPreconditionViolated,
                std::string(what) + " needs a language classified NO_POLY_KERNEL");
  }
}

// --- (x = 1) ----------------------------------------------------------------

std::pair<Recipe, std::string> one_recipe(const ConstraintLanguage& language, int k) {
  for (const auto& r : language.relations()) {
    if (!r.contains(0U) && r.contains((1U << r.arity()) - 1)) {
      Recipe out{"one", 1, 0, {atom_on(r, std::vector<int>(static_cast<std::size_t>(r.arity()), 0))}};
      return {out, "one_valid"};
    }
  }
  for (const auto& r : language.relations()) {
    if (r.contains(0U)) continue;
    // First maximal tuple in enumeration order.
    std::uint32_t maximal = 0;
    for (auto t : r.masks()) {
      const bool dominated = std::any_of(r.masks().begin(), r.masks().end(),
                                         [t](std::uint32_t u) { return u != t && (u & t) == t; });
      if (!dominated) {
        maximal = t;
        break;
      }
    }
    auto binding = [&](int y_slot) {
      std::vector<int> b;
      for (int p = 0; p < r.arity(); ++p) b.push_back(((maximal >> p) & 1U) ? 0 : y_slot);
      return b;
    };
    Recipe pair{"one", 1, 1, {atom_on(r, binding(1))}};
    Recipe probe{"R'", 2, 0, pair.atoms};
    const auto derived = relation_of(probe, language);
    if (has_exactly(derived, {"10"})) return {pair, "assignment"};
    if (!has_exactly(derived, {"10", "01"})) throw contract("identification on a maximal tuple gave neither x=1,y=0 nor x!=y");
    Recipe chain{"one", 1, k + 1, {}};
    for (int i = 1; i <= k + 1; ++i) chain.atoms.push_back(atom_on(r, binding(i)));
    return {chain, "disequality_chain"};
  }
  throw Error(ErrorKind::kPreconditionViolated, "every relation is zero-valid");
}

// --- validation helpers -----------------------------------------------------

bool feasible(const Formula& f, MinimizeOptions opt) {
  if (opt.bound == 0 && opt.cost_vars.empty()) opt.bound = f.num_vars;
  return minimize_weight(f, opt).has_value();
}

std::optional<int> min_weight(const Formula& f, MinimizeOptions opt) {
  auto best = minimize_weight(f, opt);
  if (!best) return std::nullopt;
  if (opt.cost_vars.empty()) return best->weight();
  int cost = 0;
  for (Var v : opt.cost_vars) cost += (*best)[v] ? 1 : 0;
  return cost;
}

}  // namespace

// --- builder ----------------------------------------------------------------

FormulaBuilder::FormulaBuilder(const ConstantGadgets& gadgets) : gadgets_(&gadgets) {}

Var FormulaBuilder::fresh() { return ++num_vars_; }

Var FormulaBuilder::one() {
  if (one_ == 0) {
    one_ = fresh();
    instantiate_into(gadgets_->one.recipe, {one_}, shared_);
  }
  return one_;
}

Var FormulaBuilder::zero() {
  if (zero_ == 0) {
    zero_ = fresh();
    instantiate_into(gadgets_->zero.recipe, {zero_}, shared_);
  }
  return zero_;
}

std::vector<Var> FormulaBuilder::instantiate(const Recipe& recipe, const std::vector<Var>& interface) {
  return instantiate_into(recipe, interface, constraints_);
}

std::vector<Var> FormulaBuilder::instantiate_into(const Recipe& recipe, const std::vector<Var>& interface,
                                                  std::vector<Constraint>& out) {
  if (static_cast<int>(interface.size()) != recipe.interface) {
    throw Error(ErrorKind::kArityMismatch, "recipe '" + recipe.name + "' takes " +
                                               std::to_string(recipe.interface) + " interface variables");
  }
  std::vector<Var> slots = interface;
  std::vector<Var> internal;
  for (int i = 0; i < recipe.internal; ++i) internal.push_back(slots.emplace_back(fresh()));
  // Resolve pins first so that shared gadgets precede their users.
  const Var z1 = recipe.uses(kPinOne) ? one() : 0;
  const Var z0 = recipe.uses(kPinZero) ? zero() : 0;
  for (const auto& a : recipe.atoms) {
    Constraint c{a.relation, {}};
    for (int s : a.args) c.args.push_back(s == kPinOne ? z1 : s == kPinZero ? z0 : slots[static_cast<std::size_t>(s)]);
    out.push_back(std::move(c));
  }
  return internal;
}

void FormulaBuilder::eq(Var x, Var y) { instantiate(gadgets_->eq.recipe, {x, y}); }

Formula FormulaBuilder::formula() const {
  Formula f{gadgets_->language, num_vars_, shared_};
  f.constraints.insert(f.constraints.end(), constraints_.begin(), constraints_.end());
  return f;
}

int FormulaBuilder::shared_overhead() const {
  const Formula f{gadgets_->language, num_vars_, shared_};
  MinimizeOptions opt;
  opt.bound = num_vars_;
  auto best = minimize_weight(f, opt);
  if (!best) throw contract("shared constant gadgets are unsatisfiable");
  return best->weight();
}

// --- constants and equality -------------------------------------------------

ConstantGadgets force_constants(std::shared_ptr<const ConstraintLanguage> language, int k) {
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "k must be non-negative");
  require_np_hard(*language, "force_constants");
  ConstantGadgets g;
  g.language = language;
  g.k = k;
  std::tie(g.one.recipe, g.one_path) = one_recipe(*language, k);
  g.one.guarantee = g.one_path == "disequality_chain" ? Guarantee::kWeightConditional : Guarantee::kUnconditional;

  const auto witness = *classify_language(*language).witness;
  const auto& r = language->at(witness.relation);
  const auto& q = witness.quad;
  const auto sigma = q.produced;
  // Position classes: C_1 true in beta, C_0 false in alpha, C_x where
  // beta < sigma, C_y where sigma < alpha.
  auto binding = [&](int on_c0) {
    std::vector<int> b;
    for (int p = 1; p <= r.arity(); ++p) {
      if (q.beta[p]) b.push_back(kPinOne);
      else if (!q.alpha[p]) b.push_back(on_c0);
      else if (sigma[p]) b.push_back(0);
      else b.push_back(1);
    }
    return b;
  };
  auto symmetric = [&](const std::vector<int>& b, const std::string& name) {
    Recipe single{name, 2, 0, {atom_on(r, b)}};
    const auto rel = relation_of(single, *language);
    Recipe both = single;
    both.append(single, {1, 0});
    return std::make_pair(rel, both);
  };
  auto is_eq = [](const Relation& rel) { return has_exactly(rel, {"00", "11"}); };

  const auto [first, first_both] = symmetric(binding(1), "eq");
  const auto first_sym = relation_of(first_both, *language);
  Recipe eq_recipe;
  if (is_eq(first_sym)) {
    eq_recipe = is_eq(first) ? Recipe{"eq", 2, 0, {first_both.atoms.front()}} : first_both;
    g.eq_path = "direct";
    // x = 0 through equality with k fresh variables.
    Recipe chain{"zero", 1, k, {}};
    for (int i = 1; i <= k; ++i) chain.append(eq_recipe, {0, i});
    g.zero.recipe = chain;
    g.zero_path = "equality_chain";
    g.zero.guarantee = Guarantee::kWeightConditional;
  } else if (has_exactly(first_sym, {"00"})) {
    Recipe single{"zero", 1, 1, {first_both.atoms.front()}};
    g.zero.recipe = has_exactly(relation_of(single, *language), {"0"}) ? single : Recipe{"zero", 1, 1, first_both.atoms};
    g.zero_path = "direct";
    g.zero.guarantee = Guarantee::kUnconditional;
    const auto [second, second_both] = symmetric(binding(kPinZero), "eq");
    eq_recipe = is_eq(second) ? Recipe{"eq", 2, 0, {second_both.atoms.front()}} : second_both;
    g.eq_path = "pinned_zero";
  } else {
    throw contract("witness identification gave neither x=y nor x=y=0");
  }
  g.eq.recipe = eq_recipe;
  // A fragment is only as strong as the shared constants it pins.
  auto inherit = [](GadgetFragment& frag, const GadgetFragment& pin, int which) {
    if (frag.recipe.uses(which) && pin.guarantee == Guarantee::kWeightConditional) {
      frag.guarantee = Guarantee::kWeightConditional;
    }
  };
  inherit(g.zero, g.one, kPinOne);
  g.eq.guarantee = Guarantee::kUnconditional;
  inherit(g.eq, g.one, kPinOne);
  inherit(g.eq, g.zero, kPinZero);

  // Stand-alone instances and their exhaustive checks.
  auto standalone = [&](GadgetFragment& frag) {
    FormulaBuilder b(g);
    for (int i = 0; i < frag.recipe.interface; ++i) frag.interface.push_back(b.fresh());
    frag.internal = b.instantiate(frag.recipe, frag.interface);
    frag.formula = b.formula();
    return b;
  };
  {
    auto b = standalone(g.one);
    const Var x = g.one.interface[0];
    const int bound = g.one.guarantee == Guarantee::kUnconditional ? g.one.formula.num_vars : k;
    if (feasible(g.one.formula, {{}, {x}, {}, bound})) throw contract("(x=1) gadget admits x=0");
    const auto w = min_weight(g.one.formula, {{}, {}, {}, g.one.formula.num_vars});
    if (!w) throw contract("(x=1) gadget is unsatisfiable");
    g.one.weight_overhead = *w;
  }
  {
    auto b = standalone(g.zero);
    const Var x = g.zero.interface[0];
    const int bound = g.zero.guarantee == Guarantee::kUnconditional ? g.zero.formula.num_vars : k;
    if (feasible(g.zero.formula, {{x}, {}, {}, bound})) throw contract("(x=0) gadget admits x=1");
    const auto w = min_weight(g.zero.formula, {{}, {}, {}, g.zero.formula.num_vars});
    if (!w) throw contract("(x=0) gadget is unsatisfiable");
    g.zero.weight_overhead = *w;
  }
  {
    auto b = standalone(g.eq);
    const Var x = g.eq.interface[0], y = g.eq.interface[1];
    std::vector<Var> pinned_true, pinned_false;
    if (b.one_var()) pinned_true.push_back(b.one_var());
    if (b.zero_var()) pinned_false.push_back(b.zero_var());
    const int n = g.eq.formula.num_vars;
    auto with = [&](std::vector<Var> t, std::vector<Var> f) {
      t.insert(t.end(), pinned_true.begin(), pinned_true.end());
      f.insert(f.end(), pinned_false.begin(), pinned_false.end());
      return MinimizeOptions{t, f, {}, n};
    };
    if (feasible(g.eq.formula, with({x}, {y})) || feasible(g.eq.formula, with({y}, {x}))) {
      throw contract("(x=y) gadget admits x != y");
    }
    if (!feasible(g.eq.formula, with({}, {x, y})) || !feasible(g.eq.formula, with({x, y}, {}))) {
      throw contract("(x=y) gadget cannot realise x=y");
    }
    const auto w = min_weight(g.eq.formula, with({}, {x, y}));
    g.eq.weight_overhead = w.value_or(0);
  }
  return g;
}

// --- selection relations ----------------------------------------------------

bool matches_r3(const Relation& r) {
  return r.arity() == 3 && r.contains(word("000")) && r.contains(word("110")) && r.contains(word("101")) &&
         !r.contains(word("100"));
}

bool matches_r5(const Relation& r) {
  return r.arity() == 5 && r.contains(word("10110")) && r.contains(word("10000")) &&
         r.contains(word("01101")) && r.contains(word("01000")) && !r.contains(word("10100")) &&
         !r.contains(word("01100"));
}

namespace {

enum class Type { kZ1, kZ0, kC10, kC01, kP11, kP10, kP01 };

const char* type_name(Type t) {
  switch (t) {
    case Type::kZ1: return "Z1";
    case Type::kZ0: return "Z0";
    case Type::kC10: return "C10";
    case Type::kC01: return "C01";
    case Type::kP11: return "P11";
    case Type::kP10: return "P10";
    case Type::kP01: return "P01";
  }
  return "?";
}

// Binary atom from a pair (a, b) of tuples: common ones pinned 1, common
// zeros pinned 0, a-only positions on slot 0, b-only positions on slot 1.
Atom pair_atom(const Relation& r, std::uint32_t a, std::uint32_t b) {
  std::vector<int> binding;
  for (int p = 0; p < r.arity(); ++p) {
    const bool x = (a >> p) & 1U, y = (b >> p) & 1U;
    binding.push_back(x && y ? kPinOne : !x && !y ? kPinZero : x ? 0 : 1);
  }
  return atom_on(r, binding);
}

// First pair in enumeration order whose join (or meet) leaves the relation.
std::optional<std::pair<std::uint32_t, std::uint32_t>> closure_failure(const Relation& r, bool join) {
  for (auto a : r.masks()) {
    for (auto b : r.masks()) {
      if (!r.contains(join ? (a | b) : (a & b))) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

Recipe disequality(const ConstraintLanguage& language, const Relation& not_dual_horn) {
  const auto nd = *closure_failure(not_dual_horn, true);
  const Relation* not_horn = nullptr;
  for (const auto& r : language.relations()) {
    if (!check_property(r, Property::kHorn)) {
      not_horn = &r;
      break;
    }
  }
  if (!not_horn) throw Error(ErrorKind::kPreconditionViolated, "language is Horn");
  const auto nh = *closure_failure(*not_horn, false);
  const Recipe a{"neq", 2, 0, {pair_atom(not_dual_horn, nd.first, nd.second)}};
  const Recipe b{"neq", 2, 0, {pair_atom(*not_horn, nh.first, nh.second)}};
  auto is_neq = [&](const Recipe& rc) { return has_exactly(relation_of(rc, language), {"10", "01"}); };
  Recipe out;
  if (is_neq(a)) out = a;
  else if (is_neq(b)) out = b;
  else out = Recipe{"neq", 2, 0, {a.atoms.front(), b.atoms.front()}};
  if (!is_neq(out)) throw contract("could not implement x != y");
  return out;
}

}  // namespace

SelectionTemplate derive_selection_relation(std::shared_ptr<const ConstraintLanguage> language) {
  const auto cls = classify_language(*language);
  if (cls.verdict != Verdict::kNoPolyKernel) {
    throw Error(ErrorKind::kPreconditionViolated, "derive_selection_relation needs a NO_POLY_KERNEL language");
  }
  return derive_selection_relation(language, *cls.witness);
}

SelectionTemplate derive_selection_relation(std::shared_ptr<const ConstraintLanguage> language,
                                            const NamedWitness& witness) {
  require_np_hard(*language, "derive_selection_relation");
  const auto& r = language->at(witness.relation);
  const auto& q = witness.quad;
  if (!r.contains(q.alpha) || !r.contains(q.beta) || !r.contains(q.gamma) || !r.contains(q.delta) ||
      !merge_applies(q.alpha, q.beta, q.gamma, q.delta) || r.contains(q.produced) ||
      q.produced != meet(q.alpha, join(q.beta, q.gamma)) ||
      q.core_positions.mask() != (q.beta.bits() | q.delta.bits())) {
    throw Error(ErrorKind::kInvalidArgument, "not a non-mergeability witness of '" + r.name() + "'");
  }

  SelectionTemplate t;
  t.source = r.name();
  std::vector<Type> types;
  bool present[7] = {};
  for (int p = 1; p <= r.arity(); ++p) {
    const bool a = q.alpha[p], g = q.gamma[p];
    Type ty;
    if (q.core_positions.contains(p)) {
      if (q.beta[p] != a || q.delta[p] != g) throw contract("witness is not in core/petal form");
      ty = a && g ? Type::kZ1 : !a && !g ? Type::kZ0 : a ? Type::kC10 : Type::kC01;
    } else {
      if (q.beta[p] || q.delta[p]) throw contract("witness is not in core/petal form");
      ty = a && g ? Type::kP11 : a ? Type::kP10 : g ? Type::kP01 : Type::kZ0;
    }
    types.push_back(ty);
    present[static_cast<int>(ty)] = true;
    t.types.emplace_back(type_name(ty));
  }
  const bool c10 = present[static_cast<int>(Type::kC10)];
  const bool c01 = present[static_cast<int>(Type::kC01)];
  const bool p01 = present[static_cast<int>(Type::kP01)];

  // One atom on r: each type goes to the slot given by `slot`, constants pinned.
  auto atom = [&](std::initializer_list<std::pair<Type, int>> slot) {
    std::vector<int> b;
    for (Type ty : types) {
      int s = ty == Type::kZ1 ? kPinOne : kPinZero;
      for (auto [from, to] : slot) {
        if (from == ty) s = to;
      }
      b.push_back(s);
    }
    return atom_on(r, b);
  };
  auto r3 = [&](Atom a, int case_number) {
    t.kind = TemplateKind::kR3;
    t.recipe = Recipe{"R3", 3, 0, {std::move(a)}};
    t.case_number = case_number;
  };
  auto r5 = [&](Atom a, Atom b, int case_number) {
    t.kind = TemplateKind::kR5;
    t.recipe = Recipe{"R5", 5, 0, {std::move(a), std::move(b)}};
    t.case_number = case_number;
  };
  using enum Type;
  // R5 slots: v=0 (l), w=1 (r), x=2, y=3 (left), z=4 (right).
  // Case 2 shape: R'(C10, P11, P10) used as R'(v,x,y) & R'(w,x,z).
  auto case2 = [&](int case_number) {
    r5(atom({{kC10, 0}, {kP11, 2}, {kP10, 3}}), atom({{kC10, 1}, {kP11, 2}, {kP10, 4}}), case_number);
  };

  if (check_property(r, Property::kDualHorn)) {
    r3(atom({{kP11, 0}, {kP10, 1}, {kC01, 2}, {kP01, 2}, {kC10, kPinOne}}), 0);
  } else {
    t.neq = disequality(*language, r);
    if (c10 + c01 + p01 == 1) {
      if (c10) case2(2);
      else r3(atom({{kP11, 0}, {kP10, 1}, {kC01, 2}, {kP01, 2}}), 1);
    } else if (!c10) {
      r3(atom({{kP11, 0}, {kP10, 1}, {kC01, 2}, {kP01, 2}}), 3);
    } else if (!c01) {
      const Recipe probe{"R'", 4, 0, {atom({{kC10, 0}, {kP11, 1}, {kP10, 2}, {kP01, 3}})}};
      if (!relation_of(probe, *language).contains(word("0100"))) {
        r3(atom({{kP11, 0}, {kC10, 1}, {kP10, 1}, {kP01, 2}}), 4);
      } else {
        // P01 falls back to its default pin 0.
        case2(4);
      }
    } else if (!p01) {
      r5(atom({{kC10, 0}, {kC01, 1}, {kP11, 2}, {kP10, 3}}), atom({{kC10, 1}, {kC01, 0}, {kP11, 2}, {kP10, 4}}), 5);
    } else {
      r5(atom({{kC10, 0}, {kC01, 1}, {kP11, 2}, {kP10, 3}, {kP01, 4}}),
         atom({{kC10, 1}, {kC01, 0}, {kP11, 2}, {kP10, 4}, {kP01, 3}}), 6);
    }
  }
  t.relation = relation_of(t.recipe, *language);
  const bool ok = t.kind == TemplateKind::kR3 ? matches_r3(t.relation) : matches_r5(t.relation);
  if (!ok) {
    throw contract("case " + std::to_string(t.case_number) + " on '" + r.name() + "' did not produce a valid " +
                   std::string(to_string(t.kind)));
  }
  if (t.kind == TemplateKind::kR3) t.neq.reset();
  return t;
}

// --- selection formulas -----------------------------------------------------

SelectionFormula build_selection_formula(const SelectionTemplate& t, FormulaBuilder& builder,
                                         const std::vector<Var>& y) {
  if (y.empty()) throw Error(ErrorKind::kInvalidArgument, "selection formula needs n >= 1");
  SelectionFormula s;
  s.construction = t.kind;
  s.y = y;
  if (y.size() == 1) {
    builder.eq(y[0], builder.one());
    return s;
  }
  const int h = std::bit_width(y.size() - 1);
  std::vector<Var> leaves = y;
  while (leaves.size() < (std::size_t{1} << h)) {
    const Var p = builder.fresh();
    builder.eq(p, builder.zero());
    s.pad.push_back(p);
    leaves.push_back(p);
  }
  const Var root = builder.fresh();
  builder.eq(root, builder.one());
  s.x.push_back(root);
  std::vector<Var> level{root};
  for (int i = 0; i < h; ++i) {
    std::vector<Var> children;
    if (i + 1 == h) {
      children = leaves;
    } else {
      for (std::size_t j = 0; j < 2 * level.size(); ++j) s.x.push_back(children.emplace_back(builder.fresh()));
    }
    if (t.kind == TemplateKind::kR3) {
      for (std::size_t j = 0; j < level.size(); ++j) {
        builder.instantiate(t.recipe, {level[j], children[2 * j], children[2 * j + 1]});
      }
    } else {
      const Var l = builder.fresh(), r = builder.fresh();
      s.x.push_back(l);
      s.x.push_back(r);
      builder.instantiate(*t.neq, {l, r});
      for (std::size_t j = 0; j < level.size(); ++j) {
        builder.instantiate(t.recipe, {l, r, level[j], children[2 * j], children[2 * j + 1]});
      }
    }
    level = std::move(children);
  }
  s.w = t.kind == TemplateKind::kR3 ? h : 2 * h;
  return s;
}

StandaloneSelection build_selection_formula(const SelectionTemplate& t, const ConstantGadgets& gadgets, int n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "selection formula needs n >= 1");
  FormulaBuilder b(gadgets);
  std::vector<Var> y;
  for (int i = 0; i < n; ++i) y.push_back(b.fresh());
  StandaloneSelection out;
  out.selection = build_selection_formula(t, b, y);
  out.formula = b.formula();
  out.one_var = b.one_var();
  out.zero_var = b.zero_var();
  validate_selection_formula(out);
  return out;
}

void validate_selection_formula(const StandaloneSelection& s) {
  const auto& sel = s.selection;
  const Formula& f = s.formula;
  std::vector<Var> pinned_true, pinned_false;
  if (s.one_var) pinned_true.push_back(s.one_var);
  if (s.zero_var) pinned_false.push_back(s.zero_var);
  auto options = [&](std::vector<Var> t, std::vector<Var> fl, std::vector<Var> cost, int bound) {
    t.insert(t.end(), pinned_true.begin(), pinned_true.end());
    fl.insert(fl.end(), pinned_false.begin(), pinned_false.end());
    return MinimizeOptions{t, fl, cost, bound};
  };
  // The empty cost set means "all variables"; guard X = {} explicitly.
  auto x_cost = [&](const Assignment& a) {
    int c = 0;
    for (Var v : sel.x) c += a[v] ? 1 : 0;
    return c;
  };

  if (minimize_weight(f, options({}, sel.y, {}, f.num_vars))) throw contract("selection formula allows Y = 0");
  for (std::size_t i = 0; i < sel.y.size(); ++i) {
    std::vector<Var> others;
    for (std::size_t j = 0; j < sel.y.size(); ++j) {
      if (j != i) others.push_back(sel.y[j]);
    }
    auto opt = options({sel.y[i]}, others, sel.x, sel.w);
    if (sel.x.empty()) opt = options({sel.y[i]}, others, {}, f.num_vars);
    const auto best = minimize_weight(f, opt);
    if (!best || x_cost(*best) != sel.w) {
      throw contract("selection variable " + std::to_string(i + 1) + " does not extend with exactly w true X");
    }
  }
  if (sel.w > 0 && minimize_weight(f, options({}, {}, sel.x, sel.w - 1))) {
    throw contract("selection formula has a solution with fewer than w true X");
  }
}

// --- Exact Hitting Set ------------------------------------------------------

EhsReduction reduce_exact_hitting_set(const Hypergraph& h, std::shared_ptr<const ConstraintLanguage> language) {
  const int m = static_cast<int>(h.edges.size());
  if (m < 31 && h.num_vertices > (1 << m)) {
    throw Error(ErrorKind::kOutOfScopeFallback,
                std::to_string(h.num_vertices) + " vertices exceed 2^m for m = " + std::to_string(m));
  }
  const auto t = derive_selection_relation(language);
  EhsReduction out;
  out.m = m;
  out.construction = t.kind;
  for (const auto& e : h.edges) {
    if (e.size() > 1) out.sum_w += (t.kind == TemplateKind::kR3 ? 1 : 2) * std::bit_width(e.size() - 1);
  }
  // Gadget chains sized for an upper bound on k: overhead is at most one.
  const int k_upper = m + out.sum_w + 1;
  const auto gadgets = force_constants(language, k_upper);

  FormulaBuilder b(gadgets);
  std::vector<std::vector<std::pair<int, Var>>> by_vertex(static_cast<std::size_t>(h.num_vertices) + 1);
  int sum_w = 0;
  for (std::size_t j = 0; j < h.edges.size(); ++j) {
    const auto& e = h.edges[j];
    std::vector<Var> occ;
    for (int v : e) {
      const Var y = b.fresh();
      occ.push_back(y);
      by_vertex.at(static_cast<std::size_t>(v)).emplace_back(static_cast<int>(j), y);
    }
    if (e.empty()) {
      b.eq(b.one(), b.zero());
    } else {
      sum_w += build_selection_formula(t, b, occ).w;
    }
    out.occurrences.push_back(std::move(occ));
  }
  for (const auto& occ : by_vertex) {
    for (std::size_t a = 0; a < occ.size(); ++a) {
      for (std::size_t c = a + 1; c < occ.size(); ++c) b.eq(occ[a].second, occ[c].second);
    }
  }
  if (sum_w != out.sum_w) throw contract("selection weights disagree with the planned sum");
  out.overhead = m > 0 ? b.shared_overhead() : 0;
  out.k = m + out.sum_w + out.overhead;
  if (out.k > k_upper) throw contract("gadget overhead exceeds the planned bound");
  out.formula = b.formula();
  return out;
}

}  // namespace minones
