#include "minones/formula.hpp"

#include <algorithm>
#include <set>

#include "minones/error.hpp"

namespace minones {

// --- ConstraintLanguage -----------------------------------------------------

ConstraintLanguage::ConstraintLanguage(std::vector<Relation> relations) {
  for (auto& r : relations) add(std::move(r));
}

const Relation& ConstraintLanguage::at(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error(ErrorKind::kUnknownRelation, "'" + name + "'");
  return relations_[it->second];
}

std::optional<std::size_t> ConstraintLanguage::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void ConstraintLanguage::add(Relation r) {
  if (index_.contains(r.name())) {
    throw Error(ErrorKind::kInvalidArgument, "duplicate relation name '" + r.name() + "'");
  }
  max_arity_ = std::max(max_arity_, r.arity());
  index_.emplace(r.name(), relations_.size());
  relations_.push_back(std::move(r));
}

std::string ConstraintLanguage::add_or_reuse(const Relation& r) {
  for (const auto& existing : relations_) {
    if (existing.same_tuples(r)) return existing.name();
  }
  std::string name = r.name();
  for (int suffix = 2; index_.contains(name); ++suffix) {
    name = r.name() + "'" + std::to_string(suffix);
  }
  add(r.renamed(name));
  return name;
}

// --- Formula ----------------------------------------------------------------

std::vector<Var> Formula::occurring_vars() const {
  std::set<Var> vars;
  for (const auto& c : constraints) {
    for (Var v : c.args) {
      if (v != kConstZero) vars.insert(v);
    }
  }
  return {vars.begin(), vars.end()};
}

bool Formula::has_placeholders() const {
  return std::any_of(constraints.begin(), constraints.end(), [](const Constraint& c) {
    return std::find(c.args.begin(), c.args.end(), kConstZero) != c.args.end();
  });
}

void Formula::validate() const {
  if (!language) throw Error(ErrorKind::kInvalidArgument, "formula has no language");
  for (const auto& c : constraints) {
    const auto& r = language->at(c.relation);
    if (static_cast<int>(c.args.size()) != r.arity()) {
      throw Error(ErrorKind::kArityMismatch, "constraint on '" + c.relation + "' has " +
                                                 std::to_string(c.args.size()) + " arguments");
    }
    for (Var v : c.args) {
      if (v < 0 || v > num_vars) {
        throw Error(ErrorKind::kInvalidArgument,
                    "variable " + std::to_string(v) + " outside universe of " +
                        std::to_string(num_vars));
      }
    }
  }
}

// --- Assignment -------------------------------------------------------------

Assignment Assignment::from_true_set(int num_vars, const std::vector<Var>& true_vars) {
  Assignment a(num_vars);
  for (Var v : true_vars) a.set(v, true);
  return a;
}

void Assignment::set(Var v, bool value) {
  if (v < 1 || v > num_vars()) {
    throw Error(ErrorKind::kInvalidArgument, "assignment to variable " + std::to_string(v));
  }
  const auto i = static_cast<std::size_t>(v);
  if (values_[i] != value) {
    weight_ += value ? 1 : -1;
    values_[i] = value;
  }
}

std::vector<Var> Assignment::true_vars() const {
  std::vector<Var> out;
  for (Var v = 1; v <= num_vars(); ++v) {
    if (values_[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

std::uint32_t tuple_under(const Constraint& c, const Assignment& a) {
  std::uint32_t t = 0;
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    if (a[c.args[i]]) t |= 1U << i;
  }
  return t;
}

bool evaluate(const Formula& f, const Assignment& a) {
  if (a.num_vars() < f.num_vars) {
    throw Error(ErrorKind::kInvalidArgument, "assignment does not cover the universe");
  }
  for (const auto& c : f.constraints) {
    if (!f.language->at(c.relation).contains(tuple_under(c, a))) return false;
  }
  return true;
}

// --- normalization ----------------------------------------------------------

NormalizedFormula normalize_formula(const Formula& f) {
  f.validate();
  auto language = std::make_shared<ConstraintLanguage>(*f.language);
  Formula out{nullptr, f.num_vars, {}};
  for (const auto& c : f.constraints) {
    std::set<Var> distinct(c.args.begin(), c.args.end());
    const bool clean = distinct.size() == c.args.size() && !distinct.contains(kConstZero);
    if (clean) {
      out.constraints.push_back(c);
      continue;
    }
    // Variable ids double as class labels; kConstZero == kBindZero.
    try {
      auto t = transform(language->at(c.relation), c.args);
      if (t.relation.arity() == 0) continue;
      out.constraints.push_back({language->add_or_reuse(t.relation), t.classes});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kEmptyRelation) throw;
      throw Error(ErrorKind::kUnsatisfiableConstraint, e.what());
    }
  }
  out.language = language;
  return {std::move(out), std::move(language)};
}

Formula eliminate_zero_constants(const Formula& f, int k) {
  if (!f.has_placeholders()) return f;
  Formula out{f.language, f.num_vars + k + 1, {}};
  for (const auto& c : f.constraints) {
    if (std::find(c.args.begin(), c.args.end(), kConstZero) == c.args.end()) {
      out.constraints.push_back(c);
      continue;
    }
    for (int i = 1; i <= k + 1; ++i) {
      Constraint copy = c;
      for (Var& v : copy.args) {
        if (v == kConstZero) v = f.num_vars + i;
      }
      out.constraints.push_back(std::move(copy));
    }
  }
  return out;
}

}  // namespace minones
