// Command-line front end.
//
// Exit codes: 0 success, 1 usage, 2 parse, 3 precondition, 4 internal
// contract violation.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "minones/classifier.hpp"
#include "minones/error.hpp"
#include "minones/gadgets.hpp"
#include "minones/io.hpp"
#include "minones/kernelizer.hpp"
#include "minones/solvers.hpp"

using json = nlohmann::ordered_json;
using namespace minones;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParseError:
    case ErrorKind::kUnknownRelation:
    case ErrorKind::kArityMismatch:
    case ErrorKind::kArityTooLarge:
    case ErrorKind::kEmptyRelation:
      return 2;
    case ErrorKind::kNotMergeableLanguage:
    case ErrorKind::kOutOfScopeFallback:
    case ErrorKind::kTooLarge:
    case ErrorKind::kPreconditionViolated:
    case ErrorKind::kUnsatisfiableConstraint:
      return 3;
    case ErrorKind::kLemmaContractViolated:
    case ErrorKind::kBoundViolated:
    case ErrorKind::kNotIHSBMinus:
      return 4;
    case ErrorKind::kInvalidArgument:
      return 1;
  }
  return 1;
}

std::vector<int> parse_positions(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, "bad position list '" + text + "'");
    }
  }
  return out;
}

std::shared_ptr<const ConstraintLanguage> load_language(const std::string& path) {
  return std::make_shared<const ConstraintLanguage>(parse_language(read_file(path)));
}

std::string tuples_text(const Relation& r) {
  std::string out;
  for (const auto& t : r.tuples()) out += (out.empty() ? "" : " ") + t.to_string();
  return out;
}

json tuples_json(const Relation& r) {
  json out = json::array();
  for (const auto& t : r.tuples()) out.push_back(t.to_string());
  return out;
}

json witness_json(const WitnessQuad& q) {
  return {{"alpha", q.alpha.to_string()},       {"beta", q.beta.to_string()},
          {"gamma", q.gamma.to_string()},       {"delta", q.delta.to_string()},
          {"produced", q.produced.to_string()}, {"core", q.core_positions.to_string()},
          {"petals", q.petal_positions.to_string()}};
}

std::string witness_text(const WitnessQuad& q) {
  return "alpha=" + q.alpha.to_string() + " beta=" + q.beta.to_string() + " gamma=" + q.gamma.to_string() +
         " delta=" + q.delta.to_string() + " produced=" + q.produced.to_string();
}

json record_json(const PropertyRecord& p) {
  json out = {{"zero_valid", p.zero_valid}, {"one_valid", p.one_valid},          {"horn", p.horn},
              {"dual_horn", p.dual_horn},   {"ihsb_minus", p.ihsb_minus},        {"width2_affine", p.width2_affine},
              {"mergeable", p.mergeable}};
  if (p.witness) out["witness"] = witness_json(*p.witness);
  return out;
}

std::string record_text(const PropertyRecord& p) {
  std::string out;
  auto flag = [&](const char* name, bool v) { out += std::string(" ") + name + "=" + (v ? "1" : "0"); };
  flag("zero_valid", p.zero_valid);
  flag("one_valid", p.one_valid);
  flag("horn", p.horn);
  flag("dual_horn", p.dual_horn);
  flag("ihsb_minus", p.ihsb_minus);
  flag("width2_affine", p.width2_affine);
  flag("mergeable", p.mergeable);
  return out;
}

json report_json(const KernelReport& r) {
  json foo = json::array();
  for (const auto& sizes : r.foo_sizes) foo.push_back(sizes);
  return {{"input_vars", r.input_vars},
          {"input_constraints", r.input_constraints},
          {"k", r.k},
          {"d", r.d},
          {"iterations", r.iterations},
          {"foo_sizes", foo},
          {"measure", r.measure},
          {"x_size", r.x_size},
          {"x_survivors", r.x_survivors},
          {"implication_edges", r.implication_edges},
          {"max_implied", r.max_implied},
          {"eliminated_zero_closed", r.eliminated_zero_closed},
          {"eliminated_heavy", r.eliminated_heavy},
          {"eliminated_unreachable", r.eliminated_unreachable},
          {"z_vars", r.z_vars},
          {"final_vars", r.final_vars},
          {"final_constraints", r.final_constraints},
          {"nonzero_valid_relations", r.nonzero_valid_relations},
          {"bound", r.bound},
          {"trivial_no", r.trivial_no},
          {"note", r.note}};
}

void print_report(std::ostream& os, const KernelReport& r) {
  os << "input: " << r.input_vars << " variables, " << r.input_constraints << " constraints, k=" << r.k
     << ", d=" << r.d << "\n";
  os << "reduction iterations: " << r.iterations << "\n";
  os << "measure:";
  for (auto m : r.measure) os << " " << m;
  os << "\n";
  os << "X: " << r.x_size << " (" << r.x_survivors << " kept), implication edges: " << r.implication_edges
     << ", max implied: " << r.max_implied << "\n";
  os << "eliminated: " << r.eliminated_zero_closed << " zero-closed, " << r.eliminated_heavy << " heavy, "
     << r.eliminated_unreachable << " unreachable\n";
  os << "kernel: " << r.final_vars << " variables (" << r.z_vars << " z), " << r.final_constraints
     << " constraints, bound " << r.bound << "\n";
  if (!r.note.empty()) os << "note: " << r.note << "\n";
}

json fragment_json(const GadgetFragment& g) {
  return {{"recipe", g.recipe.to_string()},
          {"guarantee", std::string(to_string(g.guarantee))},
          {"weight_overhead", g.weight_overhead},
          {"variables", g.formula.num_vars}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min Ones SAT kernelization and lower-bound toolkit"};
  app.require_subcommand(1);

  std::string language_path, instance_path, hypergraph_path, output_path, method = "branch", relation_name,
                                                                          core_text;
  int k = -1, n = 0;
  bool as_json = false;

  auto* classify = app.add_subcommand("classify", "Classify a constraint language");
  classify->add_option("--language", language_path, "Language file (.rel)")->required();
  classify->add_flag("--json", as_json);

  auto* kernelize_cmd = app.add_subcommand("kernelize", "Kernelize an instance over a mergeable language");
  kernelize_cmd->add_option("--language", language_path)->required();
  kernelize_cmd->add_option("--instance", instance_path)->required();
  kernelize_cmd->add_option("-k", k, "Weight bound (defaults to the instance's)");
  kernelize_cmd->add_option("-o,--output", output_path, "Write the kernel instance here");
  kernelize_cmd->add_flag("--json", as_json);

  auto* solve = app.add_subcommand("solve", "Decide weight <= k satisfiability");
  solve->add_option("--language", language_path)->required();
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("-k", k);
  solve->add_option("--method", method)->check(CLI::IsMember({"brute", "branch", "prop"}));
  solve->add_flag("--json", as_json);

  auto* relation = app.add_subcommand("relation", "Inspect one relation");
  relation->add_option("--language", language_path)->required();
  relation->add_option("--name", relation_name)->required();
  relation->add_option("--core", core_text, "Core positions for the sunflower restriction, e.g. 1,2,3");
  relation->add_flag("--json", as_json);

  auto* gadget = app.add_subcommand("gadget", "Constant gadgets and selection template");
  gadget->add_option("--language", language_path)->required();
  gadget->add_option("-k", k)->required();
  gadget->add_option("-n", n, "Also emit a selection formula of this arity");
  gadget->add_option("-o,--output", output_path);
  gadget->add_flag("--json", as_json);

  auto* ehs = app.add_subcommand("reduce-ehs", "Reduce Exact Hitting Set to Min Ones SAT");
  ehs->add_option("--language", language_path)->required();
  ehs->add_option("--hypergraph", hypergraph_path)->required();
  ehs->add_option("-o,--output", output_path);
  ehs->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (const char* env = std::getenv("MINONES_MAX_ARITY")) {
      try {
        set_max_arity(std::stoi(env));
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::kInvalidArgument, std::string("MINONES_MAX_ARITY='") + env + "'");
      }
    }
    const auto language = load_language(language_path);
    auto load_instance = [&]() {
      auto inst = parse_instance(read_file(instance_path), language);
      if (k >= 0) inst.k = k;
      return inst;
    };

    if (*classify) {
      const auto c = classify_language(*language);
      if (as_json) {
        json rels = json::object();
        for (const auto& [name, rec] : c.relations) rels[name] = record_json(rec);
        json out = {{"verdict", std::string(to_string(c.verdict))},
                    {"ptime_reason", std::string(to_string(c.ptime_reason))},
                    {"relations", rels}};
        if (c.witness) out["witness"] = {{"relation", c.witness->relation}, {"quad", witness_json(c.witness->quad)}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "verdict: " << to_string(c.verdict) << "\n";
        if (c.ptime_reason != PtimeReason::kNone) std::cout << "reason: " << to_string(c.ptime_reason) << "\n";
        for (const auto& [name, rec] : c.relations) std::cout << name << ":" << record_text(rec) << "\n";
        if (c.witness) std::cout << "witness " << c.witness->relation << ": " << witness_text(c.witness->quad) << "\n";
      }
    } else if (*kernelize_cmd) {
      const auto inst = load_instance();
      const auto result = kernelize(inst.formula, inst.k);
      const auto text = write_instance(result.formula, result.k);
      if (!output_path.empty()) write_file(output_path, text);
      if (as_json) {
        json out = {{"report", report_json(result.report)}};
        if (output_path.empty()) out["kernel"] = text;
        std::cout << out.dump(2) << "\n";
      } else {
        print_report(std::cout, result.report);
        if (output_path.empty()) std::cout << text;
      }
    } else if (*solve) {
      const auto inst = load_instance();
      SolveResult r;
      if (method == "brute") r = solve_brute(inst.formula, inst.k);
      else if (method == "branch") r = solve_branch(inst.formula, inst.k);
      else r = solve_propagate(inst.formula, inst.k);
      if (as_json) {
        json out = {{"status", std::string(to_string(r.status))}, {"k", inst.k}, {"method", method}};
        if (r.witness) {
          out["weight"] = *r.optimum;
          out["true_vars"] = r.witness->true_vars();
        }
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << to_string(r.status);
        if (r.witness) {
          std::cout << " weight " << *r.optimum << "\ntrue:";
          for (Var v : r.witness->true_vars()) std::cout << " " << v;
        }
        std::cout << "\n";
      }
    } else if (*relation) {
      const auto& r = language->at(relation_name);
      const auto rec = property_record(r);
      const auto zc = zero_closed_positions(r);
      const auto core = nonzero_core(r);
      std::optional<Relation> restricted, core_rel;
      PositionSet c;
      if (!core_text.empty()) {
        c = PositionSet(parse_positions(core_text));
        restricted = sunflower_restriction(r, c);
        core_rel = core_relation(r, c);
      }
      if (as_json) {
        json out = {{"name", r.name()},
                    {"arity", r.arity()},
                    {"tuples", tuples_json(r)},
                    {"properties", record_json(rec)},
                    {"zero_closed", zc.to_string()},
                    {"nonzero_core", tuples_json(core.relation)},
                    {"nonzero_core_positions", core.positions}};
        if (restricted) {
          out["core"] = c.to_string();
          out["sunflower_restriction"] = tuples_json(*restricted);
          out["core_relation"] = tuples_json(*core_rel);
        }
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << r.name() << "/" << r.arity() << ": " << tuples_text(r) << "\n";
        std::cout << "properties:" << record_text(rec) << "\n";
        if (rec.witness) std::cout << "witness: " << witness_text(*rec.witness) << "\n";
        std::cout << "zero-closed positions: " << zc.to_string() << "\n";
        std::cout << "non-zero-closed core: " << tuples_text(core.relation) << "\n";
        if (restricted) {
          std::cout << "restriction to core " << c.to_string() << ": " << tuples_text(*restricted) << "\n";
          std::cout << "core relation: " << tuples_text(*core_rel) << "\n";
        }
      }
    } else if (*gadget) {
      const auto g = force_constants(language, k);
      const auto t = derive_selection_relation(language);
      std::optional<StandaloneSelection> sel;
      if (n > 0) sel = build_selection_formula(t, g, n);
      if (sel && !output_path.empty()) write_file(output_path, write_instance(sel->formula, 0));
      if (as_json) {
        json out = {{"one", fragment_json(g.one)},
                    {"zero", fragment_json(g.zero)},
                    {"eq", fragment_json(g.eq)},
                    {"paths", {{"one", g.one_path}, {"zero", g.zero_path}, {"eq", g.eq_path}}},
                    {"template",
                     {{"kind", std::string(to_string(t.kind))},
                      {"case", t.case_number},
                      {"source", t.source},
                      {"types", t.types},
                      {"recipe", t.recipe.to_string()},
                      {"relation", tuples_json(t.relation)}}}};
        if (t.neq) out["template"]["neq"] = t.neq->to_string();
        if (sel) {
          out["selection"] = {{"n", n}, {"w", sel->selection.w}, {"variables", sel->formula.num_vars},
                              {"y", sel->selection.y}, {"x", sel->selection.x}};
        }
        std::cout << out.dump(2) << "\n";
      } else {
        auto frag = [](const char* name, const GadgetFragment& f, const std::string& path) {
          std::cout << name << " [" << path << ", " << to_string(f.guarantee) << ", overhead "
                    << f.weight_overhead << "]: " << f.recipe.to_string() << "\n";
        };
        frag("x=1", g.one, g.one_path);
        frag("x=0", g.zero, g.zero_path);
        frag("x=y", g.eq, g.eq_path);
        std::cout << "template " << to_string(t.kind) << " (case " << t.case_number << ", from " << t.source
                  << "): " << t.recipe.to_string() << "\n";
        if (t.neq) std::cout << "x!=y: " << t.neq->to_string() << "\n";
        if (sel) {
          std::cout << "selection n=" << n << ": w=" << sel->selection.w << ", " << sel->formula.num_vars
                    << " variables, " << sel->formula.constraints.size() << " constraints\n";
          if (output_path.empty()) std::cout << write_instance(sel->formula, 0);
        }
      }
    } else if (*ehs) {
      const auto h = parse_hypergraph(read_file(hypergraph_path));
      const auto red = reduce_exact_hitting_set(h, language);
      const auto text = write_instance(red.formula, red.k);
      if (!output_path.empty()) write_file(output_path, text);
      if (as_json) {
        json out = {{"k", red.k},
                    {"m", red.m},
                    {"sum_w", red.sum_w},
                    {"overhead", red.overhead},
                    {"construction", std::string(to_string(red.construction))},
                    {"variables", red.formula.num_vars},
                    {"constraints", red.formula.constraints.size()}};
        if (output_path.empty()) out["instance"] = text;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "k = " << red.m << " + " << red.sum_w << " + " << red.overhead << " = " << red.k << " ("
                  << to_string(red.construction) << ", " << red.formula.num_vars << " variables)\n";
        if (output_path.empty()) std::cout << text;
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
