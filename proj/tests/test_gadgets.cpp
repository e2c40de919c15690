#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "minones/error.hpp"
#include "minones/gadgets.hpp"
#include "minones/solvers.hpp"
#include "oracles.hpp"

using namespace minones;
using fixtures::rel;

namespace {

std::shared_ptr<const ConstraintLanguage> or_even() {
  return fixtures::language({fixtures::or2(), fixtures::even3()});
}

std::shared_ptr<const ConstraintLanguage> with_or2(const Relation& r) {
  return fixtures::language({r, fixtures::or2()});
}

Relation words(const char* name, std::initializer_list<const char*> tuples) { return rel(name, tuples); }

NamedWitness quad(const char* relation, const char* a, const char* b, const char* c, const char* d) {
  const auto A = BoolTuple::from_string(a), B = BoolTuple::from_string(b);
  const auto C = BoolTuple::from_string(c), D = BoolTuple::from_string(d);
  const auto core = PositionSet::from_mask(B.bits() | D.bits());
  return {relation, {A, B, C, D, meet(A, join(B, C)), core, core.complement(A.arity())}};
}

int log2i(int n) { return static_cast<int>(std::lround(std::log2(n))); }

void check_selection(const SelectionTemplate& t, const ConstantGadgets& g, int per_level) {
  for (int n : {1, 2, 3, 4, 8}) {
    const auto s = build_selection_formula(t, g, n);
    const int h = n == 1 ? 0 : static_cast<int>(std::ceil(std::log2(n)));
    CHECK(s.selection.w == per_level * h);
    CHECK(s.selection.y.size() == static_cast<std::size_t>(n));
  }
}

}  // namespace

TEST_SUITE("gadgets") {
  TEST_CASE("recipe relation projects internal slots and reads pins") {
    const auto lang = or_even();
    const Recipe eq{"eq", 2, 0, {{"EVEN3", {0, 1, kPinZero}}}};
    CHECK(recipe_relation(eq, *lang).same_tuples(rel("E", {"00", "11"})));
    const Recipe one{"one", 1, 0, {{"OR2", {0, 0}}}};
    CHECK(recipe_relation(one, *lang).same_tuples(rel("O", {"1"})));
    const Recipe hidden{"h", 1, 1, {{"EVEN3", {0, 1, 1}}}};
    CHECK(recipe_relation(hidden, *lang).same_tuples(rel("Z", {"0"})));
    CHECK(eq.uses(kPinZero));
    CHECK_FALSE(eq.uses(kPinOne));
    CHECK(eq.to_string() == "EVEN3(x0,x1,0)");
    const Recipe dead{"d", 0, 0, {{"OR2", {kPinZero, kPinZero}}}};
    CHECK_THROWS_AS(recipe_relation(dead, *lang), Error);
  }

  TEST_CASE("constant gadgets for OR2 and EVEN3") {
    const auto g = force_constants(or_even(), 3);
    CHECK(g.one_path == "one_valid");
    CHECK(g.one.recipe.to_string() == "OR2(x0,x0)");
    CHECK(g.one.weight_overhead == 1);
    CHECK(g.one.guarantee == Guarantee::kUnconditional);
    CHECK(g.zero_path == "direct");
    CHECK(g.zero.recipe.to_string() == "EVEN3(x0,t1,t1)");
    CHECK(g.eq_path == "pinned_zero");
    CHECK(g.eq.recipe.to_string() == "EVEN3(x0,x1,0)");
    CHECK(recipe_relation(g.eq.recipe, *g.language).same_tuples(rel("E", {"00", "11"})));
  }

  TEST_CASE("constant gadgets need a NO_POLY_KERNEL language") {
    try {
      force_constants(fixtures::language({fixtures::or2()}), 2);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kPreconditionViolated);
    }
    CHECK_THROWS_AS(derive_selection_relation(fixtures::language({fixtures::even3()})), Error);
  }

  TEST_CASE("disequality chain forces x = 1 under the weight bound") {
    const auto lang = fixtures::language({rel("NEQ", {"01", "10"}), fixtures::even3()});
    const auto g = force_constants(lang, 2);
    CHECK(g.one_path == "disequality_chain");
    CHECK(g.one.guarantee == Guarantee::kWeightConditional);
    if (g.zero.recipe.uses(kPinOne)) CHECK(g.zero.guarantee == Guarantee::kWeightConditional);
    MinimizeOptions o;
    o.fixed_false = {g.one.interface.at(0)};
    o.bound = 2;
    CHECK_FALSE(minimize_weight(g.one.formula, o));
  }

  TEST_CASE("R3 template from OR2 and EVEN3") {
    const auto t = derive_selection_relation(or_even());
    CHECK(t.kind == TemplateKind::kR3);
    CHECK(t.case_number == 1);
    CHECK(t.source == "EVEN3");
    CHECK(matches_r3(t.relation));
    CHECK(t.recipe.to_string() == "EVEN3(x0,x1,x2)");
    CHECK_FALSE(t.neq);
    check_selection(t, force_constants(or_even(), 4), 1);
  }

  TEST_CASE("R5 template from OR2 and SEL3") {
    const auto lang = fixtures::language({fixtures::or2(), fixtures::sel3()});
    const auto t = derive_selection_relation(lang);
    CHECK(t.kind == TemplateKind::kR5);
    CHECK(t.case_number == 2);
    CHECK(matches_r5(t.relation));
    REQUIRE(t.neq);
    CHECK(recipe_relation(*t.neq, *lang).same_tuples(rel("N", {"01", "10"})));
    check_selection(t, force_constants(lang, 6), 2);
  }

  TEST_CASE("dual Horn path") {
    const auto t = derive_selection_relation(with_or2(words("D", {"0000", "1100", "0010", "1010", "0110", "1110", "1101", "1011", "1111"})));
    CHECK(t.case_number == 0);
    CHECK(matches_r3(t.relation));
  }

  TEST_CASE("dual Horn non-mergeable relation is its own template") {
    const auto lang = fixtures::language({fixtures::impl3(), fixtures::or2()});
    const auto t = derive_selection_relation(lang);
    CHECK(t.case_number == 0);
    CHECK(t.kind == TemplateKind::kR3);
    CHECK(t.source == "IMPL3");
    CHECK(matches_r3(t.relation));
    check_selection(t, force_constants(lang, 4), 1);
  }

  TEST_CASE("case 3 and case 4 through explicit witnesses") {
    const auto c3 = with_or2(words("W", {"0110", "0000", "1101", "1000"}));
    const auto t3 = derive_selection_relation(c3, quad("W", "0110", "0000", "1101", "1000"));
    CHECK(t3.case_number == 3);
    CHECK(t3.kind == TemplateKind::kR3);
    check_selection(t3, force_constants(c3, 4), 1);

    const auto c4 = with_or2(words("W", {"1110", "1000", "0101", "0000"}));
    const auto t4 = derive_selection_relation(c4, quad("W", "1110", "1000", "0101", "0000"));
    CHECK(t4.case_number == 4);
    CHECK(t4.kind == TemplateKind::kR3);

    const auto c4b = with_or2(words("W", {"1110", "1000", "0101", "0000", "0100"}));
    const auto t4b = derive_selection_relation(c4b, quad("W", "1110", "1000", "0101", "0000"));
    CHECK(t4b.case_number == 4);
    CHECK(t4b.kind == TemplateKind::kR5);
    check_selection(t4b, force_constants(c4b, 6), 2);
  }

  TEST_CASE("cases 5 and 6") {
    const auto c5 = with_or2(words("W", {"10000", "00010", "01010", "01110", "11110", "00001", "11001", "00101",
                                         "11101", "00011", "11111"}));
    const auto t5 = derive_selection_relation(c5);
    CHECK(t5.case_number == 5);
    CHECK(t5.kind == TemplateKind::kR5);
    check_selection(t5, force_constants(c5, 6), 2);

    const auto c6 = with_or2(words("W", {"01000", "10100", "00010", "10110", "00001", "11001", "10111", "01111"}));
    const auto t6 = derive_selection_relation(c6);
    CHECK(t6.case_number == 6);
    CHECK(t6.kind == TemplateKind::kR5);
    check_selection(t6, force_constants(c6, 6), 2);
  }

  TEST_CASE("witness must belong to the language") {
    try {
      derive_selection_relation(or_even(), quad("OR2", "11", "01", "10", "00"));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kInvalidArgument);
    }
  }

  TEST_CASE("selection contract on a standalone formula") {
    const auto t = derive_selection_relation(or_even());
    const auto g = force_constants(or_even(), 4);
    for (int n : {2, 4, 8}) {
      const auto s = build_selection_formula(t, g, n);
      CHECK(s.selection.w == log2i(n));
      CHECK(s.selection.x.size() == static_cast<std::size_t>(n - 1));
      CHECK_NOTHROW(validate_selection_formula(s));
    }
  }

  TEST_CASE("EHS examples") {
    const auto path = reduce_exact_hitting_set({3, {{1, 2}, {2, 3}}}, or_even());
    CHECK(path.m == 2);
    CHECK(path.sum_w == 2);
    CHECK(path.k == path.m + path.sum_w + path.overhead);
    CHECK(path.k == 5);
    CHECK(solve_propagate(path.formula, path.k).status == SolveStatus::kSat);

    const auto none = reduce_exact_hitting_set({2, {{1}, {1, 2}, {2}}}, or_even());
    CHECK(none.k == none.m + none.sum_w + none.overhead);
    CHECK(solve_propagate(none.formula, none.k).status == SolveStatus::kUnsat);
  }

  TEST_CASE("EHS out of scope") {
    try {
      reduce_exact_hitting_set({5, {{1, 2}, {3, 4}}}, or_even());
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kOutOfScopeFallback);
    }
  }

  TEST_CASE("EHS decision matches the oracle") {
    std::mt19937 rng(8);
    const auto lang = or_even();
    int done = 0;
    while (done < 40) {
      Hypergraph h{1 + static_cast<int>(rng() % 4), {}};
      const int m = 1 + static_cast<int>(rng() % 3);
      if (h.num_vertices > (1 << m)) continue;
      for (int j = 0; j < m; ++j) {
        std::vector<int> e;
        for (int v = 1; v <= h.num_vertices; ++v) {
          if (rng() % 2) e.push_back(v);
        }
        if (e.empty()) e.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(h.num_vertices)));
        h.edges.push_back(e);
      }
      const auto red = reduce_exact_hitting_set(h, lang);
      CHECK((solve_propagate(red.formula, red.k).status == SolveStatus::kSat) == oracle::has_exact_hitting_set(h));
      ++done;
    }
  }
}
