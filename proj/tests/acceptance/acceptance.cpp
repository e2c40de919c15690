// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "minones/classifier.hpp"
#include "minones/error.hpp"
#include "minones/gadgets.hpp"
#include "minones/kernelizer.hpp"
#include "minones/solvers.hpp"
#include "minones/sunflower.hpp"
#include "oracles.hpp"

using namespace minones;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < limit_seconds, "time limit exceeded");
  if (!out.pass) ++failures;
  std::printf("%s AC%d %s (%.2fs) %s\n", out.pass ? "PASS" : "FAIL", id, title, secs, out.detail.str().c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------

void ac1(Outcome& o) {
  const auto r = fixtures::rex();
  o.require(is_mergeable(r).mergeable, "REX mergeable");
  o.require(zero_closed_positions(r) == PositionSet{4}, "zero-closed positions {4}");
  o.require(sunflower_restriction(r, {1, 2, 3}).same_tuples(r), "restriction with core {1,2,3}");
  o.require(core_relation(r, {1, 2, 3}).same_tuples(fixtures::rel("C", {"001", "010", "100", "111"})), "core relation");
}

void ac2(Outcome& o) {
  o.require(is_mergeable(fixtures::odd3()).mergeable, "ODD3");
  o.require(is_mergeable(fixtures::eq_impl()).mergeable, "(x=y)->z");
  o.require(!is_mergeable(fixtures::even3()).mergeable, "EVEN3");
  o.require(is_mergeable(fixtures::or2()).mergeable, "OR2");
}

void ac3(Outcome& o) {
  const auto a = classify_language(ConstraintLanguage({fixtures::or2()}));
  o.require(a.verdict == Verdict::kPolyKernel, "{OR2}");
  const auto b = classify_language(ConstraintLanguage({fixtures::even3()}));
  o.require(b.verdict == Verdict::kPtime && b.ptime_reason == PtimeReason::kZeroValid, "{EVEN3}");
  const ConstraintLanguage lang({fixtures::or2(), fixtures::even3()});
  const auto c = classify_language(lang);
  o.require(c.verdict == Verdict::kNoPolyKernel && c.witness.has_value(), "{OR2, EVEN3}");
  if (!c.witness) return;
  const auto& r = lang.at(c.witness->relation);
  const auto& q = c.witness->quad;
  bool members = true;
  for (const auto& x : {q.alpha, q.beta, q.gamma, q.delta}) members = members && r.contains(x);
  o.require(members, "witness tuples in relation");
  // Replay the merge conditions and product without library helpers.
  const auto A = q.alpha.bits(), B = q.beta.bits(), G = q.gamma.bits(), D = q.delta.bits();
  o.require((B & ~A) == 0 && (A & D & ~B) == 0 && (B & G & ~D) == 0 && (D & ~G) == 0, "merge conditions");
  o.require(!r.contains(A & (B | G)), "product outside relation");
  o.detail << "witness " << c.witness->relation << " " << q.alpha.to_string() << "," << q.beta.to_string() << ","
           << q.gamma.to_string() << "," << q.delta.to_string() << " -> " << q.produced.to_string() << "; ";
}

void ac4(Outcome& o) {
  std::mt19937 rng(4);
  for (auto [t, size, lo, hi] : {std::tuple{2, 17, 5, 20}, std::tuple{3, 289, 7, 15}}) {
    o.require(sunflower_threshold(2, t) + 1 == size, "threshold");
    int ok = 0;
    for (int i = 0; i < 500; ++i) {
      const int universe = lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
      std::set<VarTuple> seen;
      while (seen.size() < static_cast<std::size_t>(size)) {
        VarTuple v;
        for (int p = 0; p < t; ++p) v.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(universe)));
        seen.insert(v);
      }
      std::vector<VarTuple> family(seen.begin(), seen.end());
      std::shuffle(family.begin(), family.end(), rng);
      const auto s = find_sunflower(family, 2);
      bool good = s && s->members.size() == 3 && is_valid_sunflower(*s, t);
      if (good) {
        for (const auto& m : s->members) good = good && seen.contains(m);
      }
      ok += good ? 1 : 0;
    }
    o.require(ok == 500, "t=" + std::to_string(t) + " valid sunflowers");
    o.detail << "t=" << t << ": " << ok << "/500; ";
  }
}

// Random instance; roughly half are planted so that a weight-<=k solution exists.
Formula random_instance(std::mt19937& rng, const std::shared_ptr<const ConstraintLanguage>& lang, int n, int m, int k,
                        bool planted) {
  std::vector<Var> s;
  for (int i = 0; i < k; ++i) s.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(n)));
  const auto a = Assignment::from_true_set(n, s);
  Formula f{lang, n, {}};
  while (static_cast<int>(f.constraints.size()) < m) {
    auto c = oracle::random_formula(rng, lang, n, 1).constraints.front();
    if (planted && !lang->at(c.relation).contains(tuple_under(c, a))) continue;
    f.constraints.push_back(std::move(c));
  }
  return f;
}

bool decide(const Formula& f, int k) {
  if (f.num_vars <= kDefaultBruteCap) return solve_brute(f, k).status == SolveStatus::kSat;
  return solve_branch(f, k).status == SolveStatus::kSat;
}

void ac5(Outcome& o) {
  std::mt19937 rng(5);
  const auto lang = fixtures::language({fixtures::or2(), fixtures::odd3()});
  int yes = 0, reduced = 0, trivial = 0;
  long long max_vars = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 4 + static_cast<int>(rng() % 11);
    const int k = 1 + static_cast<int>(rng() % 3);
    const int m = 5 + static_cast<int>(rng() % 146);
    const auto f = random_instance(rng, lang, n, m, k, i % 2 == 0);
    const bool want = solve_brute(f, k).status == SolveStatus::kSat;
    const auto res = kernelize(f, k);
    const auto& rep = res.report;
    const std::string tag = "instance " + std::to_string(i);
    o.require(decide(res.formula, res.k) == want, tag + " decision");
    o.require(rep.d == 3, tag + " d");
    o.require(res.formula.num_vars <= kernel_bound(rep.nonzero_valid_relations, k, 3), tag + " bound");
    for (std::size_t j = 1; j < rep.measure.size(); ++j) {
      o.require(rep.measure[j] < rep.measure[j - 1], tag + " measure decrease");
    }
    yes += want ? 1 : 0;
    reduced += rep.iterations > 0 ? 1 : 0;
    trivial += rep.trivial_no ? 1 : 0;
    max_vars = std::max<long long>(max_vars, res.formula.num_vars);
  }
  o.detail << yes << " yes, " << reduced << " with sunflower steps, " << trivial << " trivial no, max kernel vars "
           << max_vars << "; ";
}

// k hubs with 4k OR2 leaves each (|FOO(OR2)| = 4k^2, no sunflower step fires),
// and an IMPL chain of k - 1 fresh variables hanging off every hub and leaf.
Formula scaling_instance(const std::shared_ptr<const ConstraintLanguage>& lang, int k) {
  Formula f{lang, 0, {}};
  std::vector<Var> x;
  for (int h = 0; h < k; ++h) {
    const Var hub = ++f.num_vars;
    x.push_back(hub);
    for (int l = 0; l < 4 * k; ++l) {
      const Var leaf = ++f.num_vars;
      x.push_back(leaf);
      f.constraints.push_back({"OR2", {hub, leaf}});
    }
  }
  for (Var v : x) {
    Var prev = v;
    for (int j = 0; j < k - 1; ++j) {
      const Var next = ++f.num_vars;
      f.constraints.push_back({"IMPL", {prev, next}});
      prev = next;
    }
  }
  return f;
}

void ac6(Outcome& o) {
  const auto lang = fixtures::language({fixtures::or2(), fixtures::impl()});
  std::vector<double> lx, ly;
  double c = 0;
  for (int k = 1; k <= 6; ++k) {
    const auto res = kernelize(scaling_instance(lang, k), k);
    o.require(!res.report.trivial_no, "non-trivial kernel at k=" + std::to_string(k));
    const double vars = res.formula.num_vars;
    lx.push_back(std::log(k));
    ly.push_back(std::log(vars));
    c = std::max(c, vars / std::pow(k, 3));
    o.detail << "k=" << k << ":" << res.formula.num_vars << " ";
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  o.require(slope <= 3.2, "fitted exponent");
  char buf[96];
  std::snprintf(buf, sizeof buf, "; fitted exponent %.3f, c = %.2f; ", slope, c);
  o.detail << buf;
}

// Independent exhaustive check of a standalone selection formula.
bool check_selection_exhaustively(const StandaloneSelection& s, Outcome& o, const std::string& tag) {
  const auto& f = s.formula;
  if (f.num_vars > 26) return false;
  const auto& sel = s.selection;
  const int n = static_cast<int>(sel.y.size());
  std::vector<int> best_unit(static_cast<std::size_t>(n), -1);
  int min_x = -1;
  bool zero_y = false;
  std::vector<oracle::TupleSet> rels;
  for (const auto& c : f.constraints) rels.push_back(oracle::tuples_of(f.language->at(c.relation)));
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars); ++a) {
    auto bit = [&](Var v) { return v == 0 ? 0 : static_cast<int>((a >> (v - 1)) & 1U); };
    if (s.one_var && !bit(s.one_var)) continue;
    if (s.zero_var && bit(s.zero_var)) continue;
    bool ok = true;
    for (std::size_t i = 0; i < f.constraints.size() && ok; ++i) {
      oracle::Tuple t;
      for (Var v : f.constraints[i].args) t.push_back(bit(v));
      ok = rels[i].contains(t);
    }
    if (!ok) continue;
    int wy = 0, wx = 0, which = -1;
    for (int i = 0; i < n; ++i) {
      if (bit(sel.y[static_cast<std::size_t>(i)])) {
        ++wy;
        which = i;
      }
    }
    for (Var v : sel.x) wx += bit(v);
    if (wy == 0) zero_y = true;
    if (min_x < 0 || wx < min_x) min_x = wx;
    if (wy == 1) {
      auto& b = best_unit[static_cast<std::size_t>(which)];
      if (b < 0 || wx < b) b = wx;
    }
  }
  o.require(!zero_y, tag + " Y=0 unsatisfiable");
  for (int b : best_unit) o.require(b == sel.w, tag + " unit-Y weight");
  o.require(min_x == sel.w, tag + " minimum local weight");
  return true;
}

void ac7(Outcome& o) {
  const auto lang = fixtures::language({fixtures::or2(), fixtures::even3()});
  const auto t = derive_selection_relation(lang);
  o.require(t.kind == TemplateKind::kR3, "construction 1 from {OR2, EVEN3}");
  const auto g = force_constants(lang, 8);
  for (int n : {2, 4, 8}) {
    const auto s = build_selection_formula(t, g, n);
    const int h = static_cast<int>(std::lround(std::log2(n)));
    o.require(s.selection.w == h, "w = log2 n at n=" + std::to_string(n));
    const bool exhaustive = check_selection_exhaustively(s, o, "R3 n=" + std::to_string(n));
    o.detail << "R3 n=" << n << " w=" << s.selection.w << (exhaustive ? " (enumerated)" : " (validated)") << "; ";
  }
  const auto lang5 = fixtures::language({fixtures::or2(), fixtures::sel3()});
  const auto t5 = derive_selection_relation(lang5);
  o.require(t5.kind == TemplateKind::kR5, "construction 2 from {OR2, SEL3}");
  const auto g5 = force_constants(lang5, 12);
  for (int n : {2, 4, 8}) {
    const auto s = build_selection_formula(t5, g5, n);
    const int h = static_cast<int>(std::lround(std::log2(n)));
    o.require(s.selection.w == 2 * h, "w = 2 log2 n at n=" + std::to_string(n));
    const bool exhaustive = check_selection_exhaustively(s, o, "R5 n=" + std::to_string(n));
    o.detail << "R5 n=" << n << " w=" << s.selection.w << (exhaustive ? " (enumerated)" : " (validated)") << "; ";
  }
}

void ac8(Outcome& o) {
  std::mt19937 rng(8);
  const auto lang = fixtures::language({fixtures::or2(), fixtures::even3()});
  int yes = 0, done = 0, skipped = 0;
  while (done < 200) {
    Hypergraph h{1 + static_cast<int>(rng() % 6), {}};
    const int m = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < m; ++j) {
      std::vector<int> e;
      for (int v = 1; v <= h.num_vertices; ++v) {
        if (rng() % 2) e.push_back(v);
      }
      if (e.empty()) e.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(h.num_vertices)));
      h.edges.push_back(e);
    }
    if (h.num_vertices > (1 << m)) {
      ++skipped;
      continue;
    }
    const auto red = reduce_exact_hitting_set(h, lang);
    o.require(red.k == red.m + red.sum_w + red.overhead, "k composition");
    const bool want = oracle::has_exact_hitting_set(h);
    o.require((solve_propagate(red.formula, red.k).status == SolveStatus::kSat) == want,
              "decision on hypergraph " + std::to_string(done));
    yes += want ? 1 : 0;
    ++done;
  }
  o.detail << done << " hypergraphs, " << yes << " yes, " << skipped << " out of scope (n > 2^m) redrawn; ";
}

void ac9(Outcome& o) {
  std::mt19937 rng(9);
  const std::vector<std::shared_ptr<const ConstraintLanguage>> langs{
      fixtures::language({fixtures::or2(), fixtures::even3()}),
      fixtures::language({fixtures::or2(), fixtures::odd3(), fixtures::impl()}),
      fixtures::language({fixtures::rex(), fixtures::sel3(), fixtures::nand2()}),
      fixtures::language({fixtures::eq_impl(), fixtures::impl3()}),
  };
  int sat = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& lang = langs[static_cast<std::size_t>(i) % langs.size()];
    const int n = 2 + static_cast<int>(rng() % 15);
    const int k = static_cast<int>(rng() % 5);
    const auto f = random_instance(rng, lang, n, 1 + static_cast<int>(rng() % 24), k, i % 2 == 0);
    const auto a = solve_brute(f, k);
    const auto b = solve_branch(f, k);
    const std::string tag = "instance " + std::to_string(i);
    o.require(a.status == b.status, tag + " status");
    o.require(a.optimum == b.optimum, tag + " optimum");
    if (b.witness) o.require(evaluate(f, *b.witness) && b.witness->weight() <= k, tag + " witness");
    sat += a.status == SolveStatus::kSat ? 1 : 0;
  }
  o.detail << sat << "/1000 satisfiable; ";
}

void ac10(Outcome& o) {
  int relations = 0, arity3 = 0, implemented = 0;
  for (int n = 1; n <= 3; ++n) {
    for (std::uint32_t set = 1; set < (1U << (1U << n)); ++set) {
      const auto r = oracle::relation_from_masks_set("R", n, set);
      const auto t = oracle::tuples_of(r);
      const auto rec = property_record(r);
      const std::string tag = "arity " + std::to_string(n) + " set " + std::to_string(set);
      o.require(rec.zero_valid == oracle::zero_valid(t, n) && check_property(r, Property::kZeroValid) == rec.zero_valid,
                tag + " zero-valid");
      o.require(rec.one_valid == oracle::one_valid(t, n) && check_property(r, Property::kOneValid) == rec.one_valid,
                tag + " one-valid");
      o.require(rec.horn == oracle::horn(t) && check_property(r, Property::kHorn) == rec.horn, tag + " Horn");
      o.require(rec.dual_horn == oracle::dual_horn(t) && check_property(r, Property::kDualHorn) == rec.dual_horn,
                tag + " dual Horn");
      o.require(rec.ihsb_minus == oracle::ihsb_minus(t) && check_property(r, Property::kIhsbMinus) == rec.ihsb_minus,
                tag + " IHSB-");
      o.require(rec.width2_affine == oracle::width2_affine(t) &&
                    check_property(r, Property::kWidth2Affine) == rec.width2_affine,
                tag + " width-2 affine");
      o.require(rec.mergeable == oracle::mergeable(t), tag + " mergeable");
      if (rec.zero_valid && rec.mergeable) {
        try {
          const auto impl = implement_zero_valid_ihsb(r);
          const auto models = impl.models();
          o.require(std::equal(models.begin(), models.end(), r.masks().begin(), r.masks().end()), tag + " clause models");
          ++implemented;
        } catch (const Error& e) {
          o.require(false, tag + " clause implementation: " + e.what());
        }
      }
      ++relations;
      arity3 += n == 3 ? 1 : 0;
    }
  }
  o.require(arity3 == 255, "255 relations of arity 3");
  o.detail << relations << " relations (" << arity3 << " of arity 3), " << implemented << " zero-valid mergeable implemented; ";
}

}  // namespace

int main() {
  criterion(1, "worked example REX", 1, ac1);
  criterion(2, "mergeability vector", 1, ac2);
  criterion(3, "classifier truth table", 1, ac3);
  criterion(4, "sunflower lemma", 10, ac4);
  criterion(5, "kernelization soundness", 120, ac5);
  criterion(6, "kernel scaling", 120, ac6);
  criterion(7, "selection formulas", 30, ac7);
  criterion(8, "exact hitting set reduction", 300, ac8);
  criterion(9, "branch vs brute force", 120, ac9);
  criterion(10, "small-arity closure audit", 60, ac10);
  return failures == 0 ? 0 : 1;
}
