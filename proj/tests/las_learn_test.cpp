#include <catch2/catch_amalgamated.hpp>
#include <set>
#include <string>

#include "nsil/asp/parser.hpp"
#include "nsil/las/coverage.hpp"
#include "nsil/las/learn.hpp"
#include "nsil/util/rng.hpp"

using namespace nsil;
using namespace nsil::las;

namespace {

const char* kHsB = "s(1..4). h(1..2). e(1..5).";

const char* kHsRef =
    "0 {hs(SLOT,E)} 1 :- h(SLOT), e(E).\n"
    "hit(S) :- hs(SLOT,E), ss_element(S,E).\n"
    ":- ss_element(S,E), not hit(S).\n"
    ":- hs(SLOT,E1), hs(SLOT,E2), E1 != E2.\n";

const char* kArithB =
    "r(0..18). d(0..9).\n"
    "even(X) :- d(X), X \\ 2 = 0.\n"
    "plus_nine(X1,X2) :- d(X1), X2 = 9 + X1.\n"
    "result(Y) :- digit(1,X1), digit(2,X2), res(X1,X2,Y).\n"
    ":- result(X), result(Y), X < Y.\n";

const char* kArithBias =
    "#modeh(res(var(d),var(d),var(r))).\n"
    "#modeb(var(r) = var(d)).\n"
    "#modeb(var(r) = var(d) + var(d)).\n"
    "#modeb(plus_nine(var(d),var(r))).\n"
    "#modeb(even(var(d))).\n"
    "#modeb(not even(var(d))).\n"
    "#maxv(3).\n#max_body(3).\n#max_rules(3).\n";

WeightedExample hs_example(asp::Pool& pool, const std::vector<std::vector<int>>& sets,
                           bool neg, long long weight) {
  WeightedExample e;
  e.id = "e";
  e.neg = neg;
  e.weight = weight;
  std::string ctx;
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (int v : sets[s])
      ctx += "ss_element(" + std::to_string(s + 1) + "," + std::to_string(v) + ").\n";
  e.ctx = asp::parse_rules(pool, ctx);
  return e;
}

// build a positive corrective example in the arithmetic encoding
WeightedExample arith_pos(asp::Pool& pool, int z1, int z2, int y, long long w) {
  WeightedExample e;
  e.id = "p" + std::to_string(z1) + "_" + std::to_string(z2);
  e.weight = w;
  e.incl.push_back(pool.atom("result", {pool.int_term(y)}));
  std::string ctx = ":- result(X), X != " + std::to_string(y) + ".\n";
  ctx += "digit(1," + std::to_string(z1) + "). digit(2," + std::to_string(z2) + ").\n";
  e.ctx = asp::parse_rules(pool, ctx);
  return e;
}

WeightedExample arith_negenc(asp::Pool& pool, int z1, int z2, int y, long long w) {
  WeightedExample e;
  e.id = "n" + std::to_string(z1) + "_" + std::to_string(z2);
  e.weight = w;
  e.incl.push_back(pool.atom("result", {}));
  std::string ctx = "result :- result(X), X != " + std::to_string(y) + ".\n";
  ctx += ":- result(X), result(Y), Y < X.\n";
  ctx += "digit(1," + std::to_string(z1) + "). digit(2," + std::to_string(z2) + ").\n";
  e.ctx = asp::parse_rules(pool, ctx);
  return e;
}

}  // namespace

TEST_CASE("covers: consistent program satisfies an unconstrained positive example") {
  asp::Pool pool;
  asp::Program b = asp::parse_rules(pool, "p(1).");
  WeightedExample e;
  e.id = "t";
  CHECK(covers(pool, b, {}, e));
}

TEST_CASE("covers: hitting set examples from the task description") {
  asp::Pool pool;
  asp::Program b = asp::parse_rules(pool, kHsB);
  asp::Program h = asp::parse_rules(pool, kHsRef);
  // {{1},{2,3},{4}} has no hitting set of size <= 2
  WeightedExample neg = hs_example(pool, {{1}, {2, 3}, {4}}, true, 1);
  CHECK(covers(pool, b, h, neg));
  // {{1},{1,3},{4}} has one: {1,4}
  WeightedExample pos = hs_example(pool, {{1}, {1, 3}, {4}}, false, 1);
  CHECK(covers(pool, b, h, pos));
  WeightedExample neg2 = hs_example(pool, {{1}, {1, 3}, {4}}, true, 1);
  CHECK_FALSE(covers(pool, b, h, neg2));
}

TEST_CASE("score: length plus uncovered weights") {
  asp::Pool pool;
  asp::Program b;
  std::vector<CandidateRule> space;
  {  // one candidate of length 3 deriving q
    CandidateRule c;
    c.rule = asp::parse_rules(pool, "q :- t1, t2.").rules[0];
    c.length = 3;
    c.text = "q :- t1, t2.";
    space.push_back(c);
  }
  WeightedExample cov;  // covered when q derivable
  cov.id = "c";
  cov.weight = 10;
  cov.incl.push_back(pool.atom("q", {}));
  cov.ctx = asp::parse_rules(pool, "t1. t2.");

  WeightedExample unc;  // never derivable
  unc.id = "u";
  unc.weight = 10;
  unc.incl.push_back(pool.atom("zz", {}));

  // |H| = 3, one weight-10 example uncovered -> 13
  auto r = score(pool, space, {0}, b, {cov, unc});
  CHECK(r.score == 13);
  CHECK(r.admissible);

  // empty H, two positives (5 and 7) uncovered -> 12
  WeightedExample u5 = unc, u7 = unc;
  u5.weight = 5;
  u7.weight = 7;
  auto r2 = score(pool, space, {}, b, {u5, u7});
  CHECK(r2.score == 12);

  // covering hypothesis pays only its length
  auto r3 = score(pool, space, {0}, b, {cov});
  CHECK(r3.score == 3);

  // hard uncovered marks inadmissible
  WeightedExample hardu = unc;
  hardu.hard = true;
  auto r4 = score(pool, space, {0}, b, {hardu});
  CHECK_FALSE(r4.admissible);
}

TEST_CASE("learn finds the addition rule from converged corrective examples") {
  asp::Pool pool;
  asp::Program b = asp::parse_rules(pool, kArithB);
  ModeBias bias = parse_bias(pool, kArithBias);
  auto space = build_space(pool, bias);

  std::vector<WeightedExample> examples;
  for (int z1 = 0; z1 < 10; ++z1)
    for (int z2 = 0; z2 < 10; ++z2) {
      examples.push_back(arith_pos(pool, z1, z2, z1 + z2, 100));
      examples.push_back(arith_negenc(pool, z1, z2, z1 + z2, 100));
    }
  LearnOptions opts;
  opts.max_rules = 3;
  LearnResult r = learn(pool, space, b, examples, opts);
  CHECK(r.engine == "value");
  REQUIRE(r.chosen.size() == 1);
  CHECK(space[static_cast<std::size_t>(r.chosen[0])].text ==
        "res(V0,V1,V2) :- V2 = V0 + V1.");
  CHECK(r.proved_optimal);
}

TEST_CASE("learn finds the two-rule e9p program") {
  asp::Pool pool;
  asp::Program b = asp::parse_rules(pool, kArithB);
  ModeBias bias = parse_bias(pool, kArithBias);
  auto space = build_space(pool, bias);

  auto e9p = [](int z1, int z2) { return z1 % 2 == 0 ? z2 : 9 + z2; };
  std::vector<WeightedExample> examples;
  for (int z1 = 0; z1 < 10; ++z1)
    for (int z2 = 0; z2 < 10; ++z2) {
      examples.push_back(arith_pos(pool, z1, z2, e9p(z1, z2), 100));
      examples.push_back(arith_negenc(pool, z1, z2, e9p(z1, z2), 100));
    }
  LearnOptions opts;
  opts.max_rules = 3;
  LearnResult r = learn(pool, space, b, examples, opts);
  REQUIRE(r.chosen.size() == 2);
  std::set<std::string> texts;
  for (int c : r.chosen) texts.insert(space[static_cast<std::size_t>(c)].text);
  CHECK(texts.count("res(V0,V1,V2) :- V1 = V2, even(V0)."));
  CHECK(texts.count("res(V0,V1,V2) :- not even(V0), plus_nine(V1,V2)."));
}

TEST_CASE("optimality oracle: exhaustive enumeration on small spaces") {
  util::Rng rng(424242);
  for (int trial = 0; trial < 25; ++trial) {
    asp::Pool pool;
    asp::Program b;
    int natoms = rng.range(3, 5);
    std::vector<AtomId> atoms;
    for (int i = 0; i < natoms; ++i)
      atoms.push_back(pool.atom("a" + std::to_string(i), {}));
    // random ground-rule candidates
    int ncand = rng.range(4, 9);
    std::vector<CandidateRule> space;
    for (int c = 0; c < ncand; ++c) {
      asp::Rule rule;
      int kind = rng.range(0, 9);
      if (kind < 2) {
        rule.kind = asp::Rule::Kind::Constraint;
      } else if (kind < 4) {
        rule.kind = asp::Rule::Kind::Choice;
        rule.head = atoms[static_cast<std::size_t>(rng.range(0, natoms - 1))];
      } else {
        rule.kind = asp::Rule::Kind::Normal;
        rule.head = atoms[static_cast<std::size_t>(rng.range(0, natoms - 1))];
      }
      int blen = rng.range(rule.kind == asp::Rule::Kind::Constraint ? 1 : 0, 2);
      for (int i = 0; i < blen; ++i) {
        AtomId a = atoms[static_cast<std::size_t>(rng.range(0, natoms - 1))];
        rule.body.push_back(rng.chance(0.4) ? asp::Literal::naf(a)
                                            : asp::Literal::pos(a));
      }
      CandidateRule cand;
      cand.rule = rule;
      cand.length = (rule.head >= 0 ? 1 : 0) + static_cast<int>(rule.body.size());
      if (cand.length == 0) continue;
      cand.text = asp::rule_to_string(pool, rule);
      space.push_back(std::move(cand));
    }
    std::sort(space.begin(), space.end(), [](auto& a, auto& bb) {
      return a.length != bb.length ? a.length < bb.length : a.text < bb.text;
    });
    space.erase(std::unique(space.begin(), space.end(),
                            [](auto& a, auto& bb) { return a.text == bb.text; }),
                space.end());

    // random examples
    std::vector<WeightedExample> examples;
    int nex = rng.range(1, 5);
    for (int e = 0; e < nex; ++e) {
      WeightedExample ex;
      ex.id = "e" + std::to_string(e);
      ex.neg = rng.chance(0.3);
      ex.weight = rng.range(1, 20);
      if (rng.chance(0.8))
        ex.incl.push_back(atoms[static_cast<std::size_t>(rng.range(0, natoms - 1))]);
      if (rng.chance(0.3))
        ex.excl.push_back(atoms[static_cast<std::size_t>(rng.range(0, natoms - 1))]);
      examples.push_back(std::move(ex));
    }

    LearnOptions opts;
    opts.max_rules = 3;
    // exhaustive reference minimum
    long long best = -1;
    int n = static_cast<int>(space.size());
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) > opts.max_rules) continue;
      std::vector<int> chosen;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) chosen.push_back(i);
      auto sr = score(pool, space, chosen, b, examples);
      if (!sr.admissible) continue;
      if (best < 0 || sr.score < best) best = sr.score;
    }
    INFO("trial " << trial);
    if (best < 0) {
      CHECK_THROWS_AS(learn(pool, space, b, examples, opts), NoAdmissibleHypothesis);
    } else {
      LearnResult r = learn(pool, space, b, examples, opts);
      CHECK(r.engine == "solver");
      REQUIRE(r.score == best);
      // the returned hypothesis really has that score
      auto sr = score(pool, space, r.chosen, b, examples);
      CHECK(sr.score == r.score);
      CHECK(sr.admissible);
    }
  }
}

TEST_CASE("tie-break determinism under permuted examples") {
  asp::Pool pool;
  asp::Program b = asp::parse_rules(pool, kArithB);
  ModeBias bias = parse_bias(pool, kArithBias);
  auto space = build_space(pool, bias);
  std::vector<WeightedExample> examples;
  for (int z = 0; z < 10; ++z) {
    examples.push_back(arith_pos(pool, z, 3, z + 3, 50));
    examples.push_back(arith_negenc(pool, z, 3, z + 3, 50));
  }
  LearnOptions opts;
  opts.max_rules = 2;
  LearnResult r1 = learn(pool, space, b, examples, opts);
  std::reverse(examples.begin(), examples.end());
  LearnResult r2 = learn(pool, space, b, examples, opts);
  CHECK(r1.chosen == r2.chosen);
  CHECK(r1.score == r2.score);
}

TEST_CASE("value and solver engines agree on arithmetic examples") {
  asp::Pool pool;
  asp::Program b = asp::parse_rules(pool, kArithB);
  ModeBias bias = parse_bias(pool, kArithBias);
  auto full_space = build_space(pool, bias);
  // a slice keeps the solver-engine construction cheap
  std::vector<CandidateRule> space(full_space.begin(), full_space.begin() + 40);

  std::vector<WeightedExample> examples;
  util::Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    int z1 = rng.range(0, 9), z2 = rng.range(0, 9);
    int y = rng.chance(0.7) ? z1 + z2 : rng.range(0, 18);
    if (rng.chance(0.5))
      examples.push_back(arith_pos(pool, z1, z2, y, rng.range(1, 100)));
    else
      examples.push_back(arith_negenc(pool, z1, z2, y, rng.range(1, 100)));
  }
  SolveParams params;
  auto e1 = try_build_value_engine(pool, space, b, examples, params);
  REQUIRE(e1);
  auto e3 = build_solver_engine(pool, space, b, examples, params);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> h;
    for (int k = rng.range(0, 3); k > 0; --k) h.push_back(rng.range(0, 39));
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    for (int c : h) {
      e1->push(c);
      e3->push(c);
    }
    INFO("trial " << trial);
    CHECK(e1->uncovered_weight() == e3->uncovered_weight());
    CHECK(e1->hard_all_covered() == e3->hard_all_covered());
    for (auto it = h.rbegin(); it != h.rend(); ++it) {
      e1->pop(*it);
      e3->pop(*it);
    }
  }
}

TEST_CASE("choice and solver engines agree on hitting set examples") {
  asp::Pool pool;
  asp::Program b = asp::parse_rules(pool, kHsB);
  const char* hs_bias =
      "#modeha(hs(var(h), var(e))).\n"
      "#modeh(hit(var(s))).\n"
      "#modeb(hs(var(h), var(e)),(positive)).\n"
      "#modeb(var(e) != var(e)).\n"
      "#modeb(ss_element(var(s),var(e)),(positive)).\n"
      "#modeb(ss_element(3,var(e)),(positive)).\n"
      "#modeb(ss_element(var(s),1),(positive)).\n"
      "#modeb(hit(var(s))).\n"
      "#maxv(3).\n#max_body(3).\n#allow_constraints.\n#naf_in_constraints_only.\n";
  ModeBias bias = parse_bias(pool, hs_bias);
  auto full_space = build_space(pool, bias);
  std::vector<CandidateRule> space(full_space.begin(), full_space.begin() + 45);
  // make sure the choice rule participates
  for (const CandidateRule& c : full_space)
    if (c.rule.kind == asp::Rule::Kind::Choice) {
      space.push_back(c);
      break;
    }

  util::Rng rng(11);
  std::vector<WeightedExample> examples;
  for (int i = 0; i < 20; ++i) {
    int nsets = rng.range(1, 3);
    std::vector<std::vector<int>> sets;
    for (int s = 0; s < nsets; ++s) {
      std::set<int> vals;
      int sz = rng.range(1, 2);
      while (static_cast<int>(vals.size()) < sz) vals.insert(rng.range(1, 5));
      sets.emplace_back(vals.begin(), vals.end());
    }
    examples.push_back(hs_example(pool, sets, rng.chance(0.5), rng.range(1, 100)));
  }
  SolveParams params;
  auto e2 = try_build_choice_engine(pool, space, b, examples, params);
  REQUIRE(e2);
  auto e3 = build_solver_engine(pool, space, b, examples, params);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<int> h;
    for (int k = rng.range(0, 4); k > 0; --k)
      h.push_back(rng.range(0, static_cast<int>(space.size()) - 1));
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    for (int c : h) {
      e2->push(c);
      e3->push(c);
    }
    INFO("trial " << trial);
    CHECK(e2->uncovered_weight() == e3->uncovered_weight());
    for (auto it = h.rbegin(); it != h.rend(); ++it) {
      e2->pop(*it);
      e3->pop(*it);
    }
  }
}
