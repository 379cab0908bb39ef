#include <catch2/catch_amalgamated.hpp>

#include "nsil/asp/ast.hpp"
#include "nsil/asp/parser.hpp"

using namespace nsil;
using namespace nsil::asp;

TEST_CASE("naf body literal") {
  Pool pool;
  ParseResult r = parse_program(pool, "a :- not b.");
  REQUIRE(r.program.rules.size() == 1);
  const Rule& rule = r.program.rules[0];
  CHECK(rule.kind == Rule::Kind::Normal);
  CHECK(atom_to_string(pool, rule.head) == "a");
  REQUIRE(rule.body.size() == 1);
  CHECK(rule.body[0].kind == Literal::Kind::NafAtom);
  CHECK(atom_to_string(pool, rule.body[0].atom) == "b");
}

TEST_CASE("choice rule bounds 0..1") {
  Pool pool;
  ParseResult r = parse_program(pool, "0 {hs(V1,V2) } 1.");
  REQUIRE(r.program.rules.size() == 1);
  const Rule& rule = r.program.rules[0];
  CHECK(rule.kind == Rule::Kind::Choice);
  CHECK(atom_to_string(pool, rule.head) == "hs(V1,V2)");
  CHECK(rule.body.empty());
}

TEST_CASE("constraint with builtin") {
  Pool pool;
  ParseResult r = parse_program(pool, ":- result(X), result(Y), X < Y.");
  REQUIRE(r.program.rules.size() == 1);
  const Rule& rule = r.program.rules[0];
  CHECK(rule.kind == Rule::Kind::Constraint);
  CHECK(rule.head == -1);
  REQUIRE(rule.body.size() == 3);
  CHECK(rule.body[2].kind == Literal::Kind::Builtin);
  CHECK(rule.body[2].cmp == Cmp::Lt);
}

TEST_CASE("range facts expand") {
  Pool pool;
  ParseResult r = parse_program(pool, "d(1..3).");
  REQUIRE(r.program.rules.size() == 3);
  CHECK(atom_to_string(pool, r.program.rules[0].head) == "d(1)");
  CHECK(atom_to_string(pool, r.program.rules[2].head) == "d(3)");
}

TEST_CASE("pair terms and mod builtin") {
  Pool pool;
  ParseResult r = parse_program(pool,
                                "start_list((4, (3, (1, empty)))).\n"
                                "even(X) :- d(X), X \\ 2 = 0.");
  REQUIRE(r.program.rules.size() == 2);
  CHECK(atom_to_string(pool, r.program.rules[0].head) ==
        "start_list((4, (3, (1, empty))))");
  const Rule& even = r.program.rules[1];
  REQUIRE(even.body.size() == 2);
  CHECK(even.body[1].kind == Literal::Kind::Builtin);
  CHECK(literal_to_string(pool, even.body[1]) == "X \\ 2 = 0");
}

TEST_CASE("syntax error carries position") {
  Pool pool;
  try {
    parse_program(pool, "a :- b\nc.");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("unsupported aggregate rejected by name") {
  Pool pool;
  CHECK_THROWS_AS(parse_program(pool, "2 {p} 3."), UnsupportedConstruct);
  CHECK_THROWS_AS(parse_program(pool, "a ; b."), UnsupportedConstruct);
  CHECK_THROWS_AS(parse_program(pool, "p(X) :- q(X), X <= 3."), UnsupportedConstruct);
}

TEST_CASE("unparse-parse round trip") {
  Pool pool;
  const char* text =
      "list(T) :- list((_, T)).\n"
      "head(L, H) :- list(L), L = (H, _).\n"
      "add(L, (X+Y, T)) :- list(L), L = (X, (Y, T)).\n"
      "result(R) :- start_list(L), f(L, R).\n"
      ":- result(X), result(Y), X < Y.\n"
      "0 {hs(V1,V2)} 1.\n"
      "plus_nine(X1,X2) :- d(X1), X2 = 9 + X1.\n";
  ParseResult first = parse_program(pool, text);
  std::string printed = program_to_string(pool, first.program);
  ParseResult second = parse_program(pool, printed);
  // anonymous variables are renamed apart, so compare printed forms
  std::string reprinted = program_to_string(pool, second.program);
  CHECK(printed == reprinted);
}

TEST_CASE("mode directives") {
  Pool pool;
  ParseResult r = parse_program(pool,
                                "#modeh(res(var(d),var(d),var(r))).\n"
                                "#modeb(var(r) = var(d) + var(d)).\n"
                                "#modeb(not even(var(d))).\n"
                                "#modeb(ss_element(var(s),var(e)),(positive)).\n"
                                "#maxv(3).\n");
  REQUIRE(r.modes.size() == 4);
  CHECK(r.modes[0].kind == ModeKind::Head);
  CHECK(r.modes[1].is_builtin);
  CHECK(r.modes[2].naf);
  CHECK(r.modes[3].positive_only);
  CHECK(r.settings.maxv == 3);
}

TEST_CASE("metarule templates and modem declarations") {
  Pool pool;
  ParseResult r = parse_program(pool,
                                "P(A, B) :- Q(A, C), P(C, B), m2(P, Q).\n"
                                "#modem(2, m2(target/2, any/2)).\n"
                                "#predicate(base, add/2).\n"
                                "#predicate(target, f/2).\n");
  REQUIRE(r.templates.size() == 1);
  CHECK(pool.atom_node(r.templates[0].head).pred_is_var);
  REQUIRE(r.modems.size() == 1);
  CHECK(r.modems[0].name == "m2");
  CHECK(r.modems[0].slots.size() == 2);
  CHECK(r.modems[0].slots[0].target);
  REQUIRE(r.predicates.size() == 2);
  CHECK(r.predicates[1].target);
}

TEST_CASE("weighted and hard examples") {
  Pool pool;
  ParseResult r = parse_program(pool,
                                "#pos(p1@42, { result(8) }, { }, {\n"
                                "  :- result(X), X != 8.\n"
                                "  start_list((4, (3, (1, empty)))).\n"
                                "}).\n"
                                "#neg(n1@7, { }, { }, { ss_element(1,1). }).\n"
                                "#pos(h1, { result(3) }, { }, { }).\n");
  REQUIRE(r.examples.size() == 3);
  const ParsedExample& p = r.examples[0];
  CHECK_FALSE(p.neg);
  CHECK(p.weight == 42);
  CHECK_FALSE(p.hard);
  REQUIRE(p.incl.size() == 1);
  CHECK(atom_to_string(pool, p.incl[0]) == "result(8)");
  CHECK(p.ctx.rules.size() == 2);
  CHECK(r.examples[1].neg);
  CHECK(r.examples[2].hard);
}
