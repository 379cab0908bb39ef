#include <catch2/catch_amalgamated.hpp>
#include <set>
#include <string>

#include "nsil/asp/ground.hpp"
#include "nsil/asp/parser.hpp"
#include "nsil/asp/solver.hpp"

using namespace nsil;
using namespace nsil::asp;

namespace {

std::set<std::string> atom_texts(const GroundProgram& gp) {
  return {gp.atom_text.begin(), gp.atom_text.end()};
}

std::set<std::set<std::string>> model_texts(const GroundProgram& gp, long long cap) {
  std::set<std::set<std::string>> out;
  for (const auto& m : answer_sets(gp, cap)) {
    std::set<std::string> s;
    for (int idx : m) s.insert(gp.atom_text[static_cast<std::size_t>(idx)]);
    out.insert(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("domain expansion") {
  Pool pool;
  ParseResult r = parse_program(pool, "d(1..2). q(X) :- d(X).");
  GroundProgram gp = ground(pool, r.program, 8);
  auto atoms = atom_texts(gp);
  CHECK(atoms.count("d(1)"));
  CHECK(atoms.count("d(2)"));
  CHECK(atoms.count("q(1)"));
  CHECK(atoms.count("q(2)"));
  auto models = model_texts(gp, 10);
  REQUIRE(models.size() == 1);
  CHECK(models.begin()->size() == 4);
}

TEST_CASE("context-style join produces one ground rule per match") {
  Pool pool;
  ParseResult r = parse_program(pool,
                                "dig(1,2). dig(2,1).\n"
                                "res(X1,X2) :- dig(1,X1), dig(2,X2).");
  GroundProgram gp = ground(pool, r.program, 8);
  auto atoms = atom_texts(gp);
  CHECK(atoms.count("res(2,1)"));
  CHECK_FALSE(atoms.count("res(1,2)"));
}

TEST_CASE("arithmetic evaluated away") {
  Pool pool;
  ParseResult r = parse_program(pool,
                                "d(0..4).\n"
                                "plus_nine(X1,X2) :- d(X1), X2 = 9 + X1.\n"
                                "even(X) :- d(X), X \\ 2 = 0.\n"
                                "half(X,Y) :- d(X), Y = X / 2.");
  GroundProgram gp = ground(pool, r.program, 8);
  auto atoms = atom_texts(gp);
  CHECK(atoms.count("plus_nine(3,12)"));
  CHECK(atoms.count("even(0)"));
  CHECK(atoms.count("even(2)"));
  CHECK_FALSE(atoms.count("even(1)"));
  CHECK(atoms.count("half(3,1)"));  // integer division truncates toward zero
}

TEST_CASE("division by zero makes the builtin false") {
  Pool pool;
  ParseResult r = parse_program(pool,
                                "d(0..2).\n"
                                "q(X,Y) :- d(X), Y = 4 / X.");
  GroundProgram gp = ground(pool, r.program, 8);
  auto atoms = atom_texts(gp);
  CHECK(atoms.count("q(1,4)"));
  CHECK(atoms.count("q(2,2)"));
  CHECK_FALSE(atoms.count("q(0,4)"));
}

TEST_CASE("list program grounds finitely under a sufficient depth bound") {
  Pool pool;
  const char* text =
      "start_list((3, (2, (1, empty)))).\n"
      "list(L) :- start_list(L).\n"
      "list(T) :- list((_, T)).\n"
      "add(L, (X+Y, T)) :- list(L), L = (X, (Y, T)).\n"
      "list(L) :- add(_, L).\n"
      "eq(L, ELT) :- list(L), L = (ELT, empty).\n"
      "f(A,B) :- eq(A,B).\n"
      "f(A,B) :- add(A,C), f(C,B).\n"
      "result(R) :- start_list(L), f(L, R).\n"
      ":- result(X), result(Y), X < Y.\n";
  ParseResult r = parse_program(pool, text);
  GroundProgram gp = ground(pool, r.program, 5);
  auto models = model_texts(gp, 10);
  REQUIRE(models.size() == 1);
  CHECK(models.begin()->count("result(6)"));

  // The same program under a bound too small for the nested list term.
  Pool pool2;
  ParseResult r2 = parse_program(pool2, text);
  CHECK_THROWS_AS(ground(pool2, r2.program, 2), DepthExceeded);
}

TEST_CASE("reachable list terms match an independent fixpoint count") {
  // Oracle: fold terms of (3,(2,(1,empty))) under a single add chain. The
  // chain suffixes are (3,(2,(1,empty))) -> (5,(1,empty)) -> (6,empty), and
  // every suffix of each is a list.
  Pool pool;
  const char* text =
      "start_list((3, (2, (1, empty)))).\n"
      "list(L) :- start_list(L).\n"
      "list(T) :- list((_, T)).\n"
      "add(L, (X+Y, T)) :- list(L), L = (X, (Y, T)).\n"
      "list(L) :- add(_, L).\n";
  ParseResult r = parse_program(pool, text);
  GroundProgram gp = ground(pool, r.program, 6);
  // independent fixpoint over (tail, fold-head-pair) closure of [3,2,1]
  std::set<std::vector<int>> lists;
  std::vector<std::vector<int>> work = {{3, 2, 1}};
  while (!work.empty()) {
    std::vector<int> s = work.back();
    work.pop_back();
    if (!lists.insert(s).second) continue;
    if (!s.empty()) work.emplace_back(s.begin() + 1, s.end());
    if (s.size() >= 2) {
      std::vector<int> folded;
      folded.push_back(s[0] + s[1]);
      folded.insert(folded.end(), s.begin() + 2, s.end());
      work.push_back(std::move(folded));
    }
  }
  int got = 0;
  for (const std::string& t : atom_texts(gp))
    if (t.rfind("list(", 0) == 0) ++got;
  CHECK(got == static_cast<int>(lists.size()));
}

TEST_CASE("unsafe variable rejected") {
  Pool pool;
  ParseResult r = parse_program(pool, "p(X) :- q(Y).\nq(1).");
  CHECK_THROWS_AS(ground(pool, r.program, 8), UnsafeRule);
}

TEST_CASE("unification destructures pairs") {
  Pool pool;
  ParseResult r = parse_program(pool,
                                "start_list((4, (3, (1, empty)))).\n"
                                "list(L) :- start_list(L).\n"
                                "head(L, H) :- list(L), L = (H, _).\n"
                                "tail(L, T) :- list(L), L = (_, T).");
  GroundProgram gp = ground(pool, r.program, 8);
  auto atoms = atom_texts(gp);
  CHECK(atoms.count("head((4, (3, (1, empty))),4)"));
  CHECK(atoms.count("tail((4, (3, (1, empty))),(3, (1, empty)))"));
}
