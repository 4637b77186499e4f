#include <doctest.h>

#include "inp/formula.hpp"
#include "inp/lasso.hpp"
#include "inp/nba.hpp"
#include "inp/parse.hpp"
#include "inp/translate.hpp"
#include "support.hpp"

using namespace inp;

TEST_CASE("parse maps the concrete grammar onto the tree") {
  PropRegistry props;
  PropId p1 = props.intern("p1");

  CHECK(parse("[]<> p1", props) == Formula::always(Formula::eventually(Formula::atom(p1))));
  CHECK(parse("G F p1", props) == parse("[]<> p1", props));
  CHECK(parse("true", props) == Formula::top());
  CHECK(parse("!p1", props) == Formula::negation(Formula::atom(p1)));
}

TEST_CASE("parse handles the shape of a conjunction with an until") {
  PropRegistry props;
  Formula f = parse("([]<> (x1 || x2)) && (!x3 U x1)", props);
  REQUIRE(f.kind() == FormulaKind::And);
  Formula x1 = Formula::atom(*props.find("x1"));
  Formula x2 = Formula::atom(*props.find("x2"));
  Formula x3 = Formula::atom(*props.find("x3"));
  CHECK(f.left() == Formula::always(Formula::eventually(Formula::disj(x1, x2))));
  CHECK(f.right() == Formula::until(Formula::negation(x3), x1));
}

TEST_CASE("parse precedence: unary binds tighter than U, U tighter than &&") {
  PropRegistry props;
  Formula a = Formula::atom(props.intern("a"));
  Formula b = Formula::atom(props.intern("b"));
  Formula c = Formula::atom(props.intern("c"));
  CHECK(parse("!a U b", props) == Formula::until(Formula::negation(a), b));
  CHECK(parse("a U b && c", props) == Formula::conj(Formula::until(a, b), c));
  CHECK(parse("a -> b || c", props) == Formula::implies(a, Formula::disj(b, c)));
  CHECK(parse("a U b U c", props) == Formula::until(a, Formula::until(b, c)));
}

TEST_CASE("parse reports positions for syntax errors") {
  PropRegistry props;
  CHECK_THROWS_AS(parse("p U", props), ParseError);
  try {
    parse("p U", props);
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
  CHECK_THROWS_AS(parse("(a && b", props), ParseError);
  CHECK_THROWS_AS(parse("a # b", props), ParseError);
  CHECK_THROWS_AS(parse("", props), ParseError);
}

TEST_CASE("identifiers may start with operator letters") {
  PropRegistry props;
  Formula f = parse("Ux && Gy", props);
  CHECK(f == Formula::conj(Formula::atom(*props.find("Ux")), Formula::atom(*props.find("Gy"))));
}

TEST_CASE("parse_task rejects the next operator") {
  PropRegistry props;
  CHECK_THROWS_AS(parse_task("X p", props), ParseError);
  CHECK_NOTHROW(parse_task("[]<> p", props));
  // X nested under other operators is still rejected.
  CHECK_THROWS_AS(parse_task("G (a U X b)", props), ParseError);
}

TEST_CASE("to_nnf pushes negations to atoms") {
  PropRegistry props;
  Formula p = Formula::atom(props.intern("p"));
  Formula q = Formula::atom(props.intern("q"));

  CHECK(to_nnf(Formula::negation(Formula::eventually(p))) ==
        Formula::always(Formula::negation(p)));
  CHECK(to_nnf(Formula::negation(Formula::until(p, q))) ==
        Formula::release(Formula::negation(p), Formula::negation(q)));
  CHECK(to_nnf(Formula::negation(Formula::negation(p))) == p);

  auto nnf_only_negates_atoms = [](const Formula& f) {
    struct Walk {
      static bool ok(const Formula& g) {
        switch (g.kind()) {
          case FormulaKind::True:
          case FormulaKind::False:
          case FormulaKind::Atom:
            return true;
          case FormulaKind::Not:
            return g.left().kind() == FormulaKind::Atom;
          case FormulaKind::Next:
            return ok(g.left());
          default:
            return ok(g.left()) && ok(g.right());
        }
      }
    };
    return Walk::ok(f);
  };
  std::mt19937 rng(7);
  std::vector<PropId> ids = {props.intern("p"), props.intern("q"), props.intern("r")};
  for (int i = 0; i < 200; ++i)
    CHECK(nnf_only_negates_atoms(to_nnf(test::random_formula(rng, 4, ids))));
}

TEST_CASE("evaluate_lasso on the reference words") {
  PropRegistry props;
  PropId p = props.intern("p");
  Formula ev = Formula::eventually(Formula::atom(p));
  Formula ae = Formula::always(Formula::eventually(Formula::atom(p)));

  CHECK(evaluate_lasso(ev, {{make_letter({p})}, {make_letter({})}}));
  CHECK_FALSE(evaluate_lasso(ae, {{make_letter({p})}, {make_letter({})}}));
  CHECK(evaluate_lasso(ae, {{}, {make_letter({}), make_letter({p})}}));
}

TEST_CASE("translate true gives the one state universal automaton") {
  Nba nba = translate(Formula::top());
  CHECK(nba.num_states == 1);
  REQUIRE(nba.initial.size() == 1);
  REQUIRE(nba.accepting.size() == 1);
  REQUIRE(nba.transitions.size() == 1);
  CHECK(nba.transitions[0].from == nba.transitions[0].to);
  CHECK(nba.transitions[0].guard.require.empty());
  CHECK(nba.transitions[0].guard.forbid.empty());
  CHECK(nba_accepts_lasso(nba, {{}, {make_letter({})}}));
}

TEST_CASE("translate of always-eventually matches the lasso oracle exhaustively") {
  PropRegistry props;
  PropId p = props.intern("p");
  Formula f = Formula::always(Formula::eventually(Formula::atom(p)));
  CHECK(test::oracle_mismatches(f) == 0);
}

TEST_CASE("a contradiction translates to an empty language") {
  PropRegistry props;
  PropId p = props.intern("p");
  Formula f = Formula::conj(Formula::eventually(Formula::atom(p)),
                            Formula::always(Formula::negation(Formula::atom(p))));
  Nba nba = translate(f);
  for (const LassoWord& w : test::all_lassos({p}, 2, 3)) CHECK_FALSE(nba_accepts_lasso(nba, w));
}

TEST_CASE("guards must reference the declared alphabet") {
  Nba nba;
  nba.num_states = 1;
  nba.initial = {0};
  nba.accepting = {0};
  nba.alphabet = {0};
  nba.add_transition(0, 0, Guard{{1}, {}});
  nba.finalize();
  CHECK_THROWS_AS(nba.validate(), std::invalid_argument);
}

TEST_CASE("oracle equivalence on random formulas") {
  PropRegistry props;
  std::vector<PropId> ids = {props.intern("a"), props.intern("b"), props.intern("c")};
  std::mt19937 rng(20240817);
  for (int i = 0; i < 60; ++i) {
    int nprops = 1 + static_cast<int>(rng() % 3);
    std::vector<PropId> subset(ids.begin(), ids.begin() + nprops);
    Formula f = test::random_formula(rng, 4, subset);
    CAPTURE(to_string(f, props));
    CHECK(test::oracle_mismatches(f) == 0);
  }
}

TEST_CASE("negation yields the complement language on every tested word") {
  PropRegistry props;
  std::vector<PropId> ids = {props.intern("a"), props.intern("b")};
  std::mt19937 rng(99);
  auto lassos = test::all_lassos(ids, 2, 2);
  for (int i = 0; i < 25; ++i) {
    Formula f = test::random_formula(rng, 3, ids);
    Nba pos = translate(f);
    Nba neg = translate(Formula::negation(f));
    for (const LassoWord& w : lassos) {
      bool a = nba_accepts_lasso(pos, w);
      bool b = nba_accepts_lasso(neg, w);
      CHECK(a != b);  // disjoint and covering
    }
  }
}

TEST_CASE("to_nnf preserves semantics on every tested word") {
  PropRegistry props;
  std::vector<PropId> ids = {props.intern("a"), props.intern("b")};
  std::mt19937 rng(4242);
  auto lassos = test::all_lassos(ids, 2, 2);
  for (int i = 0; i < 40; ++i) {
    Formula f = test::random_formula(rng, 4, ids);
    Formula g = to_nnf(f);
    for (const LassoWord& w : lassos) CHECK(evaluate_lasso(f, w) == evaluate_lasso(g, w));
  }
}
