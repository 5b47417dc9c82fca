#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosfmt/dyadic.hpp"
#include "test_util.hpp"

using namespace sosfmt;
using namespace sosfmt::testutil;

TEST_CASE("transform_formula follows the reading table") {
  // D2 of x -[y]-> x' : source x', target (y, x)
  DyadicFormula d2 = transform_formula(TF(V("x"), V("y"), V("xp")), {2, Proj::Id});
  CHECK(d2.source == V("xp"));
  CHECK(d2.target == Term::pair(V("y"), V("x")));

  // D4 of t -[l]-> t' : source (t, l), target t'
  DyadicFormula d4 = transform_formula(TF(V("t"), V("l"), V("tp")), {4, Proj::Id});
  CHECK(d4.source == Term::pair(V("t"), V("l")));
  CHECK(d4.target == V("tp"));

  // D1^pi1 of c -[a]-> c' : c ~> a
  DyadicFormula p1 = transform_formula(TF(C("c"), C("a"), C("cp")), {1, Proj::P1});
  CHECK(p1.source == C("c"));
  CHECK(p1.target == C("a"));
}

TEST_CASE("tr_inverse assigns roles per reading") {
  CHECK(tr_inverse(V("o"), V("d1"), V("d2"), 1) == TF(V("o"), V("d1"), V("d2")));
  CHECK(tr_inverse(C("p3"), L(2), C("p2"), 2) == TF(C("p2"), L(2), C("p3")));
  CHECK_THROWS_AS(tr_inverse(V("o"), V("d1"), V("d2"), 4), Error);
}

TEST_CASE("tr_inverse inverts D3 on random formulae") {
  std::mt19937 rng(7);
  Signature sig = sigma0();
  for (int it = 0; it < 500; ++it) {
    TriadicFormula f = TF(random_term(rng, sig, 3, 3, {"x", "y"}),
                          random_term(rng, sig, 3, 3, {"x", "y"}),
                          random_term(rng, sig, 3, 3, {"x", "y"}));
    DyadicFormula d = transform_formula(f, {3, Proj::Id});
    CHECK(tr_inverse(d.source, d.target.args()[0], d.target.args()[1], 3) == f);
  }
}

TEST_CASE("untransform inverts every identity kind") {
  std::mt19937 rng(11);
  Signature sig = sigma0();
  for (int it = 0; it < 300; ++it) {
    TriadicFormula f = TF(random_term(rng, sig, 3, 3, {"x", "y", "z"}),
                          random_term(rng, sig, 3, 3, {"x", "y", "z"}),
                          random_term(rng, sig, 3, 3, {"x", "y", "z"}));
    for (const DyadicKind& k : DyadicKind::identities())
      CHECK(untransform_formula(transform_formula(f, k)) == f);
  }
  CHECK_THROWS_AS(
      untransform_formula(transform_formula(TF(V("x"), V("y"), V("z")), {1, Proj::P1})), Error);
}

TEST_CASE("transform_tss on the projection remark system") {
  // R1: axiom c -[a]-> c' and rule {x -[a]-> x} / f(x) -[a]-> x
  Tss r1;
  r1.sig.symbols = {{"c", 0}, {"cp", 0}, {"a", 0}, {"f", 1}};
  r1.rules.push_back({"Ax", {}, TF(C("c"), C("a"), C("cp"))});
  r1.rules.push_back({"Step", {TF(V("x"), C("a"), V("x"))}, TF(F("f", {V("x")}), C("a"), V("x"))});

  DTss proj = transform_tss(r1, {1, Proj::P1});
  REQUIRE(proj.rules.size() == 2);
  CHECK(proj.rules[0].premises.empty());
  CHECK(proj.rules[0].conclusion.source == C("c"));
  CHECK(proj.rules[0].conclusion.target == C("a"));
  CHECK(proj.rules[1].premises[0].source == V("x"));
  CHECK(proj.rules[1].premises[0].target == C("a"));
  CHECK(proj.rules[1].conclusion.source == F("f", {V("x")}));
  CHECK(proj.rules[1].conclusion.target == C("a"));

  Tss empty;
  empty.sig = sigma0();
  CHECK(transform_tss(empty, {1, Proj::Id}).rules.empty());
}

TEST_CASE("untransform_tss round-trips rules and templates") {
  Tss tss;
  tss.sig = sigma0();
  tss.rules.push_back({"L", {}, TF(F("g", {L(1)}), L(1), L(1))});
  RuleTemplate tpl;
  tpl.name = "R";
  tpl.index_var = "i";
  tpl.premises.push_back(
      {TF(Term::iter("g", IndexExpr::affine("i", 1), V("x")),
          Term::lab_expr("l", IndexExpr::affine("i", 1)), V("x")),
       std::nullopt});
  tpl.conclusion = TF(F("f", {V("x")}), L(1), V("x"));
  tss.templates.push_back(tpl);

  for (const DyadicKind& k : DyadicKind::identities()) {
    Tss back = untransform_tss(transform_tss(tss, k));
    REQUIRE(back.rules.size() == 1);
    REQUIRE(back.templates.size() == 1);
    CHECK(back.rules[0].conclusion == tss.rules[0].conclusion);
    CHECK(back.templates[0].premises[0].formula == tpl.premises[0].formula);
    CHECK(back.templates[0].conclusion == tpl.conclusion);
  }
}

TEST_CASE("kind tokens parse and print") {
  CHECK(DyadicKind::parse("d4.id") == DyadicKind{4, Proj::Id});
  CHECK(DyadicKind::parse("d1.p2") == DyadicKind{1, Proj::P2});
  CHECK(DyadicKind{3, Proj::P1}.token() == "d3.p1");
  CHECK_THROWS_AS(DyadicKind::parse("d7.id"), Error);
  CHECK(DyadicKind::all().size() == 12);
}
