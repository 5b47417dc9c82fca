#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace sosfmt;
using namespace sosfmt::testutil;

TEST_CASE("validate_tss reports arity violations with rule and position") {
  Tss tss;
  tss.sig = sigma0();
  tss.rules.push_back({"Bad", {}, TF(F("f", {V("x"), V("x")}), L(1), V("x"))});
  Verdict v = validate_tss(tss);
  CHECK(v.outcome == Outcome::Fail);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0].rule == "Bad");
  CHECK(v.witnesses[0].message.find("arity") != std::string::npos);

  Tss empty;
  empty.sig = sigma0();
  CHECK(validate_tss(empty).outcome == Outcome::Pass);

  Tss dup;
  dup.sig = sigma0();
  dup.rules.push_back({"R", {}, TF(F("f", {V("x")}), L(1), V("x"))});
  dup.rules.push_back({"R", {}, TF(F("g", {V("x")}), L(1), V("x"))});
  CHECK(validate_tss(dup).outcome == Outcome::Fail);

  CHECK(validate_tss(dup).outcome == validate_tss(dup).outcome);  // idempotent
}

TEST_CASE("template instantiation unfolds iterations (expansion oracle)") {
  // template R(i): g^i(x) -[l(i)]-> x |- f(x) -[l(1)]-> x
  RuleTemplate tpl;
  tpl.name = "R";
  tpl.index_var = "i";
  tpl.premises.push_back(
      {TF(Term::iter("g", IndexExpr::affine("i", 0), V("x")),
          Term::lab_expr("l", IndexExpr::affine("i", 0)), V("x")),
       std::nullopt});
  tpl.conclusion = TF(F("f", {V("x")}), L(1), V("x"));

  auto rules = instantiate_template(tpl, 3);
  REQUIRE(rules.size() == 3);
  for (std::uint64_t i = 0; i < 3; ++i) {
    CHECK(rules[i].name == "R" + std::to_string(i));
    // independent expansion: i-fold application of g
    Term expect = V("x");
    for (std::uint64_t k = 0; k < i; ++k) expect = F("g", {expect});
    REQUIRE(rules[i].premises.size() == 1);
    CHECK(rules[i].premises[0].source == expect);
    CHECK(rules[i].premises[0].label == L(i));
    CHECK(rules[i].conclusion == TF(F("f", {V("x")}), L(1), V("x")));
  }

  auto one = instantiate_template(tpl, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].premises[0].source == V("x"));
}

TEST_CASE("instantiation at bound n is a prefix of bound n+1") {
  RuleTemplate tpl;
  tpl.name = "L";
  tpl.index_var = "i";
  tpl.premises.push_back(
      {TF(V("x"), Term::lab_expr("l", IndexExpr::affine("i", 0)), V("xp")), std::nullopt});
  tpl.conclusion =
      TF(F("plus", {V("x"), V("y")}), Term::lab_expr("l", IndexExpr::affine("i", 0)), V("xp"));
  for (std::uint64_t n = 1; n < 6; ++n) {
    auto a = instantiate_template(tpl, n);
    auto b = instantiate_template(tpl, n + 1);
    REQUIRE(a.size() == n);
    for (std::uint64_t i = 0; i < n; ++i) {
      CHECK(a[i].name == b[i].name);
      CHECK(a[i].conclusion == b[i].conclusion);
      CHECK(a[i].premises[0] == b[i].premises[0]);
    }
  }
}

TEST_CASE("CCS choice template over a 2-label alphabet yields 2 rules") {
  RuleTemplate tpl;
  tpl.name = "L";
  tpl.index_var = "i";
  tpl.premises.push_back(
      {TF(V("x"), Term::lab_expr("l", IndexExpr::affine("i", 0)), V("xp")), std::nullopt});
  tpl.conclusion =
      TF(F("plus", {V("x"), V("y")}), Term::lab_expr("l", IndexExpr::affine("i", 0)), V("xp"));
  CHECK(instantiate_template(tpl, 2).size() == 2);
}

TEST_CASE("unifies_with_rule") {
  Rule r1{"R1",
          {TF(F("g", {V("x")}), L(1), V("x"))},
          TF(F("f", {V("x")}), L(1), V("x"))};
  auto s = unifies_with_rule(TF(F("f", {L(1)}), L(1), L(1)), r1);
  REQUIRE(s);
  CHECK(*s == Subst{{"x", L(1)}});

  Rule ax{"L", {}, TF(F("g", {L(1)}), L(1), L(1))};
  auto e = unifies_with_rule(TF(F("g", {L(1)}), L(1), L(1)), ax);
  REQUIRE(e);
  CHECK(e->empty());

  CHECK(!unifies_with_rule(TF(F("f", {L(1)}), L(2), L(1)), r1));
}

TEST_CASE("unifies_with_rule reconstructs the transition exactly") {
  std::mt19937 rng(5);
  Signature sig = sigma0();
  for (int it = 0; it < 500; ++it) {
    Rule r{"R", {}, TF(random_term(rng, sig, 2, 2, {"x", "y"}),
                       random_term(rng, sig, 2, 2, {"x", "y"}),
                       random_term(rng, sig, 2, 2, {"x", "y"}))};
    Subst sigma;
    for (const std::string& v : {std::string("x"), std::string("y")})
      sigma[v] = random_closed_term(rng, sig, 2, 2);
    TriadicFormula tr{apply_subst(sigma, r.conclusion.source),
                      apply_subst(sigma, r.conclusion.label),
                      apply_subst(sigma, r.conclusion.target)};
    auto got = unifies_with_rule(tr, r);
    REQUIRE(got);
    CHECK(apply_subst(*got, r.conclusion.source) == tr.source);
    CHECK(apply_subst(*got, r.conclusion.label) == tr.label);
    CHECK(apply_subst(*got, r.conclusion.target) == tr.target);
  }
}

TEST_CASE("forall premises expand over the bound") {
  RuleTemplate tpl;
  tpl.name = "R";
  tpl.index_var = "i";
  tpl.premises.push_back({TF(L(1), Term::lab_expr("l", IndexExpr::affine("j", 0)),
                             Term::lab_expr("l", IndexExpr::affine("j", 0))),
                          std::string("j")});
  tpl.conclusion = TF(F("f", {L(1)}), Term::lab_expr("l", IndexExpr::affine("i", 0)),
                      Term::lab_expr("l", IndexExpr::affine("i", 0)));
  auto rules = instantiate_template(tpl, 3);
  REQUIRE(rules.size() == 3);
  CHECK(rules[2].premises.size() == 3);
  CHECK(rules[2].premises[1] == TF(L(1), L(1), L(1)));
  CHECK(rules[2].conclusion == TF(F("f", {L(1)}), L(2), L(2)));
}
