#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosfmt/strat.hpp"
#include "test_util.hpp"

using namespace sosfmt;
using namespace sosfmt::testutil;

namespace {

// The stratification example: axiom L: g(l1) -[l1]-> l1, template
// R(i): {g^(i+1)(x) -[l(i+1)]-> x} |- f(x) -[l1]-> x. Instance R<k>
// corresponds to the (k+1)-th member of the countable family.
Tss ex6_tss() {
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
  return tss;
}

StratMeasure measure_s0() {
  StratMeasure m;
  m.name = "S0";
  m.clauses.push_back({F("g", {L(1)}), {0, {}}});
  m.clauses.push_back({F("f", {V("p")}), {1, {}}});
  return m;
}

DTss ex6_dyadic() { return transform_tss(ex6_tss(), {1, Proj::Id}); }

}  // namespace

TEST_CASE("the example stratification passes symbolically") {
  StratResult r = check_strat_conditions(ex6_dyadic(), measure_s0(), {3, 3});
  CHECK(r.verdict.outcome == Outcome::Pass);
  CHECK(r.grade == StratGrade::Symbolic);
}

TEST_CASE("a flat measure violates strict descent with the paper's witness") {
  // S(g^i(p)) = 0 for all i, S(f(p)) = 0: condition (ii) fails at
  // source f(l1) with premise source g(l1).
  StratMeasure m;
  m.name = "Flat";
  m.clauses.push_back({F("g", {V("p")}), {0, {}}});
  m.clauses.push_back({F("f", {V("p")}), {0, {}}});
  StratResult r = check_strat_conditions(ex6_dyadic(), m, {3, 3});
  CHECK(r.verdict.outcome == Outcome::Fail);
  bool found = false;
  for (const Witness& w : r.verdict.witnesses) {
    if (w.terms.size() == 2 && w.terms[0] == "f(l(1))" && w.terms[1] == "g(l(1))") found = true;
  }
  CHECK(found);
}

TEST_CASE("an uncovered source fails condition (i) with a ground witness") {
  Tss tss;
  tss.sig = sigma0();
  tss.sig.symbols.push_back({"h", 1});
  tss.rules.push_back({"H", {}, TF(F("h", {V("x")}), L(0), V("x"))});
  StratResult r = check_strat_conditions(transform_tss(tss, {1, Proj::Id}), measure_s0(), {2, 1});
  CHECK(r.verdict.outcome == Outcome::Fail);
  REQUIRE(!r.verdict.witnesses.empty());
  CHECK(r.verdict.witnesses[0].terms[0] == "h(l(0))");
}

TEST_CASE("symbolic pass implies no bounded counterexample at several bounds") {
  for (std::uint64_t b = 1; b <= 3; ++b)
    for (std::size_t h = 1; h <= 3; ++h) {
      StratResult r = check_strat_conditions(ex6_dyadic(), measure_s0(), {h, b});
      CHECK(r.verdict.outcome == Outcome::Pass);
    }
}

TEST_CASE("restricted support of the example") {
  SupportResult sup = restricted_support(ex6_dyadic(), measure_s0(), {3, 3});
  CHECK(sup.verdict.outcome == Outcome::Pass);
  CHECK(sup.support_of(F("f", {V("x")})) == std::vector<Term>{F("g", {V("x")})});
  CHECK(sup.support_of(F("g", {L(1)})).empty());
}

TEST_CASE("axiom-only systems have empty support everywhere") {
  Tss tss;
  tss.sig = sigma0();
  tss.rules.push_back({"A", {}, TF(F("f", {L(0)}), L(0), L(0))});
  tss.rules.push_back({"B", {}, TF(F("g", {L(1)}), L(1), L(1))});
  StratMeasure m;
  m.name = "M";
  m.clauses.push_back({Term::lab_expr("l", IndexExpr::wild()), {0, {}}});
  m.clauses.push_back({F("f", {V("x")}), {1, {V("x")}}});
  m.clauses.push_back({F("g", {V("x")}), {1, {V("x")}}});
  SupportResult sup = restricted_support(transform_tss(tss, {1, Proj::Id}), m, {2, 2});
  CHECK(sup.verdict.outcome == Outcome::Pass);
  for (const auto& [s, vs] : sup.map) CHECK(vs.empty());
}

TEST_CASE("junk detection keeps the first family member and the axiom") {
  JunkResult junk = detect_junk_rules(ex6_dyadic(), measure_s0(), {3, 3});
  CHECK(junk.rules == std::set<std::string>{"R1", "R2"});
  REQUIRE(junk.template_junk.count("R"));
  const IndexSet& is = junk.template_junk.at("R");
  CHECK(is.at(0) == Tri::No);
  for (std::uint64_t i = 1; i < is.threshold + 3; ++i) CHECK(is.at(i) == Tri::Yes);
  REQUIRE(junk.symbolic.size() == 1);
  CHECK(junk.symbolic[0].find(">= 1") != std::string::npos);
}

TEST_CASE("junk rules never fire in derivations at any tested bound") {
  // The junk family instances prove nothing: derived transitions all come
  // from L and R0 (the first member).
  Tss tss = ex6_tss();
  for (std::uint64_t b = 2; b <= 4; ++b) {
    Lts lts = derive_lts(tss, {3, b, 50});
    REQUIRE(lts.saturated);
    CHECK(lts.triadic.size() == 2);
  }
}

TEST_CASE("support images never grow when clauses are removed") {
  DTss d = ex6_dyadic();
  StratMeasure full = measure_s0();
  SupportResult with_full = restricted_support(d, full, {3, 3});
  StratMeasure pruned;
  pruned.name = "S0p";
  pruned.clauses = {full.clauses[1]};  // drop the g(l1) clause
  SupportResult with_pruned = restricted_support(d, pruned, {3, 3});
  for (const auto& [s, vs] : with_pruned.map) {
    std::vector<Term> big = with_full.support_of(s);
    for (const Term& v : vs)
      CHECK(std::find(big.begin(), big.end(), v) != big.end());
  }
}

TEST_CASE("pair-sorted measures are required for pair-origin kinds") {
  Tss tss;
  tss.sig = sigma0();
  tss.rules.push_back({"A", {}, TF(F("f", {V("x")}), L(0), V("x"))});
  CHECK_THROWS_AS(
      check_strat_conditions(transform_tss(tss, {4, Proj::Id}), measure_s0(), {2, 2}), Error);
}

TEST_CASE("total structurally decreasing measures certify compatibility rules") {
  // plus/par-style congruence rules under a size measure pass symbolically.
  Tss tss;
  tss.sig.symbols = {{"nil", 0}, {"plus", 2}};
  tss.rules.push_back({"PlusL",
                       {TF(V("x0"), V("z"), V("y0"))},
                       TF(F("plus", {V("x0"), V("x1")}), V("z"), V("y0"))});
  StratMeasure m;
  m.name = "Sz";
  m.clauses.push_back({C("nil"), {1, {}}});
  m.clauses.push_back({F("plus", {V("a"), V("b")}), {1, {V("a"), V("b")}}});
  StratResult r = check_strat_conditions(transform_tss(tss, {1, Proj::Id}), m, {2, 1});
  CHECK(r.verdict.outcome == Outcome::Pass);
  CHECK(r.grade == StratGrade::Symbolic);
}
