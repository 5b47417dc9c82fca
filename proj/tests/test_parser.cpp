#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosfmt/parser.hpp"
#include "test_util.hpp"

using namespace sosfmt;
using namespace sosfmt::testutil;

static const char* kCorpusDir = SOSFMT_CORPUS_DIR;

TEST_CASE("golden parse of the stratification example file") {
  SpecFile f = load_spec_file(std::string(kCorpusDir) + "/ex6_stratification.tss");
  REQUIRE(f.tss.rules.size() == 1);
  REQUIRE(f.tss.templates.size() == 1);
  CHECK(f.tss.rules[0].name == "L");
  CHECK(f.tss.rules[0].conclusion == TF(F("g", {L(1)}), L(1), L(1)));
  const RuleTemplate& t = f.tss.templates[0];
  CHECK(t.name == "R");
  CHECK(t.index_var == "i");
  REQUIRE(t.premises.size() == 1);
  CHECK(t.premises[0].formula.source == Term::iter("g", IndexExpr::affine("i", 1), V("x")));
  CHECK(t.premises[0].formula.label == Term::lab_expr("l", IndexExpr::affine("i", 1)));
  CHECK(t.conclusion == TF(F("f", {V("x")}), L(1), V("x")));
  REQUIRE(f.measures.size() == 1);
  CHECK(f.measures[0].name == "S0");
  REQUIRE(f.measures[0].clauses.size() == 2);
  CHECK(f.measures[0].clauses[0].pattern == F("g", {L(1)}));
  CHECK(f.measures[0].clauses[0].expr.constant == 0);
  CHECK(f.measures[0].clauses[1].expr.constant == 1);
}

TEST_CASE("negative premises are rejected with the policy message") {
  const char* text = R"(
signature { f: 1; }
labels { a; }
rule "Bad": x -[ a ]-/-> |- f(x) -[ a ]-> x;
)";
  try {
    parse_spec_file(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("negative premises are rejected") != std::string::npos);
    CHECK(e.line == 4);
  }
}

TEST_CASE("empty input parses to an empty system") {
  SpecFile f = parse_spec_file("");
  CHECK(f.tss.rules.empty());
  CHECK(f.tss.templates.empty());
  CHECK(f.measures.empty());
}

TEST_CASE("errors carry positions and name the problem") {
  CHECK_THROWS_AS(parse_spec_file("signature { f: 1; }\nrule \"R\": |- f(x, x) -[ x ]-> x;"),
                  ParseError);
  CHECK_THROWS_AS(parse_spec_file("rule \"R\": |- f(x) -[ x ]-> x;"), ParseError);  // undefined f
  CHECK_THROWS_AS(parse_spec_file("signature { f: }"), ParseError);
  // Duplicate rule names are ill-formed.
  CHECK_THROWS_AS(parse_spec_file("signature { c: 0; }\nrule \"R\": |- c -[ c ]-> c;\nrule "
                                  "\"R\": |- c -[ c ]-> c;"),
                  ParseError);
  // Index variables outside any template are not in scope.
  CHECK_THROWS_AS(parse_spec_file("signature { f: 1; }\nlabels { l(i); }\nrule \"R\": |- f(x) -[ "
                                  "l(i) ]-> x;"),
                  ParseError);
}

TEST_CASE("render and reparse is the identity on every corpus file") {
  for (const char* name :
       {"ex6_stratification", "ex5_restricted_support", "ex5_targets", "ex5_infinite_premises",
        "ex5_uniform_targets", "ex5_uniform_renamed", "ccs_choice", "microchocs_subst",
        "microchocs_send", "microchocs_recv", "microchocs_tau", "microchocs_full", "remark_r1", "remark_r2",
        "sigma0_axiom_fx", "sigma0_axiom_cyc", "sigma0_axiom_ccy"}) {
    INFO(name);
    SpecFile f = load_spec_file(std::string(kCorpusDir) + "/" + name + ".tss");
    std::string rendered = render_spec_file(f);
    SpecFile g = parse_spec_file(rendered);

    REQUIRE(f.tss.rules.size() == g.tss.rules.size());
    for (std::size_t i = 0; i < f.tss.rules.size(); ++i) {
      CHECK(f.tss.rules[i].name == g.tss.rules[i].name);
      CHECK(f.tss.rules[i].conclusion == g.tss.rules[i].conclusion);
      CHECK(f.tss.rules[i].premises == g.tss.rules[i].premises);
    }
    REQUIRE(f.tss.templates.size() == g.tss.templates.size());
    for (std::size_t i = 0; i < f.tss.templates.size(); ++i) {
      CHECK(f.tss.templates[i].conclusion == g.tss.templates[i].conclusion);
      REQUIRE(f.tss.templates[i].premises.size() == g.tss.templates[i].premises.size());
      for (std::size_t p = 0; p < f.tss.templates[i].premises.size(); ++p) {
        CHECK(f.tss.templates[i].premises[p].formula == g.tss.templates[i].premises[p].formula);
        CHECK(f.tss.templates[i].premises[p].forall == g.tss.templates[i].premises[p].forall);
      }
    }
    REQUIRE(f.measures.size() == g.measures.size());
    for (std::size_t i = 0; i < f.measures.size(); ++i) {
      REQUIRE(f.measures[i].clauses.size() == g.measures[i].clauses.size());
      for (std::size_t c = 0; c < f.measures[i].clauses.size(); ++c) {
        CHECK(f.measures[i].clauses[c].pattern == g.measures[i].clauses[c].pattern);
        CHECK(f.measures[i].clauses[c].expr.constant == g.measures[i].clauses[c].expr.constant);
        CHECK(f.measures[i].clauses[c].expr.calls == g.measures[i].clauses[c].expr.calls);
      }
    }
    REQUIRE(f.etas.size() == g.etas.size());
    for (std::size_t i = 0; i < f.etas.size(); ++i) CHECK(f.etas[i].entries == g.etas[i].entries);
  }
}

TEST_CASE("LTS TSV round-trips through export and parse") {
  Lts lts;
  lts.triadic.push_back(TF(F("f", {L(0)}), L(1), F("g", {L(2)})));
  lts.triadic.push_back(TF(C("c"), C("c"), C("c")));
  std::string tsv = lts_to_tsv(lts);
  Lts back = parse_lts_tsv(tsv);
  REQUIRE(back.triadic.size() == 2);
  std::set<TriadicFormula> a(lts.triadic.begin(), lts.triadic.end());
  std::set<TriadicFormula> b(back.triadic.begin(), back.triadic.end());
  CHECK(a == b);
}
