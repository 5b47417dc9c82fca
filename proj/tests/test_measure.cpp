#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosfmt/measure.hpp"
#include "test_util.hpp"

using namespace sosfmt;
using namespace sosfmt::testutil;

namespace {

// Measure of the running stratification example: g(l1) at order 0, every
// f-instance at order 1, bottom elsewhere.
StratMeasure measure_s0() {
  StratMeasure m;
  m.name = "S0";
  m.clauses.push_back({F("g", {L(1)}), {0, {}}});
  m.clauses.push_back({F("f", {V("p")}), {1, {}}});
  return m;
}

// Pair-sorted substitution measure over the process-passing signature.
StratMeasure measure_subst() {
  StratMeasure m;
  m.name = "Ssub";
  Term q = V("q");
  m.clauses.push_back({Term::pair(C("a"), q), {1, {}}});
  m.clauses.push_back({Term::pair(C("b"), q), {1, {}}});
  m.clauses.push_back({Term::pair(F("snd", {V("x0"), V("x1")}), q),
                       {1, {Term::pair(V("x0"), q), Term::pair(V("x1"), q)}}});
  m.clauses.push_back({Term::pair(F("rcv", {V("w"), V("x")}), q), {1, {Term::pair(V("x"), q)}}});
  m.clauses.push_back({Term::pair(F("plus", {V("x0"), V("x1")}), q),
                       {1, {Term::pair(V("x0"), q), Term::pair(V("x1"), q)}}});
  m.clauses.push_back({Term::pair(F("par", {V("x0"), V("x1")}), q),
                       {1, {Term::pair(V("x0"), q), Term::pair(V("x1"), q)}}});
  return m;
}

}  // namespace

TEST_CASE("first-matching-clause evaluation with bottom propagation") {
  StratMeasure m = measure_s0();
  validate_measure(m);
  CHECK(eval_measure(m, F("g", {L(1)})) == 0);
  CHECK(eval_measure(m, F("f", {L(1)})) == 1);
  CHECK(!eval_measure(m, L(1)));
  CHECK(!eval_measure(m, F("g", {L(2)})));

  StratMeasure empty{"E", {}};
  CHECK(!eval_measure(empty, F("f", {L(1)})));
}

TEST_CASE("pair-sorted recursive evaluation") {
  StratMeasure m = measure_subst();
  validate_measure(m);
  // (c!a.b, q) evaluates 1 + S(a,q) + S(b,q) = 3
  Term subject = Term::pair(F("snd", {C("a"), C("b")}), C("a"));
  CHECK(eval_measure(m, subject) == 3);
  CHECK(eval_measure(m, Term::pair(F("rcv", {C("b"), C("a")}), C("b"))) == 2);
  CHECK(!eval_measure(m, Term::pair(F("snd", {C("a"), C("b")}), C("a"))).has_value() == false);
}

TEST_CASE("family wildcard patterns match any index") {
  StratMeasure m;
  m.name = "W";
  m.clauses.push_back({Term::lab_expr("l", IndexExpr::wild()), {0, {}}});
  m.clauses.push_back({F("f", {V("x")}), {1, {V("x")}}});
  validate_measure(m);
  CHECK(eval_measure(m, L(0)) == 0);
  CHECK(eval_measure(m, L(41)) == 0);
  CHECK(eval_measure(m, F("f", {F("f", {L(2)})})) == 2);
}

TEST_CASE("validation rejects calls that do not shrink") {
  StratMeasure bad;
  bad.name = "Bad";
  bad.clauses.push_back({F("f", {V("x")}), {1, {F("f", {V("x")})}}});
  CHECK_THROWS_AS(validate_measure(bad), Error);

  StratMeasure unbound;
  unbound.name = "Unbound";
  unbound.clauses.push_back({F("f", {V("x")}), {1, {V("y")}}});
  CHECK_THROWS_AS(validate_measure(unbound), Error);

  StratMeasure overlap;
  overlap.name = "Olap";
  overlap.clauses.push_back({F("g", {L(1)}), {0, {}}});
  overlap.clauses.push_back({F("g", {V("x")}), {1, {}}});
  CHECK(validate_measure(overlap).size() == 1);
}

TEST_CASE("evaluation terminates on all closed terms") {
  std::mt19937 rng(3);
  Signature sig = sigma0();
  StratMeasure total;
  total.name = "Size";
  total.clauses.push_back({Term::lab_expr("l", IndexExpr::wild()), {0, {}}});
  total.clauses.push_back({F("f", {V("x")}), {1, {V("x")}}});
  total.clauses.push_back({F("g", {V("x")}), {1, {V("x")}}});
  validate_measure(total);
  StratMeasure partial = measure_s0();
  for (int it = 0; it < 1200; ++it) {
    Term t = random_closed_term(rng, sig, 5, 4);
    auto v = eval_measure(total, t);  // total measure: defined everywhere
    REQUIRE(v.has_value());
    CHECK(*v <= t.size());
    CHECK_NOTHROW(eval_measure(partial, t));  // partial: terminates, possibly bottom
  }
}
