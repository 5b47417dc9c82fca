#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace sosfmt;
using namespace sosfmt::testutil;

TEST_CASE("match finds the minimal substitution") {
  CHECK(*match(F("f", {V("x")}), F("f", {L(1)})) == Subst{{"x", L(1)}});
  CHECK(*match(F("g", {V("x")}), F("g", {L(1)})) == Subst{{"x", L(1)}});
  CHECK(!match(F("f", {V("x")}), F("g", {L(1)})));
  // Repeated pattern variables must agree.
  CHECK(!match(F("h", {V("x"), V("x")}), F("h", {L(0), L(1)})));
  CHECK(*match(F("h", {V("x"), V("x")}), F("h", {L(0), L(0)})) == Subst{{"x", L(0)}});
  // Ground pattern on itself: empty substitution.
  CHECK(match(F("g", {L(1)}), F("g", {L(1)}))->empty());
}

TEST_CASE("unify computes mgus with occurs check") {
  auto s = unify(F("f", {V("x")}), F("f", {F("g", {V("y")})}));
  REQUIRE(s);
  CHECK(*s == Subst{{"x", F("g", {V("y")})}});
  CHECK(!unify(V("x"), F("f", {V("x")})));
  CHECK(*unify(F("g", {V("x")}), F("g", {L(1)})) == Subst{{"x", L(1)}});
  // Resolved mgu: chained bindings are fully applied.
  auto t = unify(F("h", {V("x"), V("y")}), F("h", {V("y"), L(3)}));
  REQUIRE(t);
  CHECK(apply_subst(*t, F("h", {V("x"), V("y")})) == apply_subst(*t, F("h", {V("y"), L(3)})));
}

TEST_CASE("apply_subst is homomorphic and leaves outside variables alone") {
  Subst s{{"x", L(1)}};
  CHECK(apply_subst(s, F("f", {V("x")})) == F("f", {L(1)}));
  CHECK(apply_subst(Subst{}, F("f", {V("x")})) == F("f", {V("x")}));
  CHECK(apply_subst(s, F("g", {V("y")})) == F("g", {V("y")}));
}

TEST_CASE("alpha variance") {
  CHECK(alpha_variant(F("f", {V("x")}), F("f", {V("y")})));
  Term xy = F("plus", {V("x"), V("y")});
  CHECK(alpha_variant(xy, xy));
  CHECK(!alpha_variant(F("f", {V("x")}), F("g", {V("x")})));
  // Renaming must be bijective.
  CHECK(!alpha_variant(F("h", {V("x"), V("y")}), F("h", {V("z"), V("z")})));
  CHECK(!alpha_variant(F("h", {V("x"), V("x")}), F("h", {V("z"), V("y")})));
  CHECK(!alpha_variant(F("f", {L(0)}), F("f", {L(1)})));
}

TEST_CASE("closed-term enumeration over sigma0") {
  Signature sig = sigma0();
  auto h0 = enumerate_closed_terms(sig, 0, 2);
  CHECK(h0 == std::vector<Term>{L(0), L(1)});
  auto h1 = enumerate_closed_terms(sig, 1, 2);
  CHECK(h1.size() == 6);
  std::set<Term> expect{L(0), L(1), F("f", {L(0)}), F("f", {L(1)}), F("g", {L(0)}),
                        F("g", {L(1)})};
  CHECK(std::set<Term>(h1.begin(), h1.end()) == expect);

  Signature no_consts;
  no_consts.symbols = {{"f", 1}};
  CHECK_THROWS_AS(enumerate_closed_terms(no_consts, 2, 1), Error);
  CHECK_THROWS_AS(enumerate_closed_terms(sig, 2, 0), Error);
}

TEST_CASE("enumeration is monotone in height and label bound") {
  Signature sig = sigma0();
  std::size_t prev = 0;
  for (std::size_t h = 0; h <= 3; ++h) {
    auto u = enumerate_closed_terms(sig, h, 2);
    CHECK(u.size() >= prev);
    prev = u.size();
  }
  prev = 0;
  for (std::uint64_t b = 1; b <= 4; ++b) {
    auto u = enumerate_closed_terms(sig, 2, b);
    CHECK(u.size() >= prev);
    prev = u.size();
  }
}

TEST_CASE("match/apply and unify laws on random terms") {
  std::mt19937 rng(17);
  Signature sig = sigma0();
  sig.symbols.push_back({"h", 2});
  int checked = 0;
  for (int it = 0; it < 1200; ++it) {
    Term p = random_term(rng, sig, 3, 3, {"x", "y", "z"});
    Subst sigma;
    for (const std::string& v : p.vars()) sigma[v] = random_closed_term(rng, sig, 2, 3);
    Term subj = apply_subst(sigma, p);
    auto got = match(p, subj);
    REQUIRE(got);
    // match returns sigma restricted to var(p)
    Subst expect;
    for (const std::string& v : p.vars()) expect[v] = sigma[v];
    CHECK(*got == expect);
    ++checked;

    // unify symmetry up to existence
    Term q = rename_vars(random_term(rng, sig, 3, 3, {"x", "y"}), "_r");
    CHECK(unify(p, q).has_value() == unify(q, p).has_value());
    if (auto mgu = unify(p, q)) CHECK(apply_subst(*mgu, p) == apply_subst(*mgu, q));
  }
  CHECK(checked == 1200);
}

TEST_CASE("alpha variance is an equivalence relation on random pairs") {
  std::mt19937 rng(23);
  Signature sig = sigma0();
  std::vector<Term> pool;
  for (int i = 0; i < 300; ++i) pool.push_back(random_term(rng, sig, 3, 2, {"x", "y", "z"}));
  for (int it = 0; it < 1000; ++it) {
    auto pick = [&]() { return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]; };
    Term a = pick(), b = pick(), c = pick();
    CHECK(alpha_variant(a, a));
    CHECK(alpha_variant(a, b) == alpha_variant(b, a));
    if (alpha_variant(a, b) && alpha_variant(b, c)) CHECK(alpha_variant(a, c));
  }
}

TEST_CASE("instantiate unfolds template nodes") {
  // g^(i+1)(x) at i=2 is g(g(g(x)))
  Term t = Term::iter("g", IndexExpr::affine("i", 1), V("x"));
  Term got = instantiate(t, {{"i", 2}});
  CHECK(got == F("g", {F("g", {F("g", {V("x")})})}));
  CHECK(instantiate(Term::lab_expr("l", IndexExpr::affine("i", 1)), {{"i", 0}}) == L(1));
  CHECK(instantiate(Term::idx_var("y", "i"), {{"i", 4}}) == V("y4"));
  // unbound index variables are kept
  CHECK(instantiate(t, {{"j", 2}}) == t);
}
