#pragma once

#include <random>

#include "sosfmt/tss.hpp"

namespace sosfmt::testutil {

inline Term V(const std::string& n) { return Term::var(n); }
inline Term C(const std::string& n) { return Term::app(n); }
inline Term F(const std::string& n, TermVec args) { return Term::app(n, std::move(args)); }
inline Term L(std::uint64_t k) { return Term::lab("l", k); }

inline TriadicFormula TF(Term s, Term l, Term t) {
  return {std::move(s), std::move(l), std::move(t)};
}

/// Sigma_0 of the running examples: unary f and g plus the label family l.
inline Signature sigma0() {
  Signature sig;
  sig.symbols = {{"f", 1}, {"g", 1}};
  sig.family = "l";
  return sig;
}

/// Random closed term over a signature, used by the property suites.
inline Term random_closed_term(std::mt19937& rng, const Signature& sig, std::size_t max_height,
                               std::uint64_t label_bound) {
  std::vector<Symbol> consts, ops;
  for (const Symbol& s : sig.symbols) (s.arity == 0 ? consts : ops).push_back(s);
  for (const std::string& l : sig.plain_labels) consts.push_back({l, 0});
  auto pick_const = [&]() -> Term {
    std::uint64_t n = consts.size() + (sig.family ? label_bound : 0);
    std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
    if (k < consts.size()) return Term::app(consts[k].name);
    return Term::lab(*sig.family, k - consts.size());
  };
  if (max_height == 0 || ops.empty() || std::bernoulli_distribution(0.35)(rng))
    return pick_const();
  const Symbol& op = ops[std::uniform_int_distribution<std::size_t>(0, ops.size() - 1)(rng)];
  TermVec args;
  for (std::size_t i = 0; i < op.arity; ++i)
    args.push_back(random_closed_term(rng, sig, max_height - 1, label_bound));
  return Term::app(op.name, std::move(args));
}

/// Random open term: like random_closed_term but may emit variables from a
/// small pool.
inline Term random_term(std::mt19937& rng, const Signature& sig, std::size_t max_height,
                        std::uint64_t label_bound, const std::vector<std::string>& vars) {
  if (!vars.empty() && std::bernoulli_distribution(0.3)(rng)) {
    return Term::var(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]);
  }
  std::vector<Symbol> consts, ops;
  for (const Symbol& s : sig.symbols) (s.arity == 0 ? consts : ops).push_back(s);
  for (const std::string& l : sig.plain_labels) consts.push_back({l, 0});
  auto pick_const = [&]() -> Term {
    std::uint64_t n = consts.size() + (sig.family ? label_bound : 0);
    std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
    if (k < consts.size()) return Term::app(consts[k].name);
    return Term::lab(*sig.family, k - consts.size());
  };
  if (max_height == 0 || ops.empty() || std::bernoulli_distribution(0.4)(rng))
    return pick_const();
  const Symbol& op = ops[std::uniform_int_distribution<std::size_t>(0, ops.size() - 1)(rng)];
  TermVec args;
  for (std::size_t i = 0; i < op.arity; ++i)
    args.push_back(random_term(rng, sig, max_height - 1, label_bound, vars));
  return Term::app(op.name, std::move(args));
}

}  // namespace sosfmt::testutil
