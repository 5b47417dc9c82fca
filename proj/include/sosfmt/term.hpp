#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sosfmt/error.hpp"

namespace sosfmt {

/// Index expression attached to label-family constants and iterated symbols.
/// `Concrete` is a plain natural, `Affine` stands for `var + value` where
/// `var` is a template or premise-family index, and `Wild` matches any
/// family index (measure patterns only).
enum class IndexKind { Concrete, Affine, Wild };

struct IndexExpr {
  IndexKind kind = IndexKind::Concrete;
  std::uint64_t value = 0;
  std::string var;  // Affine only

  static IndexExpr concrete(std::uint64_t v) { return {IndexKind::Concrete, v, {}}; }
  static IndexExpr affine(std::string var, std::uint64_t offset) {
    return {IndexKind::Affine, offset, std::move(var)};
  }
  static IndexExpr wild() { return {IndexKind::Wild, 0, {}}; }

  bool operator==(const IndexExpr& o) const {
    return kind == o.kind && value == o.value && var == o.var;
  }
};

/// Assignment of concrete values to index variables.
using IndexEnv = std::map<std::string, std::uint64_t>;

enum class TermKind {
  Var,     // variable
  App,     // symbol application (constants have no args)
  Lab,     // indexed-family constant l(e)
  Iter,    // g^(i+c)(t), template bodies only
  IdxVar,  // y@i, template bodies only
};

class Term;
using TermVec = std::vector<Term>;

struct TermNode {
  TermKind kind;
  std::string name;  // Var name / App symbol / Lab family / Iter symbol / IdxVar base
  IndexExpr index;   // Lab index or Iter exponent
  TermVec args;      // App children; Iter has exactly one
  std::size_t hash;
};

/// Immutable first-order term with shared structure. Dyadic pair components
/// are modelled as an application of the reserved symbol `pair_symbol()`.
class Term {
 public:
  Term() = default;  // empty; only as a container placeholder

  static Term var(std::string name);
  static Term app(std::string symbol, TermVec args = {});
  static Term lab(std::string family, std::uint64_t index);
  static Term lab_expr(std::string family, IndexExpr e);
  static Term iter(std::string symbol, IndexExpr exponent, Term arg);
  static Term idx_var(std::string base, std::string index_var);
  static Term pair(Term first, Term second);

  static const std::string& pair_symbol();

  bool empty() const { return node_ == nullptr; }
  TermKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const IndexExpr& index() const { return node_->index; }
  const TermVec& args() const { return node_->args; }
  std::size_t hash() const { return node_->hash; }

  bool is_var() const { return node_->kind == TermKind::Var; }
  bool is_app() const { return node_->kind == TermKind::App; }
  bool is_lab() const { return node_->kind == TermKind::Lab; }
  bool is_pair() const { return is_app() && node_->name == pair_symbol(); }

  /// No Iter/IdxVar nodes and no Affine/Wild indices anywhere.
  bool concrete() const;
  /// Concrete and variable-free.
  bool closed() const;
  /// Mentions the given index variable (in an Affine index, an iterated
  /// symbol's exponent, or an indexed variable name).
  bool mentions_index_var(const std::string& v) const;

  std::size_t height() const;
  std::size_t size() const;

  void collect_vars(std::set<std::string>& out) const;
  std::set<std::string> vars() const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const { return compare(*this, o) < 0; }

  static int compare(const Term& a, const Term& b);

  std::string str() const;

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

struct Symbol {
  std::string name;
  std::size_t arity = 0;
};

/// Function symbols plus an optional countable family of indexed label
/// constants. Plain labels are ordinary constants kept apart for rendering.
struct Signature {
  std::vector<Symbol> symbols;
  std::vector<std::string> plain_labels;
  std::optional<std::string> family;

  std::optional<std::size_t> arity_of(const std::string& name) const;
  bool declares(const std::string& name) const;
  bool has_constant() const;
};

/// Finite mapping from variable names to terms; application is simultaneous.
using Subst = std::map<std::string, Term>;

Term apply_subst(const Subst& sigma, const Term& t);

/// Finds the minimal sigma with sigma(pattern) == subject. Subject variables
/// are treated as rigid. Wild family indices in the pattern match any
/// concrete index. Identity bindings are dropped.
std::optional<Subst> match(const Term& pattern, const Term& subject);
/// As `match` but threading pre-existing bindings.
bool match_into(const Term& pattern, const Term& subject, Subst& sigma);

/// Most general unifier with occurs check, on concrete terms. Wild family
/// indices (from measure patterns) unify liberally with any index and with
/// variables; the result is then an approximation used only for
/// unifiability pre-checks.
std::optional<Subst> unify(const Term& a, const Term& b);

/// True iff a bijective variable renaming carries a to b.
bool alpha_variant(const Term& a, const Term& b);

/// Renames every variable in t with the given suffix appended.
Term rename_vars(const Term& t, const std::string& suffix);

/// Replaces index variables bound in env by their values: affine family
/// indices become concrete, iterated symbols unfold, and indexed variables
/// become plain variables `base<k>`. Unbound index variables are kept.
Term instantiate(const Term& t, const IndexEnv& env);

/// All closed terms of height <= max_height over the signature, family
/// indices < label_bound, in the deterministic term order.
std::vector<Term> enumerate_closed_terms(const Signature& sig, std::size_t max_height,
                                         std::uint64_t label_bound);

}  // namespace sosfmt
