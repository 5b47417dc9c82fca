#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sosfmt/formula.hpp"
#include "sosfmt/verdict.hpp"

namespace sosfmt {

struct Rule {
  std::string name;
  std::vector<TriadicFormula> premises;
  TriadicFormula conclusion;
};

/// A template premise optionally ranges over its own countable index
/// (`forall j. ...`), standing for one premise per value of j.
struct TemplatePremise {
  TriadicFormula formula;
  std::optional<std::string> forall;
};

/// One rule per natural value of the index variable. The index may occur in
/// family subscripts l(i+c), iteration exponents g^(i+c) and indexed
/// variable names y@i.
struct RuleTemplate {
  std::string name;
  std::string index_var;
  std::vector<TemplatePremise> premises;
  TriadicFormula conclusion;
};

struct Tss {
  Signature sig;
  std::vector<Rule> rules;
  std::vector<RuleTemplate> templates;
};

// Dyadic counterparts, produced by the dyadic transformations.

struct DRule {
  std::string name;
  std::vector<DyadicFormula> premises;
  DyadicFormula conclusion;
};

struct DTemplatePremise {
  DyadicFormula formula;
  std::optional<std::string> forall;
};

struct DRuleTemplate {
  std::string name;
  std::string index_var;
  std::vector<DTemplatePremise> premises;
  DyadicFormula conclusion;
};

struct DTss {
  Signature sig;
  DyadicKind kind;
  std::vector<DRule> rules;
  std::vector<DRuleTemplate> templates;
};

/// Arity correctness, name uniqueness and well-formed index usage; every
/// violation becomes a witness.
Verdict validate_tss(const Tss& tss);

/// Rules for index values 0..bound-1, iterations unfolded, family indices
/// evaluated, names suffixed with the index value. `forall` premises are
/// expanded over the same bound.
std::vector<Rule> instantiate_template(const RuleTemplate& tpl, std::uint64_t bound);
std::vector<DRule> instantiate_template(const DRuleTemplate& tpl, std::uint64_t bound);

Rule instantiate_at(const RuleTemplate& tpl, std::uint64_t i, std::uint64_t forall_bound);
DRule instantiate_at(const DRuleTemplate& tpl, std::uint64_t i, std::uint64_t forall_bound);

/// All rules of the TSS with templates instantiated below the bound.
std::vector<Rule> all_rules(const Tss& tss, std::uint64_t bound);
std::vector<DRule> all_rules(const DTss& tss, std::uint64_t bound);

/// The substitution carrying the rule's conclusion onto the closed formula,
/// when one exists.
std::optional<Subst> unifies_with_rule(const TriadicFormula& tr, const Rule& rule);
std::optional<Subst> unifies_with_rule(const DyadicFormula& tr, const DRule& rule);

}  // namespace sosfmt
