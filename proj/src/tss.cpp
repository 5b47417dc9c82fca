#include "sosfmt/tss.hpp"

#include <set>

namespace sosfmt {

namespace {

void check_term(const Signature& sig, const Term& t, const std::string& rule,
                const std::string& where, Verdict& v) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::IdxVar:
      return;
    case TermKind::Lab:
      if (!sig.family || *sig.family != t.name())
        v.fail({rule, {t.str()}, where + ": undeclared label family '" + t.name() + "'"});
      return;
    case TermKind::Iter: {
      auto ar = sig.arity_of(t.name());
      if (!ar)
        v.fail({rule, {t.str()}, where + ": undeclared symbol '" + t.name() + "'"});
      else if (*ar != 1)
        v.fail({rule, {t.str()}, where + ": iterated symbol '" + t.name() + "' must be unary"});
      check_term(sig, t.args()[0], rule, where, v);
      return;
    }
    case TermKind::App: {
      if (t.is_pair()) {
        for (const Term& a : t.args()) check_term(sig, a, rule, where, v);
        return;
      }
      auto ar = sig.arity_of(t.name());
      if (!ar) {
        v.fail({rule, {t.str()}, where + ": undeclared symbol '" + t.name() + "'"});
      } else if (*ar != t.args().size()) {
        v.fail({rule,
                {t.str()},
                where + ": symbol '" + t.name() + "' has arity " + std::to_string(*ar) +
                    " but " + std::to_string(t.args().size()) + " arguments"});
      }
      for (const Term& a : t.args()) check_term(sig, a, rule, where, v);
      return;
    }
  }
}

void check_formula(const Signature& sig, const TriadicFormula& f, const std::string& rule,
                   Verdict& v) {
  check_term(sig, f.source, rule, "source", v);
  check_term(sig, f.label, rule, "label", v);
  check_term(sig, f.target, rule, "target", v);
}

}  // namespace

Verdict validate_tss(const Tss& tss) {
  Verdict v{"validate", Outcome::Pass, {}, {}};

  std::set<std::string> names;
  std::set<std::string> symbol_names;
  for (const Symbol& s : tss.sig.symbols) {
    if (!symbol_names.insert(s.name).second)
      v.fail({"", {s.name}, "duplicate symbol in signature"});
  }
  for (const std::string& l : tss.sig.plain_labels) {
    if (!symbol_names.insert(l).second) v.fail({"", {l}, "duplicate label constant"});
  }
  if (tss.sig.family && symbol_names.count(*tss.sig.family))
    v.fail({"", {*tss.sig.family}, "label family name collides with a declared symbol"});

  for (const Rule& r : tss.rules) {
    if (!names.insert(r.name).second) v.fail({r.name, {}, "duplicate rule name"});
    for (const TriadicFormula& p : r.premises) check_formula(tss.sig, p, r.name, v);
    check_formula(tss.sig, r.conclusion, r.name, v);
  }
  for (const RuleTemplate& t : tss.templates) {
    if (!names.insert(t.name).second) v.fail({t.name, {}, "duplicate rule name"});
    for (const TemplatePremise& p : t.premises) check_formula(tss.sig, p.formula, t.name, v);
    check_formula(tss.sig, t.conclusion, t.name, v);
  }
  if (v.outcome == Outcome::Pass) v.note = "well-formed";
  return v;
}

namespace {

template <typename R, typename T>
R instantiate_rule_at(const T& tpl, std::uint64_t i, std::uint64_t forall_bound) {
  R out;
  out.name = tpl.name + std::to_string(i);
  IndexEnv env{{tpl.index_var, i}};
  auto inst_formula = [&](const auto& f, const IndexEnv& e) {
    auto g = f;
    g.source = instantiate(f.source, e);
    if constexpr (requires { g.label; }) g.label = instantiate(f.label, e);
    g.target = instantiate(f.target, e);
    return g;
  };
  for (const auto& p : tpl.premises) {
    if (p.forall) {
      for (std::uint64_t j = 0; j < forall_bound; ++j) {
        IndexEnv env2 = env;
        env2[*p.forall] = j;
        out.premises.push_back(inst_formula(p.formula, env2));
      }
    } else {
      out.premises.push_back(inst_formula(p.formula, env));
    }
  }
  out.conclusion = inst_formula(tpl.conclusion, env);
  return out;
}

}  // namespace

Rule instantiate_at(const RuleTemplate& tpl, std::uint64_t i, std::uint64_t forall_bound) {
  return instantiate_rule_at<Rule>(tpl, i, forall_bound);
}

DRule instantiate_at(const DRuleTemplate& tpl, std::uint64_t i, std::uint64_t forall_bound) {
  return instantiate_rule_at<DRule>(tpl, i, forall_bound);
}

std::vector<Rule> instantiate_template(const RuleTemplate& tpl, std::uint64_t bound) {
  std::vector<Rule> out;
  out.reserve(bound);
  for (std::uint64_t i = 0; i < bound; ++i) out.push_back(instantiate_at(tpl, i, bound));
  return out;
}

std::vector<DRule> instantiate_template(const DRuleTemplate& tpl, std::uint64_t bound) {
  std::vector<DRule> out;
  out.reserve(bound);
  for (std::uint64_t i = 0; i < bound; ++i) out.push_back(instantiate_at(tpl, i, bound));
  return out;
}

std::vector<Rule> all_rules(const Tss& tss, std::uint64_t bound) {
  std::vector<Rule> out = tss.rules;
  for (const RuleTemplate& t : tss.templates)
    for (Rule& r : instantiate_template(t, bound)) out.push_back(std::move(r));
  return out;
}

std::vector<DRule> all_rules(const DTss& tss, std::uint64_t bound) {
  std::vector<DRule> out = tss.rules;
  for (const DRuleTemplate& t : tss.templates)
    for (DRule& r : instantiate_template(t, bound)) out.push_back(std::move(r));
  return out;
}

std::optional<Subst> unifies_with_rule(const TriadicFormula& tr, const Rule& rule) {
  Subst sigma;
  if (!match_into(rule.conclusion.source, tr.source, sigma)) return std::nullopt;
  if (!match_into(rule.conclusion.label, tr.label, sigma)) return std::nullopt;
  if (!match_into(rule.conclusion.target, tr.target, sigma)) return std::nullopt;
  for (auto it = sigma.begin(); it != sigma.end();) {
    if (it->second.is_var() && it->second.name() == it->first)
      it = sigma.erase(it);
    else
      ++it;
  }
  return sigma;
}

std::optional<Subst> unifies_with_rule(const DyadicFormula& tr, const DRule& rule) {
  Subst sigma;
  if (!match_into(rule.conclusion.source, tr.source, sigma)) return std::nullopt;
  if (!match_into(rule.conclusion.target, tr.target, sigma)) return std::nullopt;
  for (auto it = sigma.begin(); it != sigma.end();) {
    if (it->second.is_var() && it->second.name() == it->first)
      it = sigma.erase(it);
    else
      ++it;
  }
  return sigma;
}

}  // namespace sosfmt
