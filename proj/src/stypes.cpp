#include "sosfmt/stypes.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace sosfmt {

namespace {

std::set<std::string> index_vars_of(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    switch (u.kind()) {
      case TermKind::IdxVar:
        out.insert(u.index().var);
        return;
      case TermKind::Lab:
        if (u.index().kind == IndexKind::Affine) out.insert(u.index().var);
        return;
      case TermKind::Iter:
        if (u.index().kind == IndexKind::Affine) out.insert(u.index().var);
        walk(u.args()[0]);
        return;
      case TermKind::App:
        for (const Term& a : u.args()) walk(a);
        return;
      case TermKind::Var:
        return;
    }
  };
  walk(t);
  return out;
}

std::uint64_t tss_horizon(const DTss& tss) {
  std::uint64_t depth = 0, offset = 0;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    depth = std::max<std::uint64_t>(depth, t.height());
    if (t.is_lab() || t.kind() == TermKind::Iter)
      offset = std::max<std::uint64_t>(offset, t.index().value);
    if (t.is_app() || t.kind() == TermKind::Iter)
      for (const Term& a : t.args()) walk(a);
  };
  auto scan = [&](const DyadicFormula& f) {
    walk(f.source);
    walk(f.target);
  };
  for (const DRule& r : tss.rules) {
    scan(r.conclusion);
    for (const DyadicFormula& p : r.premises) scan(p);
  }
  for (const DRuleTemplate& t : tss.templates) {
    scan(t.conclusion);
    for (const DTemplatePremise& p : t.premises) scan(p.formula);
  }
  return std::min<std::uint64_t>(12, std::max<std::uint64_t>(3, depth + offset + 2));
}

}  // namespace

std::string SType::str() const {
  std::ostringstream os;
  os << "<" << source.str() << ", {";
  bool first = true;
  for (const auto& [v, ws] : psi) {
    if (!first) os << ", ";
    first = false;
    os << v.str() << " -> {";
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (i) os << ", ";
      os << ws[i].str();
    }
    os << "}";
  }
  os << "}>";
  return os.str();
}

STypeResult compute_stype(const DRule& rule, const SupportResult& support) {
  STypeResult out;
  out.rule = rule.name;
  std::vector<Term> dom = support.support_of(rule.conclusion.source);
  std::map<Term, std::set<Term>> psi;
  for (const Term& v : dom) psi[v];
  for (const DyadicFormula& p : rule.premises) {
    auto it = psi.find(p.source);
    if (it == psi.end()) {
      out.reason = "source-outside-support";
      return out;
    }
    it->second.insert(p.target);
  }
  SType st;
  st.source = rule.conclusion.source;
  for (const auto& [v, ws] : psi) st.psi.emplace_back(v, std::vector<Term>(ws.begin(), ws.end()));
  out.stype = std::move(st);
  return out;
}

// ---------------------------------------------------------------------------
// Uniformity
// ---------------------------------------------------------------------------

Verdict check_uniformity(const DTss& tss, UniformityMode mode) {
  Verdict v;
  v.check = mode == UniformityMode::Sources ? "uniform-sources" : "uniform-premise-targets";
  std::uint64_t K = tss_horizon(tss);

  if (mode == UniformityMode::Sources) {
    std::vector<std::pair<std::string, Term>> sources;
    for (const DRule& r : tss.rules) sources.emplace_back(r.name, r.conclusion.source);
    for (const DRuleTemplate& t : tss.templates) {
      if (t.conclusion.source.mentions_index_var(t.index_var)) {
        for (std::uint64_t i = 0; i <= K; ++i)
          sources.emplace_back(t.name + std::to_string(i),
                               instantiate(t.conclusion.source, {{t.index_var, i}}));
      } else {
        // All instances share one source; two representatives detect
        // indexed variables hiding in it.
        sources.emplace_back(t.name + "0", instantiate(t.conclusion.source, {{t.index_var, 0}}));
        sources.emplace_back(t.name + "1", instantiate(t.conclusion.source, {{t.index_var, 1}}));
      }
    }
    for (std::size_t a = 0; a < sources.size(); ++a)
      for (std::size_t b = a + 1; b < sources.size(); ++b) {
        const Term& s1 = sources[a].second;
        const Term& s2 = sources[b].second;
        if (s1 != s2 && alpha_variant(s1, s2))
          v.fail({sources[a].first + ", " + sources[b].first,
                  {s1.str(), s2.str()},
                  "sources are alpha-variants but not equal"});
      }
    if (v.outcome == Outcome::Pass) v.note = "sources uniform";
    return v;
  }

  // Premise targets, grouped by their (syntactically equal) source.
  std::vector<std::tuple<std::string, Term, Term>> premises;
  auto add_rule = [&](const std::string& name, const DRule& r) {
    for (const DyadicFormula& p : r.premises) premises.emplace_back(name, p.source, p.target);
  };
  for (const DRule& r : tss.rules) add_rule(r.name, r);
  for (const DRuleTemplate& t : tss.templates)
    for (std::uint64_t i = 0; i <= K; ++i)
      add_rule(t.name + std::to_string(i), instantiate_at(t, i, K + 1));
  std::map<Term, std::vector<std::pair<std::string, Term>>> by_source;
  for (const auto& [name, src, tgt] : premises) by_source[src].emplace_back(name, tgt);
  std::set<std::pair<std::string, std::string>> reported;
  for (const auto& [src, targets] : by_source)
    for (std::size_t a = 0; a < targets.size(); ++a)
      for (std::size_t b = a + 1; b < targets.size(); ++b) {
        const Term& w1 = targets[a].second;
        const Term& w2 = targets[b].second;
        if (w1 != w2 && alpha_variant(w1, w2)) {
          if (reported.emplace(targets[a].first, targets[b].first).second)
            v.fail({targets[a].first + ", " + targets[b].first,
                    {src.str(), w1.str(), w2.str()},
                    "targets of premises with this source are alpha-variants but not equal"});
        }
      }
  if (v.outcome == Outcome::Pass) v.note = "premise targets uniform";
  return v;
}

// ---------------------------------------------------------------------------
// Bounded-nondeterminism format
// ---------------------------------------------------------------------------

namespace {

void bn_check_rule(const std::string& name, const Term& source,
                   const std::vector<Term>& premise_sources,
                   const std::vector<Term>& premise_targets, const Term& target, Verdict& v) {
  std::set<std::string> src_vars = source.vars();
  for (const Term& ps : premise_sources)
    for (const std::string& x : ps.vars())
      if (!src_vars.count(x))
        v.fail({name,
                {x, ps.str()},
                "condition (i): premise-source variable does not occur in the source"});
  std::set<std::string> allowed = src_vars;
  for (const Term& pt : premise_targets)
    for (const std::string& x : pt.vars()) allowed.insert(x);
  for (const std::string& x : target.vars())
    if (!allowed.count(x))
      v.fail({name,
              {x, target.str()},
              "condition (ii): target variable occurs in neither the source nor any premise "
              "target"});
}

}  // namespace

Verdict check_bn_format(const DTss& tss) {
  Verdict v;
  v.check = "bn-format";
  for (const DRule& r : tss.rules) {
    std::vector<Term> ps, pt;
    for (const DyadicFormula& p : r.premises) {
      ps.push_back(p.source);
      pt.push_back(p.target);
    }
    bn_check_rule(r.name, r.conclusion.source, ps, pt, r.conclusion.target, v);
  }
  for (const DRuleTemplate& t : tss.templates) {
    std::vector<Term> ps, pt;
    for (const DTemplatePremise& p : t.premises) {
      ps.push_back(p.formula.source);
      pt.push_back(p.formula.target);
    }
    bn_check_rule(t.name, t.conclusion.source, ps, pt, t.conclusion.target, v);
  }
  if (v.outcome == Outcome::Pass) v.note = "all rules in format";
  return v;
}

// ---------------------------------------------------------------------------
// Finite inhabitation
// ---------------------------------------------------------------------------

namespace {

// Valid-instance analysis of one template: for which indices does every
// premise source lie in the support with a finite target set?
struct FamilyAnalysis {
  IndexSet valid;
  bool infinite_psi_everywhere = false;
};

FamilyAnalysis family_valid_indices(const DRuleTemplate& t, const MeasureAnalysis& ma) {
  FamilyAnalysis fam;
  std::uint64_t K = ma.horizon();
  fam.valid.threshold = K;
  fam.valid.below.assign(K, Tri::Yes);
  fam.valid.tail = Tri::Yes;
  auto meet = [&](const IndexSet& def) {
    for (std::uint64_t i = 0; i < K; ++i) {
      Tri d = def.at(i);
      if (d == Tri::No)
        fam.valid.below[i] = Tri::No;
      else if (d == Tri::Unknown && fam.valid.below[i] == Tri::Yes)
        fam.valid.below[i] = Tri::Unknown;
    }
    if (def.tail == Tri::No)
      fam.valid.tail = Tri::No;
    else if (def.tail == Tri::Unknown && fam.valid.tail == Tri::Yes)
      fam.valid.tail = Tri::Unknown;
  };
  for (const DTemplatePremise& p : t.premises) {
    const Term& v = p.formula.source;
    if (p.forall) {
      bool src_shares = !v.mentions_index_var(*p.forall);
      bool targets_vary = p.formula.target.mentions_index_var(*p.forall);
      if (src_shares && targets_vary) {
        // One source collecting a premise target per family member: psi is
        // infinite for every instance.
        fam.infinite_psi_everywhere = true;
        fam.valid.below.assign(K, Tri::No);
        fam.valid.tail = Tri::No;
        return fam;
      }
    }
    if (v.mentions_index_var(t.index_var)) {
      meet(ma.exists_defined_indices(v, t.index_var));
    } else {
      Tri e = ma.exists_defined(v);
      IndexSet flat;
      flat.threshold = K;
      flat.below.assign(K, e);
      flat.tail = e;
      meet(flat);
    }
  }
  return fam;
}

std::optional<SType> stype_of_instance(const DRuleTemplate& t, std::uint64_t i,
                                       const SupportResult& support, const MeasureAnalysis& ma) {
  DRule inst = instantiate_at(t, i, 1);  // forall premises at a representative member
  Term src = inst.conclusion.source;
  std::vector<Term> dom = support.support_of(src);
  if (dom.empty()) {
    // Sources instantiated beyond the recorded horizon: rebuild the domain
    // from this rule's own measured premises.
    std::set<Term> d;
    for (const DyadicFormula& p : inst.premises)
      if (ma.exists_defined(p.source) == Tri::Yes) d.insert(p.source);
    dom.assign(d.begin(), d.end());
  }
  std::map<Term, std::set<Term>> psi;
  for (const Term& v : dom) psi[v];
  for (const DyadicFormula& p : inst.premises) {
    auto it = psi.find(p.source);
    if (it == psi.end()) {
      if (ma.exists_defined(p.source) != Tri::Yes) return std::nullopt;
      it = psi.emplace(p.source, std::set<Term>{}).first;
    }
    it->second.insert(p.target);
  }
  SType st;
  st.source = src;
  for (const auto& [v, ws] : psi) st.psi.emplace_back(v, std::vector<Term>(ws.begin(), ws.end()));
  return st;
}

}  // namespace

InhabitationResult check_finitely_inhabited(const DTss& tss, const SupportResult& support,
                                            const StratMeasure& m, const StratBounds& bounds) {
  MeasureAnalysis ma(tss, m, bounds);
  InhabitationResult res;
  res.verdict.check = "finite-inhabitation";

  std::map<std::string, std::vector<std::string>> groups;  // stype text -> rules
  auto add = [&](const std::string& rule, const SType& st) { groups[st.str()].push_back(rule); };

  for (const DRule& r : tss.rules) {
    STypeResult st = compute_stype(r, support);
    if (st.stype) add(r.name, *st.stype);
  }

  for (const DRuleTemplate& t : tss.templates) {
    FamilyAnalysis fam = family_valid_indices(t, ma);
    for (std::uint64_t i = 0; i < fam.valid.threshold; ++i) {
      if (fam.valid.below[i] != Tri::Yes) continue;
      if (auto st = stype_of_instance(t, i, support, ma)) add(t.name + std::to_string(i), *st);
    }
    if (fam.valid.tail == Tri::Yes) {
      auto a = stype_of_instance(t, fam.valid.threshold, support, ma);
      auto b = stype_of_instance(t, fam.valid.threshold + 1, support, ma);
      if (!a || !b) {
        res.verdict.inconclusive(
            {t.name, {}, "family classification failed beyond the analysis horizon"});
      } else if (*a == *b) {
        res.verdict.fail({t.name,
                          {a->str()},
                          "S-type is shared by infinitely many valid instances"});
      }
      // Index-dependent S-types: each instance inhabits its own type.
    } else if (fam.valid.tail == Tri::Unknown) {
      res.verdict.inconclusive(
          {t.name, {}, "validity of the family beyond the analysis horizon is undecided"});
    }
  }

  for (const auto& [text, rules] : groups) {
    res.max_group = std::max(res.max_group, rules.size());
    if (rules.size() > 1) {
      // Finitely many concrete sharers are fine; record for transparency.
      std::string who;
      for (const std::string& r : rules) who += (who.empty() ? "" : ", ") + r;
      if (res.verdict.note.empty()) res.verdict.note = "shared: " + text + " by " + who;
    }
  }
  if (res.verdict.outcome == Outcome::Pass && res.verdict.note.empty())
    res.verdict.note = "every S-type finitely inhabited";
  return res;
}

// ---------------------------------------------------------------------------
// The rule-format pipeline
// ---------------------------------------------------------------------------

FormatReport check_rule_format(const Tss& tss, DyadicKind kind, const StratMeasure& m,
                               const StratBounds& bounds) {
  FormatReport rep;
  rep.kind = kind;
  rep.property = property_of_kind(kind);
  rep.property_phrase = property_name(rep.property);

  DTss d = transform_tss(tss, kind);
  StratResult strat = check_strat_conditions(d, m, bounds);
  rep.subchecks.push_back(strat.verdict);

  bool measured = strat.verdict.outcome != Outcome::Fail;
  if (measured) {
    rep.junk = detect_junk_rules(d, m, bounds);
    rep.subchecks.push_back(rep.junk.verdict);
    rep.support = restricted_support(d, m, bounds);
    rep.subchecks.push_back(rep.support.verdict);

    Verdict stv;
    stv.check = "s-types";
    MeasureAnalysis ma(d, m, bounds);
    for (const DRule& r : d.rules) {
      rep.stypes.push_back(compute_stype(r, rep.support));
      if (!rep.stypes.back().stype)
        stv.witnesses.push_back({r.name, {}, "no valid S-type: " + rep.stypes.back().reason});
    }
    for (const DRuleTemplate& t : d.templates) {
      FamilyAnalysis fam = family_valid_indices(t, ma);
      for (std::uint64_t i = 0; i < bounds.labels; ++i) {
        STypeResult r;
        r.rule = t.name + std::to_string(i);
        if (fam.valid.at(i) == Tri::Yes)
          r.stype = stype_of_instance(t, i, rep.support, ma);
        if (!r.stype)
          r.reason = fam.infinite_psi_everywhere ? "infinite-psi" : "source-outside-support";
        rep.stypes.push_back(std::move(r));
      }
    }
    stv.note = std::to_string(rep.stypes.size()) + " rule(s) inspected";
    rep.subchecks.push_back(stv);
  }

  rep.subchecks.push_back(check_uniformity(d, UniformityMode::Sources));
  rep.subchecks.push_back(check_uniformity(d, UniformityMode::PremiseTargets));

  if (measured) {
    InhabitationResult inhab = check_finitely_inhabited(d, rep.support, m, bounds);
    rep.subchecks.push_back(inhab.verdict);
  } else {
    Verdict skipped;
    skipped.check = "finite-inhabitation";
    skipped.outcome = Outcome::Inconclusive;
    skipped.note = "not evaluated: stratification conditions failed";
    rep.subchecks.push_back(skipped);
  }

  rep.subchecks.push_back(check_bn_format(d));

  rep.outcome = Outcome::Pass;
  for (const Verdict& v : rep.subchecks) {
    if (v.check == "junk-rules" || v.check == "s-types") continue;  // informational
    rep.outcome = combine(rep.outcome, v.outcome);
  }
  return rep;
}

Json FormatReport::to_json() const {
  Json j;
  j["check"] = "rule-format";
  j["kind"] = kind.token();
  j["property"] = property_roman(property);
  j["property_phrase"] = property_phrase;
  j["outcome"] = outcome_name(outcome);
  Json subs = Json::array();
  for (const Verdict& v : subchecks) subs.push_back(sosfmt::to_json(v));
  j["subchecks"] = subs;
  Json sup = Json::array();
  for (const auto& [s, vs] : support.map) {
    Json e;
    e["source"] = s.str();
    Json arr = Json::array();
    for (const Term& v : vs) arr.push_back(v.str());
    e["support"] = arr;
    sup.push_back(e);
  }
  j["support"] = sup;
  Json jk = Json::array();
  for (const std::string& r : junk.rules) jk.push_back(r);
  j["junk"] = jk;
  if (!junk.symbolic.empty()) j["junk_symbolic"] = junk.symbolic;
  Json sts = Json::array();
  for (const STypeResult& st : stypes) {
    Json e;
    e["rule"] = st.rule;
    if (st.stype)
      e["stype"] = st.stype->str();
    else
      e["reason"] = st.reason;
    sts.push_back(e);
  }
  j["stypes"] = sts;
  return j;
}

std::string FormatReport::text() const {
  std::ostringstream os;
  os << "rule format " << kind.display() << " -> property (" << property_roman(property) << ") "
     << property_phrase << "\n";
  for (const Verdict& v : subchecks) os << "  " << render_text(v);
  if (outcome == Outcome::Pass) {
    os << "pass: " << property_phrase << " (the TSS is " << kind.display() << "-finite)\n";
  } else {
    os << outcome_name(outcome) << ": the format conditions were not established\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Legacy eta-types
// ---------------------------------------------------------------------------

std::vector<Term> EtaMap::support_of(const Term& source) const {
  for (const auto& [s, vs] : entries)
    if (s == source) return vs;
  return {};
}

namespace {

std::optional<SType> eta_type_of(const Term& source, const std::vector<TriadicFormula>& premises,
                                 const EtaMap& eta) {
  std::map<Term, std::set<Term>> psi;
  for (const Term& u : eta.support_of(source)) psi[u];
  for (const TriadicFormula& p : premises) {
    auto it = psi.find(p.source);
    if (it != psi.end()) it->second.insert(p.label);
  }
  SType st;
  st.source = source;
  for (const auto& [u, ls] : psi) st.psi.emplace_back(u, std::vector<Term>(ls.begin(), ls.end()));
  return st;
}

}  // namespace

LegacyReport legacy_eta_check(const Tss& tss, const EtaMap& eta, const StratMeasure* m,
                              const StratBounds& bounds) {
  auto ground = [](const Term& l) { return l.vars().empty(); };
  for (const Rule& r : tss.rules) {
    if (!ground(r.conclusion.label)) throw Error("legacy baseline requires ground labels");
    for (const TriadicFormula& p : r.premises)
      if (!ground(p.label)) throw Error("legacy baseline requires ground labels");
  }
  for (const RuleTemplate& t : tss.templates) {
    if (!ground(t.conclusion.label)) throw Error("legacy baseline requires ground labels");
    for (const TemplatePremise& p : t.premises)
      if (!ground(p.formula.label)) throw Error("legacy baseline requires ground labels");
  }

  LegacyReport rep;
  DTss d1 = transform_tss(tss, {1, Proj::Id});
  std::uint64_t K = tss_horizon(d1);

  Verdict inhab;
  inhab.check = "eta-inhabitation";
  std::map<std::string, std::vector<std::string>> groups;

  for (const Rule& r : tss.rules) {
    EtaTypeResult e;
    e.rule = r.name;
    e.eta_type = eta_type_of(r.conclusion.source, r.premises, eta);
    groups[e.eta_type->str()].push_back(r.name);
    rep.eta_types.push_back(std::move(e));
  }

  for (const RuleTemplate& t : tss.templates) {
    // A premise family with one shared source and member-dependent labels
    // needs an infinite label set: no instance has a valid eta-type.
    bool infinite_psi = false;
    for (const TemplatePremise& p : t.premises)
      if (p.forall && !p.formula.source.mentions_index_var(*p.forall) &&
          p.formula.source.vars().empty() &&
          p.formula.label.mentions_index_var(*p.forall) &&
          !eta.support_of(instantiate(t.conclusion.source, {{t.index_var, 0}})).empty()) {
        // Only premises whose source sits in the support contribute.
        std::vector<Term> dom =
            eta.support_of(instantiate(t.conclusion.source, {{t.index_var, 0}}));
        Term src0 = instantiate(p.formula.source, {{t.index_var, 0}, {*p.forall, 0}});
        if (std::find(dom.begin(), dom.end(), src0) != dom.end()) infinite_psi = true;
      }
    if (infinite_psi) {
      for (std::uint64_t i = 0; i < bounds.labels; ++i) {
        EtaTypeResult e;
        e.rule = t.name + std::to_string(i);
        e.reason = "infinite-psi";
        rep.eta_types.push_back(std::move(e));
      }
      continue;
    }
    auto at = [&](std::uint64_t i) {
      Rule inst = instantiate_at(t, i, 1);
      return eta_type_of(inst.conclusion.source, inst.premises, eta);
    };
    for (std::uint64_t i = 0; i < bounds.labels; ++i) {
      EtaTypeResult e;
      e.rule = t.name + std::to_string(i);
      e.eta_type = at(i);
      rep.eta_types.push_back(std::move(e));
    }
    for (std::uint64_t i = 0; i < K; ++i) groups[at(i)->str()].push_back(t.name);
    auto a = at(K), b = at(K + 1);
    if (*a == *b)
      inhab.fail({t.name, {a->str()}, "eta-type is shared by infinitely many instances"});
  }
  if (inhab.outcome == Outcome::Pass) inhab.note = "every eta-type finitely inhabited";
  rep.subchecks.push_back(inhab);

  if (m) {
    StratResult strat = check_strat_conditions(d1, *m, bounds);
    rep.subchecks.push_back(strat.verdict);
  }

  rep.outcome = Outcome::Pass;
  for (const Verdict& v : rep.subchecks) rep.outcome = combine(rep.outcome, v.outcome);
  return rep;
}

Json LegacyReport::to_json() const {
  Json j;
  j["check"] = "legacy-eta";
  j["outcome"] = outcome_name(outcome);
  Json subs = Json::array();
  for (const Verdict& v : subchecks) subs.push_back(sosfmt::to_json(v));
  j["subchecks"] = subs;
  Json ets = Json::array();
  for (const EtaTypeResult& e : eta_types) {
    Json x;
    x["rule"] = e.rule;
    if (e.eta_type)
      x["eta_type"] = e.eta_type->str();
    else
      x["reason"] = e.reason;
    ets.push_back(x);
  }
  j["eta_types"] = ets;
  return j;
}

std::string LegacyReport::text() const {
  std::ostringstream os;
  os << "legacy eta-type baseline\n";
  for (const Verdict& v : subchecks) os << "  " << render_text(v);
  os << outcome_name(outcome) << "\n";
  return os.str();
}

}  // namespace sosfmt
