#include "sosfmt/strat.hpp"

#include <algorithm>
#include <functional>

namespace sosfmt {

namespace {

constexpr std::size_t kFalsifyCap = 500000;

void index_vars_of(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      return;
    case TermKind::IdxVar:
      out.insert(t.index().var);
      return;
    case TermKind::Lab:
      if (t.index().kind == IndexKind::Affine) out.insert(t.index().var);
      return;
    case TermKind::Iter:
      if (t.index().kind == IndexKind::Affine) out.insert(t.index().var);
      index_vars_of(t.args()[0], out);
      return;
    case TermKind::App:
      for (const Term& a : t.args()) index_vars_of(a, out);
      return;
  }
}

std::set<std::string> index_vars_of(const Term& t) {
  std::set<std::string> out;
  index_vars_of(t, out);
  return out;
}

bool linear(const Term& t) {
  std::set<std::string> seen;
  bool ok = true;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.is_var() || u.kind() == TermKind::IdxVar) {
      if (!seen.insert(u.name()).second) ok = false;
      return;
    }
    if (u.is_app() || u.kind() == TermKind::Iter)
      for (const Term& a : u.args()) walk(a);
  };
  walk(t);
  return ok;
}

void scan_depth(const Term& t, std::uint64_t& depth, std::uint64_t& offset) {
  depth = std::max<std::uint64_t>(depth, t.height());
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.is_lab() || u.kind() == TermKind::Iter)
      offset = std::max<std::uint64_t>(offset, u.index().value);
    if (u.is_app() || u.kind() == TermKind::Iter)
      for (const Term& a : u.args()) walk(a);
  };
  walk(t);
}

// Odometer over substitutions of the given variables into the universe;
// returns false when the assignment count would exceed the cap.
bool for_each_grounding(const std::set<std::string>& vars, const std::vector<Term>& universe,
                        const std::function<bool(const Subst&)>& body) {
  double combos = 1;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    combos *= static_cast<double>(universe.size());
    if (combos > static_cast<double>(kFalsifyCap)) return false;
  }
  std::vector<std::string> vs(vars.begin(), vars.end());
  std::vector<std::size_t> idx(vs.size(), 0);
  while (true) {
    Subst sigma;
    for (std::size_t k = 0; k < vs.size(); ++k) sigma[vs[k]] = universe[idx[k]];
    if (!body(sigma)) return true;  // early stop requested
    std::size_t k = 0;
    for (; k < vs.size(); ++k) {
      if (++idx[k] < universe.size()) break;
      idx[k] = 0;
    }
    if (k == vs.size()) return true;
  }
}

Term ground_first(const Term& t, const std::vector<Term>& universe) {
  Subst sigma;
  for (const std::string& v : t.vars()) sigma[v] = universe.front();
  return apply_subst(sigma, t);
}

// Small instances first: witnesses and bounded searches prefer them.
std::vector<Term> by_size(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return terms;
}

}  // namespace

MeasureAnalysis::MeasureAnalysis(const DTss& tss, const StratMeasure& measure,
                                 const StratBounds& bounds)
    : sig_(tss.sig), measure_(measure), bounds_(bounds) {
  universe_ = by_size(enumerate_closed_terms(sig_, bounds.height, bounds.labels));

  std::uint64_t depth = 0, offset = 0;
  for (const MeasureClause& c : measure_.clauses) scan_depth(c.pattern, depth, offset);
  auto scan_formula = [&](const DyadicFormula& f) {
    scan_depth(f.source, depth, offset);
    scan_depth(f.target, depth, offset);
  };
  for (const DRule& r : tss.rules) {
    scan_formula(r.conclusion);
    for (const DyadicFormula& p : r.premises) scan_formula(p);
  }
  for (const DRuleTemplate& t : tss.templates) {
    scan_formula(t.conclusion);
    for (const DTemplatePremise& p : t.premises) scan_formula(p.formula);
  }
  horizon_ = std::min<std::uint64_t>(16, std::max<std::uint64_t>(4, depth + offset + 3));

  // A constructor is covered when some clause is a catch-all for it:
  // distinct-variable arguments (and a variable passenger for pair sorts).
  bool pair = measure_.pair_sorted();
  auto catch_all_for = [&](const std::string& ctor, bool family) {
    for (const MeasureClause& c : measure_.clauses) {
      Term head = c.pattern;
      if (pair) {
        if (!c.pattern.is_pair() || !c.pattern.args()[1].is_var()) continue;
        head = c.pattern.args()[0];
      }
      if (family) {
        if (head.is_lab() && head.name() == ctor && head.index().kind == IndexKind::Wild)
          return true;
        continue;
      }
      if (!head.is_app() || head.name() != ctor) continue;
      std::set<std::string> seen;
      bool all_vars = true;
      for (const Term& a : head.args())
        if (!a.is_var() || !seen.insert(a.name()).second) all_vars = false;
      if (pair && seen.count(c.pattern.args()[1].name())) all_vars = false;
      if (all_vars) return true;
    }
    return false;
  };
  total_all_ = true;
  for (const Symbol& s : sig_.symbols)
    if (!catch_all_for(s.name, false)) total_all_ = false;
  for (const std::string& l : sig_.plain_labels)
    if (!catch_all_for(l, false)) total_all_ = false;
  if (sig_.family && !catch_all_for(*sig_.family, true)) total_all_ = false;
}

Tri MeasureAnalysis::exists_defined_concrete(const Term& v) const {
  if (v.closed()) return eval(v) ? Tri::Yes : Tri::No;
  if (total_all_) return Tri::Yes;
  bool any_unifies = false;
  Term vr = rename_vars(v, "#s");
  for (const MeasureClause& c : measure_.clauses)
    if (unify(vr, rename_vars(c.pattern, "#p"))) {
      any_unifies = true;
      break;
    }
  if (!any_unifies) return Tri::No;
  bool found = false;
  bool complete = for_each_grounding(v.vars(), universe_, [&](const Subst& sigma) {
    if (eval(apply_subst(sigma, v))) {
      found = true;
      return false;
    }
    return true;
  });
  if (found) return Tri::Yes;
  (void)complete;
  return Tri::Unknown;
}

Tri MeasureAnalysis::exists_defined(const Term& v) const {
  if (!v.concrete()) {
    std::set<std::string> ivs = index_vars_of(v);
    if (ivs.size() != 1) return Tri::Unknown;
    IndexSet s = exists_defined_indices(v, *ivs.begin());
    if (s.all(Tri::Yes)) return Tri::Yes;
    if (s.all(Tri::No)) return Tri::No;
    if (s.any(Tri::Yes)) return Tri::Yes;  // some index admits a defined instance
    return Tri::Unknown;
  }
  return exists_defined_concrete(v);
}

Tri MeasureAnalysis::tail_unifies(const Term& v, const std::string& var,
                                  const Term& pattern) const {
  if (!v.mentions_index_var(var)) {
    if (!v.concrete()) return Tri::Unknown;
    return unify(rename_vars(v, "#s"), rename_vars(pattern, "#p")) ? Tri::Yes : Tri::No;
  }
  if (pattern.is_var()) return Tri::Yes;
  switch (v.kind()) {
    case TermKind::IdxVar:
      return Tri::Yes;
    case TermKind::Lab:
      if (!pattern.is_lab() || pattern.name() != v.name()) return Tri::No;
      return pattern.index().kind == IndexKind::Wild ? Tri::Yes : Tri::No;
    case TermKind::Iter: {
      // Peel the pattern's spine of the iterated unary symbol; for large
      // index values the exponent outgrows any concrete spine.
      Term end = pattern;
      while (end.is_app() && !end.is_pair() && end.name() == v.name() && end.args().size() == 1)
        end = end.args()[0];
      if (end.is_var()) {
        if (!linear(pattern) || !linear(v)) return Tri::Unknown;
        return Tri::Yes;
      }
      return Tri::No;
    }
    case TermKind::App: {
      if (!pattern.is_app() || pattern.name() != v.name() ||
          pattern.args().size() != v.args().size())
        return Tri::No;
      Tri acc = Tri::Yes;
      for (std::size_t k = 0; k < v.args().size(); ++k) {
        Tri t = tail_unifies(v.args()[k], var, pattern.args()[k]);
        if (t == Tri::No) return Tri::No;
        if (t == Tri::Unknown) acc = Tri::Unknown;
      }
      if (acc == Tri::Yes && (!linear(pattern) || !linear(v))) return Tri::Unknown;
      return acc;
    }
    case TermKind::Var:
      return Tri::Yes;
  }
  return Tri::Unknown;
}

IndexSet MeasureAnalysis::exists_defined_indices(const Term& v, const std::string& var) const {
  IndexSet out;
  out.threshold = horizon_;
  if (total_all_) {
    out.below.assign(horizon_, Tri::Yes);
    out.tail = Tri::Yes;
    return out;
  }
  for (std::uint64_t i = 0; i < horizon_; ++i) {
    Term vi = instantiate(v, {{var, i}});
    out.below.push_back(vi.concrete() ? exists_defined_concrete(vi) : Tri::Unknown);
  }
  out.tail = Tri::No;
  for (const MeasureClause& c : measure_.clauses) {
    Tri t = tail_unifies(v, var, rename_vars(c.pattern, "#p"));
    if (t != Tri::No) {
      out.tail = Tri::Unknown;
      break;
    }
  }
  return out;
}

bool MeasureAnalysis::clause_unifies_somewhere(const Term& pattern, const Term& s) const {
  if (s.concrete())
    return unify(rename_vars(s, "#s"), rename_vars(pattern, "#p")).has_value();
  std::set<std::string> ivs = index_vars_of(s);
  if (ivs.size() != 1) return true;  // conservative
  const std::string& var = *ivs.begin();
  for (std::uint64_t i = 0; i < horizon_; ++i) {
    Term si = instantiate(s, {{var, i}});
    if (!si.concrete()) return true;
    if (unify(rename_vars(si, "#s"), rename_vars(pattern, "#p"))) return true;
  }
  return tail_unifies(s, var, rename_vars(pattern, "#p")) != Tri::No;
}

std::optional<MeasureAnalysis::ClauseMatch> MeasureAnalysis::generalizing_clause(
    const Term& s) const {
  for (std::size_t k = 0; k < measure_.clauses.size(); ++k) {
    Subst sigma;
    if (!match_into(measure_.clauses[k].pattern, s, sigma)) continue;
    for (std::size_t j = 0; j < k; ++j)
      if (clause_unifies_somewhere(measure_.clauses[j].pattern, s)) return std::nullopt;
    return ClauseMatch{k, std::move(sigma)};
  }
  return std::nullopt;
}

Tri MeasureAnalysis::always_defined(const Term& s) const {
  if (total_all_) return Tri::Yes;
  if (s.closed()) return eval(s) ? Tri::Yes : Tri::No;

  if (auto gc = generalizing_clause(s)) {
    const MeasureClause& c = measure_.clauses[gc->clause];
    for (const Term& call : c.expr.calls)
      if (always_defined(apply_subst(gc->sigma, call)) != Tri::Yes) return Tri::Unknown;
    return Tri::Yes;
  }
  bool any = false;
  for (const MeasureClause& c : measure_.clauses)
    if (clause_unifies_somewhere(c.pattern, s)) {
      any = true;
      break;
    }
  return any ? Tri::Unknown : Tri::No;
}

Tri MeasureAnalysis::strictly_below(const Term& v, const Term& s) const {
  // Structural descent: the source's governing clause mentions the premise
  // source as one of its recursive calls, under a positive constant.
  std::optional<ClauseMatch> gc = s.closed() ? std::nullopt : generalizing_clause(s);
  if (gc) {
    const MeasureClause& c = measure_.clauses[gc->clause];
    if (c.expr.constant >= 1)
      for (const Term& call : c.expr.calls)
        if (apply_subst(gc->sigma, call) == v) return Tri::Yes;
  }

  // Constant-value comparison.
  std::optional<std::uint64_t> ns;
  if (s.closed()) {
    ns = eval(s);
    if (!ns) return Tri::Unknown;  // condition (i) already fails elsewhere
  } else if (gc && measure_.clauses[gc->clause].expr.calls.empty()) {
    ns = measure_.clauses[gc->clause].expr.constant;
  }
  if (!ns) return Tri::Unknown;

  if (v.closed()) {
    auto nv = eval(v);
    if (!nv) return Tri::Yes;  // vacuous: the premise instance is unmeasured
    return *nv < *ns ? Tri::Yes : Tri::No;
  }

  std::set<std::string> ivs = index_vars_of(v);
  if (ivs.size() > 1) return Tri::Unknown;
  std::uint64_t max_candidate = 0;
  for (const MeasureClause& c : measure_.clauses) {
    bool possible;
    if (v.concrete()) {
      possible = unify(rename_vars(v, "#s"), rename_vars(c.pattern, "#p")).has_value();
    } else {
      const std::string& var = *ivs.begin();
      possible = false;
      for (std::uint64_t i = 0; i < horizon_ && !possible; ++i) {
        Term vi = instantiate(v, {{var, i}});
        if (!vi.concrete()) return Tri::Unknown;
        possible = unify(rename_vars(vi, "#s"), rename_vars(c.pattern, "#p")).has_value();
      }
      if (!possible) possible = tail_unifies(v, var, rename_vars(c.pattern, "#p")) != Tri::No;
    }
    if (!possible) continue;
    if (!c.expr.calls.empty()) return Tri::Unknown;
    max_candidate = std::max(max_candidate, c.expr.constant);
  }
  return max_candidate < *ns ? Tri::Yes : Tri::Unknown;
}

// ---------------------------------------------------------------------------
// Stratification conditions
// ---------------------------------------------------------------------------

namespace {

struct SymbolicRule {
  std::string name;
  Term source;
  std::vector<Term> premise_sources;
};

std::vector<SymbolicRule> symbolic_rules(const DTss& tss) {
  std::vector<SymbolicRule> out;
  for (const DRule& r : tss.rules) {
    SymbolicRule s{r.name, r.conclusion.source, {}};
    for (const DyadicFormula& p : r.premises) s.premise_sources.push_back(p.source);
    out.push_back(std::move(s));
  }
  for (const DRuleTemplate& t : tss.templates) {
    SymbolicRule s{t.name, t.conclusion.source, {}};
    for (const DTemplatePremise& p : t.premises) s.premise_sources.push_back(p.formula.source);
    out.push_back(std::move(s));
  }
  return out;
}

void check_measure_sort(const DTss& tss, const StratMeasure& m) {
  bool pair_kind = tss.kind.prj == Proj::Id && tss.kind.k >= 4;
  if (!m.clauses.empty() && m.pair_sorted() != pair_kind)
    throw Error("measure " + m.name + " is " + (m.pair_sorted() ? "pair" : "plain") +
                "-sorted but kind " + tss.kind.token() + " has " +
                (pair_kind ? "pair" : "plain") + " origins");
}

}  // namespace

StratResult check_strat_conditions(const DTss& tss, const StratMeasure& m,
                                   const StratBounds& bounds) {
  for (const std::string& w : validate_measure(m)) (void)w;
  check_measure_sort(tss, m);
  MeasureAnalysis ma(tss, m, bounds);

  StratResult res;
  res.verdict.check = "stratification";
  bool symbolic = true;

  for (const SymbolicRule& r : symbolic_rules(tss)) {
    Tri di = ma.always_defined(r.source);
    if (di == Tri::No) {
      IndexEnv zero;
      for (const std::string& iv : index_vars_of(r.source)) zero[iv] = 0;
      Term witness = ground_first(instantiate(r.source, zero), ma.universe());
      res.verdict.fail({r.name,
                        {witness.str()},
                        "condition (i): closed source instance has undefined order"});
    }
    if (di != Tri::Yes) symbolic = false;
    for (const Term& v : r.premise_sources) {
      Tri lt = di == Tri::Yes ? ma.strictly_below(v, r.source) : Tri::Unknown;
      if (lt == Tri::No)
        res.verdict.fail({r.name,
                          {v.str(), r.source.str()},
                          "condition (ii): premise-source order does not strictly decrease"});
      if (lt != Tri::Yes) symbolic = false;
    }
  }

  // Exhaustive falsification over the bounded universe.
  bool truncated = false;
  const std::vector<Term>& U = ma.universe();
  for (const DRule& r : all_rules(tss, bounds.labels)) {
    const Term& s = r.conclusion.source;
    bool complete = for_each_grounding(s.vars(), U, [&](const Subst& sigma) {
      Term si = apply_subst(sigma, s);
      if (!ma.eval(si)) {
        res.verdict.fail({r.name, {si.str()}, "condition (i) counterexample"});
        return false;
      }
      return true;
    });
    if (!complete) truncated = true;
    for (const DyadicFormula& p : r.premises) {
      std::set<std::string> vars = s.vars();
      for (const std::string& x : p.source.vars()) vars.insert(x);
      int reported = 0;
      complete = for_each_grounding(vars, U, [&](const Subst& sigma) {
        Term vi = apply_subst(sigma, p.source);
        auto nv = ma.eval(vi);
        if (!nv) return true;
        Term si = apply_subst(sigma, s);
        auto nsv = ma.eval(si);
        if (!nsv || *nv >= *nsv) {
          res.verdict.fail({r.name,
                            {si.str(), vi.str()},
                            "condition (ii) counterexample: order " +
                                (nsv ? std::to_string(*nsv) : std::string("bottom")) +
                                " at the source vs " + std::to_string(*nv) +
                                " at the premise source"});
          return ++reported < 3;
        }
        return true;
      });
      if (!complete) truncated = true;
    }
  }

  if (res.verdict.outcome == Outcome::Fail) {
    res.grade = StratGrade::Failed;
  } else if (symbolic) {
    res.grade = StratGrade::Symbolic;
    res.verdict.note = "pass-symbolic";
  } else {
    res.grade = StratGrade::BoundedOnly;
    res.verdict.note = "pass-bounded-only";
  }
  if (truncated) res.verdict.note += res.verdict.note.empty() ? "truncated" : "; truncated";
  return res;
}

// ---------------------------------------------------------------------------
// Restricted support
// ---------------------------------------------------------------------------

std::vector<Term> SupportResult::support_of(const Term& source) const {
  for (const auto& [s, vs] : map)
    if (s == source) return vs;
  return {};
}

SupportResult restricted_support(const DTss& tss, const StratMeasure& m,
                                 const StratBounds& bounds) {
  MeasureAnalysis ma(tss, m, bounds);
  SupportResult res;
  res.verdict.check = "restricted-support";

  std::map<Term, std::set<Term>> support;

  for (const DRule& r : tss.rules) {
    support[r.conclusion.source];
    for (const DyadicFormula& p : r.premises) {
      switch (ma.exists_defined(p.source)) {
        case Tri::Yes:
          support[r.conclusion.source].insert(p.source);
          break;
        case Tri::No:
          break;
        case Tri::Unknown:
          res.verdict.inconclusive(
              {r.name, {p.source.str()}, "existence of a measured instance is undecided"});
          break;
      }
    }
  }

  for (const DRuleTemplate& t : tss.templates) {
    const Term& src = t.conclusion.source;
    bool src_indexed = src.mentions_index_var(t.index_var);
    if (!src_indexed) support[src];
    for (const DTemplatePremise& p : t.premises) {
      const Term& v = p.formula.source;
      std::string var = t.index_var;
      if (p.forall && v.mentions_index_var(*p.forall)) {
        if (v.mentions_index_var(t.index_var)) {
          res.verdict.inconclusive(
              {t.name, {v.str()}, "premise family mixes rule and premise indices"});
          continue;
        }
        var = *p.forall;
      }
      if (!v.mentions_index_var(var)) {
        Tri e = ma.exists_defined(v);
        if (e == Tri::Yes) {
          if (src_indexed) {
            for (std::uint64_t i = 0; i < ma.horizon(); ++i)
              support[instantiate(src, {{t.index_var, i}})].insert(v);
          } else {
            support[src].insert(v);
          }
        } else if (e == Tri::Unknown) {
          res.verdict.inconclusive(
              {t.name, {v.str()}, "existence of a measured instance is undecided"});
        }
        continue;
      }
      IndexSet def = ma.exists_defined_indices(v, var);
      for (std::uint64_t i = 0; i < def.threshold; ++i) {
        if (def.below[i] != Tri::Yes) continue;
        Term key = src_indexed && var == t.index_var ? instantiate(src, {{t.index_var, i}}) : src;
        support[key].insert(instantiate(v, {{var, i}}));
      }
      if (def.tail == Tri::Yes) {
        if (!src_indexed || var != t.index_var) {
          res.verdict.fail({t.name,
                            {src.str(), v.str()},
                            "support image is infinite: every large index contributes " +
                                v.str()});
        }
      } else if (def.tail == Tri::Unknown) {
        res.verdict.inconclusive({t.name,
                                  {v.str()},
                                  "membership beyond index " + std::to_string(def.threshold) +
                                      " is undecided"});
      }
      if (def.any(Tri::Unknown))
        res.verdict.inconclusive({t.name, {v.str()}, "membership at some index is undecided"});
    }
  }

  for (auto& [s, vs] : support) res.map.emplace_back(s, std::vector<Term>(vs.begin(), vs.end()));
  std::sort(res.map.begin(), res.map.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return res;
}

// ---------------------------------------------------------------------------
// Junk rules
// ---------------------------------------------------------------------------

JunkResult detect_junk_rules(const DTss& tss, const StratMeasure& m, const StratBounds& bounds) {
  MeasureAnalysis ma(tss, m, bounds);
  JunkResult res;
  res.verdict.check = "junk-rules";

  for (const DRule& r : tss.rules) {
    for (const DyadicFormula& p : r.premises) {
      if (ma.exists_defined(p.source) == Tri::No) {
        res.rules.insert(r.name);
        res.verdict.witnesses.push_back(
            {r.name, {p.source.str()}, "premise source never attains a defined order"});
        break;
      }
    }
  }

  for (const DRuleTemplate& t : tss.templates) {
    IndexSet junk;
    junk.threshold = ma.horizon();
    junk.below.assign(ma.horizon(), Tri::No);
    junk.tail = Tri::No;
    for (const DTemplatePremise& p : t.premises) {
      const Term& v = p.formula.source;
      std::string var = t.index_var;
      if (p.forall && v.mentions_index_var(*p.forall)) var = *p.forall;
      if (!v.mentions_index_var(var)) {
        Tri e = ma.exists_defined(v);
        if (e == Tri::No) {
          junk.below.assign(ma.horizon(), Tri::Yes);
          junk.tail = Tri::Yes;
        } else if (e == Tri::Unknown) {
          for (Tri& x : junk.below)
            if (x == Tri::No) x = Tri::Unknown;
          if (junk.tail == Tri::No) junk.tail = Tri::Unknown;
        }
        continue;
      }
      IndexSet def = ma.exists_defined_indices(v, var);
      if (var != t.index_var) {
        // A premise family: one undefined member makes every instance junk.
        Tri any_no = def.any(Tri::No) ? Tri::Yes : (def.any(Tri::Unknown) ? Tri::Unknown : Tri::No);
        if (any_no == Tri::Yes) {
          junk.below.assign(ma.horizon(), Tri::Yes);
          junk.tail = Tri::Yes;
        } else if (any_no == Tri::Unknown) {
          for (Tri& x : junk.below)
            if (x == Tri::No) x = Tri::Unknown;
          if (junk.tail == Tri::No) junk.tail = Tri::Unknown;
        }
        continue;
      }
      for (std::uint64_t i = 0; i < junk.threshold; ++i) {
        if (def.below[i] == Tri::No)
          junk.below[i] = Tri::Yes;
        else if (def.below[i] == Tri::Unknown && junk.below[i] == Tri::No)
          junk.below[i] = Tri::Unknown;
      }
      if (def.tail == Tri::No)
        junk.tail = Tri::Yes;
      else if (def.tail == Tri::Unknown && junk.tail == Tri::No)
        junk.tail = Tri::Unknown;
    }

    for (std::uint64_t i = 0; i < bounds.labels; ++i) {
      if (junk.at(i) == Tri::Yes) {
        std::string name = t.name + std::to_string(i);
        res.rules.insert(name);
        res.verdict.witnesses.push_back(
            {name, {}, "premise source never attains a defined order"});
      }
    }
    if (junk.tail == Tri::Yes) {
      std::uint64_t from = junk.threshold;
      while (from > 0 && junk.below[from - 1] == Tri::Yes) --from;
      res.symbolic.push_back(t.name + "<i> is junk for every index i >= " +
                             std::to_string(from));
    }
    res.template_junk[t.name] = std::move(junk);
  }

  res.verdict.note = std::to_string(res.rules.size()) + " junk rule(s) at the instantiation bound";
  return res;
}

}  // namespace sosfmt
