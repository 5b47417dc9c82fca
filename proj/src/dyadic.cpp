#include "sosfmt/dyadic.hpp"

namespace sosfmt {

static const std::vector<DyadicKind> kAll = {
    {1, Proj::Id}, {2, Proj::Id}, {3, Proj::Id}, {4, Proj::Id},
    {5, Proj::Id}, {6, Proj::Id}, {1, Proj::P1}, {2, Proj::P1},
    {3, Proj::P1}, {3, Proj::P2}, {2, Proj::P2}, {1, Proj::P2},
};

static const std::vector<DyadicKind> kIds = {
    {1, Proj::Id}, {2, Proj::Id}, {3, Proj::Id},
    {4, Proj::Id}, {5, Proj::Id}, {6, Proj::Id},
};

const std::vector<DyadicKind>& DyadicKind::all() { return kAll; }
const std::vector<DyadicKind>& DyadicKind::identities() { return kIds; }

DyadicKind DyadicKind::parse(const std::string& token) {
  for (const DyadicKind& k : kAll)
    if (k.token() == token) return k;
  throw Error("unknown dyadic kind '" + token +
              "' (expected one of d1.id..d6.id, d1.p1, d1.p2, d2.p1, d2.p2, d3.p1, d3.p2)");
}

std::string DyadicKind::token() const {
  std::string t = "d" + std::to_string(k) + ".";
  switch (prj) {
    case Proj::Id:
      return t + "id";
    case Proj::P1:
      return t + "p1";
    case Proj::P2:
      return t + "p2";
  }
  return t;
}

std::string DyadicKind::display() const {
  std::string t = "D" + std::to_string(k) + "^";
  switch (prj) {
    case Proj::Id:
      return t + "id";
    case Proj::P1:
      return t + "pi1";
    case Proj::P2:
      return t + "pi2";
  }
  return t;
}

DyadicFormula transform_formula(const TriadicFormula& f, DyadicKind kind) {
  if (!kind.valid()) throw Error("invalid dyadic kind");
  const Term& t = f.source;
  const Term& l = f.label;
  const Term& tp = f.target;
  DyadicFormula out;
  out.kind = kind;
  if (kind.prj == Proj::Id) {
    switch (kind.k) {
      case 1: out.source = t; out.target = Term::pair(l, tp); break;
      case 2: out.source = tp; out.target = Term::pair(l, t); break;
      case 3: out.source = l; out.target = Term::pair(t, tp); break;
      case 4: out.source = Term::pair(t, l); out.target = tp; break;
      case 5: out.source = Term::pair(tp, l); out.target = t; break;
      case 6: out.source = Term::pair(t, tp); out.target = l; break;
    }
    return out;
  }
  switch (kind.k) {
    case 1: out.source = t; out.target = (kind.prj == Proj::P1) ? l : tp; break;
    case 2: out.source = tp; out.target = (kind.prj == Proj::P1) ? l : t; break;
    case 3: out.source = l; out.target = (kind.prj == Proj::P1) ? t : tp; break;
  }
  return out;
}

TriadicFormula tr_inverse(const Term& o, const Term& d1, const Term& d2, int k) {
  switch (k) {
    case 1:
      return {o, d1, d2};
    case 2:
      return {d2, d1, o};
    case 3:
      return {d1, o, d2};
  }
  throw Error("tr_inverse requires k in 1..3");
}

TriadicFormula untransform_formula(const DyadicFormula& f) {
  if (f.kind.prj != Proj::Id)
    throw Error("projections are not invertible: " + f.kind.display());
  if (f.kind.k <= 3) {
    if (!f.target.is_pair()) throw Error("malformed dyadic target: " + f.target.str());
    return tr_inverse(f.source, f.target.args()[0], f.target.args()[1], f.kind.k);
  }
  if (!f.source.is_pair()) throw Error("malformed dyadic source: " + f.source.str());
  const Term& a = f.source.args()[0];
  const Term& b = f.source.args()[1];
  switch (f.kind.k) {
    case 4:
      return {a, b, f.target};  // (t, l) ~> t'
    case 5:
      return {f.target, b, a};  // (t', l) ~> t
    case 6:
      return {a, f.target, b};  // (t, t') ~> l
  }
  throw Error("invalid dyadic kind");
}

DRule transform_rule(const Rule& r, DyadicKind kind) {
  DRule out;
  out.name = r.name;
  for (const TriadicFormula& p : r.premises) out.premises.push_back(transform_formula(p, kind));
  out.conclusion = transform_formula(r.conclusion, kind);
  return out;
}

DTss transform_tss(const Tss& tss, DyadicKind kind) {
  DTss out;
  out.sig = tss.sig;
  out.kind = kind;
  for (const Rule& r : tss.rules) out.rules.push_back(transform_rule(r, kind));
  for (const RuleTemplate& t : tss.templates) {
    DRuleTemplate dt;
    dt.name = t.name;
    dt.index_var = t.index_var;
    for (const TemplatePremise& p : t.premises)
      dt.premises.push_back({transform_formula(p.formula, kind), p.forall});
    dt.conclusion = transform_formula(t.conclusion, kind);
    out.templates.push_back(std::move(dt));
  }
  return out;
}

Tss untransform_tss(const DTss& tss) {
  Tss out;
  out.sig = tss.sig;
  for (const DRule& r : tss.rules) {
    Rule tr;
    tr.name = r.name;
    for (const DyadicFormula& p : r.premises) tr.premises.push_back(untransform_formula(p));
    tr.conclusion = untransform_formula(r.conclusion);
    out.rules.push_back(std::move(tr));
  }
  for (const DRuleTemplate& t : tss.templates) {
    RuleTemplate tt;
    tt.name = t.name;
    tt.index_var = t.index_var;
    for (const DTemplatePremise& p : t.premises)
      tt.premises.push_back({untransform_formula(p.formula), p.forall});
    tt.conclusion = untransform_formula(t.conclusion);
    out.templates.push_back(std::move(tt));
  }
  return out;
}

}  // namespace sosfmt
