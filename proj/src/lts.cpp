#include "sosfmt/lts.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace sosfmt {

namespace {

struct PropertyInfo {
  PropertyId id;
  const char* roman;
  const char* name;
  DyadicKind kind;
};

const PropertyInfo kProps[] = {
    {PropertyId::I, "i", "finitely branching", {1, Proj::Id}},
    {PropertyId::II, "ii", "finitely folding", {2, Proj::Id}},
    {PropertyId::III, "iii", "finitely bundling", {3, Proj::Id}},
    {PropertyId::IV, "iv", "image finite", {4, Proj::Id}},
    {PropertyId::V, "v", "source finite", {5, Proj::Id}},
    {PropertyId::VI, "vi", "label finite", {6, Proj::Id}},
    {PropertyId::VII, "vii", "initials finite", {1, Proj::P1}},
    {PropertyId::VIII, "viii", "finals finite", {2, Proj::P1}},
    {PropertyId::IX, "ix", "heads finite", {3, Proj::P1}},
    {PropertyId::X, "x", "tails finite", {3, Proj::P2}},
    {PropertyId::XI, "xi", "antecedents finite", {2, Proj::P2}},
    {PropertyId::XII, "xii", "consequents finite", {1, Proj::P2}},
};

const PropertyInfo& info(PropertyId p) { return kProps[static_cast<int>(p) - 1]; }

}  // namespace

const char* property_name(PropertyId p) { return info(p).name; }
const char* property_roman(PropertyId p) { return info(p).roman; }

PropertyId property_parse(const std::string& roman) {
  for (const PropertyInfo& pi : kProps)
    if (roman == pi.roman) return pi.id;
  throw Error("unknown property '" + roman + "' (expected a roman numeral i..xii)");
}

DyadicKind kind_of_property(PropertyId p) { return info(p).kind; }

PropertyId property_of_kind(DyadicKind k) {
  for (const PropertyInfo& pi : kProps)
    if (pi.kind == k) return pi.id;
  throw Error("invalid dyadic kind");
}

const std::vector<PropertyId>& all_properties() {
  static const std::vector<PropertyId> v = [] {
    std::vector<PropertyId> out;
    for (const PropertyInfo& pi : kProps) out.push_back(pi.id);
    return out;
  }();
  return v;
}

// ---------------------------------------------------------------------------
// Derivation engine
// ---------------------------------------------------------------------------

namespace {

using Fact = std::vector<Term>;  // one term per formula slot

struct FactHash {
  std::size_t operator()(const Fact& f) const {
    std::size_t h = 0x9e3779b9;
    for (const Term& t : f) h = h * 1099511628211ULL + t.hash();
    return h;
  }
};

struct GroundRule {
  std::string name;
  std::vector<Fact> premises;  // patterns
  Fact conclusion;
};

// Per-slot lookup structures over the stored facts, rebuilt per round. Pair
// slots are additionally keyed by their components.
struct SlotIndex {
  std::unordered_map<Term, std::vector<std::size_t>, TermHash> exact;
  std::unordered_map<Term, std::vector<std::size_t>, TermHash> pair_first;
  std::unordered_map<Term, std::vector<std::size_t>, TermHash> pair_second;
  std::unordered_map<std::string, std::vector<std::size_t>> root;
};

struct FactIndex {
  std::vector<SlotIndex> slots;
  std::vector<std::size_t> all;

  static std::string root_key(const Term& t) {
    return t.is_lab() ? t.name() + "#" : t.name();
  }

  void add(std::size_t idx, const Fact& f) {
    all.push_back(idx);
    if (slots.size() < f.size()) slots.resize(f.size());
    for (std::size_t s = 0; s < f.size(); ++s) {
      const Term& t = f[s];
      slots[s].exact[t].push_back(idx);
      if (t.is_pair()) {
        slots[s].pair_first[t.args()[0]].push_back(idx);
        slots[s].pair_second[t.args()[1]].push_back(idx);
      }
      slots[s].root[root_key(t)].push_back(idx);
    }
  }

  // Most selective list compatible with the premise pattern under the
  // current bindings.
  const std::vector<std::size_t>& candidates(const Fact& premise, const Subst& sigma) const {
    static const std::vector<std::size_t> none;
    const std::vector<std::size_t>* best = &all;
    auto consider = [&](const std::vector<std::size_t>* v) {
      if (v && v->size() < best->size()) best = v;
    };
    auto find = [&](const auto& m, const auto& k) -> const std::vector<std::size_t>* {
      auto it = m.find(k);
      return it == m.end() ? &none : &it->second;
    };
    for (std::size_t s = 0; s < premise.size() && s < slots.size(); ++s) {
      Term p = apply_subst(sigma, premise[s]);
      if (p.closed()) {
        consider(find(slots[s].exact, p));
        continue;
      }
      if (p.is_pair()) {
        if (p.args()[0].closed()) consider(find(slots[s].pair_first, p.args()[0]));
        if (p.args()[1].closed()) consider(find(slots[s].pair_second, p.args()[1]));
        const Term& a = p.args()[0];
        const Term& b = p.args()[1];
        if (!a.is_var() && !a.is_pair() && !a.closed()) {
          // fall through to root keys of components? pairs are keyed whole
        }
        (void)b;
        continue;
      }
      if (p.is_app() || p.is_lab()) consider(find(slots[s].root, root_key(p)));
    }
    return *best;
  }
};

class Deriver {
 public:
  Deriver(std::vector<GroundRule> rules, std::vector<Term> universe, std::size_t height_bound,
          std::uint64_t max_rounds)
      : rules_(std::move(rules)),
        universe_(std::move(universe)),
        height_bound_(height_bound),
        max_rounds_(max_rounds) {
    uset_.insert(universe_.begin(), universe_.end());
    by_height_.assign(height_bound_ + 1, {});
    for (const Term& t : universe_)
      for (std::size_t h = t.height(); h <= height_bound_; ++h) by_height_[h].push_back(t);
  }

  void run() {
    // Round 1: axioms.
    for (const GroundRule& r : rules_)
      if (r.premises.empty()) fire(r, {});
    rounds_ = 1;
    std::size_t old_end = 0;
    std::size_t frontier_end = facts_.size();
    while (frontier_end > old_end) {
      if (rounds_ >= max_rounds_) {
        saturated_ = false;
        return;
      }
      ++rounds_;
      index_.reset(new FactIndex());
      for (std::size_t i = 0; i < frontier_end; ++i) index_->add(i, facts_[i]);
      old_end_ = old_end;
      frontier_end_ = frontier_end;
      for (const GroundRule& r : rules_) {
        for (std::size_t pivot = 0; pivot < r.premises.size(); ++pivot) {
          Subst sigma;
          join(r, pivot, 0, sigma);
        }
      }
      old_end = frontier_end;
      frontier_end = facts_.size();
    }
    saturated_ = true;
  }

  const std::vector<Fact>& facts() const { return facts_; }
  bool saturated() const { return saturated_; }
  std::uint64_t dropped() const { return dropped_; }
  std::uint64_t rounds() const { return rounds_; }

 private:
  bool in_universe(const Term& t) const {
    if (t.is_pair()) return in_universe(t.args()[0]) && in_universe(t.args()[1]);
    return uset_.count(t) > 0;
  }

  // Deepest occurrence of each remaining variable across the conclusion
  // slots; a variable buried d levels deep only takes terms of height
  // <= bound - d.
  static void occurrence_depths(const Term& t, std::size_t depth,
                                std::map<std::string, std::size_t>& out) {
    if (t.is_var()) {
      auto [it, ins] = out.emplace(t.name(), depth);
      if (!ins && depth > it->second) it->second = depth;
      return;
    }
    if (t.is_pair()) {
      occurrence_depths(t.args()[0], depth, out);
      occurrence_depths(t.args()[1], depth, out);
      return;
    }
    if (t.is_app())
      for (const Term& a : t.args()) occurrence_depths(a, depth + 1, out);
  }

  // Height of the slot pattern with its remaining variables at height zero:
  // no grounding can shrink it.
  static bool height_feasible(const Term& t, std::size_t bound) {
    if (t.is_pair())
      return height_feasible(t.args()[0], bound) && height_feasible(t.args()[1], bound);
    return t.height() <= bound;
  }

  void fire(const GroundRule& r, const Subst& sigma) {
    // Bind the premise-matched parts first; if they already push some
    // conclusion slot past the height bound, no grounding can recover.
    std::vector<Term> partial;
    partial.reserve(r.conclusion.size());
    for (const Term& slot : r.conclusion) {
      partial.push_back(apply_subst(sigma, slot));
      if (!height_feasible(partial.back(), height_bound_)) {
        ++dropped_;
        return;
      }
    }
    // Remaining variables range over the universe, pruned by their
    // occurrence depth.
    std::map<std::string, std::size_t> depths;
    for (const Term& slot : partial) occurrence_depths(slot, 0, depths);
    std::vector<std::string> fv;
    std::vector<const std::vector<Term>*> cands;
    for (const auto& [v, d] : depths) {
      fv.push_back(v);
      if (d > height_bound_) {
        ++dropped_;
        return;
      }
      cands.push_back(&by_height_[height_bound_ - d]);
      if (cands.back()->empty()) return;
    }
    std::vector<std::size_t> idx(fv.size(), 0);
    while (true) {
      Subst free_subst;
      for (std::size_t k = 0; k < fv.size(); ++k) free_subst[fv[k]] = (*cands[k])[idx[k]];
      Fact out;
      out.reserve(partial.size());
      bool ok = true;
      for (const Term& slot : partial) {
        out.push_back(apply_subst(free_subst, slot));
        if (!in_universe(out.back())) ok = false;
      }
      if (ok) {
        if (seen_.insert(out).second) facts_.push_back(out);
      } else {
        ++dropped_;
      }
      std::size_t k = 0;
      for (; k < fv.size(); ++k) {
        if (++idx[k] < cands[k]->size()) break;
        idx[k] = 0;
      }
      if (k == fv.size()) break;
    }
  }

  void join(const GroundRule& r, std::size_t pivot, std::size_t j, Subst& sigma) {
    if (j == r.premises.size()) {
      fire(r, sigma);
      return;
    }
    // Semi-naive ranges: premises before the pivot draw from older facts,
    // the pivot from the frontier, later premises from everything.
    std::size_t lo = 0, hi = frontier_end_;
    if (j < pivot)
      hi = old_end_;
    else if (j == pivot)
      lo = old_end_;
    for (std::size_t idx : index_->candidates(r.premises[j], sigma)) {
      if (idx < lo || idx >= hi) continue;
      const Fact& f = facts_[idx];
      Subst saved = sigma;
      bool ok = true;
      for (std::size_t s = 0; s < f.size() && ok; ++s)
        ok = match_into(r.premises[j][s], f[s], sigma);
      if (ok) join(r, pivot, j + 1, sigma);
      sigma = std::move(saved);
    }
  }

  std::vector<GroundRule> rules_;
  std::vector<Term> universe_;
  std::size_t height_bound_ = 0;
  std::uint64_t max_rounds_;
  std::vector<std::vector<Term>> by_height_;
  std::unordered_set<Term, TermHash> uset_;
  std::vector<Fact> facts_;
  std::unordered_set<Fact, FactHash> seen_;
  std::unique_ptr<FactIndex> index_;
  std::size_t old_end_ = 0;
  std::size_t frontier_end_ = 0;
  bool saturated_ = true;
  std::uint64_t dropped_ = 0;
  std::uint64_t rounds_ = 0;
};

Lts run_derivation(const Signature& sig, std::vector<GroundRule> rules,
                   const DeriveBounds& bounds, bool dyadic, std::optional<DyadicKind> kind) {
  std::vector<Term> universe = enumerate_closed_terms(sig, bounds.height, bounds.labels);
  Deriver d(std::move(rules), std::move(universe), bounds.height, bounds.max_rounds);
  d.run();
  Lts out;
  out.dyadic = dyadic;
  out.kind = kind;
  out.saturated = d.saturated();
  out.dropped = d.dropped();
  out.rounds = d.rounds();
  for (const Fact& f : d.facts()) {
    if (dyadic)
      out.dy.push_back({f[0], f[1], *kind});
    else
      out.triadic.push_back({f[0], f[1], f[2]});
  }
  if (dyadic)
    std::sort(out.dy.begin(), out.dy.end());
  else
    std::sort(out.triadic.begin(), out.triadic.end());
  return out;
}

}  // namespace

Lts derive_lts(const Tss& tss, const DeriveBounds& bounds) {
  std::vector<GroundRule> rules;
  for (const Rule& r : all_rules(tss, bounds.labels)) {
    GroundRule g;
    g.name = r.name;
    for (const TriadicFormula& p : r.premises) g.premises.push_back({p.source, p.label, p.target});
    g.conclusion = {r.conclusion.source, r.conclusion.label, r.conclusion.target};
    rules.push_back(std::move(g));
  }
  return run_derivation(tss.sig, std::move(rules), bounds, false, std::nullopt);
}

Lts derive_lts(const DTss& tss, const DeriveBounds& bounds) {
  std::vector<GroundRule> rules;
  for (const DRule& r : all_rules(tss, bounds.labels)) {
    GroundRule g;
    g.name = r.name;
    for (const DyadicFormula& p : r.premises) g.premises.push_back({p.source, p.target});
    g.conclusion = {r.conclusion.source, r.conclusion.target};
    rules.push_back(std::move(g));
  }
  return run_derivation(tss.sig, std::move(rules), bounds, true, tss.kind);
}

// ---------------------------------------------------------------------------
// Properties and the Hasse lattice
// ---------------------------------------------------------------------------

PropertyReport check_property(const Lts& lts, PropertyId prop) {
  if (lts.dyadic) throw Error("check_property expects a triadic LTS");
  DyadicKind kind = kind_of_property(prop);
  std::map<Term, std::set<Term>> sets;
  for (const TriadicFormula& tr : lts.triadic) {
    DyadicFormula d = transform_formula(tr, kind);
    sets[d.source].insert(d.target);
  }
  PropertyReport rep;
  rep.prop = prop;
  rep.origins = sets.size();
  for (const auto& [origin, dests] : sets) {
    if (dests.size() > rep.max_cardinality) {
      rep.max_cardinality = dests.size();
      rep.witness_origin = origin.str();
    }
  }
  return rep;
}

namespace {

// The twelve cover edges of the Hasse diagram, upper property first.
const std::pair<PropertyId, PropertyId> kCovers[] = {
    {PropertyId::I, PropertyId::VII},    {PropertyId::VII, PropertyId::VI},
    {PropertyId::I, PropertyId::XII},    {PropertyId::XII, PropertyId::IV},
    {PropertyId::III, PropertyId::X},    {PropertyId::X, PropertyId::IV},
    {PropertyId::III, PropertyId::IX},   {PropertyId::IX, PropertyId::V},
    {PropertyId::II, PropertyId::VIII},  {PropertyId::VIII, PropertyId::VI},
    {PropertyId::II, PropertyId::XI},    {PropertyId::XI, PropertyId::V},
};

}  // namespace

bool property_implies(PropertyId p, PropertyId q) {
  if (p == q) return true;
  // Transitive closure by walking down the cover edges (depth at most 2).
  for (const auto& [hi, lo] : kCovers)
    if (hi == p && (lo == q || property_implies(lo, q))) return true;
  return false;
}

std::vector<std::vector<PropertyId>> equivalence_class(PropertyId d) {
  std::vector<PropertyId> comps;  // the two complementary properties under d
  for (const auto& [hi, lo] : kCovers)
    if (hi == d) comps.push_back(lo);
  if (comps.size() != 2)
    throw Error(std::string("property (") + property_roman(d) +
                ") is not derived; only (i), (ii), (iii) have equivalence classes");
  auto elementary_below = [](PropertyId c) {
    for (const auto& [hi, lo] : kCovers)
      if (hi == c) return lo;
    throw Error("malformed lattice");
  };
  PropertyId c1 = comps[0], c2 = comps[1];
  PropertyId e1 = elementary_below(c1), e2 = elementary_below(c2);
  auto sorted = [](std::vector<PropertyId> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return {sorted({d}), sorted({e1, c2}), sorted({e2, c1}), sorted({c1, c2})};
}

BranchingProfile branching_profile(const Tss& tss, DyadicKind kind, const DeriveBounds& bounds) {
  DeriveBounds big = bounds;
  big.height += 1;
  Lts small_lts = derive_lts(tss, bounds);
  Lts big_lts = derive_lts(tss, big);

  BranchingProfile out;
  out.saturated = small_lts.saturated && big_lts.saturated;

  auto degrees = [&](const Lts& l) {
    std::map<Term, std::set<Term>> m;
    for (const TriadicFormula& tr : l.triadic) {
      DyadicFormula d = transform_formula(tr, kind);
      m[d.source].insert(d.target);
    }
    return m;
  };
  auto small_deg = degrees(small_lts);
  auto big_deg = degrees(big_lts);
  for (const auto& [origin, dests] : small_deg) {
    OriginDegree row;
    row.origin = origin;
    row.degree_small = dests.size();
    auto it = big_deg.find(origin);
    row.degree_big = it == big_deg.end() ? 0 : it->second.size();
    if (row.degree_small != row.degree_big) out.stable = false;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string lts_to_tsv(const Lts& lts) {
  std::ostringstream os;
  if (lts.dyadic) {
    for (const DyadicFormula& f : lts.dy) os << f.source.str() << "\t" << f.target.str() << "\n";
  } else {
    for (const TriadicFormula& f : lts.triadic)
      os << f.source.str() << "\t" << f.label.str() << "\t" << f.target.str() << "\n";
  }
  return os.str();
}

Json lts_to_json(const Lts& lts) {
  Json j;
  j["shape"] = lts.dyadic ? "dyadic" : "triadic";
  if (lts.kind) j["kind"] = lts.kind->token();
  j["saturated"] = lts.saturated;
  j["rounds"] = lts.rounds;
  j["dropped"] = lts.dropped;
  Json ts = Json::array();
  if (lts.dyadic) {
    for (const DyadicFormula& f : lts.dy)
      ts.push_back(Json{{"source", f.source.str()}, {"target", f.target.str()}});
  } else {
    for (const TriadicFormula& f : lts.triadic)
      ts.push_back(Json{{"source", f.source.str()},
                        {"label", f.label.str()},
                        {"target", f.target.str()}});
  }
  j["transitions"] = ts;
  return j;
}

}  // namespace sosfmt
