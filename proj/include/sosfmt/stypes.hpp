#pragma once

#include "sosfmt/strat.hpp"

namespace sosfmt {

/// A rule's source together with the finite map from support terms to the
/// sets of its premise targets. dom(psi) is the support of the source.
struct SType {
  Term source;
  std::vector<std::pair<Term, std::vector<Term>>> psi;  // sorted, targets sorted

  bool operator==(const SType& o) const { return source == o.source && psi == o.psi; }
  std::string str() const;
};

struct STypeResult {
  std::string rule;
  std::optional<SType> stype;
  std::string reason;  // "source-outside-support" or "infinite-psi" when absent
};

/// S-type of one concrete rule against a computed support map. Absent when
/// some premise source lies outside the support or some psi image is
/// infinite.
STypeResult compute_stype(const DRule& rule, const SupportResult& support);

enum class UniformityMode { Sources, PremiseTargets };

/// Fails when two distinct sources (or two targets of premises sharing a
/// source) are alpha-variants without being equal. Countable families are
/// compared through representative instances below the analysis horizon.
Verdict check_uniformity(const DTss& tss, UniformityMode mode);

/// Condition (i): premise-source variables occur in the source. Condition
/// (ii): target variables occur in the source or in premise targets.
Verdict check_bn_format(const DTss& tss);

struct InhabitationResult {
  Verdict verdict;  // check = "finite-inhabitation"
  std::size_t max_group = 0;
};

/// Grouping by syntactic S-type equality; a countable family fails when its
/// instances share one S-type while infinitely many of them are valid.
InhabitationResult check_finitely_inhabited(const DTss& tss, const SupportResult& support,
                                            const StratMeasure& m, const StratBounds& bounds);

/// Everything the end-to-end format check produced, for rendering and for
/// the golden corpus files.
struct FormatReport {
  DyadicKind kind;
  PropertyId property;
  std::string property_phrase;
  Outcome outcome = Outcome::Pass;
  std::vector<Verdict> subchecks;
  SupportResult support;
  JunkResult junk;
  std::vector<STypeResult> stypes;

  Json to_json() const;
  std::string text() const;
};

/// The rule-format pipeline: transform, stratification conditions, junk
/// detection, restricted support, S-types, uniformity in both modes, finite
/// inhabitation, bounded-nondeterminism format. Passing certifies the named
/// bounded-nondeterminism property of the associated LTS.
FormatReport check_rule_format(const Tss& tss, DyadicKind kind, const StratMeasure& m,
                               const StratBounds& bounds);

/// User-supplied support map for the legacy baseline.
struct EtaMap {
  std::string name;
  std::vector<std::pair<Term, std::vector<Term>>> entries;

  std::vector<Term> support_of(const Term& source) const;
};

struct EtaTypeResult {
  std::string rule;
  std::optional<SType> eta_type;  // psi maps support terms to label sets
  std::string reason;
};

struct LegacyReport {
  Outcome outcome = Outcome::Pass;
  std::vector<Verdict> subchecks;
  std::vector<EtaTypeResult> eta_types;

  Json to_json() const;
  std::string text() const;
};

/// The earlier finite-branching baseline: label-set-valued eta-types with
/// no support restriction and no premise targets, judged on finite
/// inhabitation alone. A stratification measure, when supplied, is checked
/// and reported alongside. Throws when a rule label is open or an eta image
/// is infinite.
LegacyReport legacy_eta_check(const Tss& tss, const EtaMap& eta, const StratMeasure* m,
                              const StratBounds& bounds);

}  // namespace sosfmt
