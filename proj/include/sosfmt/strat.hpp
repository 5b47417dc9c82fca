#pragma once

#include "sosfmt/lts.hpp"
#include "sosfmt/measure.hpp"

namespace sosfmt {

enum class Tri { Yes, No, Unknown };

/// Decision per template index: explicit results below a horizon, one
/// classified tail for everything above it.
struct IndexSet {
  std::vector<Tri> below;
  std::uint64_t threshold = 0;
  Tri tail = Tri::Unknown;

  Tri at(std::uint64_t i) const { return i < threshold ? below[i] : tail; }
  bool all(Tri t) const {
    return tail == t && std::all_of(below.begin(), below.end(), [&](Tri x) { return x == t; });
  }
  bool any(Tri t) const {
    return tail == t || std::any_of(below.begin(), below.end(), [&](Tri x) { return x == t; });
  }
};

struct StratBounds {
  std::size_t height = 3;
  std::uint64_t labels = 3;
};

/// Shared symbolic reasoning about one measure over one signature: totality,
/// existence of defined instances, definedness of all instances, and strict
/// descent. `Unknown` answers route callers to bounded checking.
class MeasureAnalysis {
 public:
  MeasureAnalysis(const DTss& tss, const StratMeasure& measure, const StratBounds& bounds);

  const StratMeasure& measure() const { return measure_; }
  const std::vector<Term>& universe() const { return universe_; }
  std::uint64_t horizon() const { return horizon_; }

  /// Catch-all clause for every constructor of the signature, so the
  /// measure is defined on every closed origin.
  bool total_on_all() const { return total_all_; }

  std::optional<std::uint64_t> eval(const Term& closed) const {
    return eval_measure(measure_, closed);
  }

  /// Is there a closing substitution giving v a defined measure?
  Tri exists_defined(const Term& v) const;

  /// Per-index version of exists_defined for a term mentioning `var`.
  IndexSet exists_defined_indices(const Term& v, const std::string& var) const;

  /// Do all closing substitutions give s a defined measure? Symbolic terms
  /// are answered for every index value at once.
  Tri always_defined(const Term& s) const;

  /// Assuming always_defined(s), is S(sigma v) < S(sigma s) whenever the
  /// left side is defined?
  Tri strictly_below(const Term& v, const Term& s) const;

  /// Unifiability of an index-carrying term against a concrete pattern for
  /// all sufficiently large index values.
  Tri tail_unifies(const Term& v, const std::string& var, const Term& pattern) const;

 private:
  Tri exists_defined_concrete(const Term& v) const;
  struct ClauseMatch {
    std::size_t clause;
    Subst sigma;
  };
  std::optional<ClauseMatch> generalizing_clause(const Term& s) const;
  bool clause_unifies_somewhere(const Term& pattern, const Term& s) const;

  Signature sig_;
  StratMeasure measure_;
  StratBounds bounds_;
  std::vector<Term> universe_;
  std::uint64_t horizon_ = 4;
  bool total_all_ = false;
};

enum class StratGrade { Symbolic, BoundedOnly, Failed };

struct StratResult {
  Verdict verdict;  // check = "stratification"
  StratGrade grade = StratGrade::Failed;
};

/// Conditions on a partial strict stratification: (i) every closed instance
/// of every rule source has a defined order; (ii) premise-source instances
/// with defined order sit strictly below their conclusion source. A
/// symbolic sufficient check runs first; exhaustive falsification over the
/// bounded universe backs it up.
StratResult check_strat_conditions(const DTss& tss, const StratMeasure& m,
                                   const StratBounds& bounds);

struct SupportResult {
  Verdict verdict;  // check = "restricted-support"
  // Sources in deterministic order; template sources that carry the index
  // appear once per defined index below the horizon.
  std::vector<std::pair<Term, std::vector<Term>>> map;

  std::vector<Term> support_of(const Term& source) const;
};

/// The S-restricted support: premise sources that admit a closing
/// substitution with defined order, grouped by rule source. Fails when some
/// image is provably infinite.
SupportResult restricted_support(const DTss& tss, const StratMeasure& m,
                                 const StratBounds& bounds);

struct JunkResult {
  Verdict verdict;  // informational
  std::set<std::string> rules;            // concrete and instantiated names
  std::vector<std::string> symbolic;      // e.g. "R junk for every index >= 1"
  std::map<std::string, IndexSet> template_junk;  // template name -> junk indices
};

/// Rules with a premise source that never attains a defined order cannot
/// appear in any proof tree.
JunkResult detect_junk_rules(const DTss& tss, const StratMeasure& m, const StratBounds& bounds);

}  // namespace sosfmt
