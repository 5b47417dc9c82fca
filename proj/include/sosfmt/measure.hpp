#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sosfmt/term.hpp"

namespace sosfmt {

/// Right-hand side of a measure clause, normalized to
/// `constant + S(call_1) + ... + S(call_n)`.
struct MeasureExpr {
  std::uint64_t constant = 0;
  TermVec calls;
};

/// One clause `pattern => expr`. Patterns may be pairs and may use the
/// family wildcard l(_) (written l(<ident>) in spec files).
struct MeasureClause {
  Term pattern;
  MeasureExpr expr;
};

/// User-supplied partial measure on origins; clauses are tried in order and
/// the first match wins, with bottom when nothing matches or a recursive
/// call is bottom. Well-formedness makes every recursive call strictly
/// smaller, so evaluation terminates on all closed origins.
struct StratMeasure {
  std::string name;
  std::vector<MeasureClause> clauses;

  bool pair_sorted() const;
};

/// Rejects clauses whose recursive calls are not sub-shapes of the pattern
/// (componentwise subterms with at least one proper). Returns overlap
/// warnings: pairs of clauses whose patterns unify, where order matters.
std::vector<std::string> validate_measure(const StratMeasure& m);

/// First-matching-clause recursive evaluation; nullopt is bottom. Throws on
/// a recursion-depth breach, which validated measures cannot reach.
std::optional<std::uint64_t> eval_measure(const StratMeasure& m, const Term& origin);

}  // namespace sosfmt
