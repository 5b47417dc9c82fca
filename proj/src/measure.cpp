#include "sosfmt/measure.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sosfmt {

bool StratMeasure::pair_sorted() const {
  return !clauses.empty() && clauses.front().pattern.is_pair();
}

namespace {

// t appears as a subterm occurrence of p (syntactically, variables rigid).
bool is_subterm(const Term& t, const Term& p) {
  if (t == p) return true;
  if (p.kind() == TermKind::App || p.kind() == TermKind::Iter)
    for (const Term& a : p.args())
      if (is_subterm(t, a)) return true;
  return false;
}

// Every component of arg is a subterm of the matching component of pattern
// and at least one is proper, so instances strictly shrink.
bool sub_shape(const Term& arg, const Term& pattern) {
  if (arg.is_pair() != pattern.is_pair()) return false;
  if (arg.is_pair()) {
    const Term &a0 = arg.args()[0], &a1 = arg.args()[1];
    const Term &p0 = pattern.args()[0], &p1 = pattern.args()[1];
    if (!is_subterm(a0, p0) || !is_subterm(a1, p1)) return false;
    return a0 != p0 || a1 != p1;
  }
  return is_subterm(arg, pattern) && arg != pattern;
}

}  // namespace

std::vector<std::string> validate_measure(const StratMeasure& m) {
  bool pair = m.pair_sorted();
  for (const MeasureClause& c : m.clauses) {
    if (c.pattern.is_pair() != pair)
      throw Error("measure " + m.name + ": clause patterns mix pair and plain shapes");
    // Wild family indices are the only symbolic nodes allowed in patterns.
    std::function<void(const Term&)> scan = [&](const Term& t) {
      if (t.kind() == TermKind::Iter || t.kind() == TermKind::IdxVar ||
          (t.is_lab() && t.index().kind == IndexKind::Affine))
        throw Error("measure " + m.name + ": clause pattern " + c.pattern.str() +
                    " uses template indices");
      if (t.is_app())
        for (const Term& a : t.args()) scan(a);
    };
    scan(c.pattern);
    std::set<std::string> pvars = c.pattern.vars();
    for (const Term& call : c.expr.calls) {
      for (const std::string& v : call.vars())
        if (!pvars.count(v))
          throw Error("measure " + m.name + ": recursive call " + call.str() +
                      " uses variable '" + v + "' not bound by pattern " + c.pattern.str());
      if (!sub_shape(call, c.pattern))
        throw Error("measure " + m.name + ": recursive call " + call.str() +
                    " is not a strict sub-shape of pattern " + c.pattern.str());
    }
  }

  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < m.clauses.size(); ++i)
    for (std::size_t j = i + 1; j < m.clauses.size(); ++j) {
      Term a = rename_vars(m.clauses[i].pattern, "#a");
      Term b = rename_vars(m.clauses[j].pattern, "#b");
      if (unify(a, b))
        warnings.push_back("measure " + m.name + ": clauses " + std::to_string(i + 1) +
                           " and " + std::to_string(j + 1) +
                           " overlap; the earlier one wins on shared instances");
    }
  return warnings;
}

namespace {

std::optional<std::uint64_t> eval_rec(const StratMeasure& m, const Term& origin,
                                      std::size_t depth, std::size_t limit) {
  if (depth > limit)
    throw Error("measure " + m.name + ": recursion depth guard breached on " + origin.str());
  for (const MeasureClause& c : m.clauses) {
    Subst sigma;
    if (!match_into(c.pattern, origin, sigma)) continue;
    std::uint64_t total = c.expr.constant;
    for (const Term& call : c.expr.calls) {
      auto sub = eval_rec(m, apply_subst(sigma, call), depth + 1, limit);
      if (!sub) return std::nullopt;
      total += *sub;
    }
    return total;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::uint64_t> eval_measure(const StratMeasure& m, const Term& origin) {
  return eval_rec(m, origin, 0, origin.size() + 1);
}

}  // namespace sosfmt
