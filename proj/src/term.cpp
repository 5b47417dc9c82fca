#include "sosfmt/term.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace sosfmt {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t node_hash(const TermNode& n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x9e3779b9;
  h = mix(h, std::hash<std::string>{}(n.name));
  h = mix(h, static_cast<std::size_t>(n.index.kind));
  h = mix(h, static_cast<std::size_t>(n.index.value));
  h = mix(h, std::hash<std::string>{}(n.index.var));
  for (const Term& a : n.args) h = mix(h, a.hash());
  return h;
}

}  // namespace

Term Term::var(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Var;
  n->name = std::move(name);
  n->hash = node_hash(*n);
  return Term(std::move(n));
}

Term Term::app(std::string symbol, TermVec args) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::App;
  n->name = std::move(symbol);
  n->args = std::move(args);
  n->hash = node_hash(*n);
  return Term(std::move(n));
}

Term Term::lab(std::string family, std::uint64_t index) {
  return lab_expr(std::move(family), IndexExpr::concrete(index));
}

Term Term::lab_expr(std::string family, IndexExpr e) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Lab;
  n->name = std::move(family);
  n->index = e;
  n->hash = node_hash(*n);
  return Term(std::move(n));
}

Term Term::iter(std::string symbol, IndexExpr exponent, Term arg) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Iter;
  n->name = std::move(symbol);
  n->index = exponent;
  n->args = {std::move(arg)};
  n->hash = node_hash(*n);
  return Term(std::move(n));
}

Term Term::idx_var(std::string base, std::string index_var) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::IdxVar;
  n->name = std::move(base);
  n->index = IndexExpr::affine(std::move(index_var), 0);
  n->hash = node_hash(*n);
  return Term(std::move(n));
}

const std::string& Term::pair_symbol() {
  static const std::string s = "%pair";
  return s;
}

Term Term::pair(Term first, Term second) {
  return app(pair_symbol(), {std::move(first), std::move(second)});
}

bool Term::concrete() const {
  switch (kind()) {
    case TermKind::Var:
      return true;
    case TermKind::Lab:
      return index().kind == IndexKind::Concrete;
    case TermKind::App:
      return std::all_of(args().begin(), args().end(),
                         [](const Term& t) { return t.concrete(); });
    case TermKind::Iter:
    case TermKind::IdxVar:
      return false;
  }
  return false;
}

bool Term::closed() const {
  switch (kind()) {
    case TermKind::Var:
    case TermKind::IdxVar:
      return false;
    case TermKind::Lab:
      return index().kind == IndexKind::Concrete;
    case TermKind::Iter:
      return false;
    case TermKind::App:
      return std::all_of(args().begin(), args().end(),
                         [](const Term& t) { return t.closed(); });
  }
  return false;
}

bool Term::mentions_index_var(const std::string& v) const {
  switch (kind()) {
    case TermKind::Var:
      return false;
    case TermKind::IdxVar:
      return index().var == v;
    case TermKind::Iter:
      return (index().kind == IndexKind::Affine && index().var == v) ||
             args()[0].mentions_index_var(v);
    case TermKind::Lab:
      return index().kind == IndexKind::Affine && index().var == v;
    case TermKind::App:
      return std::any_of(args().begin(), args().end(),
                         [&](const Term& t) { return t.mentions_index_var(v); });
  }
  return false;
}

std::size_t Term::height() const {
  if (kind() != TermKind::App || args().empty()) return 0;
  std::size_t h = 0;
  for (const Term& a : args()) h = std::max(h, a.height());
  return h + 1;
}

std::size_t Term::size() const {
  std::size_t s = 1;
  if (kind() == TermKind::App || kind() == TermKind::Iter)
    for (const Term& a : args()) s += a.size();
  return s;
}

void Term::collect_vars(std::set<std::string>& out) const {
  switch (kind()) {
    case TermKind::Var:
    case TermKind::IdxVar:
      out.insert(name());
      break;
    case TermKind::App:
    case TermKind::Iter:
      for (const Term& a : args()) a.collect_vars(out);
      break;
    case TermKind::Lab:
      break;
  }
}

std::set<std::string> Term::vars() const {
  std::set<std::string> out;
  collect_vars(out);
  return out;
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->hash != o.node_->hash) return false;
  return compare(*this, o) == 0;
}

int Term::compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.index().kind != b.index().kind)
    return static_cast<int>(a.index().kind) < static_cast<int>(b.index().kind) ? -1 : 1;
  if (a.index().value != b.index().value) return a.index().value < b.index().value ? -1 : 1;
  if (int c = a.index().var.compare(b.index().var); c != 0) return c < 0 ? -1 : 1;
  if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
  return 0;
}

namespace {

void print_index(std::ostream& os, const IndexExpr& e) {
  switch (e.kind) {
    case IndexKind::Concrete:
      os << e.value;
      break;
    case IndexKind::Affine:
      os << e.var;
      if (e.value) os << "+" << e.value;
      break;
    case IndexKind::Wild:
      os << "_";
      break;
  }
}

void print_term(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
      os << t.name();
      break;
    case TermKind::IdxVar:
      os << t.name() << "@" << t.index().var;
      break;
    case TermKind::Lab:
      os << t.name() << "(";
      print_index(os, t.index());
      os << ")";
      break;
    case TermKind::Iter:
      os << t.name() << "^(";
      print_index(os, t.index());
      os << ")(";
      print_term(os, t.args()[0]);
      os << ")";
      break;
    case TermKind::App:
      if (t.is_pair()) {
        os << "(";
        print_term(os, t.args()[0]);
        os << ", ";
        print_term(os, t.args()[1]);
        os << ")";
        break;
      }
      os << t.name();
      if (!t.args().empty()) {
        os << "(";
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) os << ", ";
          print_term(os, t.args()[i]);
        }
        os << ")";
      }
      break;
  }
}

}  // namespace

std::string Term::str() const {
  std::ostringstream os;
  print_term(os, *this);
  return os.str();
}

std::optional<std::size_t> Signature::arity_of(const std::string& name) const {
  for (const Symbol& s : symbols)
    if (s.name == name) return s.arity;
  for (const std::string& l : plain_labels)
    if (l == name) return 0;
  return std::nullopt;
}

bool Signature::declares(const std::string& name) const {
  return arity_of(name).has_value() || (family && *family == name);
}

bool Signature::has_constant() const {
  if (family) return true;
  if (!plain_labels.empty()) return true;
  return std::any_of(symbols.begin(), symbols.end(),
                     [](const Symbol& s) { return s.arity == 0; });
}

Term apply_subst(const Subst& sigma, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = sigma.find(t.name());
      return it == sigma.end() ? t : it->second;
    }
    case TermKind::Lab:
    case TermKind::IdxVar:
      return t;
    case TermKind::Iter: {
      return Term::iter(t.name(), t.index(), apply_subst(sigma, t.args()[0]));
    }
    case TermKind::App: {
      if (sigma.empty()) return t;
      TermVec args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const Term& a : t.args()) {
        args.push_back(apply_subst(sigma, a));
        if (args.back() != a) changed = true;
      }
      return changed ? Term::app(t.name(), std::move(args)) : t;
    }
  }
  return t;
}

bool match_into(const Term& pattern, const Term& subject, Subst& sigma) {
  switch (pattern.kind()) {
    case TermKind::Var: {
      auto [it, inserted] = sigma.emplace(pattern.name(), subject);
      return inserted || it->second == subject;
    }
    case TermKind::Lab:
      if (!subject.is_lab() || subject.name() != pattern.name()) return false;
      if (pattern.index().kind == IndexKind::Wild) return true;
      return pattern.index() == subject.index();
    case TermKind::App: {
      if (!subject.is_app() || subject.name() != pattern.name() ||
          subject.args().size() != pattern.args().size())
        return false;
      for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!match_into(pattern.args()[i], subject.args()[i], sigma)) return false;
      return true;
    }
    case TermKind::Iter:
    case TermKind::IdxVar:
      throw Error("match: pattern contains uninstantiated template parts: " + pattern.str());
  }
  return false;
}

std::optional<Subst> match(const Term& pattern, const Term& subject) {
  Subst sigma;
  if (!match_into(pattern, subject, sigma)) return std::nullopt;
  for (auto it = sigma.begin(); it != sigma.end();) {
    if (it->second.is_var() && it->second.name() == it->first)
      it = sigma.erase(it);
    else
      ++it;
  }
  return sigma;
}

namespace {

Term walk(Term t, const Subst& sigma) {
  while (t.is_var()) {
    auto it = sigma.find(t.name());
    if (it == sigma.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const std::string& v, const Term& t, const Subst& sigma) {
  Term w = walk(t, sigma);
  if (w.is_var()) return w.name() == v;
  if (w.is_app()) {
    for (const Term& a : w.args())
      if (occurs(v, a, sigma)) return true;
  }
  return false;
}

bool unify_into(const Term& a0, const Term& b0, Subst& sigma) {
  Term a = walk(a0, sigma);
  Term b = walk(b0, sigma);
  if (a.is_var()) {
    if (b.is_var() && b.name() == a.name()) return true;
    if (occurs(a.name(), b, sigma)) return false;
    sigma[a.name()] = b;
    return true;
  }
  if (b.is_var()) return unify_into(b, a, sigma);
  if (a.is_lab() && b.is_lab()) {
    if (a.name() != b.name()) return false;
    if (a.index().kind == IndexKind::Wild || b.index().kind == IndexKind::Wild) return true;
    return a.index() == b.index();
  }
  if (a.is_app() && b.is_app()) {
    if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
      if (!unify_into(a.args()[i], b.args()[i], sigma)) return false;
    return true;
  }
  return false;
}

Term resolve(const Term& t, const Subst& sigma) {
  Term w = walk(t, sigma);
  if (w.is_app()) {
    TermVec args;
    args.reserve(w.args().size());
    for (const Term& a : w.args()) args.push_back(resolve(a, sigma));
    return Term::app(w.name(), std::move(args));
  }
  return w;
}

}  // namespace

std::optional<Subst> unify(const Term& a, const Term& b) {
  Subst raw;
  if (!unify_into(a, b, raw)) return std::nullopt;
  Subst out;
  for (const auto& [v, t] : raw) out[v] = resolve(t, raw);
  return out;
}

namespace {

bool alpha_into(const Term& a, const Term& b, std::map<std::string, std::string>& fwd,
                std::map<std::string, std::string>& bwd) {
  if (a.is_var() && b.is_var()) {
    auto [itf, insf] = fwd.emplace(a.name(), b.name());
    auto [itb, insb] = bwd.emplace(b.name(), a.name());
    return itf->second == b.name() && itb->second == a.name() && insf == insb;
  }
  if (a.kind() != b.kind()) return false;
  if (a.is_lab()) return a.name() == b.name() && a.index() == b.index();
  if (a.is_app()) {
    if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
      if (!alpha_into(a.args()[i], b.args()[i], fwd, bwd)) return false;
    return true;
  }
  return false;
}

}  // namespace

bool alpha_variant(const Term& a, const Term& b) {
  std::map<std::string, std::string> fwd, bwd;
  return alpha_into(a, b, fwd, bwd);
}

Term rename_vars(const Term& t, const std::string& suffix) {
  switch (t.kind()) {
    case TermKind::Var:
      return Term::var(t.name() + suffix);
    case TermKind::Lab:
      return t;
    case TermKind::IdxVar:
      return Term::idx_var(t.name() + suffix, t.index().var);
    case TermKind::Iter:
      return Term::iter(t.name(), t.index(), rename_vars(t.args()[0], suffix));
    case TermKind::App: {
      TermVec args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(rename_vars(a, suffix));
      return Term::app(t.name(), std::move(args));
    }
  }
  return t;
}

Term instantiate(const Term& t, const IndexEnv& env) {
  switch (t.kind()) {
    case TermKind::Var:
      return t;
    case TermKind::Lab: {
      if (t.index().kind != IndexKind::Affine) return t;
      auto it = env.find(t.index().var);
      if (it == env.end()) return t;
      return Term::lab(t.name(), t.index().value + it->second);
    }
    case TermKind::IdxVar: {
      auto it = env.find(t.index().var);
      if (it == env.end()) return t;
      return Term::var(t.name() + std::to_string(it->second));
    }
    case TermKind::Iter: {
      Term arg = instantiate(t.args()[0], env);
      std::uint64_t n = 0;
      if (t.index().kind == IndexKind::Concrete) {
        n = t.index().value;
      } else {
        auto it = env.find(t.index().var);
        if (it == env.end()) return Term::iter(t.name(), t.index(), std::move(arg));
        n = t.index().value + it->second;
      }
      Term out = std::move(arg);
      for (std::uint64_t k = 0; k < n; ++k) out = Term::app(t.name(), {std::move(out)});
      return out;
    }
    case TermKind::App: {
      TermVec args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const Term& a : t.args()) {
        args.push_back(instantiate(a, env));
        if (args.back() != a) changed = true;
      }
      return changed ? Term::app(t.name(), std::move(args)) : t;
    }
  }
  return t;
}

std::vector<Term> enumerate_closed_terms(const Signature& sig, std::size_t max_height,
                                         std::uint64_t label_bound) {
  if (sig.family && label_bound < 1)
    throw Error("label bound must be at least 1 for a signature with an indexed label family");
  if (!sig.has_constant())
    throw Error("signature has no constants: the set of closed terms is empty at every height");

  std::vector<Term> consts;
  for (const Symbol& s : sig.symbols)
    if (s.arity == 0) consts.push_back(Term::app(s.name));
  for (const std::string& l : sig.plain_labels) consts.push_back(Term::app(l));
  if (sig.family)
    for (std::uint64_t k = 0; k < label_bound; ++k) consts.push_back(Term::lab(*sig.family, k));

  std::vector<Symbol> ops;
  for (const Symbol& s : sig.symbols)
    if (s.arity > 0) ops.push_back(s);

  std::vector<Term> level = consts;  // height <= d
  for (std::size_t d = 1; d <= max_height; ++d) {
    std::vector<Term> next = consts;
    for (const Symbol& op : ops) {
      std::vector<std::size_t> idx(op.arity, 0);
      while (true) {
        TermVec args;
        args.reserve(op.arity);
        for (std::size_t k = 0; k < op.arity; ++k) args.push_back(level[idx[k]]);
        next.push_back(Term::app(op.name, std::move(args)));
        std::size_t k = 0;
        for (; k < op.arity; ++k) {
          if (++idx[k] < level.size()) break;
          idx[k] = 0;
        }
        if (k == op.arity) break;
      }
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  level.erase(std::unique(level.begin(), level.end()), level.end());
  return level;
}

}  // namespace sosfmt
