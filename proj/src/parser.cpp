#include "sosfmt/parser.hpp"

#include <cctype>
#include <functional>
#include <fstream>
#include <sstream>

namespace sosfmt {

namespace {

enum class Tok {
  Ident, Nat, Str,
  LBrace, RBrace, LParen, RParen,
  Colon, Semi, Comma, Dot, Plus, Caret, At,
  LBracket,   // -[
  Arrow,      // ]->
  NegArrow,   // ]-/->
  Turnstile,  // |-
  FatArrow,   // =>
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t nat = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { next(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    next();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(line_, col_, msg); }

  char cur() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char ahead(std::size_t k) const { return pos_ + k < s_.size() ? s_[pos_ + k] : '\0'; }

  void advance() {
    if (cur() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void next() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(cur()))) {
        advance();
      } else if (cur() == '#') {
        while (pos_ < s_.size() && cur() != '\n') advance();
      } else {
        break;
      }
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = cur();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_') {
        id += cur();
        advance();
      }
      tok_.kind = Tok::Ident;
      tok_.text = id;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t n = 0;
      while (std::isdigit(static_cast<unsigned char>(cur()))) {
        n = n * 10 + (cur() - '0');
        advance();
      }
      tok_.kind = Tok::Nat;
      tok_.nat = n;
      return;
    }
    if (c == '"') {
      advance();
      std::string str;
      while (cur() != '"') {
        if (cur() == '\0' || cur() == '\n') fail("unterminated string");
        str += cur();
        advance();
      }
      advance();
      tok_.kind = Tok::Str;
      tok_.text = str;
      return;
    }
    switch (c) {
      case '{': advance(); tok_.kind = Tok::LBrace; return;
      case '}': advance(); tok_.kind = Tok::RBrace; return;
      case '(': advance(); tok_.kind = Tok::LParen; return;
      case ')': advance(); tok_.kind = Tok::RParen; return;
      case ':': advance(); tok_.kind = Tok::Colon; return;
      case ';': advance(); tok_.kind = Tok::Semi; return;
      case ',': advance(); tok_.kind = Tok::Comma; return;
      case '.': advance(); tok_.kind = Tok::Dot; return;
      case '+': advance(); tok_.kind = Tok::Plus; return;
      case '^': advance(); tok_.kind = Tok::Caret; return;
      case '@': advance(); tok_.kind = Tok::At; return;
      case '-':
        if (ahead(1) == '[') {
          advance(); advance();
          tok_.kind = Tok::LBracket;
          return;
        }
        fail("stray '-'");
      case ']':
        if (ahead(1) == '-' && ahead(2) == '>') {
          advance(); advance(); advance();
          tok_.kind = Tok::Arrow;
          return;
        }
        if (ahead(1) == '-' && ahead(2) == '/' && ahead(3) == '-' && ahead(4) == '>') {
          advance(); advance(); advance(); advance(); advance();
          tok_.kind = Tok::NegArrow;
          return;
        }
        fail("stray ']'");
      case '|':
        if (ahead(1) == '-') {
          advance(); advance();
          tok_.kind = Tok::Turnstile;
          return;
        }
        fail("stray '|'");
      case '=':
        if (ahead(1) == '>') {
          advance(); advance();
          tok_.kind = Tok::FatArrow;
          return;
        }
        fail("stray '='");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

// Term context: which index variables are in scope and whether the family
// wildcard `_` (or any free index name) is allowed.
struct TermCtx {
  std::set<std::string> index_vars;
  bool wildcard_ok = false;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  SpecFile parse() {
    SpecFile f;
    while (lex_.peek().kind != Tok::End) {
      Token t = expect(Tok::Ident, "a block keyword");
      if (t.text == "signature") {
        parse_signature(f);
      } else if (t.text == "labels") {
        parse_labels(f);
      } else if (t.text == "rule") {
        parse_rule(f);
      } else if (t.text == "template") {
        parse_template(f);
      } else if (t.text == "strat") {
        parse_strat(f);
      } else if (t.text == "eta") {
        parse_eta(f);
      } else {
        throw ParseError(t.line, t.col, "unknown block '" + t.text + "'");
      }
    }
    Verdict v = validate_tss(f.tss);
    if (v.outcome != Outcome::Pass) {
      std::string msg = "ill-formed system";
      if (!v.witnesses.empty()) msg += ": " + v.witnesses.front().message;
      throw ParseError(1, 1, msg);
    }
    return f;
  }

 private:
  Token expect(Tok kind, const std::string& what) {
    Token t = lex_.take();
    if (t.kind != kind)
      throw ParseError(t.line, t.col, "expected " + what);
    return t;
  }

  bool accept(Tok kind) {
    if (lex_.peek().kind != kind) return false;
    lex_.take();
    return true;
  }

  void parse_signature(SpecFile& f) {
    expect(Tok::LBrace, "'{'");
    while (!accept(Tok::RBrace)) {
      Token name = expect(Tok::Ident, "a symbol name");
      expect(Tok::Colon, "':'");
      Token arity = expect(Tok::Nat, "an arity");
      expect(Tok::Semi, "';'");
      f.tss.sig.symbols.push_back({name.text, static_cast<std::size_t>(arity.nat)});
    }
  }

  void parse_labels(SpecFile& f) {
    expect(Tok::LBrace, "'{'");
    while (!accept(Tok::RBrace)) {
      Token name = expect(Tok::Ident, "a label name");
      if (accept(Tok::LParen)) {
        Token idx = expect(Tok::Ident, "the family index");
        expect(Tok::RParen, "')'");
        (void)idx;
        if (f.tss.sig.family)
          throw ParseError(name.line, name.col, "only one indexed label family is supported");
        f.tss.sig.family = name.text;
      } else {
        f.tss.sig.plain_labels.push_back(name.text);
      }
      expect(Tok::Semi, "';'");
    }
  }

  IndexExpr parse_index_expr(const TermCtx& ctx) {
    Token t = lex_.take();
    if (t.kind == Tok::Nat) return IndexExpr::concrete(t.nat);
    if (t.kind != Tok::Ident)
      throw ParseError(t.line, t.col, "expected an index (a natural or an index variable)");
    if (ctx.index_vars.count(t.text)) {
      std::uint64_t off = 0;
      if (accept(Tok::Plus)) off = expect(Tok::Nat, "an offset").nat;
      return IndexExpr::affine(t.text, off);
    }
    if (ctx.wildcard_ok) return IndexExpr::wild();
    throw ParseError(t.line, t.col, "index variable '" + t.text + "' is not in scope here");
  }

  Term parse_term(const SpecFile& f, const TermCtx& ctx) {
    Token t = lex_.take();
    if (t.kind == Tok::LParen) {
      Term first = parse_term(f, ctx);
      expect(Tok::Comma, "',' in a pair");
      Term second = parse_term(f, ctx);
      expect(Tok::RParen, "')'");
      return Term::pair(std::move(first), std::move(second));
    }
    if (t.kind != Tok::Ident) throw ParseError(t.line, t.col, "expected a term");
    const std::string& name = t.text;

    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      auto ar = f.tss.sig.arity_of(name);
      if (!ar || *ar != 1)
        throw ParseError(t.line, t.col, "iterated symbol '" + name + "' must be a unary symbol");
      IndexExpr e;
      if (accept(Tok::LParen)) {
        e = parse_index_expr(ctx);
        expect(Tok::RParen, "')'");
      } else {
        Token n = lex_.take();
        if (n.kind == Tok::Nat)
          e = IndexExpr::concrete(n.nat);
        else if (n.kind == Tok::Ident && ctx.index_vars.count(n.text))
          e = IndexExpr::affine(n.text, 0);
        else
          throw ParseError(n.line, n.col, "expected an iteration exponent");
      }
      expect(Tok::LParen, "'('");
      Term arg = parse_term(f, ctx);
      expect(Tok::RParen, "')'");
      if (e.kind == IndexKind::Concrete) {
        Term out = arg;
        for (std::uint64_t k = 0; k < e.value; ++k) out = Term::app(name, {out});
        return out;
      }
      return Term::iter(name, e, std::move(arg));
    }

    if (lex_.peek().kind == Tok::At) {
      lex_.take();
      Token iv = expect(Tok::Ident, "an index variable");
      if (!ctx.index_vars.count(iv.text))
        throw ParseError(iv.line, iv.col, "index variable '" + iv.text + "' is not in scope");
      if (f.tss.sig.declares(name))
        throw ParseError(t.line, t.col, "'" + name + "' is a declared symbol, not a variable");
      return Term::idx_var(name, iv.text);
    }

    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      if (f.tss.sig.family && name == *f.tss.sig.family) {
        IndexExpr e = parse_index_expr(ctx);
        expect(Tok::RParen, "')'");
        return Term::lab_expr(name, e);
      }
      auto ar = f.tss.sig.arity_of(name);
      if (!ar) throw ParseError(t.line, t.col, "undefined symbol '" + name + "'");
      TermVec args;
      args.push_back(parse_term(f, ctx));
      while (accept(Tok::Comma)) args.push_back(parse_term(f, ctx));
      expect(Tok::RParen, "')'");
      if (args.size() != *ar)
        throw ParseError(t.line, t.col,
                         "symbol '" + name + "' has arity " + std::to_string(*ar) + " but " +
                             std::to_string(args.size()) + " arguments");
      return Term::app(name, std::move(args));
    }

    if (f.tss.sig.family && name == *f.tss.sig.family)
      throw ParseError(t.line, t.col, "label family '" + name + "' needs an index");
    auto ar = f.tss.sig.arity_of(name);
    if (ar) {
      if (*ar != 0)
        throw ParseError(t.line, t.col,
                         "symbol '" + name + "' has arity " + std::to_string(*ar) +
                             " and needs arguments");
      return Term::app(name);
    }
    return Term::var(name);
  }

  TriadicFormula parse_formula(const SpecFile& f, const TermCtx& ctx) {
    Term source = parse_term(f, ctx);
    Token lb = lex_.take();
    if (lb.kind != Tok::LBracket)
      throw ParseError(lb.line, lb.col, "expected '-[' after the source term");
    Term label = parse_term(f, ctx);
    Token ar = lex_.take();
    if (ar.kind == Tok::NegArrow)
      throw ParseError(ar.line, ar.col,
                       "negative premises are rejected: this checker analyzes positive-premise "
                       "systems only, and dropping a negative premise can only enlarge the "
                       "derived transition system, so every finiteness property checked here is "
                       "preserved");
    if (ar.kind != Tok::Arrow) throw ParseError(ar.line, ar.col, "expected ']->'");
    Term target = parse_term(f, ctx);
    return {std::move(source), std::move(label), std::move(target)};
  }

  void parse_rule(SpecFile& f) {
    Token name = expect(Tok::Str, "a quoted rule name");
    expect(Tok::Colon, "':'");
    Rule r;
    r.name = name.text;
    TermCtx ctx;
    if (!accept(Tok::Turnstile)) {
      r.premises.push_back(parse_formula(f, ctx));
      while (accept(Tok::Comma)) r.premises.push_back(parse_formula(f, ctx));
      expect(Tok::Turnstile, "'|-'");
    }
    r.conclusion = parse_formula(f, ctx);
    expect(Tok::Semi, "';'");
    f.tss.rules.push_back(std::move(r));
  }

  void parse_template(SpecFile& f) {
    Token name = expect(Tok::Str, "a quoted template name");
    expect(Tok::LParen, "'('");
    Token idx = expect(Tok::Ident, "the index variable");
    expect(Tok::RParen, "')'");
    expect(Tok::Colon, "':'");
    RuleTemplate t;
    t.name = name.text;
    t.index_var = idx.text;
    TermCtx ctx;
    ctx.index_vars.insert(idx.text);
    if (!accept(Tok::Turnstile)) {
      do {
        TemplatePremise p;
        TermCtx pctx = ctx;
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "forall") {
          lex_.take();
          Token fv = expect(Tok::Ident, "the premise-family index");
          expect(Tok::Dot, "'.'");
          p.forall = fv.text;
          pctx.index_vars.insert(fv.text);
        }
        p.formula = parse_formula(f, pctx);
        t.premises.push_back(std::move(p));
      } while (accept(Tok::Comma));
      expect(Tok::Turnstile, "'|-'");
    }
    t.conclusion = parse_formula(f, ctx);
    expect(Tok::Semi, "';'");
    f.tss.templates.push_back(std::move(t));
  }

  MeasureExpr parse_mexpr(const SpecFile& f, const TermCtx& ctx, const Token& at) {
    MeasureExpr e;
    bool first = true;
    while (true) {
      Token t = lex_.peek();
      if (t.kind == Tok::Nat) {
        lex_.take();
        e.constant += t.nat;
      } else if (t.kind == Tok::Ident && t.text == "S") {
        lex_.take();
        expect(Tok::LParen, "'('");
        e.calls.push_back(parse_term(f, ctx));
        expect(Tok::RParen, "')'");
      } else if (first) {
        throw ParseError(at.line, at.col, "expected a measure expression");
      } else {
        throw ParseError(t.line, t.col, "expected a natural or S(...) in a measure expression");
      }
      first = false;
      if (!accept(Tok::Plus)) break;
    }
    return e;
  }

  void parse_strat(SpecFile& f) {
    Token name = expect(Tok::Ident, "a measure name");
    expect(Tok::LBrace, "'{'");
    StratMeasure m;
    m.name = name.text;
    TermCtx ctx;
    ctx.wildcard_ok = true;
    while (!accept(Tok::RBrace)) {
      MeasureClause c;
      c.pattern = parse_term(f, ctx);
      Token fat = expect(Tok::FatArrow, "'=>'");
      c.expr = parse_mexpr(f, ctx, fat);
      expect(Tok::Semi, "';'");
      m.clauses.push_back(std::move(c));
    }
    try {
      validate_measure(m);
    } catch (const Error& e) {
      throw ParseError(name.line, name.col, e.what());
    }
    f.measures.push_back(std::move(m));
  }

  void parse_eta(SpecFile& f) {
    Token name = expect(Tok::Ident, "a support-map name");
    expect(Tok::LBrace, "'{'");
    EtaMap eta;
    eta.name = name.text;
    TermCtx ctx;
    while (!accept(Tok::RBrace)) {
      Term key = parse_term(f, ctx);
      expect(Tok::FatArrow, "'=>'");
      expect(Tok::LBrace, "'{'");
      std::vector<Term> vals;
      if (lex_.peek().kind != Tok::RBrace) {
        vals.push_back(parse_term(f, ctx));
        while (accept(Tok::Comma)) vals.push_back(parse_term(f, ctx));
      }
      expect(Tok::RBrace, "'}'");
      expect(Tok::Semi, "';'");
      eta.entries.emplace_back(std::move(key), std::move(vals));
    }
    f.etas.push_back(std::move(eta));
  }

  Lexer lex_;
};

}  // namespace

const StratMeasure* SpecFile::measure(const std::string& name) const {
  for (const StratMeasure& m : measures)
    if (m.name == name) return &m;
  return nullptr;
}

const EtaMap* SpecFile::eta(const std::string& name) const {
  for (const EtaMap& e : etas)
    if (e.name == name) return &e;
  return nullptr;
}

SpecFile parse_spec_file(const std::string& text) { return Parser(text).parse(); }

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_file(buf.str());
}

namespace {

void render_formula(std::ostream& os, const TriadicFormula& fl) {
  os << fl.source.str() << " -[ " << fl.label.str() << " ]-> " << fl.target.str();
}

}  // namespace

std::string render_spec_file(const SpecFile& f) {
  std::ostringstream os;
  if (!f.tss.sig.symbols.empty()) {
    os << "signature {\n";
    for (const Symbol& s : f.tss.sig.symbols)
      os << "  " << s.name << ": " << s.arity << ";\n";
    os << "}\n\n";
  }
  if (!f.tss.sig.plain_labels.empty() || f.tss.sig.family) {
    os << "labels {\n";
    for (const std::string& l : f.tss.sig.plain_labels) os << "  " << l << ";\n";
    if (f.tss.sig.family) os << "  " << *f.tss.sig.family << "(i);\n";
    os << "}\n\n";
  }
  for (const Rule& r : f.tss.rules) {
    os << "rule \"" << r.name << "\": ";
    for (std::size_t i = 0; i < r.premises.size(); ++i) {
      if (i) os << ", ";
      render_formula(os, r.premises[i]);
      os << " ";
    }
    os << "|- ";
    render_formula(os, r.conclusion);
    os << ";\n";
  }
  for (const RuleTemplate& t : f.tss.templates) {
    os << "template \"" << t.name << "\" (" << t.index_var << "): ";
    for (std::size_t i = 0; i < t.premises.size(); ++i) {
      if (i) os << ", ";
      if (t.premises[i].forall) os << "forall " << *t.premises[i].forall << ". ";
      render_formula(os, t.premises[i].formula);
      os << " ";
    }
    os << "|- ";
    render_formula(os, t.conclusion);
    os << ";\n";
  }
  for (const StratMeasure& m : f.measures) {
    os << "\nstrat " << m.name << " {\n";
    for (const MeasureClause& c : m.clauses) {
      os << "  " << c.pattern.str() << " => ";
      bool first = true;
      if (c.expr.constant > 0 || c.expr.calls.empty()) {
        os << c.expr.constant;
        first = false;
      }
      for (const Term& call : c.expr.calls) {
        if (!first) os << " + ";
        first = false;
        os << "S(" << call.str() << ")";
      }
      os << ";\n";
    }
    os << "}\n";
  }
  for (const EtaMap& e : f.etas) {
    os << "\neta " << e.name << " {\n";
    for (const auto& [key, vals] : e.entries) {
      os << "  " << key.str() << " => { ";
      for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) os << ", ";
        os << vals[i].str();
      }
      os << (vals.empty() ? "};" : " };") << "\n";
    }
    os << "}\n";
  }
  return os.str();
}

Lts parse_lts_tsv(const std::string& text) {
  Lts lts;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  // Terms in an exported LTS are closed; bare names are constants.
  std::function<Term(const std::string&, int, std::size_t&)> parse_one =
      [&](const std::string& s, int ln, std::size_t& pos) -> Term {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos >= s.size()) throw ParseError(ln, static_cast<int>(pos) + 1, "expected a term");
    if (s[pos] == '(') {
      ++pos;
      Term a = parse_one(s, ln, pos);
      while (pos < s.size() && s[pos] == ' ') ++pos;
      if (pos >= s.size() || s[pos] != ',')
        throw ParseError(ln, static_cast<int>(pos) + 1, "expected ',' in a pair");
      ++pos;
      Term b = parse_one(s, ln, pos);
      while (pos < s.size() && s[pos] == ' ') ++pos;
      if (pos >= s.size() || s[pos] != ')')
        throw ParseError(ln, static_cast<int>(pos) + 1, "expected ')'");
      ++pos;
      return Term::pair(std::move(a), std::move(b));
    }
    std::string name;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      name += s[pos++];
    if (name.empty()) throw ParseError(ln, static_cast<int>(pos) + 1, "expected a name");
    if (pos < s.size() && s[pos] == '(') {
      // Either a family constant name(nat) or an application.
      std::size_t save = pos;
      ++pos;
      while (pos < s.size() && s[pos] == ' ') ++pos;
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        std::uint64_t n = 0;
        std::size_t q = pos;
        while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q])))
          n = n * 10 + (s[q++] - '0');
        if (q < s.size() && s[q] == ')') {
          pos = q + 1;
          return Term::lab(name, n);
        }
      }
      pos = save + 1;
      TermVec args;
      args.push_back(parse_one(s, ln, pos));
      while (true) {
        while (pos < s.size() && s[pos] == ' ') ++pos;
        if (pos < s.size() && s[pos] == ',') {
          ++pos;
          args.push_back(parse_one(s, ln, pos));
          continue;
        }
        break;
      }
      if (pos >= s.size() || s[pos] != ')')
        throw ParseError(ln, static_cast<int>(pos) + 1, "expected ')'");
      ++pos;
      return Term::app(name, std::move(args));
    }
    return Term::app(name);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 3)
      throw ParseError(lineno, 1, "expected three TAB-separated fields");
    std::size_t pos = 0;
    Term s = parse_one(fields[0], lineno, pos);
    pos = 0;
    Term l = parse_one(fields[1], lineno, pos);
    pos = 0;
    Term t = parse_one(fields[2], lineno, pos);
    lts.triadic.push_back({std::move(s), std::move(l), std::move(t)});
  }
  return lts;
}

}  // namespace sosfmt
