#pragma once

#include "sosfmt/stypes.hpp"

namespace sosfmt {

/// One parsed specification file: a TSS plus named measures and named
/// support maps for the legacy baseline.
struct SpecFile {
  Tss tss;
  std::vector<StratMeasure> measures;
  std::vector<EtaMap> etas;

  const StratMeasure* measure(const std::string& name) const;
  const EtaMap* eta(const std::string& name) const;
};

/// Grammar (whitespace-insensitive, `#` comments):
///   spec     := block+
///   sig      := "signature" "{" (name ":" nat ";")* "}"
///   labels   := "labels" "{" (name ";" | name "(" ident ")" ";")* "}"
///   rule     := "rule" string ":" premises? "|-" formula ";"
///   template := "template" string "(" ident ")" ":" tpremises? "|-" formula ";"
///   tpremise := ["forall" ident "."] formula
///   formula  := term "-[" term "]->" term
///   term     := "(" term "," term ")" | name "^" exp "(" term ")"
///            | name "(" args ")" | name "@" ident | name
///   strat    := "strat" name "{" (pattern "=>" mexpr ";")* "}"
///   mexpr    := atom ("+" atom)*;  atom := nat | "S" "(" term ")"
///   eta      := "eta" name "{" (term "=>" "{" [terms] "}" ";")* "}"
/// Undeclared bare names are variables; the family index may be a natural,
/// a template index (optionally +const), or `_` in measure patterns.
/// Negative premises (`]-/->`) are rejected outright.
SpecFile parse_spec_file(const std::string& text);

SpecFile load_spec_file(const std::string& path);

/// Canonical rendering; parse(render(f)) reproduces the same AST.
std::string render_spec_file(const SpecFile& f);

/// Parse a line-oriented triadic LTS (source TAB label TAB target). Symbols
/// are inferred from usage; every bare name is a constant.
Lts parse_lts_tsv(const std::string& text);

}  // namespace sosfmt
