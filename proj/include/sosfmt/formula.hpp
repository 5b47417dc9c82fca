#pragma once

#include <string>

#include "sosfmt/term.hpp"

namespace sosfmt {

/// t -[l]-> t' with arbitrary terms in all three slots.
struct TriadicFormula {
  Term source;
  Term label;
  Term target;

  bool operator==(const TriadicFormula& o) const {
    return source == o.source && label == o.label && target == o.target;
  }
  bool operator<(const TriadicFormula& o) const {
    if (int c = Term::compare(source, o.source)) return c < 0;
    if (int c = Term::compare(label, o.label)) return c < 0;
    return Term::compare(target, o.target) < 0;
  }
  std::string str() const { return source.str() + " -[" + label.str() + "]-> " + target.str(); }
};

enum class Proj { Id, P1, P2 };

/// Selector for one of the twelve dyadic readings D_k^prj.
struct DyadicKind {
  int k = 1;           // 1..6
  Proj prj = Proj::Id; // != Id only for k in 1..3

  bool operator==(const DyadicKind& o) const { return k == o.k && prj == o.prj; }

  bool valid() const { return k >= 1 && k <= 6 && (prj == Proj::Id || k <= 3); }

  /// CLI token: d1.id .. d6.id, d1.p1, d1.p2, d2.p1, d2.p2, d3.p1, d3.p2.
  static DyadicKind parse(const std::string& token);
  std::string token() const;
  /// Display form, e.g. "D4^id".
  std::string display() const;

  static const std::vector<DyadicKind>& all();
  static const std::vector<DyadicKind>& identities();
};

/// s ~> r; pairs are encoded with the reserved pair symbol. The kind tag
/// records which reading of the triadic formula produced it.
struct DyadicFormula {
  Term source;
  Term target;
  DyadicKind kind;

  bool operator==(const DyadicFormula& o) const {
    return source == o.source && target == o.target && kind == o.kind;
  }
  bool operator<(const DyadicFormula& o) const {
    if (int c = Term::compare(source, o.source)) return c < 0;
    return Term::compare(target, o.target) < 0;
  }
  std::string str() const { return source.str() + " ~> " + target.str(); }
};

}  // namespace sosfmt
