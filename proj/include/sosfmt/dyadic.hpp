#pragma once

#include "sosfmt/tss.hpp"

namespace sosfmt {

/// The paper's table of readings:
///   D1: t -[l]-> t'  becomes  t ~> (l, t')      D4: (t, l) ~> t'
///   D2:              becomes  t' ~> (l, t)      D5: (t', l) ~> t
///   D3:              becomes  l ~> (t, t')      D6: (t, t') ~> l
/// and the six projections drop one target component of D1..D3.
DyadicFormula transform_formula(const TriadicFormula& f, DyadicKind kind);

/// Inverse of the identity transformations; throws for projections.
TriadicFormula untransform_formula(const DyadicFormula& f);

/// Tr_1(o,d1,d2) = o -[d1]-> d2, Tr_2 = d2 -[d1]-> o, Tr_3 = d1 -[o]-> d2.
TriadicFormula tr_inverse(const Term& o, const Term& d1, const Term& d2, int k);

DRule transform_rule(const Rule& r, DyadicKind kind);
DTss transform_tss(const Tss& tss, DyadicKind kind);
Tss untransform_tss(const DTss& tss);

}  // namespace sosfmt
