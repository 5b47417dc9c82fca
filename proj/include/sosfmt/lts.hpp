#pragma once

#include <optional>

#include "sosfmt/dyadic.hpp"

namespace sosfmt {

/// The twelve bounded-nondeterminism properties. Each one is finite
/// branching of the matching dyadic reading.
enum class PropertyId {
  I = 1,   // finitely branching
  II,      // finitely folding
  III,     // finitely bundling
  IV,      // image finite
  V,       // source finite
  VI,      // label finite
  VII,     // initials finite
  VIII,    // finals finite
  IX,      // heads finite
  X,       // tails finite
  XI,      // antecedents finite
  XII,     // consequents finite
};

const char* property_name(PropertyId p);
const char* property_roman(PropertyId p);
PropertyId property_parse(const std::string& roman);
DyadicKind kind_of_property(PropertyId p);
PropertyId property_of_kind(DyadicKind k);
const std::vector<PropertyId>& all_properties();

/// Provable transitions over a bounded closed-term universe.
struct Lts {
  bool dyadic = false;
  std::optional<DyadicKind> kind;
  std::vector<TriadicFormula> triadic;
  std::vector<DyadicFormula> dy;
  bool saturated = true;
  std::uint64_t dropped = 0;   // conclusions escaping the universe
  std::uint64_t rounds = 0;

  std::size_t size() const { return dyadic ? dy.size() : triadic.size(); }
};

struct DeriveBounds {
  std::size_t height = 3;
  std::uint64_t labels = 3;
  std::uint64_t max_rounds = 50;
};

/// Least set closed under rule application, premises and conclusions
/// restricted to the universe of closed terms at the bounds. Templates are
/// instantiated below the label bound. `saturated` is false when max_rounds
/// ran out before a fixpoint round.
Lts derive_lts(const Tss& tss, const DeriveBounds& bounds);
Lts derive_lts(const DTss& tss, const DeriveBounds& bounds);

struct PropertyReport {
  PropertyId prop;
  std::size_t max_cardinality = 0;
  std::string witness_origin;  // attaining origin, empty on an empty LTS
  std::size_t origins = 0;
};

/// Maximum branching-set cardinality of the property's dyadic reading.
PropertyReport check_property(const Lts& lts, PropertyId prop);

/// Reflexive-transitive closure of the twelve cover edges of the property
/// Hasse diagram; true iff p implies q.
bool property_implies(PropertyId p, PropertyId q);

/// For a derived property, the four logically equivalent conjunctions built
/// from its two chains. Throws for complementary or elementary properties.
std::vector<std::vector<PropertyId>> equivalence_class(PropertyId d);

struct OriginDegree {
  Term origin;
  std::size_t degree_small = 0;
  std::size_t degree_big = 0;
};

struct BranchingProfile {
  bool saturated = true;  // both runs reached their fixpoint
  bool stable = true;     // every origin of the smaller run keeps its degree
  std::vector<OriginDegree> rows;
};

/// Dyadic out-degrees (in the kind's reading) of every origin present at
/// bounds (h, b), compared against the run at (h+1, b).
BranchingProfile branching_profile(const Tss& tss, DyadicKind kind, const DeriveBounds& bounds);

/// Line-oriented export: one transition per line, fields TAB-separated.
std::string lts_to_tsv(const Lts& lts);
Json lts_to_json(const Lts& lts);

}  // namespace sosfmt
