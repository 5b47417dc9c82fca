#include "sosfmt/corpus.hpp"

namespace sosfmt {

const std::vector<ExampleCase>& corpus_registry() {
  static const std::vector<ExampleCase> reg = [] {
    std::vector<ExampleCase> r;
    auto add = [&](ExampleCase e) { r.push_back(std::move(e)); };

    add({"ex6_stratification", {1, Proj::Id}, "S0", "", {3, 3}, StratBounds{3, 3},
         Outcome::Pass, std::nullopt, true,
         "stratified premise family: one live member, the rest junk"});
    add({"ex5_restricted_support", {1, Proj::Id}, "S51", "E51", {3, 3}, StratBounds{3, 3},
         Outcome::Pass, Outcome::Fail, true,
         "support restriction filters the unprovable family members"});
    add({"ex5_targets", {1, Proj::Id}, "S52", "E52", {3, 3}, StratBounds{3, 3},
         Outcome::Pass, Outcome::Fail, true,
         "premise targets keep the family members apart"});
    add({"ex5_infinite_premises", {1, Proj::Id}, "S52i", "E52i", {3, 3}, StratBounds{3, 3},
         Outcome::Pass, Outcome::Pass, true,
         "an infinite premise family on one source invalidates every member"});
    add({"ex5_uniform_targets", {1, Proj::Id}, "S53", "", {3, 3}, std::nullopt,
         Outcome::Fail, std::nullopt, true,
         "indexed premise-target names break uniformity"});
    add({"ex5_uniform_renamed", {1, Proj::Id}, "S53", "", {3, 3}, std::nullopt,
         Outcome::Fail, std::nullopt, true,
         "after renaming, one type is infinitely inhabited"});
    add({"ccs_choice", {1, Proj::Id}, "Sccs", "", {1, 2}, StratBounds{1, 2},
         Outcome::Pass, std::nullopt, true, "prefix and choice over an indexed alphabet"});
    add({"microchocs_subst", {4, Proj::Id}, "Ssub", "", {1, 1}, StratBounds{0, 1},
         Outcome::Pass, std::nullopt, true, "substitution class is image finite"});
    add({"microchocs_send", {1, Proj::Id}, "Ssend", "", {1, 1}, StratBounds{1, 1},
         Outcome::Pass, std::nullopt, true, "send class is finitely branching"});
    add({"microchocs_recv", {4, Proj::Id}, "Srecv", "", {1, 1}, StratBounds{1, 1},
         Outcome::Pass, std::nullopt, true, "receive class is image finite"});
    add({"microchocs_tau", {1, Proj::Id}, "Stau", "", {1, 1}, StratBounds{1, 1},
         Outcome::Pass, std::nullopt, true, "silent-step class is finitely branching"});
    add({"microchocs_full", {1, Proj::Id}, "Sfull", "", {1, 1}, std::nullopt,
         Outcome::Fail, std::nullopt, true,
         "whole system: the substitution axiom breaks the format"});
    add({"remark_r1", {1, Proj::Id}, "Sr", "", {2, 1}, StratBounds{2, 1},
         Outcome::Pass, std::nullopt, true,
         "projection counterexample source system, first component"});
    add({"remark_r2", {1, Proj::Id}, "Sr", "", {2, 1}, StratBounds{2, 1},
         Outcome::Pass, std::nullopt, true,
         "projection counterexample source system, second component"});
    add({"sigma0_axiom_fx", {1, Proj::Id}, "S0", "", {3, 3}, StratBounds{3, 3},
         Outcome::Fail, std::nullopt, false, "unguarded label variable in an axiom"});
    add({"sigma0_axiom_cyc", {1, Proj::Id}, "Scy", "", {3, 3}, StratBounds{3, 3},
         Outcome::Fail, std::nullopt, false, "c steps to itself under every label"});
    add({"sigma0_axiom_ccy", {1, Proj::Id}, "Scy", "", {3, 3}, StratBounds{3, 3},
         Outcome::Fail, std::nullopt, false, "c steps to every process under one label"});
    return r;
  }();
  return reg;
}

LoadedExample load_example(const std::string& corpus_dir, const std::string& name) {
  for (const ExampleCase& e : corpus_registry()) {
    if (e.name != name) continue;
    LoadedExample out{e, load_spec_file(corpus_dir + "/" + e.file())};
    if (!out.spec.measure(e.strat))
      throw Error("example " + name + ": measure " + e.strat + " is missing");
    if (!e.eta.empty() && !out.spec.eta(e.eta))
      throw Error("example " + name + ": support map " + e.eta + " is missing");
    return out;
  }
  throw Error("unknown example '" + name + "'");
}

Json corpus_summary(const ExampleCase& meta, const FormatReport& report,
                    const LegacyReport* legacy) {
  Json j;
  j["example"] = meta.name;
  j["kind"] = meta.kind.token();
  j["strat"] = meta.strat;
  j["outcome"] = outcome_name(report.outcome);
  j["property"] = property_roman(report.property);
  j["property_phrase"] = report.property_phrase;
  Json subs;
  for (const Verdict& v : report.subchecks) {
    subs[v.check] = outcome_name(v.outcome);
    if (v.check == "stratification" && v.outcome == Outcome::Pass) j["strat_grade"] = v.note;
  }
  j["subchecks"] = subs;
  Json junk = Json::array();
  for (const std::string& r : report.junk.rules) junk.push_back(r);
  j["junk"] = junk;
  Json stypes;
  for (const STypeResult& st : report.stypes)
    stypes[st.rule] = st.stype ? st.stype->str() : "absent: " + st.reason;
  j["stypes"] = stypes;
  Json support;
  for (const auto& [s, vs] : report.support.map) {
    Json arr = Json::array();
    for (const Term& v : vs) arr.push_back(v.str());
    support[s.str()] = arr;
  }
  j["support"] = support;
  if (legacy) j["legacy_outcome"] = outcome_name(legacy->outcome);
  return j;
}

}  // namespace sosfmt
