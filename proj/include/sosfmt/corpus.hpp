#pragma once

#include "sosfmt/parser.hpp"

namespace sosfmt {

/// One registered worked example: spec file, the flags its checks run
/// under, and the expected outcomes.
struct ExampleCase {
  std::string name;
  DyadicKind kind;
  std::string strat;
  std::string eta;  // empty when the legacy baseline does not apply
  StratBounds check_bounds{3, 3};
  std::optional<StratBounds> profile;  // smaller bound of the degree comparison
  Outcome expected = Outcome::Pass;
  std::optional<Outcome> legacy_expected;
  bool profile_stable = true;
  std::string note;

  std::string file() const { return name + ".tss"; }
  std::string expected_file() const { return name + ".expected"; }
};

const std::vector<ExampleCase>& corpus_registry();

struct LoadedExample {
  ExampleCase meta;
  SpecFile spec;
};

/// Parses the registered spec file; throws on unknown names.
LoadedExample load_example(const std::string& corpus_dir, const std::string& name);

/// The golden summary compared against <name>.expected.
Json corpus_summary(const ExampleCase& meta, const FormatReport& report,
                    const LegacyReport* legacy);

}  // namespace sosfmt
