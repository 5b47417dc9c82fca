#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "sosfmt/corpus.hpp"

using namespace sosfmt;

static const char* kCorpusDir = SOSFMT_CORPUS_DIR;

namespace {

nlohmann::json plain(const Json& j) { return nlohmann::json::parse(j.dump()); }

nlohmann::json read_expected(const std::string& name) {
  std::ifstream in(std::string(kCorpusDir) + "/" + name + ".expected");
  REQUIRE(in);
  nlohmann::json j;
  in >> j;
  return j;
}

// Every key present in the golden file must match the computed summary.
void check_subset(const nlohmann::json& expected, const nlohmann::json& got,
                  const std::string& path) {
  for (auto it = expected.begin(); it != expected.end(); ++it) {
    std::string where = path + "/" + it.key();
    INFO(where);
    REQUIRE(got.contains(it.key()));
    if (it.value().is_object())
      check_subset(it.value(), got.at(it.key()), path + "/" + it.key());
    else
      CHECK(got.at(it.key()) == it.value());
  }
}

}  // namespace

TEST_CASE("every registry entry reproduces its golden verdict") {
  for (const ExampleCase& meta : corpus_registry()) {
    INFO(meta.name);
    LoadedExample ex = load_example(kCorpusDir, meta.name);
    const StratMeasure* m = ex.spec.measure(meta.strat);
    REQUIRE(m);
    FormatReport rep = check_rule_format(ex.spec.tss, meta.kind, *m, meta.check_bounds);
    CHECK(rep.outcome == meta.expected);

    std::optional<LegacyReport> legacy;
    if (!meta.eta.empty()) {
      const EtaMap* e = ex.spec.eta(meta.eta);
      REQUIRE(e);
      legacy = legacy_eta_check(ex.spec.tss, *e, m, meta.check_bounds);
      REQUIRE(meta.legacy_expected);
      CHECK(legacy->outcome == *meta.legacy_expected);
    }

    Json summary = corpus_summary(meta, rep, legacy ? &*legacy : nullptr);
    check_subset(read_expected(meta.name), plain(summary), meta.name);
  }
}

TEST_CASE("unknown example names are rejected") {
  CHECK_THROWS_AS(load_example(kCorpusDir, "no_such_example"), Error);
}

TEST_CASE("registered branching profiles behave as recorded") {
  for (const ExampleCase& meta : corpus_registry()) {
    if (!meta.profile) continue;
    INFO(meta.name);
    LoadedExample ex = load_example(kCorpusDir, meta.name);
    BranchingProfile prof = branching_profile(
        ex.spec.tss, meta.kind,
        {meta.profile->height, meta.profile->labels, 200});
    CHECK(prof.saturated);
    CHECK(prof.stable == meta.profile_stable);
  }
}
