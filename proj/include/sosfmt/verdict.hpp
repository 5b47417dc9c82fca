#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace sosfmt {

enum class Outcome { Pass, Fail, Inconclusive };

const char* outcome_name(Outcome o);

/// Exit-code contract: pass 0, fail 1, inconclusive 2 (3 is usage/parse).
int exit_code(Outcome o);

Outcome combine(Outcome a, Outcome b);

struct Witness {
  std::string rule;
  std::vector<std::string> terms;
  std::string message;
};

struct Verdict {
  std::string check;
  Outcome outcome = Outcome::Pass;
  std::vector<Witness> witnesses;
  std::string note;

  void fail(Witness w) {
    outcome = combine(outcome, Outcome::Fail);
    witnesses.push_back(std::move(w));
  }
  void inconclusive(Witness w) {
    outcome = combine(outcome, Outcome::Inconclusive);
    witnesses.push_back(std::move(w));
  }
};

using Json = nlohmann::ordered_json;

Json to_json(const Witness& w);
Json to_json(const Verdict& v);
std::string render_text(const Verdict& v);

}  // namespace sosfmt
