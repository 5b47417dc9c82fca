#include "sosfmt/verdict.hpp"

#include <sstream>

namespace sosfmt {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return 0;
    case Outcome::Fail:
      return 1;
    case Outcome::Inconclusive:
      return 2;
  }
  return 3;
}

Outcome combine(Outcome a, Outcome b) {
  if (a == Outcome::Fail || b == Outcome::Fail) return Outcome::Fail;
  if (a == Outcome::Inconclusive || b == Outcome::Inconclusive) return Outcome::Inconclusive;
  return Outcome::Pass;
}

Json to_json(const Witness& w) {
  Json j;
  if (!w.rule.empty()) j["rule"] = w.rule;
  if (!w.terms.empty()) j["terms"] = w.terms;
  j["message"] = w.message;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["check"] = v.check;
  j["outcome"] = outcome_name(v.outcome);
  if (!v.note.empty()) j["note"] = v.note;
  if (!v.witnesses.empty()) {
    Json ws = Json::array();
    for (const Witness& w : v.witnesses) ws.push_back(to_json(w));
    j["witnesses"] = ws;
  }
  return j;
}

std::string render_text(const Verdict& v) {
  std::ostringstream os;
  os << v.check << ": " << outcome_name(v.outcome);
  if (!v.note.empty()) os << " (" << v.note << ")";
  os << "\n";
  for (const Witness& w : v.witnesses) {
    os << "  - ";
    if (!w.rule.empty()) os << "[" << w.rule << "] ";
    os << w.message;
    if (!w.terms.empty()) {
      os << ":";
      for (const std::string& t : w.terms) os << " " << t;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace sosfmt
