#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sosfmt/corpus.hpp"

using namespace sosfmt;

namespace {

// Default bounds come from SOSFMT_BOUNDS ("height,labels,rounds").
DeriveBounds env_bounds() {
  DeriveBounds b;
  if (const char* env = std::getenv("SOSFMT_BOUNDS")) {
    std::istringstream in(env);
    char c1, c2;
    std::size_t h;
    std::uint64_t l, r;
    if (in >> h >> c1 >> l >> c2 >> r && c1 == ',' && c2 == ',') b = {h, l, r};
  }
  return b;
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string render_dyadic_listing(const DTss& d) {
  std::ostringstream os;
  os << "# " << d.kind.display() << "-dyadic system\n";
  auto formula = [](const DyadicFormula& f) { return f.source.str() + " ~> " + f.target.str(); };
  for (const DRule& r : d.rules) {
    os << "rule \"" << r.name << "\": ";
    for (std::size_t i = 0; i < r.premises.size(); ++i)
      os << (i ? ", " : "") << formula(r.premises[i]) << " ";
    os << "|- " << formula(r.conclusion) << ";\n";
  }
  for (const DRuleTemplate& t : d.templates) {
    os << "template \"" << t.name << "\" (" << t.index_var << "): ";
    for (std::size_t i = 0; i < t.premises.size(); ++i) {
      os << (i ? ", " : "");
      if (t.premises[i].forall) os << "forall " << *t.premises[i].forall << ". ";
      os << formula(t.premises[i].formula) << " ";
    }
    os << "|- " << formula(t.conclusion) << ";\n";
  }
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Rule-format checking and bounded-nondeterminism analysis for transition system "
               "specifications with terms as labels"};
  app.require_subcommand(1);

  DeriveBounds defaults = env_bounds();
  std::string file, kind_tok = "d1.id", strat, eta_name, out_path, fmt = "text", cls;
  std::size_t height = defaults.height;
  std::uint64_t labels = defaults.labels;
  std::uint64_t rounds = defaults.max_rounds;

  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--height", height, "universe height bound");
    cmd->add_option("--labels", labels, "label-family index bound / template instantiation bound");
    cmd->add_option("--rounds", rounds, "derivation round bound");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", fmt, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* check = app.add_subcommand("check", "run the rule-format pipeline");
  check->add_option("file", file)->required();
  check->add_option("--kind", kind_tok, "dyadic reading, e.g. d1.id or d4.id")->required();
  check->add_option("--strat", strat, "stratification measure name")->required();
  add_bounds(check);
  add_format(check);

  CLI::App* transform = app.add_subcommand("transform", "print the dyadic reading of a system");
  transform->add_option("file", file)->required();
  transform->add_option("--kind", kind_tok)->required();
  transform->add_option("-o,--out", out_path);

  CLI::App* derive = app.add_subcommand("derive", "derive the bounded transition system");
  derive->add_option("file", file)->required();
  CLI::Option* derive_kind =
      derive->add_option("--kind", kind_tok, "derive the dyadic reading instead of the triadic one");
  derive->add_option("-o,--out", out_path);
  add_bounds(derive);
  add_format(derive);

  CLI::App* props = app.add_subcommand("props", "branching-set cardinalities of an LTS file");
  props->add_option("file", file)->required();
  add_format(props);

  CLI::App* lattice = app.add_subcommand("lattice", "property implications");
  lattice->add_option("--class", cls, "equivalence class of a derived property (i, ii or iii)");
  add_format(lattice);

  CLI::App* legacy = app.add_subcommand("legacy", "label-set eta-type baseline");
  legacy->add_option("file", file)->required();
  legacy->add_option("--eta", eta_name, "support map name")->required();
  legacy->add_option("--strat", strat, "also report stratification conditions");
  add_bounds(legacy);
  add_format(legacy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  if (check->parsed()) {
    SpecFile spec = load_spec_file(file);
    const StratMeasure* m = spec.measure(strat);
    if (!m) throw Error("no measure named '" + strat + "' in " + file);
    FormatReport rep =
        check_rule_format(spec.tss, DyadicKind::parse(kind_tok), *m, {height, labels});
    std::cout << (fmt == "json" ? rep.to_json().dump(2) + "\n" : rep.text());
    return exit_code(rep.outcome);
  }

  if (transform->parsed()) {
    SpecFile spec = load_spec_file(file);
    DTss d = transform_tss(spec.tss, DyadicKind::parse(kind_tok));
    write_out(out_path, render_dyadic_listing(d));
    return 0;
  }

  if (derive->parsed()) {
    SpecFile spec = load_spec_file(file);
    Lts lts;
    if (derive_kind->count() > 0) {
      lts = derive_lts(transform_tss(spec.tss, DyadicKind::parse(kind_tok)),
                       {height, labels, rounds});
    } else {
      lts = derive_lts(spec.tss, {height, labels, rounds});
    }
    if (fmt == "json")
      write_out(out_path, lts_to_json(lts).dump(2) + "\n");
    else
      write_out(out_path, lts_to_tsv(lts));
    if (!lts.saturated) {
      std::cerr << "derivation did not saturate within " << rounds << " rounds\n";
      return 2;
    }
    return 0;
  }

  if (props->parsed()) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    Lts lts = parse_lts_tsv(buf.str());
    Json j = Json::array();
    for (PropertyId p : all_properties()) {
      PropertyReport rep = check_property(lts, p);
      if (fmt == "json") {
        j.push_back(Json{{"property", property_roman(p)},
                         {"name", property_name(p)},
                         {"max_cardinality", rep.max_cardinality},
                         {"witness", rep.witness_origin}});
      } else {
        std::cout << "(" << property_roman(p) << ") " << property_name(p)
                  << ": max branching-set cardinality " << rep.max_cardinality;
        if (!rep.witness_origin.empty()) std::cout << " at " << rep.witness_origin;
        std::cout << "\n";
      }
    }
    if (fmt == "json") std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (lattice->parsed()) {
    if (!cls.empty()) {
      auto cl = equivalence_class(property_parse(cls));
      if (fmt == "json") {
        Json j = Json::array();
        for (const auto& conj : cl) {
          Json c = Json::array();
          for (PropertyId p : conj) c.push_back(property_roman(p));
          j.push_back(c);
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "class of (" << cls << "):";
        for (const auto& conj : cl) {
          std::cout << " {";
          for (std::size_t i = 0; i < conj.size(); ++i)
            std::cout << (i ? " and " : "") << "(" << property_roman(conj[i]) << ")";
          std::cout << "}";
        }
        std::cout << "\n";
      }
      return 0;
    }
    if (fmt == "json") {
      Json j;
      for (PropertyId p : all_properties()) {
        Json row = Json::array();
        for (PropertyId q : all_properties())
          if (property_implies(p, q)) row.push_back(property_roman(q));
        j[property_roman(p)] = row;
      }
      std::cout << j.dump(2) << "\n";
    } else {
      for (PropertyId p : all_properties()) {
        std::cout << "(" << property_roman(p) << ") implies:";
        for (PropertyId q : all_properties())
          if (property_implies(p, q)) std::cout << " (" << property_roman(q) << ")";
        std::cout << "\n";
      }
    }
    return 0;
  }

  if (legacy->parsed()) {
    SpecFile spec = load_spec_file(file);
    const EtaMap* e = spec.eta(eta_name);
    if (!e) throw Error("no support map named '" + eta_name + "' in " + file);
    const StratMeasure* m = strat.empty() ? nullptr : spec.measure(strat);
    if (!strat.empty() && !m) throw Error("no measure named '" + strat + "' in " + file);
    LegacyReport rep = legacy_eta_check(spec.tss, *e, m, {height, labels});
    std::cout << (fmt == "json" ? rep.to_json().dump(2) + "\n" : rep.text());
    return exit_code(rep.outcome);
  }

  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
