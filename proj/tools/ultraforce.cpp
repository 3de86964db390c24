// ultraforce command line: translate, eval, decide, ramsey and check.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ultraforce/deciders.hpp"
#include "ultraforce/forcing.hpp"
#include "ultraforce/harness.hpp"
#include "ultraforce/ramsey.hpp"
#include "ultraforce/semantics.hpp"

using json = nlohmann::ordered_json;
using namespace uf;

namespace {

// Failure of a check, as opposed to an error while running it.
constexpr int kFailed = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Common {
  bool pretty = false;
  std::string output;

  void emit(const std::string& text) const {
    if (output.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + output);
    out << text;
  }
  void emit(const json& j) const { emit(j.dump(pretty ? 2 : -1) + "\n"); }
};

// `s1; s2; ...`: listed columns, then the naturals.
SetValue parse_family(const std::string& text) {
  std::vector<EPSet> cols;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ';'))
    if (part.find_first_not_of(" \t") != std::string::npos) cols.push_back(parse_epset(part));
  return SetValue::family(std::move(cols));
}

struct Inputs {
  std::string formula;
  std::string input;
  std::string cond;
  std::string universe;
  std::string env;
  std::vector<std::string> nums;
  std::vector<std::string> sets;

  std::vector<FormulaPtr> formulas() const {
    if (!formula.empty() && !input.empty()) throw CLI::ValidationError("give --formula or --input, not both");
    if (!formula.empty()) return {parse_formula(formula)};
    if (!input.empty()) return parse_formula_file(read_file(input));
    throw CLI::ValidationError("a formula is required (--formula or --input)");
  }

  Condition condition() const { return cond.empty() ? Condition() : parse_condition(read_file(cond)); }

  Universe universe_value() const {
    return universe.empty() ? Universe::default_universe() : parse_universe(read_file(universe));
  }

  // Env file lines: `num NAME N`, `set NAME EPSET` or `family NAME COLUMNS`.
  Env environment() const {
    Env e;
    if (!env.empty()) {
      std::istringstream in(read_file(env));
      std::string line;
      while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kind, name;
        if (!(ls >> kind)) continue;
        if (!(ls >> name)) throw std::runtime_error("env line needs a name: " + line);
        std::string rest;
        std::getline(ls, rest);
        if (kind == "num")
          e.bind_num(name, std::stoull(rest));
        else if (kind == "set")
          e.bind_set(name, parse_epset(rest));
        else if (kind == "family")
          e.bind_set(name, parse_family(rest));
        else
          throw std::runtime_error("unknown env binding kind '" + kind + "'");
      }
    }
    const auto split = [](const std::string& s) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("expected NAME=VALUE, got " + s);
      return std::pair{s.substr(0, eq), s.substr(eq + 1)};
    };
    for (const auto& s : nums) {
      auto [k, v] = split(s);
      e.bind_num(k, std::stoull(v));
    }
    for (const auto& s : sets) {
      auto [k, v] = split(s);
      e.bind_set(k, parse_epset(v));
    }
    return e;
  }
};

void add_inputs(CLI::App* cmd, Inputs& in, bool with_cond) {
  cmd->add_option("-f,--formula", in.formula, "Formula in s-expression syntax");
  cmd->add_option("-i,--input", in.input, "File with one formula per line");
  cmd->add_option("--env", in.env, "Env file: `num p 3`, `set X evens`, `family F evens; mult(3)`");
  cmd->add_option("--num", in.nums, "Bind a number variable, NAME=N");
  cmd->add_option("--set", in.sets, "Bind a set variable, NAME=EPSET");
  if (with_cond) {
    cmd->add_option("--cond", in.cond, "File holding a condition, cond[...]; default cond[]");
    cmd->add_option("--universe", in.universe, "Universe file; default is the built-in universe");
  }
}

json truth_json(const TruthValue& t) {
  json reasons = json::array();
  for (const auto& r : t.reasons) reasons.push_back(r);
  return {{"value", t.value}, {"exactness", t.exact() ? "Exact" : "Approximate"}, {"reasons", reasons}};
}

json witness_json(const ColoringRule& c, const RamseyWitness& w) {
  json j;
  if (w.triples) {
    j["kind"] = "triples";
    j["k"] = w.k;
    j["k_index"] = w.k_index;
    j["color"] = w.color;
  } else {
    j["kind"] = "pairs";
    j["h"] = w.h;
    json v = json::array();
    for (bool b : w.verdicts) v.push_back(b);
    j["verdicts"] = v;
  }
  j["verified"] = verify_witness(c, w);
  return j;
}

json report_json(const LemmaReport& r, bool timing) {
  json fails = json::array();
  for (const auto& c : r.failures)
    fails.push_back({{"instance", c.instance},
                     {"formula", c.formula},
                     {"original", c.original},
                     {"condition", c.condition},
                     {"env", c.env},
                     {"universe", c.universe},
                     {"detail", c.detail}});
  json j = {{"lemma", r.lemma}, {"pass", r.pass()}, {"tried", r.tried}, {"failures", fails}};
  if (timing) j["seconds"] = r.seconds;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forcing with a non-principal ultrafilter over eventually periodic sets"};
  app.require_subcommand(1);
  // global flags may also follow the subcommand
  app.fallthrough();
  Common common;
  app.add_flag("--pretty", common.pretty, "Human-readable output");
  app.add_option("-o,--output", common.output, "Write output here instead of stdout");

  Inputs in;
  std::string cvar = "U";
  auto* translate_cmd = app.add_subcommand("translate", "Print the forcing translation U ⊩ φ");
  add_inputs(translate_cmd, in, false);
  translate_cmd->add_option("--condition-var", cvar, "Name of the condition variable");

  std::string mode = "forcing";
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula");
  add_inputs(eval_cmd, in, true);
  eval_cmd->add_option("--mode", mode, "direct, forcing or translated")
      ->check(CLI::IsMember({"direct", "forcing", "translated"}));

  Nat bound = 16;
  std::string comp_var;
  auto* decide_cmd = app.add_subcommand("decide", "Extend a condition to decide every 𝔘 atom of φ");
  add_inputs(decide_cmd, in, true);
  decide_cmd->add_option("--bound", bound, "Parameters of uf atoms range below this");
  std::string sets_file;
  decide_cmd->add_option("--sets", sets_file, "File of EPSets, one per line, to decide with settle_term");
  decide_cmd->add_option("--comprehension", comp_var, "Also tabulate {n < bound : V ⊩ φ(n)} for this variable");

  std::string rule_file;
  std::size_t count = 8;
  auto* ramsey_cmd = app.add_subcommand("ramsey", "Strong-pairs and triples witnesses for a rule coloring");
  ramsey_cmd->require_subcommand(1);
  ramsey_cmd->fallthrough();
  for (const char* kind : {"pairs", "triples"}) {
    auto* sub = ramsey_cmd->add_subcommand(kind, std::string("Build a ") + kind + " witness");
    sub->add_option("--rule", rule_file, "Rule file: n_cap, n_period, x_period, y_period, thresholds, table")
        ->required();
    sub->add_option("--count", count, "Witness length");
  }

  HarnessOptions hopts;
  bool timing = false;
  std::string lemma = "all";
  auto* check_cmd = app.add_subcommand("check", "Run the lemma property suite");
  std::vector<std::string> lemma_choices{"all"};
  for (const auto& n : lemma_names()) lemma_choices.push_back(n);
  check_cmd->add_option("lemma", lemma, "all, monotonicity, reflection, uf-axioms, mp, dn or quantifier")
      ->check(CLI::IsMember(lemma_choices));
  check_cmd->add_option("--seed", hopts.seed, "Generator seed");
  check_cmd->add_option("--samples", hopts.samples, "Instances per lemma");
  check_cmd->add_option("--max-depth", hopts.max_depth, "Formula depth");
  check_cmd->add_option("--universe", in.universe, "Universe file; default is the built-in universe");
  check_cmd->add_flag("--timing", timing, "Include wall times (makes output run-dependent)");

  if (argc <= 1) {
    std::cerr << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*translate_cmd) {
      const auto fs = in.formulas();
      if (common.pretty) {
        std::string out;
        for (const auto& f : fs) out += print(translate(f, cvar)) + "\n";
        common.emit(out);
      } else {
        json arr = json::array();
        for (const auto& f : fs) arr.push_back({{"input", print(f)}, {"output", print(translate(f, cvar))}});
        common.emit(arr);
      }
      return 0;
    }
    if (*eval_cmd) {
      const Universe u = in.universe_value();
      const Env env = in.environment();
      const Condition c = in.condition();
      json arr = json::array();
      for (const auto& f : in.formulas()) {
        const TruthValue t = mode == "direct"   ? eval_direct(f, env, u)
                             : mode == "forcing" ? eval_forcing(f, env, c, u)
                                                 : eval_translated(f, env, c, u);
        json j = truth_json(t);
        j["formula"] = print(f);
        arr.push_back(j);
      }
      common.emit(arr.size() == 1 ? arr[0] : arr);
      return 0;
    }
    if (*decide_cmd) {
      const Env env = in.environment();
      const Condition c = in.condition();
      Settlement s;
      FormulaPtr phi;
      if (!sets_file.empty()) {
        if (!in.formula.empty() || !in.input.empty()) throw CLI::ValidationError("give --sets or a formula, not both");
        std::vector<EPSet> xs;
        std::istringstream lines(read_file(sets_file));
        std::string line;
        while (std::getline(lines, line)) {
          if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
          if (line.find_first_not_of(" \t\r") != std::string::npos) xs.push_back(parse_epset(line));
        }
        s = settle_term(c, xs);
      } else {
        const auto fs = in.formulas();
        if (fs.size() != 1) throw CLI::ValidationError("decide takes a single formula");
        phi = fs[0];
        s = recursively_decides(c, phi, env, bound);
      }
      json sigma = json::array(), decided = json::array(), verdicts = json::array();
      for (bool b : s.trace.sigma) sigma.push_back(b);
      for (std::size_t i = 0; i < s.trace.decided.size(); ++i) {
        decided.push_back(s.trace.decided[i].to_string());
        verdicts.push_back({{"set", s.trace.decided[i].to_string()}, {"in_uf", s.trace.sigma[i]}});
      }
      json j;
      j["condition"] = s.v.to_string();
      j["trace"] = {{"sigma", sigma}, {"decided", decided}};
      j["verdicts"] = verdicts;
      if (!comp_var.empty()) {
        if (!phi) throw CLI::ValidationError("--comprehension needs a formula");
        const Comprehension cw = comprehension_witness(c, phi, comp_var, env, bound, in.universe_value());
        j["table"] = cw.table;
      }
      common.emit(j);
      return 0;
    }
    if (*ramsey_cmd) {
      const ColoringRule rule = parse_rule(read_file(rule_file));
      const bool pairs = ramsey_cmd->got_subcommand("pairs");
      const RamseyWitness w = pairs ? strong_pairs(rule, count) : triples(rule, count);
      const json j = witness_json(rule, w);
      common.emit(j);
      return j["verified"].get<bool>() ? 0 : kFailed;
    }
    if (*check_cmd) {
      const Universe u = in.universe_value();
      std::vector<LemmaReport> reports;
      if (lemma == "all")
        reports = check_all(hopts, u);
      else
        reports.push_back(run_lemma(lemma, hopts, u));
      bool pass = true;
      json arr = json::array();
      for (const auto& r : reports) {
        pass = pass && r.pass();
        arr.push_back(report_json(r, timing));
      }
      common.emit(json{{"seed", hopts.seed}, {"samples", hopts.samples}, {"pass", pass}, {"reports", arr}});
      return pass ? 0 : kFailed;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
