// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through autodich.h.

#include "autodich/autodich.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

// Exit codes besides the classify verdicts 0-3.
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitSoftware = 70;

struct CliError {
  adich_status status;
  std::string message;
};

void check(adich_status s) {
  if (s == ADICH_OK) return;
  throw CliError{s, adich_last_error()};
}

struct AutomatonDeleter {
  void operator()(adich_automaton* a) const { adich_automaton_free(a); }
};
using AutomatonPtr = std::unique_ptr<adich_automaton, AutomatonDeleter>;

struct StringDeleter {
  void operator()(char* s) const { adich_string_free(s); }
};

std::string take(char* s) {
  std::unique_ptr<char, StringDeleter> guard(s);
  return s ? std::string(s) : std::string();
}

json take_json(char* s) { return json::parse(take(s)); }

struct Config {
  bool json_out = false;
  std::uint64_t seed = 1;
  int bound = 24;
  std::uint64_t upto = 100;
  std::size_t limit = 0;
  long long formula_bound = -1;
  int radix = 0;
  bool all_states = false;
  std::string input;
  std::string n = "0";
  long long state = -1;
  int digit = -1;
  std::vector<std::string> sets;
  std::string formula;
  std::vector<int> criteria;
};

/// Reads the input file and regroups digits when --radix asks for a power
/// of the file's radix.
AutomatonPtr load(const Config& cfg, const std::string& path) {
  adich_automaton* raw = nullptr;
  check(adich_automaton_read_file(path.c_str(), &raw));
  AutomatonPtr a(raw);
  const int k = adich_automaton_radix(a.get());
  if (cfg.radix == 0 || cfg.radix == k) return a;
  long long power = k;
  int i = 1;
  while (power < cfg.radix) {
    power *= k;
    ++i;
  }
  if (power != cfg.radix)
    throw CliError{ADICH_ERR_INVALID_ARGUMENT,
                   "--radix " + std::to_string(cfg.radix) + " is not a power of the file's radix " + std::to_string(k)};
  adich_automaton* out = nullptr;
  check(adich_automaton_base_power(a.get(), i, &out));
  return AutomatonPtr(out);
}

std::string value_text(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string yes_no(const json& v) { return v.is_boolean() ? (v.get<bool>() ? "yes" : "no") : "-"; }

std::string state_list(const json& states) {
  std::string out = "{";
  for (std::size_t i = 0; i < states.size(); ++i) out += (i ? "," : "") + states[i].dump();
  return out + "}";
}

void print(const Config& cfg, const json& doc, const std::string& text) {
  if (cfg.json_out)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

// --- commands ---------------------------------------------------------------------

int cmd_classify(const Config& cfg) {
  AutomatonPtr x = load(cfg, cfg.input);
  adich_verdict verdict;
  int limited = 0;
  char* raw = nullptr;
  check(adich_classify(x.get(), cfg.bound, cfg.all_states, &verdict, &limited, &raw));
  const json doc = take_json(raw);
  std::ostringstream t;
  t << "verdict: " << doc["verdict"].get<std::string>();
  if (limited) t << " (bound-limited: no congruence with m, ell <= " << cfg.bound << ")";
  t << "\n";
  if (!doc["periodicity"].is_null())
    t << "period " << value_text(doc["periodicity"]["p"]) << " from " << value_text(doc["periodicity"]["N"]) << "\n";
  t << "minimal padded DFA: " << doc["dfa_states"] << " states\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-5s %-14s %-5s %-7s %-9s %-7s %-14s %-9s %s\n", "comp", "states", "leaf",
                "cyclic", "complete", "sparse", "congruence", "periodic", "definable");
  t << line;
  for (const auto& c : doc["components"]) {
    std::string cong = "-";
    if (!c["congruence"].is_null())
      cong = "m=" + c["congruence"]["m"].dump() + " ell=" + c["congruence"]["ell"].dump();
    std::string per = c["periodic"].is_null() ? "-" : "p=" + value_text(c["periodic"]["p"]);
    std::snprintf(line, sizeof line, "%-5s %-14s %-5s %-7s %-9s %-7s %-14s %-9s %s\n", c["component"].dump().c_str(),
                  state_list(c["states"]).c_str(), yes_no(c["leaf"]).c_str(), yes_no(c["cyclic"]).c_str(),
                  yes_no(c["complete"]).c_str(), yes_no(c["sparse"]).c_str(), cong.c_str(), per.c_str(),
                  yes_no(c["definable"]).c_str());
    t << line;
  }
  if (!doc["failing_state"].is_null()) t << "failing state: " << doc["failing_state"] << "\n";
  print(cfg, doc, t.str());
  if (limited) return 3;
  return static_cast<int>(verdict);
}

int cmd_member(const Config& cfg) {
  AutomatonPtr x = load(cfg, cfg.input);
  int in = 0;
  check(adich_member(x.get(), cfg.n.c_str(), &in));
  json doc{{"schema", 1}, {"n", cfg.n}, {"member", in != 0}};
  print(cfg, doc, cfg.n + (in ? " is in X\n" : " is not in X\n"));
  return 0;
}

int cmd_enum(const Config& cfg) {
  AutomatonPtr x = load(cfg, cfg.input);
  char* raw = nullptr;
  check(adich_enumerate(x.get(), cfg.upto, cfg.limit, &raw));
  const json doc = take_json(raw);
  std::ostringstream t;
  for (const auto& n : doc["members"]) t << value_text(n) << "\n";
  print(cfg, doc, t.str());
  return 0;
}

int cmd_f(const Config& cfg) {
  AutomatonPtr a = load(cfg, cfg.input);
  char* raw = nullptr;
  const auto state = cfg.state < 0 ? ADICH_DEFAULT_STATE : static_cast<std::uint32_t>(cfg.state);
  check(adich_f(a.get(), state, cfg.digit < 0 ? ADICH_DEFAULT_DIGIT : cfg.digit, cfg.n.c_str(),
                cfg.formula_bound < 0 ? ADICH_STABLE : cfg.formula_bound, &raw));
  json doc = take_json(raw);
  std::ostringstream t;
  t << "F_" << doc["R"] << "(" << value_text(doc["n"]) << ") = " << value_text(doc["F"]) << "   V_{" << doc["radix"]
    << "," << doc["digit"] << "}(n) = " << value_text(doc["Vka"]) << "\n";
  t << "state " << doc["state"] << ", case " << doc["case"].get<std::string>() << ", M = " << doc["M"] << "\n";
  for (const auto& r : doc["trace"]["rejected"])
    t << "k^" << r["i"] << " rejected: r=" << r["r"] << " v=" << r["v"].get<std::string>() << " ("
      << r["side"].get<std::string>() << ", value " << value_text(r["value"]) << ")\n";
  json out{{"schema", 1},          {"n", doc["n"]},         {"F", doc["F"]},   {"Vka", doc["Vka"]},
           {"state", doc["state"]}, {"digit", doc["digit"]}, {"R", doc["R"]},   {"M", doc["M"]},
           {"case", doc["case"]},   {"trace", doc["trace"]}};
  print(cfg, out, t.str());
  return 0;
}

int cmd_vka(const Config& cfg) {
  if (cfg.radix < 2) throw CliError{ADICH_ERR_INVALID_ARGUMENT, "vka needs --radix >= 2"};
  const int a = cfg.digit < 0 ? 0 : cfg.digit;
  char* raw = nullptr;
  check(adich_vka(cfg.n.c_str(), cfg.radix, a, &raw));
  const std::string v = take(raw);
  json doc{{"schema", 1}, {"n", cfg.n}, {"radix", cfg.radix}, {"digit", a}, {"Vka", v}};
  print(cfg, doc, v + "\n");
  return 0;
}

int cmd_periodic(const Config& cfg) {
  AutomatonPtr x = load(cfg, cfg.input);
  char* raw = nullptr;
  check(adich_periodicity(x.get(), &raw));
  const json doc = take_json(raw);
  std::string text = doc["periodic"].get<bool>()
                         ? "eventually periodic: p = " + value_text(doc["p"]) + ", N = " + value_text(doc["N"]) + "\n"
                         : "not eventually periodic\n";
  print(cfg, doc, text);
  return 0;
}

int cmd_sparse(const Config& cfg) {
  AutomatonPtr a = load(cfg, cfg.input);
  int sparse = 0;
  check(adich_is_sparse(a.get(), &sparse));
  print(cfg, json{{"schema", 1}, {"sparse", sparse != 0}}, sparse ? "sparse\n" : "not sparse\n");
  return 0;
}

int cmd_sccs(const Config& cfg) {
  AutomatonPtr a = load(cfg, cfg.input);
  char* raw = nullptr;
  check(adich_sccs(a.get(), &raw));
  const json doc = take_json(raw);
  std::ostringstream t;
  for (const auto& c : doc["components"]) {
    t << c["index"] << ": " << state_list(c["states"]) << (c["leaf"].get<bool>() ? " leaf" : "")
      << (c["cyclic"].get<bool>() ? " cyclic" : "");
    if (!c["cycle_sparse"].is_null()) t << (c["cycle_sparse"].get<bool>() ? " sparse" : " non-sparse");
    for (std::size_t i = 0; i < c["successors"].size(); ++i) t << (i ? ", " : " -> ") << c["successors"][i];
    t << "\n";
  }
  print(cfg, doc, t.str());
  return 0;
}

int cmd_decide(const Config& cfg) {
  std::vector<AutomatonPtr> owned;
  std::vector<std::string> names;
  for (const std::string& spec : cfg.sets) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CliError{ADICH_ERR_INVALID_ARGUMENT, "--set expects NAME=path.aut, got '" + spec + "'"};
    names.push_back(spec.substr(0, eq));
    owned.push_back(load(cfg, spec.substr(eq + 1)));
  }
  std::vector<const char*> name_ptrs;
  std::vector<const adich_automaton*> set_ptrs;
  for (std::size_t i = 0; i < owned.size(); ++i) {
    name_ptrs.push_back(names[i].c_str());
    set_ptrs.push_back(owned[i].get());
  }
  int value = 0;
  char* raw = nullptr;
  check(adich_decide(cfg.formula.c_str(), name_ptrs.data(), set_ptrs.data(), owned.size(), cfg.radix, &value, &raw));
  const json doc = take_json(raw);
  std::ostringstream t;
  t << (value ? "true" : "false");
  if (!doc["witness"].empty()) {
    t << "  witness:";
    for (const auto& [name, v] : doc["witness"].items()) t << " " << name << "=" << value_text(v);
  }
  t << "\n";
  print(cfg, doc, t.str());
  return 0;
}

int cmd_decompose(const Config& cfg) {
  AutomatonPtr x = load(cfg, cfg.input);
  char* raw = nullptr;
  check(adich_decompose(x.get(), cfg.bound, &raw));
  const json doc = take_json(raw);
  std::ostringstream t;
  t << doc["branches"].size() << " branches, union " << (doc["verified"].get<bool>() ? "verified" : "NOT verified")
    << "\n";
  for (const auto& b : doc["branches"]) {
    t << " ";
    for (const auto& l : b["links"]) {
      t << " L(" << l["p"] << "->" << l["q"] << (l["sparse"].get<bool>() ? ", sparse)" : ")");
      if (!l["sigma"].is_null()) t << " " << l["sigma"];
    }
    t << "\n";
  }
  print(cfg, doc, t.str());
  return 0;
}

void on_criterion(int id, const char* name, int pass, double seconds, double limit, const char* detail, void* user) {
  if (*static_cast<const bool*>(user)) return;
  std::string lim = limit > 0 ? " (limit " + std::to_string(static_cast<int>(limit)) + " s)" : "";
  std::printf("%-4s %2d  %-30s %7.2f s%s  %s\n", pass ? "PASS" : "FAIL", id, name, seconds, lim.c_str(), detail);
  std::fflush(stdout);
}

int cmd_verify(const Config& cfg) {
  int all = 0;
  char* raw = nullptr;
  bool quiet = cfg.json_out;
  check(adich_acceptance(cfg.seed, cfg.criteria.data(), cfg.criteria.size(), on_criterion, &quiet, &all, &raw));
  const json doc = take_json(raw);
  if (cfg.json_out) std::cout << doc.dump(2) << "\n";
  else std::printf("%s (seed %llu)\n", all ? "all criteria pass" : "some criteria FAIL",
                   static_cast<unsigned long long>(cfg.seed));
  return all ? 0 : 1;
}

int exit_code(adich_status s) {
  switch (s) {
    case ADICH_ERR_INVALID_ARGUMENT: return kExitUsage;
    case ADICH_ERR_PARSE:
    case ADICH_ERR_DOMAIN: return kExitData;
    case ADICH_ERR_IO: return kExitNoInput;
    default: return kExitSoftware;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definability dichotomy for k-automatic sets"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_flag("--json", cfg.json_out, "Emit JSON (\"schema\": 1)");
  app.add_option("--seed", cfg.seed, "Seed for randomized checks");
  app.add_option("--radix", cfg.radix, "Read sets over this power of the file's radix (vka: the radix)");
  app.set_version_flag("--version", std::string(adich_version()));

  auto input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "Automaton file")->required()->check(CLI::ExistingFile);
  };
  auto* classify = app.add_subcommand("classify", "Presburger / k^N-interdefinable / defines V_k");
  input(classify);
  classify->add_option("--bound", cfg.bound, "Congruence search bound on m and ell")->check(CLI::PositiveNumber);
  classify->add_flag("--all-states", cfg.all_states, "Test every state of each component");

  auto* member = app.add_subcommand("member", "Membership of --n in X");
  input(member);
  member->add_option("--n", cfg.n, "Natural number")->required();

  auto* enumerate = app.add_subcommand("enum", "Members of X up to --upto");
  input(enumerate);
  enumerate->add_option("--upto", cfg.upto, "Largest value listed");
  enumerate->add_option("--limit", cfg.limit, "At most this many members");

  auto* f = app.add_subcommand("f", "F_R(n) for the cycle language at a state");
  input(f);
  f->add_option("--n", cfg.n, "Member of the cycle set")->required();
  f->add_option("--state", cfg.state, "Cycle state (default: the initial state)");
  f->add_option("--digit", cfg.digit, "Distinguished digit a");
  f->add_option("--formula-bound", cfg.formula_bound, "R in F_R (default: M, the stable value)");

  auto* vka = app.add_subcommand("vka", "V_{k,a}(n)");
  vka->add_option("--n", cfg.n, "Positive natural number")->required();
  vka->add_option("--digit", cfg.digit, "Digit a (default 0)");

  auto* periodic = app.add_subcommand("periodic", "Decide eventual periodicity");
  input(periodic);
  auto* sparse = app.add_subcommand("sparse", "Decide sparseness of the language");
  input(sparse);
  auto* sccs = app.add_subcommand("sccs", "Strongly connected components");
  input(sccs);

  auto* decide = app.add_subcommand("decide", "Decide a first-order sentence");
  decide->add_option("formula", cfg.formula, "Sentence as an s-expression")->required();
  decide->add_option("--set", cfg.sets, "NAME=path.aut");

  auto* decompose = app.add_subcommand("decompose", "Union of L(p->q) sigma ... chains");
  input(decompose);
  decompose->add_option("--bound", cfg.bound, "Congruence search bound")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify-paper", "Run the acceptance criteria");
  verify->add_option("--criteria", cfg.criteria, "Subset of criterion numbers")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "classify") return cmd_classify(cfg);
    if (name == "member") return cmd_member(cfg);
    if (name == "enum") return cmd_enum(cfg);
    if (name == "f") return cmd_f(cfg);
    if (name == "vka") return cmd_vka(cfg);
    if (name == "periodic") return cmd_periodic(cfg);
    if (name == "sparse") return cmd_sparse(cfg);
    if (name == "sccs") return cmd_sccs(cfg);
    if (name == "decide") return cmd_decide(cfg);
    if (name == "decompose") return cmd_decompose(cfg);
    if (name == "verify-paper") return cmd_verify(cfg);
  } catch (const CliError& e) {
    std::cerr << "autodich: " << adich_status_name(e.status) << ": " << e.message << "\n";
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "autodich: " << e.what() << "\n";
    return kExitSoftware;
  }
  return kExitUsage;
}
