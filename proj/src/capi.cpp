// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/autodich.h"

#include "autodich/acceptance.hpp"
#include "autodich/automaton.hpp"
#include "autodich/basek.hpp"
#include "autodich/dichotomy.hpp"
#include "autodich/errors.hpp"
#include "autodich/ffunc.hpp"
#include "autodich/io.hpp"
#include "autodich/logic.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

struct adich_automaton {
  autodich::Automaton value;
};

namespace {

using autodich::Automaton;
using autodich::BigInt;
using autodich::State;
using autodich::Symbol;
using json = nlohmann::ordered_json;

struct LastError {
  std::string message;
  std::size_t line = 0;
  std::size_t column = 0;
};

thread_local LastError g_error;

adich_status fail(adich_status status, const char* message) {
  g_error.message = message;
  g_error.line = g_error.column = 0;
  return status;
}

template <class F>
adich_status guarded(F&& body) {
  try {
    body();
    g_error = {};
    return ADICH_OK;
  } catch (const autodich::ParseError& e) {
    fail(ADICH_ERR_PARSE, e.what());
    g_error.line = e.line();
    g_error.column = e.column();
    return ADICH_ERR_PARSE;
  } catch (const autodich::InvalidArgument& e) {
    return fail(ADICH_ERR_INVALID_ARGUMENT, e.what());
  } catch (const autodich::DomainError& e) {
    return fail(ADICH_ERR_DOMAIN, e.what());
  } catch (const autodich::LimitExceeded& e) {
    return fail(ADICH_ERR_LIMIT, e.what());
  } catch (const autodich::IoError& e) {
    return fail(ADICH_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ADICH_ERR_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(ADICH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ADICH_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw autodich::InvalidArgument(what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& doc, char** out) { *out = copy_string(doc.dump()); }

adich_automaton* wrap(Automaton a) { return new adich_automaton{std::move(a)}; }

BigInt parse_natural(const char* text) {
  require(text != nullptr, "null number");
  const std::string s(text);
  require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos,
          "expected a natural number in decimal");
  return BigInt(s);
}

json number(const BigInt& n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max()) return n.convert_to<std::uint64_t>();
  return n.str();
}

autodich::BaseKSet make_set(const adich_automaton* x) {
  require(x != nullptr, "null automaton");
  require(x->value.tracks() == 1, "a set needs a one-track automaton");
  return autodich::BaseKSet(x->value);
}

json periodicity_json(const std::optional<std::pair<BigInt, BigInt>>& p) {
  if (!p) return nullptr;
  return json{{"p", number(p->first)}, {"N", number(p->second)}};
}

json congruence_json(const autodich::CongruenceWitness& w) {
  json residues = json::array();
  for (const auto& [v, l] : w.residues) residues.push_back({v, l});
  return json{{"m", w.m}, {"ell", w.ell}, {"residues", residues}, {"zeros", autodich::to_string(w.zeros)}};
}

json evidence_json(const autodich::SccEvidence& e) {
  json j;
  j["component"] = e.component;
  j["states"] = e.states;
  j["leaf"] = e.leaf;
  j["cyclic"] = e.cyclic;
  j["complete"] = e.completeness.complete;
  if (e.completeness.missing)
    j["missing"] = {{"state", e.completeness.missing->first}, {"digit", e.completeness.missing->second}};
  j["representative"] = e.representative;
  j["sparse"] = e.sparse;
  j["congruence"] = e.congruence ? congruence_json(*e.congruence) : json(nullptr);
  j["periodic"] = periodicity_json(e.periodic);
  j["definable"] = e.definable;
  j["bound_limited"] = e.bound_limited;
  j["states_agree"] = e.states_agree;
  return j;
}

adich_verdict to_c(autodich::Verdict v) {
  switch (v) {
    case autodich::Verdict::Presburger: return ADICH_PRESBURGER;
    case autodich::Verdict::KnInterdefinable: return ADICH_KN_INTERDEFINABLE;
    case autodich::Verdict::DefinesVk: return ADICH_DEFINES_VK;
  }
  return ADICH_DEFINES_VK;
}

}  // namespace

extern "C" {

ADICH_API const char* adich_version(void) { return "0.1.0"; }

ADICH_API const char* adich_status_name(adich_status status) {
  switch (status) {
    case ADICH_OK: return "ok";
    case ADICH_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ADICH_ERR_DOMAIN: return "domain error";
    case ADICH_ERR_LIMIT: return "limit exceeded";
    case ADICH_ERR_PARSE: return "parse error";
    case ADICH_ERR_IO: return "i/o error";
    case ADICH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

ADICH_API const char* adich_last_error(void) { return g_error.message.c_str(); }
ADICH_API size_t adich_last_error_line(void) { return g_error.line; }
ADICH_API size_t adich_last_error_column(void) { return g_error.column; }

ADICH_API void adich_string_free(char* s) { std::free(s); }

// --- automata ------------------------------------------------------------------------

ADICH_API adich_status adich_automaton_parse(const char* text, adich_automaton** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = wrap(autodich::parse_automaton(text));
  });
}

ADICH_API adich_status adich_automaton_read_file(const char* path, adich_automaton** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = wrap(autodich::read_automaton_file(path));
  });
}

ADICH_API adich_status adich_automaton_write(const adich_automaton* a, char** out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = copy_string(autodich::write_automaton(a->value));
  });
}

ADICH_API adich_status adich_automaton_clone(const adich_automaton* a, adich_automaton** out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = wrap(a->value);
  });
}

ADICH_API void adich_automaton_free(adich_automaton* a) { delete a; }

ADICH_API int adich_automaton_radix(const adich_automaton* a) { return a ? a->value.radix() : 0; }
ADICH_API int adich_automaton_tracks(const adich_automaton* a) { return a ? a->value.tracks() : 0; }
ADICH_API size_t adich_automaton_num_states(const adich_automaton* a) { return a ? a->value.num_states() : 0; }
ADICH_API int adich_automaton_is_deterministic(const adich_automaton* a) {
  return a && a->value.is_deterministic() ? 1 : 0;
}

ADICH_API adich_status adich_automaton_minimize(const adich_automaton* a, adich_automaton** out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = wrap(autodich::minimize(a->value));
  });
}

ADICH_API adich_status adich_automaton_base_power(const adich_automaton* a, int i, adich_automaton** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = wrap(autodich::base_power_transform(make_set(a), i).automaton());
  });
}

ADICH_API adich_status adich_is_sparse(const adich_automaton* a, int* out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = autodich::is_sparse(a->value) ? 1 : 0;
  });
}

ADICH_API adich_status adich_sccs(const adich_automaton* a, char** out) {
  return guarded([&] {
    require(a && out, "null argument");
    const Automaton& m = a->value;
    const autodich::SccDecomposition scc = autodich::scc_decompose(m);
    json comps = json::array();
    for (std::size_t c = 0; c < scc.components.size(); ++c) {
      json j;
      j["index"] = c;
      j["states"] = scc.components[c];
      j["leaf"] = static_cast<bool>(scc.leaf[c]);
      j["cyclic"] = static_cast<bool>(scc.cyclic[c]);
      j["successors"] = scc.condensation[c];
      if (scc.cyclic[c]) {
        const State rep = scc.components[c].front();
        j["cycle_sparse"] = autodich::is_sparse(autodich::path_language(m, rep, rep));
      } else {
        j["cycle_sparse"] = nullptr;
      }
      comps.push_back(std::move(j));
    }
    emit(json{{"schema", 1}, {"states", m.num_states()}, {"components", comps}}, out);
  });
}

// --- sets ------------------------------------------------------------------------------

ADICH_API adich_status adich_member(const adich_automaton* x, const char* n, int* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = make_set(x).contains(parse_natural(n)) ? 1 : 0;
  });
}

ADICH_API adich_status adich_enumerate(const adich_automaton* x, uint64_t upto, size_t limit, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const autodich::BaseKSet set = make_set(x);
    json members = json::array();
    for (const BigInt& n : set.enumerate(BigInt(upto))) {
      if (limit && members.size() == limit) break;
      members.push_back(number(n));
    }
    emit(json{{"schema", 1}, {"upto", upto}, {"members", members}}, out);
  });
}

ADICH_API adich_status adich_periodicity(const adich_automaton* x, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const autodich::logic::Periodicity p = autodich::logic::is_eventually_periodic(make_set(x));
    json j{{"schema", 1}, {"periodic", p.periodic}};
    j["p"] = p.periodic ? number(p.period) : json(nullptr);
    j["N"] = p.periodic ? number(p.threshold) : json(nullptr);
    emit(j, out);
  });
}

ADICH_API adich_status adich_classify(const adich_automaton* x, int bound, int all_states, adich_verdict* verdict,
                                      int* bound_limited, char** out) {
  return guarded([&] {
    require(bound >= 1, "bound must be positive");
    autodich::ClassifyOptions opts;
    opts.bound = bound;
    opts.all_states = all_states != 0;
    const autodich::ClassificationReport r = autodich::classify(make_set(x), opts);
    if (verdict) *verdict = to_c(r.verdict);
    if (bound_limited) *bound_limited = r.bound_limited ? 1 : 0;
    if (!out) return;
    json j;
    j["schema"] = 1;
    j["verdict"] = autodich::to_string(r.verdict);
    j["bound"] = r.bound;
    j["bound_limited"] = r.bound_limited;
    j["periodicity"] = periodicity_json(r.periodicity);
    j["failing_state"] = r.failing_state ? json(*r.failing_state) : json(nullptr);
    j["dfa_states"] = r.dfa_states;
    json ev = json::array();
    for (const auto& e : r.scc_evidence) ev.push_back(evidence_json(e));
    j["components"] = ev;
    emit(j, out);
  });
}

ADICH_API adich_status adich_decompose(const adich_automaton* x, int bound, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(bound >= 1, "bound must be positive");
    autodich::ClassifyOptions opts;
    opts.bound = bound;
    const autodich::SemenovDecomposition d = autodich::semenov_decompose(make_set(x), opts);
    json branches = json::array();
    for (const auto& b : d.branches) {
      json links = json::array();
      for (const auto& l : b.links) {
        json j{{"p", l.p}, {"q", l.q}, {"sparse", l.sparse}, {"states", l.language.num_states()}};
        j["sigma"] = l.sigma ? json(*l.sigma) : json(nullptr);
        links.push_back(std::move(j));
      }
      branches.push_back(json{{"links", links}});
    }
    emit(json{{"schema", 1}, {"verified", d.verified}, {"branches", branches}}, out);
  });
}

ADICH_API adich_status adich_f(const adich_automaton* a, uint32_t state, int digit, const char* n, int64_t R,
                               char** out) {
  return guarded([&] {
    require(a && out, "null argument");
    const Automaton& m = a->value;
    State p = state;
    if (p == ADICH_DEFAULT_STATE) {
      require(m.initial().size() == 1, "automaton has several initial states; pass a state");
      p = m.initial().front();
    }
    std::optional<Symbol> sym;
    if (digit != ADICH_DEFAULT_DIGIT) {
      require(digit >= 0, "digit must be non-negative");
      sym = static_cast<Symbol>(digit);
    }
    const autodich::CycleContext ctx(m, p, sym);
    const BigInt value = parse_natural(n);
    require(R >= ADICH_STABLE, "R must be non-negative");
    const std::size_t r = R == ADICH_STABLE ? ctx.M() : static_cast<std::size_t>(R);
    const autodich::FResult res = autodich::f_r(ctx, value, r);
    const int k = ctx.radix();
    json j;
    j["schema"] = 1;
    j["n"] = number(value);
    j["state"] = p;
    j["digit"] = ctx.a();
    j["radix"] = k;
    j["case"] = autodich::to_string(ctx.cycle_case());
    j["M"] = ctx.M();
    j["R"] = r;
    j["F"] = number(res.value);
    j["exponent"] = res.trace.exponent;
    j["Vka"] = value == 0 ? json(nullptr) : number(autodich::v_ka(value, k, ctx.a()));
    json rejected = json::array();
    for (const auto& rej : res.trace.rejected) {
      const auto& v = rej.violation;
      json e{{"i", rej.candidate}, {"r", v.r}, {"v", autodich::format_word(v.v, k)}};
      e["side"] = autodich::to_string(v.side);
      e["value"] = v.value < 0 ? json(v.value.str()) : number(v.value);
      e["v_in_L"] = v.v_in_l;
      rejected.push_back(std::move(e));
    }
    json values = json::array();
    for (const BigInt& f : res.trace.values) values.push_back(number(f));
    j["trace"] = {{"rejected", rejected}, {"values", values}, {"short_fails_at_zero", res.trace.short_fails_at_zero}};
    emit(j, out);
  });
}

ADICH_API adich_status adich_vka(const char* n, int k, int a, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(k >= 2, "radix must be at least 2");
    require(a >= 0 && a < k, "digit outside the radix");
    *out = copy_string(autodich::v_ka(parse_natural(n), k, static_cast<Symbol>(a)).str());
  });
}

// --- logic -------------------------------------------------------------------------------

ADICH_API adich_status adich_decide(const char* formula, const char* const* names,
                                    const adich_automaton* const* sets, size_t count, int radix, int* value,
                                    char** out) {
  return guarded([&] {
    require(formula != nullptr, "null formula");
    require(count == 0 || (names && sets), "null set list");
    autodich::logic::SetEnv env;
    for (std::size_t i = 0; i < count; ++i) {
      require(names[i] != nullptr, "null set name");
      env.insert_or_assign(names[i], make_set(sets[i]));
    }
    autodich::logic::CompileOptions opts;
    opts.radix = radix;
    const autodich::logic::Formula f = autodich::logic::parse_sexpr(formula);
    const autodich::logic::Decision d = autodich::logic::decide_sentence(f, env, opts);
    if (value) *value = d.value ? 1 : 0;
    if (!out) return;
    json witness = json::object();
    for (const auto& [name, v] : d.witness) witness[name] = number(v);
    emit(json{{"schema", 1}, {"formula", autodich::logic::to_sexpr(f)}, {"value", d.value}, {"witness", witness}},
         out);
  });
}

// --- acceptance -----------------------------------------------------------------------------

ADICH_API adich_status adich_acceptance(uint64_t seed, const int* ids, size_t count, adich_criterion_callback cb,
                                        void* user, int* all_passed, char** out) {
  return guarded([&] {
    require(count == 0 || ids != nullptr, "null id list");
    std::vector<int> selected(ids, ids + count);
    const auto results = autodich::run_acceptance(seed, selected, [&](const autodich::CriterionResult& r) {
      if (cb) cb(r.id, r.name.c_str(), r.pass ? 1 : 0, r.seconds, r.limit, r.detail.c_str(), user);
    });
    bool ok = true;
    json list = json::array();
    for (const auto& r : results) {
      ok = ok && r.pass;
      list.push_back(json{{"id", r.id},
                          {"name", r.name},
                          {"pass", r.pass},
                          {"seconds", r.seconds},
                          {"limit", r.limit == 0 ? json(nullptr) : json(r.limit)},
                          {"detail", r.detail}});
    }
    if (all_passed) *all_passed = ok ? 1 : 0;
    if (out) emit(json{{"schema", 1}, {"seed", seed}, {"criteria", list}, {"passed", ok}}, out);
  });
}

}  // extern "C"
