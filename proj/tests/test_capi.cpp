// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/autodich.h"

#include <doctest.h>
#include <json.hpp>

#include <cstring>
#include <string>
#include <thread>

namespace {

using json = nlohmann::json;

adich_automaton* load(const std::string& name) {
  adich_automaton* a = nullptr;
  const std::string path = std::string(AUTODICH_DATA_DIR) + "/" + name;
  REQUIRE(adich_automaton_read_file(path.c_str(), &a) == ADICH_OK);
  return a;
}

json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  adich_string_free(s);
  return j;
}

}  // namespace

TEST_CASE("parse errors report status and position") {
  adich_automaton* a = nullptr;
  CHECK(adich_automaton_parse("radix 3 tracks 1\nstates 2\ninitial 0\nfinal 1\nt 0 3 1\n", &a) == ADICH_ERR_PARSE);
  CHECK(a == nullptr);
  CHECK(adich_last_error_line() == 5);
  CHECK(adich_last_error_column() == 5);
  CHECK(std::string(adich_last_error()).find("digit") != std::string::npos);
  CHECK(adich_automaton_read_file("/nonexistent.aut", &a) == ADICH_ERR_IO);
  CHECK(adich_automaton_parse(nullptr, &a) == ADICH_ERR_INVALID_ARGUMENT);
  CHECK(std::string(adich_status_name(ADICH_ERR_DOMAIN)) == "domain error");
}

TEST_CASE("last error is per thread") {
  adich_automaton* a = nullptr;
  CHECK(adich_automaton_parse("bogus", &a) == ADICH_ERR_PARSE);
  std::string other;
  std::thread t([&] {
    adich_automaton* b = nullptr;
    CHECK(adich_automaton_parse("radix 2 tracks 1\nstates 1\ninitial 0\nfinal 0\n", &b) == ADICH_OK);
    other = adich_last_error();
    adich_automaton_free(b);
  });
  t.join();
  CHECK(other.empty());
  CHECK(std::string(adich_last_error()).find("radix") != std::string::npos);
}

TEST_CASE("automaton handles") {
  adich_automaton* fig1 = load("fig1.aut");
  CHECK(adich_automaton_radix(fig1) == 3);
  CHECK(adich_automaton_tracks(fig1) == 1);
  CHECK(adich_automaton_num_states(fig1) == 3);
  CHECK(adich_automaton_is_deterministic(fig1) == 1);

  char* text = nullptr;
  REQUIRE(adich_automaton_write(fig1, &text) == ADICH_OK);
  adich_automaton* again = nullptr;
  REQUIRE(adich_automaton_parse(text, &again) == ADICH_OK);
  char* text2 = nullptr;
  REQUIRE(adich_automaton_write(again, &text2) == ADICH_OK);
  CHECK(std::strcmp(text, text2) == 0);
  adich_string_free(text);
  adich_string_free(text2);

  adich_automaton* min = nullptr;
  REQUIRE(adich_automaton_minimize(fig1, &min) == ADICH_OK);
  CHECK(adich_automaton_num_states(min) == 2);
  adich_automaton* b9 = nullptr;
  REQUIRE(adich_automaton_base_power(fig1, 2, &b9) == ADICH_OK);
  CHECK(adich_automaton_radix(b9) == 9);
  int in = 0;
  REQUIRE(adich_member(b9, "22", &in) == ADICH_OK);
  CHECK(in == 1);

  adich_automaton_free(fig1);
  adich_automaton_free(again);
  adich_automaton_free(min);
  adich_automaton_free(b9);
  adich_automaton_free(nullptr);
}

TEST_CASE("set queries") {
  adich_automaton* m3 = load("mult3.aut");
  int in = 0;
  REQUIRE(adich_member(m3, "123456789012345678901234567890", &in) == ADICH_OK);
  CHECK(in == 1);
  REQUIRE(adich_member(m3, "10", &in) == ADICH_OK);
  CHECK(in == 0);
  CHECK(adich_member(m3, "-3", &in) == ADICH_ERR_INVALID_ARGUMENT);

  char* raw = nullptr;
  REQUIRE(adich_enumerate(m3, 20, 0, &raw) == ADICH_OK);
  json e = take(raw);
  CHECK(e["schema"] == 1);
  CHECK(e["members"] == json::array({0, 3, 6, 9, 12, 15, 18}));
  REQUIRE(adich_enumerate(m3, 20, 2, &raw) == ADICH_OK);
  CHECK(take(raw)["members"].size() == 2);

  REQUIRE(adich_periodicity(m3, &raw) == ADICH_OK);
  json p = take(raw);
  CHECK(p["periodic"] == true);
  CHECK(p["p"] == 3);

  int sparse = 1;
  REQUIRE(adich_is_sparse(m3, &sparse) == ADICH_OK);
  CHECK(sparse == 0);
  adich_automaton_free(m3);
}

TEST_CASE("classify verdicts") {
  struct Row {
    const char* file;
    adich_verdict verdict;
    int limited;
  };
  for (const Row& row : {Row{"mult3.aut", ADICH_PRESBURGER, 0}, Row{"pow2.aut", ADICH_KN_INTERDEFINABLE, 0},
                         Row{"sigma_2_3_0.aut", ADICH_KN_INTERDEFINABLE, 0}, Row{"evil.aut", ADICH_DEFINES_VK, 1},
                         Row{"fig1.aut", ADICH_DEFINES_VK, 1}}) {
    CAPTURE(row.file);
    adich_automaton* x = load(row.file);
    adich_verdict v;
    int limited = -1;
    char* raw = nullptr;
    REQUIRE(adich_classify(x, 24, 0, &v, &limited, &raw) == ADICH_OK);
    CHECK(v == row.verdict);
    CHECK(limited == row.limited);
    json doc = take(raw);
    CHECK(doc["schema"] == 1);
    CHECK(doc["components"].is_array());
    adich_automaton_free(x);
  }
  adich_automaton* x = load("evil.aut");
  CHECK(adich_classify(x, 0, 0, nullptr, nullptr, nullptr) == ADICH_ERR_INVALID_ARGUMENT);
  char* raw = nullptr;
  CHECK(adich_decompose(x, 24, &raw) == ADICH_ERR_DOMAIN);
  adich_automaton_free(x);

  adich_automaton* s = load("sigma_2_3_0.aut");
  REQUIRE(adich_decompose(s, 24, &raw) == ADICH_OK);
  json d = take(raw);
  CHECK(d["verified"] == true);
  CHECK(d["branches"].size() >= 1);
  adich_automaton_free(s);
}

TEST_CASE("F on the fig1 cycle") {
  adich_automaton* c = load("fig1_cycle.aut");
  char* raw = nullptr;
  REQUIRE(adich_f(c, ADICH_DEFAULT_STATE, ADICH_DEFAULT_DIGIT, "22", ADICH_STABLE, &raw) == ADICH_OK);
  json f = take(raw);
  CHECK(f["F"] == 3);
  CHECK(f["Vka"] == 9);
  CHECK(f["M"] == 16);
  REQUIRE(f["trace"]["rejected"].size() == 1);
  CHECK(f["trace"]["rejected"][0]["i"] == 2);
  CHECK(f["trace"]["rejected"][0]["r"] == 0);
  CHECK(f["trace"]["rejected"][0]["v"] == "00");
  CHECK(f["trace"]["rejected"][0]["value"] == 18);
  CHECK(adich_f(c, ADICH_DEFAULT_STATE, ADICH_DEFAULT_DIGIT, "18", 3, &raw) == ADICH_ERR_DOMAIN);
  adich_automaton_free(c);

  adich_automaton* fig1 = load("fig1.aut");
  CHECK(adich_f(fig1, 2, 1, "22", 0, &raw) == ADICH_OK);
  CHECK(take(raw)["F"] == 3);
  adich_automaton_free(fig1);

  REQUIRE(adich_vka("22", 3, 1, &raw) == ADICH_OK);
  CHECK(std::string(raw) == "9");
  adich_string_free(raw);
  CHECK(adich_vka("0", 3, 1, &raw) == ADICH_ERR_DOMAIN);
}

TEST_CASE("decide with named sets") {
  adich_automaton* m3 = load("mult3.aut");
  const char* names[] = {"X"};
  const adich_automaton* sets[] = {m3};
  int value = 0;
  char* raw = nullptr;
  const char* periodic =
      "(exists p (and (> p 0) (exists N (forall n (implies (>= n N) (iff (in n X) (in (+ n p) X)))))))";
  REQUIRE(adich_decide(periodic, names, sets, 1, 0, &value, &raw) == ADICH_OK);
  CHECK(value == 1);
  json d = take(raw);
  CHECK(d["witness"]["p"] == 3);
  CHECK(adich_decide("(exists x (in x Y))", names, sets, 1, 0, &value, nullptr) == ADICH_ERR_INVALID_ARGUMENT);
  CHECK(adich_decide("(exists x", names, sets, 1, 0, &value, nullptr) == ADICH_ERR_PARSE);
  adich_automaton_free(m3);
}

TEST_CASE("sccs") {
  adich_automaton* fig1 = load("fig1.aut");
  char* raw = nullptr;
  REQUIRE(adich_sccs(fig1, &raw) == ADICH_OK);
  json s = take(raw);
  REQUIRE(s["components"].size() == 2);
  CHECK(s["components"][1]["leaf"] == true);
  CHECK(s["components"][1]["cycle_sparse"] == false);
  adich_automaton_free(fig1);
}

TEST_CASE("acceptance entry point") {
  int all = 0;
  char* raw = nullptr;
  const int ids[] = {1, 11};
  int calls = 0;
  REQUIRE(adich_acceptance(
              1, ids, 2,
              [](int, const char*, int, double, double, const char*, void* user) { ++*static_cast<int*>(user); },
              &calls, &all, &raw) == ADICH_OK);
  CHECK(calls == 2);
  CHECK(all == 1);
  json doc = take(raw);
  CHECK(doc["criteria"].size() == 2);
  CHECK(doc["criteria"][0]["name"] == "fig1 reproduction");
}
