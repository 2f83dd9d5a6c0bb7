// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/corpus.hpp"
#include "autodich/errors.hpp"
#include "autodich/io.hpp"

#include <doctest.h>

#include <random>

using namespace autodich;

namespace {

void expect_error_at(const char* text, std::size_t line, std::size_t column) {
  try {
    parse_automaton(text);
    FAIL("accepted: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_CASE("parse the fig1 fixture") {
  const char* text =
      "# three states, ternary\n"
      "radix 3 tracks 1\n"
      "states 3\n"
      "initial 0\n"
      "final 2\n"
      "t 0 0 0\nt 0 2 0\nt 0 1 2\n"
      "t 1 0 1\nt 1 2 1\nt 1 1 2\n"
      "t 2 0 2\nt 2 1 2\nt 2 2 1   # back to q1\n";
  Automaton a = parse_automaton(text);
  CHECK(a.radix() == 3);
  CHECK(a.num_states() == 3);
  CHECK(a.is_deterministic());
  CHECK(a == fig1_automaton());
}

TEST_CASE("multi-track symbols put track 0 first") {
  Automaton a = parse_automaton("radix 2 tracks 2\nstates 2\ninitial 0\nfinal 1\nt 0 1,0 1\n");
  CHECK(a.next(0, a.encode_symbol(std::vector<int>{1, 0})) == 1);
  CHECK(a.next(0, 1) == 1);
  CHECK(a.next(0, 2) == kNoState);
}

TEST_CASE("diagnostics carry line and column") {
  expect_error_at("radix 3 tracks 1\nstates 2\ninitial 0\nfinal 1\nt 0 3 1\n", 5, 5);
  expect_error_at("radix 3 tracks 1\nstates 2\ninitial 0\nfinal 1\nt 0 1 2\n", 5, 7);
  expect_error_at("radix 3 tracks 1\nstates 2\ninitial 5\nfinal 1\n", 3, 9);
  expect_error_at("radix 1 tracks 1\n", 1, 7);
  expect_error_at("radix 2 tracks 1\nstate 2\n", 2, 1);
  expect_error_at("radix 2 tracks 2\nstates 1\ninitial 0\nfinal\nt 0 1 0\n", 5, 5);
  expect_error_at("radix 2 tracks 2\nstates 1\ninitial 0\nfinal\nt 0 1,1,1 0\n", 5, 9);
  expect_error_at("radix 2 tracks 1\nstates 1\ninitial 0\nfinal\nt 0 x 0\n", 5, 5);
  expect_error_at("radix 2 tracks 1\nstates 1\ninitial 0\nfinal\nt 0 1 0 9\n", 5, 9);
  expect_error_at("radix 2 tracks 1\nstates 1\n", 3, 1);
  CHECK_THROWS_AS(read_automaton_file("/nonexistent/x.aut"), IoError);
}

TEST_CASE("write then parse is the identity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    RandomAutomatonOptions o;
    o.radix = 2 + static_cast<int>(rng() % 4);
    o.states = 1 + rng() % 6;
    o.deterministic = trial % 2 == 0;
    o.branching = 0.3;
    Automaton a = random_automaton(rng, o);
    CHECK(parse_automaton(write_automaton(a)) == a);
  }
  AutomatonBuilder b(3, 2, 2);
  b.add_initial(0);
  b.add_initial(1);
  b.set_final(1);
  b.add_transition(0, 7, 1);
  b.add_transition(0, 7, 0);
  Automaton two = b.build();
  CHECK(parse_automaton(write_automaton(two)) == two);
  AutomatonBuilder z(2, 0, 1);
  z.add_initial(0);
  z.add_transition(0, 0, 0);
  Automaton zero = z.build();
  CHECK(parse_automaton(write_automaton(zero)) == zero);
}
