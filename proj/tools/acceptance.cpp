// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include "autodich/autodich.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <vector>

namespace {

void report(int id, const char* name, int pass, double seconds, double limit, const char* detail, void*) {
  if (limit > 0)
    std::printf("[%s] %2d %-30s %8.2f s < %3.0f s  %s\n", pass ? "PASS" : "FAIL", id, name, seconds, limit, detail);
  else
    std::printf("[%s] %2d %-30s %8.2f s          %s\n", pass ? "PASS" : "FAIL", id, name, seconds, detail);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"autodich acceptance criteria"};
  std::uint64_t seed = 1;
  std::vector<int> ids;
  app.add_option("--seed", seed, "Seed for the randomized criteria");
  app.add_option("--criteria", ids, "Subset of criterion numbers")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  int all = 0;
  const adich_status s = adich_acceptance(seed, ids.data(), ids.size(), report, nullptr, &all, nullptr);
  if (s != ADICH_OK) {
    std::fprintf(stderr, "acceptance: %s: %s\n", adich_status_name(s), adich_last_error());
    return 2;
  }
  std::printf("%s (seed %llu)\n", all ? "ALL PASS" : "FAILURES", static_cast<unsigned long long>(seed));
  return all ? 0 : 1;
}
