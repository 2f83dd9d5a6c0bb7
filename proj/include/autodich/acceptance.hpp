// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace autodich {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Counts, witnesses or the first violation.
  std::string detail;
  double seconds = 0;
  /// Wall-clock limit in seconds; 0 when the criterion has none.
  double limit = 0;
};

/// Runs the thirteen acceptance criteria in order. `ids` selects a subset
/// (empty: all). `on_result` is called as each one finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& ids = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace autodich
