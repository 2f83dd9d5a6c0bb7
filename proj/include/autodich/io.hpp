// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "autodich/automaton.hpp"

#include <string>
#include <string_view>

namespace autodich {

/// Text format, one directive per line:
///
///   radix <k> tracks <d>
///   states <n>
///   initial <q ...>
///   final <q ...>
///   t <src> <digits> <dst>      (digits: d values joined by ',', track 0 first;
///                                 '-' when d = 0)
///
/// '#' starts a comment; blank lines are ignored. The four header lines come
/// first and in this order. Errors are ParseError with 1-based line:column.
Automaton parse_automaton(std::string_view text);

/// Throws IoError if the file cannot be read, ParseError on bad content.
Automaton read_automaton_file(const std::string& path);

/// Canonical text; parse_automaton(write_automaton(a)) == a.
std::string write_automaton(const Automaton& a);

void write_automaton_file(const Automaton& a, const std::string& path);

}  // namespace autodich
