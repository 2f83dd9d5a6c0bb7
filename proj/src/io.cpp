// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/io.hpp"

#include "autodich/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace autodich {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Automaton parse() {
    std::vector<Token> tok = next_line("radix");
    expect_keyword(tok, 0, "radix");
    expect_count(tok, 4);
    const Token& radix_tok = tok[1];
    const int radix = static_cast<int>(number(radix_tok, 2, 1 << 20, "radix"));
    expect_keyword(tok, 2, "tracks");
    const Token& tracks_tok = tok[3];
    const int tracks = static_cast<int>(number(tracks_tok, 0, 64, "track count"));
    try {
      alphabet_size_for(radix, tracks);
    } catch (const Error& e) {
      throw ParseError(line_no_, radix_tok.column, e.what());
    }

    tok = next_line("states");
    expect_keyword(tok, 0, "states");
    expect_count(tok, 2);
    const std::size_t n = static_cast<std::size_t>(number(tok[1], 0, 1u << 30, "state count"));

    AutomatonBuilder b(radix, tracks, n);
    tok = next_line("initial");
    expect_keyword(tok, 0, "initial");
    for (std::size_t i = 1; i < tok.size(); ++i) b.add_initial(state(tok[i], n));
    tok = next_line("final");
    expect_keyword(tok, 0, "final");
    for (std::size_t i = 1; i < tok.size(); ++i) b.set_final(state(tok[i], n));

    std::vector<int> digits(static_cast<std::size_t>(tracks));
    while (true) {
      tok = next_line(nullptr);
      if (tok.empty()) break;
      expect_keyword(tok, 0, "t");
      expect_count(tok, 4);
      const State src = state(tok[1], n);
      parse_symbol(tok[2], radix, digits);
      const State dst = state(tok[3], n);
      Symbol s = 0;
      for (std::size_t j = digits.size(); j-- > 0;)
        s = s * static_cast<Symbol>(radix) + static_cast<Symbol>(digits[j]);
      b.add_transition(src, s, dst);
    }
    return std::move(b).build();
  }

 private:
  /// Next non-empty line; empty result at end of input unless `required`.
  std::vector<Token> next_line(const char* required) {
    while (pos_ <= text_.size()) {
      if (pos_ == text_.size()) {
        pos_ = text_.size() + 1;
        break;
      }
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      auto tok = tokenize(line);
      if (!tok.empty()) return tok;
    }
    if (required) throw ParseError(line_no_ + 1, 1, std::string("missing '") + required + "' line");
    return {};
  }

  void expect_keyword(const std::vector<Token>& tok, std::size_t i, std::string_view kw) const {
    if (tok.size() <= i)
      throw ParseError(line_no_, tok.empty() ? 1 : tok.back().column + tok.back().text.size(),
                       "expected '" + std::string(kw) + "'");
    if (tok[i].text != kw)
      throw ParseError(line_no_, tok[i].column,
                       "expected '" + std::string(kw) + "', found '" + std::string(tok[i].text) + "'");
  }

  void expect_count(const std::vector<Token>& tok, std::size_t count) const {
    if (tok.size() < count)
      throw ParseError(line_no_, tok.back().column + tok.back().text.size(), "too few fields");
    if (tok.size() > count) throw ParseError(line_no_, tok[count].column, "unexpected field");
  }

  long long number(const Token& t, long long lo, long long hi, const char* what) const {
    return number_at(t.text, t.column, lo, hi, what);
  }

  long long number_at(std::string_view s, std::size_t column, long long lo, long long hi,
                      const char* what) const {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw ParseError(line_no_, column, std::string("expected ") + what + ", found '" + std::string(s) + "'");
    if (v < lo || v > hi)
      throw ParseError(line_no_, column,
                       std::string(what) + " " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    return v;
  }

  State state(const Token& t, std::size_t n) const {
    if (n == 0) throw ParseError(line_no_, t.column, "state " + std::string(t.text) + " but no states declared");
    return static_cast<State>(number(t, 0, static_cast<long long>(n) - 1, "state"));
  }

  void parse_symbol(const Token& t, int radix, std::vector<int>& digits) const {
    if (digits.empty()) {
      if (t.text != "-") throw ParseError(line_no_, t.column, "expected '-' for the symbol of a 0-track automaton");
      return;
    }
    std::size_t start = 0;
    std::size_t j = 0;
    while (true) {
      std::size_t comma = t.text.find(',', start);
      std::string_view part = t.text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                   : comma - start);
      if (j == digits.size())
        throw ParseError(line_no_, t.column + start,
                         "symbol has more than " + std::to_string(digits.size()) + " digits");
      digits[j++] = static_cast<int>(number_at(part, t.column + start, 0, radix - 1, "digit"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (j != digits.size())
      throw ParseError(line_no_, t.column,
                       "symbol has " + std::to_string(j) + " digits, expected " + std::to_string(digits.size()));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

}  // namespace

Automaton parse_automaton(std::string_view text) { return Parser(text).parse(); }

Automaton read_automaton_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_automaton(buf.str());
}

std::string write_automaton(const Automaton& a) {
  std::ostringstream out;
  out << "radix " << a.radix() << " tracks " << a.tracks() << "\n";
  out << "states " << a.num_states() << "\n";
  out << "initial";
  for (State q : a.initial()) out << ' ' << q;
  out << "\nfinal";
  for (State q : a.finals()) out << ' ' << q;
  out << "\n";
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol s = 0; s < a.alphabet_size(); ++s)
      for (State r : a.successors(q, s)) {
        out << "t " << q << ' ';
        auto digits = a.decode_symbol(s);
        if (digits.empty()) out << '-';
        for (std::size_t j = 0; j < digits.size(); ++j) out << (j ? "," : "") << digits[j];
        out << ' ' << r << "\n";
      }
  return out.str();
}

void write_automaton_file(const Automaton& a, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << write_automaton(a);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace autodich
