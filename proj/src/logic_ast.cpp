// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/errors.hpp"
#include "autodich/logic.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>

namespace autodich::logic {

namespace {

using TK = TermNode::Kind;
using FK = FormulaNode::Kind;

Formula make(FK kind, std::vector<Term> terms = {}, std::string name = {},
             std::vector<Formula> args = {}) {
  return std::make_shared<const FormulaNode>(
      FormulaNode{kind, std::move(terms), std::move(name), std::move(args)});
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

Term var(std::string name) {
  require(!name.empty(), "empty variable name");
  return std::make_shared<const TermNode>(TermNode{TK::Var, std::move(name), 0, {}});
}

Term lit(const BigInt& value) {
  require(value >= 0, "constants must be natural numbers");
  return std::make_shared<const TermNode>(TermNode{TK::Const, {}, value, {}});
}

Term add(Term a, Term b) { return add(std::vector<Term>{std::move(a), std::move(b)}); }

Term add(std::vector<Term> parts) {
  require(!parts.empty(), "empty sum");
  for (const auto& p : parts) require(p != nullptr, "null term");
  if (parts.size() == 1) return parts.front();
  return std::make_shared<const TermNode>(TermNode{TK::Add, {}, 0, std::move(parts)});
}

Term scale(const BigInt& factor, Term t) {
  require(factor >= 0, "scaling factors must be natural numbers");
  require(t != nullptr, "null term");
  return std::make_shared<const TermNode>(TermNode{TK::Scale, {}, factor, {std::move(t)}});
}

Formula top() { return make(FK::True); }
Formula bottom() { return make(FK::False); }
Formula eq(Term a, Term b) { return make(FK::Eq, {std::move(a), std::move(b)}); }
Formula lt(Term a, Term b) { return make(FK::Lt, {std::move(a), std::move(b)}); }
Formula le(Term a, Term b) { return lnot(lt(std::move(b), std::move(a))); }
Formula gt(Term a, Term b) { return lt(std::move(b), std::move(a)); }
Formula ge(Term a, Term b) { return lnot(lt(std::move(a), std::move(b))); }
Formula ne(Term a, Term b) { return lnot(eq(std::move(a), std::move(b))); }

Formula in_set(Term t, std::string set) {
  require(!set.empty(), "empty set name");
  return make(FK::In, {std::move(t)}, std::move(set));
}

Formula pow_k(Term t) { return make(FK::PowK, {std::move(t)}); }

Formula mod_eq(Term t, const BigInt& m, const BigInt& c) {
  require(m >= 1, "modulus must be positive");
  const std::string q = fresh_name("q");
  return exists(q, eq(std::move(t), add(scale(m, var(q)), lit(((c % m) + m) % m))));
}

Formula lnot(Formula f) { return make(FK::Not, {}, {}, {std::move(f)}); }

Formula land(std::vector<Formula> fs) {
  if (fs.empty()) return top();
  if (fs.size() == 1) return fs.front();
  return make(FK::And, {}, {}, std::move(fs));
}

Formula lor(std::vector<Formula> fs) {
  if (fs.empty()) return bottom();
  if (fs.size() == 1) return fs.front();
  return make(FK::Or, {}, {}, std::move(fs));
}

Formula implies(Formula a, Formula b) { return make(FK::Implies, {}, {}, {std::move(a), std::move(b)}); }
Formula iff(Formula a, Formula b) { return make(FK::Iff, {}, {}, {std::move(a), std::move(b)}); }

Formula exists(std::string v, Formula body) {
  require(!v.empty(), "empty variable name");
  return make(FK::Exists, {}, std::move(v), {std::move(body)});
}

Formula forall(std::string v, Formula body) {
  require(!v.empty(), "empty variable name");
  return make(FK::Forall, {}, std::move(v), {std::move(body)});
}

std::string fresh_name(std::string_view hint) {
  static std::atomic<std::uint64_t> counter{0};
  return "%" + std::string(hint) + std::to_string(counter.fetch_add(1));
}

namespace {

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t->kind == TK::Var) out.insert(t->name);
  for (const auto& a : t->args) term_vars(a, out);
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  for (const auto& t : f->terms) {
    std::set<std::string> vs;
    term_vars(t, vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
  }
  if (f->kind == FK::Exists || f->kind == FK::Forall) {
    const bool fresh = bound.insert(f->name).second;
    collect_free(f->args[0], bound, out);
    if (fresh) bound.erase(f->name);
    return;
  }
  for (const auto& a : f->args) collect_free(a, bound, out);
}

void collect_sets(const Formula& f, std::set<std::string>& out) {
  if (f->kind == FK::In) out.insert(f->name);
  for (const auto& a : f->args) collect_sets(a, out);
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> set_names(const Formula& f) {
  std::set<std::string> out;
  collect_sets(f, out);
  return out;
}

std::string to_sexpr(const Term& t) {
  switch (t->kind) {
    case TK::Var: return t->name;
    case TK::Const: return t->value.str();
    case TK::Scale: return "(* " + t->value.str() + " " + to_sexpr(t->args[0]) + ")";
    case TK::Add: {
      std::string s = "(+";
      for (const auto& a : t->args) s += " " + to_sexpr(a);
      return s + ")";
    }
  }
  return {};
}

std::string to_sexpr(const Formula& f) {
  auto nary = [&](const char* op) {
    std::string s = std::string("(") + op;
    for (const auto& a : f->args) s += " " + to_sexpr(a);
    return s + ")";
  };
  switch (f->kind) {
    case FK::True: return "true";
    case FK::False: return "false";
    case FK::Eq: return "(= " + to_sexpr(f->terms[0]) + " " + to_sexpr(f->terms[1]) + ")";
    case FK::Lt: return "(< " + to_sexpr(f->terms[0]) + " " + to_sexpr(f->terms[1]) + ")";
    case FK::In: return "(in " + to_sexpr(f->terms[0]) + " " + f->name + ")";
    case FK::PowK: return "(pow " + to_sexpr(f->terms[0]) + ")";
    case FK::Not: return nary("not");
    case FK::And: return nary("and");
    case FK::Or: return nary("or");
    case FK::Implies: return nary("implies");
    case FK::Iff: return nary("iff");
    case FK::Exists: return "(exists " + f->name + " " + to_sexpr(f->args[0]) + ")";
    case FK::Forall: return "(forall " + f->name + " " + to_sexpr(f->args[0]) + ")";
  }
  return {};
}

// --- S-expression parser ---------------------------------------------------

namespace {

struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExpr> list;
  std::size_t line = 1, column = 1;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_all() {
    skip_space();
    if (pos_ >= text_.size()) fail("empty formula");
    SExpr e = read();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected text after the formula");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, col_, what); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    SExpr e;
    e.line = line_;
    e.column = col_;
    const char c = text_[pos_];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      advance();
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) fail("missing ')'");
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.list.push_back(read());
      }
    }
    e.is_atom = true;
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (d == '(' || d == ')' || std::isspace(static_cast<unsigned char>(d)) || d == ';') break;
      e.atom += d;
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

[[noreturn]] void fail_at(const SExpr& e, const std::string& what) {
  throw ParseError(e.line, e.column, what);
}

bool is_number(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_identifier(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

Term to_term(const SExpr& e) {
  if (e.is_atom) {
    if (is_number(e.atom)) return lit(BigInt(e.atom));
    if (is_identifier(e.atom)) return var(e.atom);
    fail_at(e, "bad term '" + e.atom + "'");
  }
  if (e.list.empty() || !e.list[0].is_atom) fail_at(e, "expected a term");
  const std::string& op = e.list[0].atom;
  if (op == "+") {
    if (e.list.size() < 2) fail_at(e, "'+' needs at least one argument");
    std::vector<Term> parts;
    for (std::size_t i = 1; i < e.list.size(); ++i) parts.push_back(to_term(e.list[i]));
    return add(std::move(parts));
  }
  if (op == "*") {
    if (e.list.size() != 3) fail_at(e, "'*' takes a constant and a term");
    const SExpr* c = &e.list[1];
    const SExpr* t = &e.list[2];
    if (!(c->is_atom && is_number(c->atom))) std::swap(c, t);
    if (!(c->is_atom && is_number(c->atom))) fail_at(e, "'*' needs a constant factor");
    return scale(BigInt(c->atom), to_term(*t));
  }
  fail_at(e.list[0], "unknown term operator '" + op + "'");
}

Formula to_formula(const SExpr& e) {
  if (e.is_atom) {
    if (e.atom == "true") return top();
    if (e.atom == "false") return bottom();
    fail_at(e, "expected a formula, got '" + e.atom + "'");
  }
  if (e.list.empty() || !e.list[0].is_atom) fail_at(e, "expected an operator");
  const std::string& op = e.list[0].atom;
  const std::size_t n = e.list.size() - 1;
  auto arity = [&](std::size_t want) {
    if (n != want)
      fail_at(e, "'" + op + "' takes " + std::to_string(want) + " arguments, got " + std::to_string(n));
  };
  auto formulas = [&]() {
    std::vector<Formula> fs;
    for (std::size_t i = 1; i < e.list.size(); ++i) fs.push_back(to_formula(e.list[i]));
    return fs;
  };
  if (op == "exists" || op == "forall") {
    arity(2);
    const SExpr& v = e.list[1];
    if (!v.is_atom || !is_identifier(v.atom)) fail_at(v, "expected a variable name");
    Formula body = to_formula(e.list[2]);
    return op == "exists" ? exists(v.atom, body) : forall(v.atom, body);
  }
  if (op == "not") {
    arity(1);
    return lnot(to_formula(e.list[1]));
  }
  if (op == "and") return land(formulas());
  if (op == "or") return lor(formulas());
  if (op == "implies" || op == "->") {
    arity(2);
    return implies(to_formula(e.list[1]), to_formula(e.list[2]));
  }
  if (op == "iff" || op == "<->") {
    arity(2);
    return iff(to_formula(e.list[1]), to_formula(e.list[2]));
  }
  if (op == "in") {
    arity(2);
    const SExpr& s = e.list[2];
    if (!s.is_atom || !is_identifier(s.atom)) fail_at(s, "expected a set name");
    return in_set(to_term(e.list[1]), s.atom);
  }
  if (op == "pow") {
    arity(1);
    return pow_k(to_term(e.list[1]));
  }
  if (op == "mod") {
    arity(3);
    const SExpr& m = e.list[2];
    const SExpr& c = e.list[3];
    if (!m.is_atom || !is_number(m.atom) || BigInt(m.atom) == 0) fail_at(m, "expected a positive modulus");
    if (!c.is_atom || !is_number(c.atom)) fail_at(c, "expected a residue");
    return mod_eq(to_term(e.list[1]), BigInt(m.atom), BigInt(c.atom));
  }
  static const std::map<std::string, Formula (*)(Term, Term)> rel = {
      {"=", eq}, {"<", lt}, {"<=", le}, {">", gt}, {">=", ge}, {"!=", ne}};
  if (auto it = rel.find(op); it != rel.end()) {
    arity(2);
    return it->second(to_term(e.list[1]), to_term(e.list[2]));
  }
  fail_at(e.list[0], "unknown operator '" + op + "'");
}

}  // namespace

Formula parse_sexpr(std::string_view text) { return to_formula(Reader(text).read_all()); }

}  // namespace autodich::logic
