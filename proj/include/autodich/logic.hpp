// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "autodich/automaton.hpp"
#include "autodich/basek.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace autodich::logic {

struct TermNode;
struct FormulaNode;
using Term = std::shared_ptr<const TermNode>;
using Formula = std::shared_ptr<const FormulaNode>;

/// Terms are linear: variables, natural constants, sums and scaling by a
/// natural constant.
struct TermNode {
  enum class Kind { Var, Const, Add, Scale };
  Kind kind;
  std::string name;      // Var
  BigInt value;          // Const, or the factor of Scale
  std::vector<Term> args;
};

struct FormulaNode {
  enum class Kind {
    True,
    False,
    Eq,       // terms[0] = terms[1]
    Lt,       // terms[0] < terms[1]
    In,       // terms[0] ∈ name
    PowK,     // terms[0] ∈ k^ℕ
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists,   // ∃name args[0]
    Forall,   // ∀name args[0]
  };
  Kind kind;
  std::vector<Term> terms;
  std::string name;
  std::vector<Formula> args;
};

// --- construction ----------------------------------------------------------

Term var(std::string name);
Term lit(const BigInt& value);
Term add(Term a, Term b);
Term add(std::vector<Term> parts);
Term scale(const BigInt& factor, Term t);

Formula top();
Formula bottom();
Formula eq(Term a, Term b);
Formula lt(Term a, Term b);
Formula le(Term a, Term b);
Formula gt(Term a, Term b);
Formula ge(Term a, Term b);
Formula ne(Term a, Term b);
Formula in_set(Term t, std::string set);
Formula pow_k(Term t);
/// t ≡ c (mod m), through an existential quotient.
Formula mod_eq(Term t, const BigInt& m, const BigInt& c);
Formula lnot(Formula f);
Formula land(std::vector<Formula> fs);
Formula lor(std::vector<Formula> fs);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula exists(std::string v, Formula body);
Formula forall(std::string v, Formula body);

/// A variable name that no user formula can contain (it starts with '%').
std::string fresh_name(std::string_view hint);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> set_names(const Formula& f);
std::string to_sexpr(const Formula& f);
std::string to_sexpr(const Term& t);

/// Parses the S-expression syntax, e.g.
/// (forall n (implies (>= n N) (iff (in n X) (in (+ n p) X)))).
/// Throws ParseError with 1-based line and column.
Formula parse_sexpr(std::string_view text);

// --- compilation -------------------------------------------------------------

using SetEnv = std::map<std::string, BaseKSet>;

/// A relation on ℕ^d: a d-track automaton reading MSD-first, zero-padded
/// tuples. Track j holds vars[j]; vars are sorted. The language is closed
/// under adding and removing leading all-zero symbols.
struct Relation {
  int radix = 2;
  std::vector<std::string> vars;
  Automaton automaton;

  bool contains(const std::vector<BigInt>& values) const;
};

struct CompileOptions {
  /// 0 means: take the radix of the named sets (an error if there are none).
  int radix = 0;
  std::size_t state_cap = kDefaultStateCap;
};

/// {(x, y, z) : x + y = z} over tracks x, y, z.
Relation relation_addition(int k);

/// Relation over the free variables of f (sorted) denoting its satisfying
/// tuples. Throws InvalidArgument on unknown set names, mixed radices or a
/// quantifier rebinding a variable of an enclosing quantifier.
Relation compile(const Formula& f, const SetEnv& env, const CompileOptions& opts = {});

struct Decision {
  bool value = false;
  /// For a true sentence whose outermost quantifiers are ∃: the values of
  /// that leading block from the shortest, then lexicographically least,
  /// accepted encoding.
  std::map<std::string, BigInt> witness;
};

Decision decide_sentence(const Formula& f, const SetEnv& env, const CompileOptions& opts = {});

struct Periodicity {
  bool periodic = false;
  BigInt period;     // p > 0
  BigInt threshold;  // N
};

/// Decides ∃p>0 ∃N ∀n (n ≥ N → (n ∈ X ↔ n + p ∈ X)).
Periodicity is_eventually_periodic(const BaseKSet& x, std::size_t state_cap = kDefaultStateCap);

// --- bounded evaluation --------------------------------------------------------

using Assignment = std::map<std::string, BigInt>;

/// Classical semantics with every quantifier ranging over [0, bound]. Sound
/// only when all witnesses lie in that range. Quantifiers guarded by PowK,
/// a solvable equation or an upper bound x < t visit only the candidates the
/// guard admits.
bool eval_formula_bounded(const Formula& f, const SetEnv& env, const Assignment& values,
                          const BigInt& bound, int radix);

/// Value of a term under an assignment (every variable must be assigned).
BigInt eval_term(const Term& t, const Assignment& values);

}  // namespace autodich::logic
