// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/errors.hpp"
#include "autodich/logic.hpp"

#include <algorithm>

namespace autodich::logic {

namespace {

using TK = TermNode::Kind;
using FK = FormulaNode::Kind;

bool term_has_only(const Term& t, const Assignment& values, const std::string& extra) {
  if (t->kind == TK::Var) return t->name == extra || values.count(t->name);
  return std::all_of(t->args.begin(), t->args.end(),
                     [&](const Term& a) { return term_has_only(a, values, extra); });
}

/// Coefficient of v in t, and t with v set to 0 evaluated.
void split_linear(const Term& t, const std::string& v, const BigInt& factor, const Assignment& values,
                  BigInt& coeff, BigInt& rest) {
  switch (t->kind) {
    case TK::Var:
      if (t->name == v)
        coeff += factor;
      else
        rest += factor * values.at(t->name);
      break;
    case TK::Const: rest += factor * t->value; break;
    case TK::Scale: split_linear(t->args[0], v, factor * t->value, values, coeff, rest); break;
    case TK::Add:
      for (const auto& a : t->args) split_linear(a, v, factor, values, coeff, rest);
      break;
  }
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f->kind == FK::And) {
    for (const auto& a : f->args) flatten_and(a, out);
  } else {
    out.push_back(f);
  }
}

class Evaluator {
 public:
  Evaluator(const SetEnv& env, const BigInt& bound, int radix) : env_(env), bound_(bound), k_(radix) {
    if (radix < 2) throw InvalidArgument("radix must be at least 2");
    for (BigInt p = 1; p <= bound_; p *= k_) powers_.push_back(p);
  }

  bool eval(const Formula& f, Assignment& values) {
    switch (f->kind) {
      case FK::True: return true;
      case FK::False: return false;
      case FK::Eq: return eval_term(f->terms[0], values) == eval_term(f->terms[1], values);
      case FK::Lt: return eval_term(f->terms[0], values) < eval_term(f->terms[1], values);
      case FK::In: {
        auto it = env_.find(f->name);
        if (it == env_.end()) throw InvalidArgument("unknown set '" + f->name + "'");
        return it->second.contains(eval_term(f->terms[0], values));
      }
      case FK::PowK: {
        BigInt v = eval_term(f->terms[0], values);
        if (v < 1) return false;
        while (v % k_ == 0) v /= k_;
        return v == 1;
      }
      case FK::Not: return !eval(f->args[0], values);
      case FK::And:
        for (const auto& a : f->args)
          if (!eval(a, values)) return false;
        return true;
      case FK::Or:
        for (const auto& a : f->args)
          if (eval(a, values)) return true;
        return false;
      case FK::Implies: return !eval(f->args[0], values) || eval(f->args[1], values);
      case FK::Iff: return eval(f->args[0], values) == eval(f->args[1], values);
      case FK::Exists: return quantify(f, values, true);
      case FK::Forall: return quantify(f, values, false);
    }
    return false;
  }

 private:
  /// ∃v body, or ∀v body; guards narrow the candidates.
  bool quantify(const Formula& f, Assignment& values, bool existential) {
    const std::string& v = f->name;
    const Formula& body = f->args[0];
    std::vector<Formula> guard;
    if (existential) {
      flatten_and(body, guard);
    } else if (body->kind == FK::Implies) {
      flatten_and(body->args[0], guard);
    }
    std::optional<BigInt> saved;
    if (auto it = values.find(v); it != values.end()) saved = it->second;
    auto restore = [&] {
      if (saved)
        values[v] = *saved;
      else
        values.erase(v);
    };
    bool result = !existential;
    auto visit = [&](const BigInt& x) {
      values[v] = x;
      const bool b = eval(body, values);
      if (b == existential) {
        result = existential;
        return false;
      }
      return true;
    };
    const Candidates cand = candidates(v, guard, values);
    if (cand.list) {
      for (const auto& x : *cand.list)
        if (!visit(x)) break;
    } else {
      for (BigInt x = 0; x <= cand.upper; ++x)
        if (!visit(x)) break;
    }
    restore();
    return result;
  }

  struct Candidates {
    std::optional<std::vector<BigInt>> list;
    BigInt upper;  // used when list is empty: range [0, upper]
  };

  Candidates candidates(const std::string& v, const std::vector<Formula>& guard, const Assignment& values) {
    Candidates c;
    c.upper = bound_;
    Assignment probe = values;
    probe.erase(v);
    for (const auto& g : guard) {
      if (g->kind == FK::PowK && g->terms[0]->kind == TK::Var && g->terms[0]->name == v) {
        if (!c.list) c.list = powers_;
      } else if (g->kind == FK::Eq && term_has_only(g->terms[0], probe, v) &&
                 term_has_only(g->terms[1], probe, v)) {
        BigInt coeff = 0, rest = 0;
        split_linear(g->terms[0], v, 1, probe, coeff, rest);
        split_linear(g->terms[1], v, -1, probe, coeff, rest);
        if (coeff == 0) continue;
        // coeff * v + rest = 0
        std::vector<BigInt> one;
        if ((-rest) % coeff == 0) {
          const BigInt x = -rest / coeff;
          if (x >= 0 && x <= bound_) one.push_back(x);
        }
        c.list = std::move(one);
        return c;
      } else if (g->kind == FK::Lt && g->terms[0]->kind == TK::Var && g->terms[0]->name == v &&
                 term_has_only(g->terms[1], probe, "")) {
        const BigInt hi = eval_term(g->terms[1], probe) - 1;
        if (hi < c.upper) c.upper = hi;
      }
    }
    if (c.list) {
      auto& l = *c.list;
      l.erase(std::remove_if(l.begin(), l.end(), [&](const BigInt& x) { return x > c.upper; }), l.end());
    }
    return c;
  }

  const SetEnv& env_;
  BigInt bound_;
  int k_;
  std::vector<BigInt> powers_;
};

}  // namespace

BigInt eval_term(const Term& t, const Assignment& values) {
  switch (t->kind) {
    case TK::Var: {
      auto it = values.find(t->name);
      if (it == values.end()) throw InvalidArgument("unassigned variable '" + t->name + "'");
      return it->second;
    }
    case TK::Const: return t->value;
    case TK::Scale: return t->value * eval_term(t->args[0], values);
    case TK::Add: {
      BigInt s = 0;
      for (const auto& a : t->args) s += eval_term(a, values);
      return s;
    }
  }
  return 0;
}

bool eval_formula_bounded(const Formula& f, const SetEnv& env, const Assignment& values,
                          const BigInt& bound, int radix) {
  for (const auto& v : free_variables(f))
    if (!values.count(v)) throw InvalidArgument("free variable '" + v + "' has no value");
  Evaluator e(env, bound, radix);
  Assignment a = values;
  return e.eval(f, a);
}

}  // namespace autodich::logic
