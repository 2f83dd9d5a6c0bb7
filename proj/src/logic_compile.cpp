// Copyright 2026 The autodich Authors
// SPDX-License-Identifier: Apache-2.0

#include "autodich/errors.hpp"
#include "autodich/logic.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

namespace autodich::logic {

namespace {

using TK = TermNode::Kind;
using FK = FormulaNode::Kind;

/// sum coeff[v] * v + constant.
struct Linear {
  std::map<std::string, BigInt> coeff;
  BigInt constant = 0;
};

void accumulate(const Term& t, const BigInt& factor, Linear& out) {
  switch (t->kind) {
    case TK::Var: out.coeff[t->name] += factor; break;
    case TK::Const: out.constant += factor * t->value; break;
    case TK::Scale: accumulate(t->args[0], factor * t->value, out); break;
    case TK::Add:
      for (const auto& a : t->args) accumulate(a, factor, out);
      break;
  }
}

/// lhs - rhs as a linear form with zero coefficients dropped.
Linear difference(const Term& lhs, const Term& rhs) {
  Linear l;
  accumulate(lhs, 1, l);
  accumulate(rhs, -1, l);
  for (auto it = l.coeff.begin(); it != l.coeff.end();)
    it = it->second == 0 ? l.coeff.erase(it) : std::next(it);
  return l;
}

std::vector<int> digits_of(Symbol s, int k, std::size_t tracks) {
  std::vector<int> d(tracks);
  for (std::size_t j = 0; j < tracks; ++j) {
    d[j] = static_cast<int>(s % static_cast<Symbol>(k));
    s /= static_cast<Symbol>(k);
  }
  return d;
}

class Compiler {
 public:
  Compiler(const SetEnv& env, int radix, std::size_t cap) : env_(env), k_(radix), cap_(cap) {}

  Relation compile(const Formula& f, std::set<std::string>& bound) {
    switch (f->kind) {
      case FK::True: return constant(true);
      case FK::False: return constant(false);
      case FK::Eq: return linear_eq(difference(f->terms[0], f->terms[1]));
      case FK::Lt: {
        // a < b  iff  ∃d: b - a - d - 1 = 0.
        const std::string d = fresh_name("d");
        Linear l = difference(f->terms[1], f->terms[0]);
        l.coeff[d] -= 1;
        l.constant -= 1;
        return project(linear_eq(l), d);
      }
      case FK::In: return through_variable(f->terms[0], set_relation(f->name));
      case FK::PowK: return through_variable(f->terms[0], powers_relation());
      case FK::Not: return negate(compile(f->args[0], bound));
      case FK::And:
      case FK::Or: {
        Relation acc = compile(f->args[0], bound);
        for (std::size_t i = 1; i < f->args.size(); ++i)
          acc = combine(acc, compile(f->args[i], bound),
                        f->kind == FK::And ? BoolOp::Intersect : BoolOp::Union);
        return acc;
      }
      case FK::Implies:
        return combine(negate(compile(f->args[0], bound)), compile(f->args[1], bound), BoolOp::Union);
      case FK::Iff:
        return combine(compile(f->args[0], bound), compile(f->args[1], bound), BoolOp::Iff);
      case FK::Exists:
      case FK::Forall: {
        if (!bound.insert(f->name).second)
          throw InvalidArgument("variable '" + f->name + "' is bound twice in nested scopes");
        Relation body = compile(f->args[0], bound);
        bound.erase(f->name);
        if (f->kind == FK::Exists) return project(body, f->name);
        return negate(project(negate(body), f->name));
      }
    }
    throw InvalidArgument("unknown formula node");
  }

  Relation cylindrify(const Relation& r, const std::vector<std::string>& vars) const {
    if (r.vars == vars) return r;
    std::vector<std::size_t> pos;
    for (const auto& v : r.vars) {
      auto it = std::lower_bound(vars.begin(), vars.end(), v);
      if (it == vars.end() || *it != v) throw InvalidArgument("internal: cylindrify lost a variable");
      pos.push_back(static_cast<std::size_t>(it - vars.begin()));
    }
    const std::size_t big = alphabet_size_for(k_, static_cast<int>(vars.size()));
    std::vector<Symbol> small(big);
    for (Symbol s = 0; s < big; ++s) {
      const auto d = digits_of(s, k_, vars.size());
      Symbol t = 0;
      for (std::size_t j = pos.size(); j-- > 0;) t = t * static_cast<Symbol>(k_) + static_cast<Symbol>(d[pos[j]]);
      small[s] = t;
    }
    const Automaton& a = r.automaton;
    AutomatonBuilder b(k_, static_cast<int>(vars.size()), a.num_states());
    for (State q = 0; q < a.num_states(); ++q) {
      if (a.is_final(q)) b.set_final(q);
      for (Symbol s = 0; s < big; ++s)
        for (State t : a.successors(q, small[s])) b.add_transition(q, s, t);
    }
    for (State q : a.initial()) b.add_initial(q);
    return Relation{k_, vars, std::move(b).build()};
  }

 private:
  Relation constant(bool value) const {
    return Relation{k_, {}, value ? universal_language(k_, 0) : minimize(empty_language(k_, 0))};
  }

  Relation combine(const Relation& a, const Relation& b, BoolOp op) const {
    std::vector<std::string> vars;
    std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(vars));
    const Relation ca = cylindrify(a, vars);
    const Relation cb = cylindrify(b, vars);
    return Relation{k_, vars, minimize(boolean_combine(ca.automaton, cb.automaton, op), cap_)};
  }

  Relation negate(const Relation& r) const {
    return Relation{k_, r.vars, minimize(complement(r.automaton), cap_)};
  }

  Relation project(const Relation& r, const std::string& v) const {
    auto it = std::find(r.vars.begin(), r.vars.end(), v);
    if (it == r.vars.end()) return r;  // the domain is nonempty
    const std::size_t idx = static_cast<std::size_t>(it - r.vars.begin());
    std::vector<std::string> rest = r.vars;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
    const Automaton& a = r.automaton;
    AutomatonBuilder b(k_, static_cast<int>(rest.size()), a.num_states());
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      const auto d = digits_of(s, k_, r.vars.size());
      Symbol t = 0;
      for (std::size_t j = d.size(); j-- > 0;)
        if (j != idx) t = t * static_cast<Symbol>(k_) + static_cast<Symbol>(d[j]);
      for (State q = 0; q < a.num_states(); ++q)
        for (State u : a.successors(q, s)) b.add_transition(q, t, u);
    }
    for (State q : a.initial()) b.add_initial(q);
    for (State q = 0; q < a.num_states(); ++q)
      if (a.is_final(q)) b.set_final(q);
    const Automaton dropped = std::move(b).build();
    // The dropped track may have needed more digits: allow the remaining
    // tracks any number of extra leading zeros.
    const auto start = zero_closure(dropped, dropped.initial());
    const auto finals = dropped.finals();
    return Relation{k_, rest, minimize_either_way(with_initial_final(dropped, start, finals))};
  }

  /// Subset construction forwards or through the reversal, whichever stays
  /// under a growing budget first.
  Automaton minimize_either_way(const Automaton& nfa) const {
    for (std::size_t budget = 4096;; budget *= 4) {
      const std::size_t cap = std::min(budget, cap_);
      try {
        return minimize(determinize(nfa, cap), cap);
      } catch (const LimitExceeded&) {
      }
      try {
        return minimize(reverse(determinize(reverse(nfa), cap)), cap);
      } catch (const LimitExceeded&) {
        if (cap == cap_) throw;
      }
    }
  }

  /// R(t) for a unary relation R, through a fresh variable unless t is a
  /// plain variable.
  Relation through_variable(const Term& t, const Automaton& unary) const {
    if (t->kind == TK::Var) return Relation{k_, {t->name}, unary};
    const std::string z = fresh_name("z");
    Relation atom{k_, {z}, unary};
    Linear l = difference(var(z), t);
    return project(combine(atom, linear_eq(l), BoolOp::Intersect), z);
  }

  const Automaton& set_relation(const std::string& name) const {
    auto it = env_.find(name);
    if (it == env_.end()) throw InvalidArgument("unknown set '" + name + "'");
    if (it->second.radix() != k_)
      throw InvalidArgument("set '" + name + "' has radix " + std::to_string(it->second.radix()) +
                            ", formula radix is " + std::to_string(k_));
    return it->second.padded_dfa();
  }

  const Automaton& powers_relation() {
    if (!powers_) {
      AutomatonBuilder b(k_, 1, 2);
      b.add_initial(0);
      b.add_transition(0, 0, 0);
      b.add_transition(0, 1, 1);
      b.add_transition(1, 0, 1);
      b.set_final(1);
      powers_ = minimize(std::move(b).build());
    }
    return *powers_;
  }

  /// sum a_i x_i + c = 0, built least significant digit first over
  /// (position in |c|, carry) and reversed.
  Relation linear_eq(const Linear& l) const {
    std::vector<std::string> vars;
    std::vector<std::int64_t> a;
    BigInt total = 0;
    for (const auto& [v, c] : l.coeff) {
      vars.push_back(v);
      total += abs(c);
    }
    if (vars.empty()) return constant(l.constant == 0);
    const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max() / 4) / k_;
    if (total + abs(l.constant) > limit) throw LimitExceeded("linear coefficients too large to compile");
    for (const auto& [v, c] : l.coeff) a.push_back(static_cast<std::int64_t>(c));
    const int sign = l.constant < 0 ? -1 : 1;
    Word cdig = canonical_expansion(abs(l.constant), k_);
    std::reverse(cdig.begin(), cdig.end());  // least significant first
    const std::size_t len = cdig.size();
    // high[j] = sign * floor(|c| / k^j), the constant still to be matched.
    std::vector<std::int64_t> high(len + 1, 0);
    {
      BigInt h = abs(l.constant);
      for (std::size_t j = 0; j <= len; ++j) {
        high[j] = sign * static_cast<std::int64_t>(h);
        h /= k_;
      }
    }
    const std::size_t tracks = vars.size();
    const std::size_t big = alphabet_size_for(k_, static_cast<int>(tracks));
    std::vector<std::int64_t> digit_sum(big);
    for (Symbol s = 0; s < big; ++s) {
      const auto d = digits_of(s, k_, tracks);
      std::int64_t sum = 0;
      for (std::size_t j = 0; j < tracks; ++j) sum += a[j] * d[j];
      digit_sum[s] = sum;
    }
    struct Key {
      std::size_t j;
      std::int64_t carry;
      bool operator==(const Key& o) const { return j == o.j && carry == o.carry; }
    };
    struct KeyHash {
      std::size_t operator()(const Key& x) const noexcept {
        return std::hash<std::int64_t>()(x.carry) * 31 + x.j;
      }
    };
    std::unordered_map<Key, State, KeyHash> index;
    std::vector<Key> keys;
    std::vector<std::vector<std::pair<Symbol, State>>> edges;
    auto intern = [&](Key key) {
      auto [it, inserted] = index.emplace(key, static_cast<State>(keys.size()));
      if (inserted) {
        if (keys.size() >= cap_) throw LimitExceeded("linear relation exceeds the state cap");
        keys.push_back(key);
        edges.emplace_back();
      }
      return it->second;
    };
    intern({0, 0});
    for (std::size_t cur = 0; cur < keys.size(); ++cur) {
      const Key key = keys[cur];
      const std::int64_t cj = key.j < len ? sign * static_cast<std::int64_t>(cdig[key.j]) : 0;
      for (Symbol s = 0; s < big; ++s) {
        const std::int64_t t = digit_sum[s] + key.carry + cj;
        if (t % k_ != 0) continue;
        const State nxt = intern({std::min(key.j + 1, len), t / k_});
        edges[cur].emplace_back(s, nxt);
      }
    }
    // Reverse: the LSD start state becomes the MSD accepting state.
    AutomatonBuilder b(k_, static_cast<int>(tracks), keys.size());
    for (State q = 0; q < keys.size(); ++q) {
      for (auto [s, t] : edges[q]) b.add_transition(t, s, q);
      const Key key = keys[q];
      if (key.carry + high[key.j] == 0) b.add_initial(q);
    }
    b.set_final(0);
    return Relation{k_, vars, minimize(std::move(b).build(), cap_)};
  }

  const SetEnv& env_;
  int k_;
  std::size_t cap_;
  std::optional<Automaton> powers_;
};

int resolve_radix(const Formula& f, const SetEnv& env, const CompileOptions& opts) {
  int k = opts.radix;
  for (const auto& name : set_names(f)) {
    auto it = env.find(name);
    if (it == env.end()) throw InvalidArgument("unknown set '" + name + "'");
    if (k == 0) k = it->second.radix();
    if (it->second.radix() != k)
      throw InvalidArgument("mixed radices: set '" + name + "' has radix " +
                            std::to_string(it->second.radix()) + ", expected " + std::to_string(k));
  }
  if (k == 0) throw InvalidArgument("no radix given and the formula names no set");
  if (k < 2) throw InvalidArgument("radix must be at least 2");
  return k;
}

}  // namespace

bool Relation::contains(const std::vector<BigInt>& values) const {
  if (values.size() != vars.size())
    throw InvalidArgument("relation has arity " + std::to_string(vars.size()) + ", got " +
                          std::to_string(values.size()) + " values");
  std::size_t len = 0;
  for (const auto& v : values) {
    if (v < 0) return false;
    len = std::max(len, num_digits(v, radix));
  }
  std::vector<Word> tracks;
  for (const auto& v : values) tracks.push_back(padded_expansion(v, radix, len));
  Word w(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    Symbol s = 0;
    for (std::size_t j = tracks.size(); j-- > 0;) s = s * static_cast<Symbol>(radix) + tracks[j][i];
    w[i] = s;
  }
  return accepts(automaton, w);
}

Relation relation_addition(int k) {
  return compile(eq(add(var("x"), var("y")), var("z")), {}, CompileOptions{k});
}

Relation compile(const Formula& f, const SetEnv& env, const CompileOptions& opts) {
  const int k = resolve_radix(f, env, opts);
  Compiler c(env, k, opts.state_cap);
  std::set<std::string> bound;
  Relation r = c.compile(f, bound);
  const auto free = free_variables(f);
  std::vector<std::string> vars(free.begin(), free.end());
  return c.cylindrify(r, vars);
}

Decision decide_sentence(const Formula& f, const SetEnv& env, const CompileOptions& opts) {
  if (auto free = free_variables(f); !free.empty())
    throw InvalidArgument("not a sentence: free variable '" + *free.begin() + "'");
  // Peel the leading ∃ block; its variables are the witness tracks.
  Formula body = f;
  while (body->kind == FormulaNode::Kind::Exists) body = body->args[0];
  Decision d;
  const int k = resolve_radix(f, env, opts);
  if (body == f) {
    const Relation r = compile(f, env, opts);
    d.value = accepts(r.automaton, Word{});
    return d;
  }
  CompileOptions o = opts;
  o.radix = k;
  Relation r = compile(body, env, o);
  const auto word = shortest_accepted(r.automaton);
  d.value = word.has_value();
  if (!word) return d;
  std::vector<BigInt> values(r.vars.size(), 0);
  for (Symbol s : *word) {
    const auto digits = digits_of(s, k, r.vars.size());
    for (std::size_t j = 0; j < values.size(); ++j) values[j] = values[j] * k + digits[j];
  }
  for (std::size_t j = 0; j < values.size(); ++j) d.witness[r.vars[j]] = values[j];
  // Leading variables that do not occur in the body are free to be 0.
  for (Formula g = f; g->kind == FormulaNode::Kind::Exists; g = g->args[0])
    d.witness.emplace(g->name, 0);
  return d;
}

Periodicity is_eventually_periodic(const BaseKSet& x, std::size_t state_cap) {
  const SetEnv env{{"X", x}};
  const Formula f = exists(
      "p", exists("N", land({gt(var("p"), lit(0)),
                            forall("n", implies(ge(var("n"), var("N")),
                                                iff(in_set(var("n"), "X"),
                                                    in_set(add(var("n"), var("p")), "X"))))})));
  const Decision d = decide_sentence(f, env, CompileOptions{x.radix(), state_cap});
  Periodicity out;
  out.periodic = d.value;
  if (d.value) {
    out.period = d.witness.at("p");
    out.threshold = d.witness.at("N");
  }
  return out;
}

}  // namespace autodich::logic
