// Test-only random AST and structure generators. Deterministic under a fixed
// seed; GAMEMU_SEED overrides.
#pragma once

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "gamemu/ast.hpp"
#include "gamemu/vars.hpp"

namespace gamemu::testgen {

inline uint64_t seed_from_env(uint64_t fallback = 20260810) {
  if (const char* s = std::getenv("GAMEMU_SEED")) return std::strtoull(s, nullptr, 10);
  return fallback;
}

// Default test signature: constant c, unary f, unary relation R, actions
// a:(1,1) and b:(1,0).
inline GameSignature test_signature() {
  GameSignature sig;
  sig.add_function("c", 0);
  sig.add_function("f", 1);
  sig.add_relation("R", 1);
  sig.add_action("a", {1, 1});
  sig.add_action("b", {1, 0});
  return sig;
}

// Reduced signature for enumerated-structure sweeps: one unary relation and
// one (1,1)-ary action symbol (plus the builtin quantifier).
inline GameSignature small_signature() {
  GameSignature sig;
  sig.add_relation("R", 1);
  sig.add_action("a", {1, 1});
  return sig;
}

struct Gen {
  std::mt19937_64 rng;
  GameSignature sig;
  bool small = false;
  std::vector<std::string> vars{"x", "y"};
  std::vector<std::string> fixvars{"X", "Y"};

  explicit Gen(uint64_t seed = seed_from_env(), bool smallSig = false)
      : rng(seed), sig(smallSig ? small_signature() : test_signature()), small(smallSig) {}

  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }
  bool coin() { return pick(2) == 0; }
  const std::string& var() { return vars[pick(vars.size())]; }

  TermPtr term(int depth) {
    if (small) return Term::var(var());
    if (depth <= 0 || pick(3) == 0) {
      if (pick(3) == 0) return Term::app("c", {});
      return Term::var(var());
    }
    return Term::app("f", {term(depth - 1)});
  }

  FormulaPtr atom() {
    switch (pick(4)) {
      case 0:
        return Formula::rel("R", {term(1)});
      case 1:
        return Formula::eq(term(1), term(1));
      case 2:
        return Formula::truth();
      default:
        return Formula::falsity();
    }
  }

  GamePtr atomic_game() {
    switch (pick(4)) {
      case 0:
        return Game::atomic("a", {var()}, {term(1)});
      case 1:
        if (!small) return Game::atomic("b", {var()}, {});
        return Game::atomic("a", {var()}, {term(1)});
      case 2:
        return Game::star_assign(var());
      default:
        return Game::assign({var()}, {term(1)});
    }
  }

  GamePtr game(int depth) {
    if (depth <= 0) return atomic_game();
    switch (pick(7)) {
      case 0:
        return atomic_game();
      case 1:
        return Game::test_of(gl_formula(depth - 1));
      case 2:
        return Game::choice(game(depth - 1), game(depth - 1));
      case 3:
        return Game::seq(game(depth - 1), game(depth - 1));
      case 4:
        return Game::star(game(depth - 1));
      default:
        return Game::dual(game(depth - 1));
    }
  }

  FormulaPtr gl_formula(int depth) {
    if (depth <= 0) return atom();
    switch (pick(5)) {
      case 0:
        return atom();
      case 1:
        return Formula::negation(gl_formula(depth - 1));
      case 2:
        return Formula::conj(gl_formula(depth - 1), gl_formula(depth - 1));
      case 3:
        return Formula::disj(gl_formula(depth - 1), gl_formula(depth - 1));
      default:
        return Formula::diamond(game(depth - 1), gl_formula(depth - 1));
    }
  }

  GamePtr mu_modality_game() { return atomic_game(); }

  // Positive-by-construction mu formula; `active` fixpoint variables may only
  // occur positively, `banned` not at all.
  FormulaPtr mu_formula(int depth, std::vector<std::string> active = {},
                        std::vector<std::string> banned = {}) {
    if (depth <= 0) {
      if (!active.empty() && pick(3) == 0) return Formula::fixvar(active[pick(active.size())]);
      return atom();
    }
    switch (pick(7)) {
      case 0:
        if (!active.empty()) return Formula::fixvar(active[pick(active.size())]);
        return atom();
      case 1: {
        // Everything currently positivity-constrained is banned under a
        // negation.
        std::vector<std::string> b = banned;
        b.insert(b.end(), active.begin(), active.end());
        return Formula::negation(mu_formula(depth - 1, {}, b));
      }
      case 2:
        return Formula::conj(mu_formula(depth - 1, active, banned),
                             mu_formula(depth - 1, active, banned));
      case 3:
        return Formula::disj(mu_formula(depth - 1, active, banned),
                             mu_formula(depth - 1, active, banned));
      case 4:
      case 5:
        return Formula::diamond(mu_modality_game(), mu_formula(depth - 1, active, banned));
      default: {
        std::string X = fixvars[pick(fixvars.size())];
        std::vector<std::string> a2 = active, b2 = banned;
        std::erase(a2, X);
        std::erase(b2, X);
        a2.push_back(X);
        return Formula::mu(X, mu_formula(depth - 1, a2, b2));
      }
    }
  }

  // Arbitrary-polarity mu tree (may violate positivity); for checker-vs-walk
  // comparisons.
  FormulaPtr mu_formula_unchecked(int depth) {
    if (depth <= 0) return coin() ? atom() : Formula::fixvar(fixvars[pick(fixvars.size())]);
    switch (pick(6)) {
      case 0:
        return atom();
      case 1:
        return Formula::fixvar(fixvars[pick(fixvars.size())]);
      case 2:
        return Formula::negation(mu_formula_unchecked(depth - 1));
      case 3:
        return Formula::conj(mu_formula_unchecked(depth - 1), mu_formula_unchecked(depth - 1));
      case 4:
        return Formula::diamond(mu_modality_game(), mu_formula_unchecked(depth - 1));
      default:
        return Formula::mu(fixvars[pick(fixvars.size())], mu_formula_unchecked(depth - 1));
    }
  }
};

}  // namespace gamemu::testgen

#include "gamemu/structure.hpp"

namespace gamemu::testgen {

// Uniformly random tables for the signature.
inline FiniteNeighbourhoodStructure random_structure(Gen& g, const GameSignature& sig,
                                                     int domain, int maxGenerators = 2) {
  FiniteNeighbourhoodStructure s;
  s.sig = sig;
  s.domain = domain;
  for (const auto& [name, arity] : sig.functions()) {
    uint64_t size = 1;
    for (int i = 0; i < arity; ++i) size *= domain;
    std::vector<int> table(size);
    for (auto& v : table) v = static_cast<int>(g.pick(domain));
    s.functions[name] = std::move(table);
  }
  auto tuples = [&](int len) {
    std::vector<Tuple> out;
    Tuple cur(len, 0);
    for (;;) {
      out.push_back(cur);
      int i = len - 1;
      while (i >= 0 && cur[i] == domain - 1) cur[i--] = 0;
      if (i < 0) break;
      ++cur[i];
    }
    if (len == 0) out.resize(1);
    return out;
  };
  for (const auto& [name, arity] : sig.relations()) {
    std::set<Tuple> rel;
    for (const auto& t : tuples(arity))
      if (g.coin()) rel.insert(t);
    s.relations[name] = std::move(rel);
  }
  for (const auto& [name, ar] : sig.actions()) {
    std::map<Tuple, GeneratorList> table;
    for (const auto& p : tuples(ar.reads)) {
      size_t count = g.pick(maxGenerators + 1);
      GeneratorList fam;
      for (size_t i = 0; i < count; ++i) {
        Generator gen;
        for (const auto& t : tuples(ar.affects))
          if (g.coin()) gen.insert(t);
        fam.push_back(std::move(gen));
      }
      // Deduplicate; absent tuples mean the empty family.
      std::sort(fam.begin(), fam.end());
      fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
      if (!fam.empty()) table[p] = std::move(fam);
    }
    if (!table.empty()) s.actions[name] = std::move(table);
  }
  return s;
}

// Random subset of the state space over the given support.
inline StateSet random_state_set(Gen& g, const std::vector<std::string>& support, int domain) {
  StateSet out(support, domain);
  for (uint64_t i = 0; i < out.size(); ++i)
    if (g.coin()) out.set(i);
  return out;
}

}  // namespace gamemu::testgen
