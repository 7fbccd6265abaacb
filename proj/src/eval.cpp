#include "gamemu/eval.hpp"

#include <algorithm>

namespace gamemu {

namespace {
VarSet individual(const VarSet& vs) {
  VarSet out;
  for (const auto& v : vs)
    if (!is_fixpoint_name(v)) out.insert(v);
  return out;
}
}  // namespace

// All variable names occurring anywhere (free or bound, including binders
// inside test formulas, which the bound-variable tables deliberately ignore):
// a finite support that the coincidence lemmas justify.
std::vector<std::string> compute_support(const FormulaPtr& f, const VarSet& extra) {
  VarSet vs;
  collect_names(f, vs);
  vs = individual(vs);
  vs.insert(extra.begin(), extra.end());
  return {vs.begin(), vs.end()};
}

std::vector<std::string> compute_support(const GamePtr& g, const VarSet& extra) {
  VarSet vs;
  collect_names(g, vs);
  vs = individual(vs);
  vs.insert(extra.begin(), extra.end());
  return {vs.begin(), vs.end()};
}

int eval_term(const FiniteNeighbourhoodStructure& N, const StateSet& shape, uint64_t state,
              const TermPtr& t) {
  if (t->kind == Term::Kind::Var) return shape.digit(state, shape.var_pos(t->name));
  Tuple args(t->args.size());
  for (size_t i = 0; i < t->args.size(); ++i) args[i] = eval_term(N, shape, state, t->args[i]);
  return N.apply_function(t->name, args);
}

namespace {

class Evaluator {
 public:
  Evaluator(const FiniteNeighbourhoodStructure& N, std::vector<std::string> support)
      : N_(N), shape_(std::move(support), N.domain) {}

  const StateSet& shape() const { return shape_; }

  StateSet formula(const FormulaPtr& f, const FixpointInterpretation& I) {
    switch (f->kind) {
      case Formula::Kind::True:
        return StateSet(shape_.support(), N_.domain, true);
      case Formula::Kind::False:
        return StateSet(shape_.support(), N_.domain, false);
      case Formula::Kind::Equal: {
        StateSet out(shape_.support(), N_.domain);
        for (uint64_t s = 0; s < shape_.size(); ++s)
          if (eval_term(N_, shape_, s, f->terms[0]) == eval_term(N_, shape_, s, f->terms[1]))
            out.set(s);
        return out;
      }
      case Formula::Kind::Rel: {
        StateSet out(shape_.support(), N_.domain);
        Tuple args(f->terms.size());
        for (uint64_t s = 0; s < shape_.size(); ++s) {
          for (size_t i = 0; i < f->terms.size(); ++i)
            args[i] = eval_term(N_, shape_, s, f->terms[i]);
          if (N_.in_relation(f->name, args)) out.set(s);
        }
        return out;
      }
      case Formula::Kind::Not:
        return formula(f->child, I).complement();
      case Formula::Kind::And: {
        StateSet out = formula(f->child, I);
        out &= formula(f->child2, I);
        return out;
      }
      case Formula::Kind::Diamond:
        return game(f->game, formula(f->child, I), I);
      case Formula::Kind::FixVar: {
        auto it = I.find(f->name);
        if (it == I.end()) throw SemanticsError("unbound fixpoint variable " + f->name);
        if (it->second.support() != shape_.support())
          throw SemanticsError("fixpoint interpretation support mismatch for " + f->name);
        return it->second;
      }
      case Formula::Kind::Mu: {
        auto [pos, neg] = fixvar_polarity(f->child, f->name);
        (void)pos;
        if (neg)
          throw SemanticsError("fixpoint variable " + f->name + " occurs negatively");
        StateSet z(shape_.support(), N_.domain);
        for (uint64_t round = 0; round <= shape_.size() + 1; ++round) {
          FixpointInterpretation I2 = I;
          I2.insert_or_assign(f->name, z);
          StateSet next = formula(f->child, I2);
          if (next == z) return z;
          z = std::move(next);
        }
        throw SemanticsError("fixpoint iteration failed to stabilize");
      }
    }
    throw SemanticsError("unreachable formula kind");
  }

  StateSet game(const GamePtr& g, const StateSet& S, const FixpointInterpretation& I) {
    switch (g->kind) {
      case Game::Kind::Atomic: {
        StateSet out(shape_.support(), N_.domain);
        std::vector<size_t> pos(g->bound.size());
        for (size_t i = 0; i < g->bound.size(); ++i) pos[i] = shape_.var_pos(g->bound[i]);
        if (g->symbol == kStarSymbol) {
          for (uint64_t s = 0; s < shape_.size(); ++s)
            for (int u = 0; u < N_.domain; ++u)
              if (S.test(shape_.with_digit(s, pos[0], u))) {
                out.set(s);
                break;
              }
          return out;
        }
        Tuple params(g->params.size());
        for (uint64_t s = 0; s < shape_.size(); ++s) {
          for (size_t i = 0; i < g->params.size(); ++i)
            params[i] = eval_term(N_, shape_, s, g->params[i]);
          for (const Generator& gen : N_.action_family(g->symbol, params)) {
            bool all_in = true;
            for (const Tuple& u : gen) {
              uint64_t s2 = s;
              for (size_t i = 0; i < pos.size(); ++i) s2 = shape_.with_digit(s2, pos[i], u[i]);
              if (!S.test(s2)) {
                all_in = false;
                break;
              }
            }
            if (all_in) {
              out.set(s);
              break;
            }
          }
        }
        return out;
      }
      case Game::Kind::Assign: {
        // Native fast path: omega[xbar := [[thetabar]]omega] in S.
        StateSet out(shape_.support(), N_.domain);
        std::vector<size_t> pos(g->bound.size());
        for (size_t i = 0; i < g->bound.size(); ++i) pos[i] = shape_.var_pos(g->bound[i]);
        for (uint64_t s = 0; s < shape_.size(); ++s) {
          uint64_t s2 = s;
          for (size_t i = 0; i < pos.size(); ++i)
            s2 = shape_.with_digit(s2, pos[i], eval_term(N_, shape_, s, g->params[i]));
          if (S.test(s2)) out.set(s);
        }
        return out;
      }
      case Game::Kind::Test: {
        StateSet out = formula(g->test, I);
        out &= S;
        return out;
      }
      case Game::Kind::Choice: {
        StateSet out = game(g->left, S, I);
        out |= game(g->right, S, I);
        return out;
      }
      case Game::Kind::Seq:
        return game(g->left, game(g->right, S, I), I);
      case Game::Kind::Star: {
        StateSet z(shape_.support(), N_.domain);
        for (uint64_t round = 0; round <= shape_.size() + 1; ++round) {
          StateSet next = game(g->left, z, I);
          next |= S;
          if (next == z) return z;
          z = std::move(next);
        }
        throw SemanticsError("loop fixpoint failed to stabilize");
      }
      case Game::Kind::Dual:
        return game(g->left, S.complement(), I).complement();
    }
    throw SemanticsError("unreachable game kind");
  }

 private:
  const FiniteNeighbourhoodStructure& N_;
  StateSet shape_;
};

void check_support_covers(const VarSet& needed, const std::vector<std::string>& support) {
  for (const auto& v : needed) {
    if (is_fixpoint_name(v)) continue;
    if (!std::binary_search(support.begin(), support.end(), v) &&
        std::find(support.begin(), support.end(), v) == support.end())
      throw SemanticsError("variable outside evaluation support: " + v);
  }
}

}  // namespace

StateSet eval_formula(const FiniteNeighbourhoodStructure& N, const FormulaPtr& f,
                      const std::vector<std::string>& support,
                      const FixpointInterpretation& I) {
  VarSet needed;
  collect_names(f, needed);
  check_support_covers(needed, support);
  Evaluator ev(N, support);
  return ev.formula(f, I);
}

StateSet eval_game(const FiniteNeighbourhoodStructure& N, const GamePtr& g, const StateSet& S) {
  VarSet needed;
  collect_names(g, needed);
  check_support_covers(needed, S.support());
  Evaluator ev(N, S.support());
  return ev.game(g, S, {});
}

StateSet lfp(const std::function<StateSet(const StateSet&)>& step, const StateSet& bottom) {
  StateSet z = bottom;
  for (uint64_t round = 0; round <= bottom.size() + 1; ++round) {
    StateSet next = step(z);
    if (next == z) return z;
    z = std::move(next);
  }
  throw SemanticsError("lfp iteration failed to stabilize");
}

bool semantically_equal(const FiniteNeighbourhoodStructure& N, const FormulaPtr& a,
                        const FormulaPtr& b, const VarSet& extra) {
  VarSet all = extra;
  for (const auto& v : compute_support(a)) all.insert(v);
  for (const auto& v : compute_support(b)) all.insert(v);
  std::vector<std::string> support(all.begin(), all.end());
  return eval_formula(N, a, support) == eval_formula(N, b, support);
}

bool valid_on(const FiniteNeighbourhoodStructure& N, const FormulaPtr& f, const VarSet& extra) {
  std::vector<std::string> support = compute_support(f, extra);
  return eval_formula(N, f, support).full();
}

}  // namespace gamemu
