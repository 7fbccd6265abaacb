#include "gamemu/subst.hpp"

#include <cassert>

namespace gamemu {

TermPtr substitute_term(const TermPtr& t, const std::string& x, const TermPtr& repl) {
  if (t->kind == Term::Kind::Var) return t->name == x ? repl : t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(substitute_term(a, x, repl));
  return Term::app(t->name, std::move(args));
}

TermPtr substitute_term_simul(const TermPtr& t, const std::map<std::string, TermPtr>& repl) {
  if (t->kind == Term::Kind::Var) {
    auto it = repl.find(t->name);
    return it == repl.end() ? t : it->second;
  }
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(substitute_term_simul(a, repl));
  return Term::app(t->name, std::move(args));
}

namespace {

bool contains_fixpoint(const FormulaPtr& f) {
  if (!f) return false;
  if (f->kind == Formula::Kind::FixVar || f->kind == Formula::Kind::Mu) return true;
  if (f->game) {
    const Game* g = f->game.get();
    // Only tests can hide formulas inside games.
    std::vector<const Game*> stack{g};
    while (!stack.empty()) {
      const Game* cur = stack.back();
      stack.pop_back();
      if (cur->test && contains_fixpoint(cur->test)) return true;
      if (cur->left) stack.push_back(cur->left.get());
      if (cur->right) stack.push_back(cur->right.get());
    }
  }
  return contains_fixpoint(f->child) || contains_fixpoint(f->child2);
}

std::vector<TermPtr> subst_params(const std::vector<TermPtr>& ps, const std::string& x,
                                  const TermPtr& repl) {
  std::vector<TermPtr> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(substitute_term(p, x, repl));
  return out;
}


bool intersects(const VarSet& a, const VarSet& b) {
  for (const auto& x : a)
    if (b.count(x)) return true;
  return false;
}

GamePtr subst_game(const GamePtr& g, const std::string& x, const TermPtr& repl,
                   const VarSet& fv_repl);

// muMode selects the nested-diamond insertion form for the otherwise case,
// keeping FOLmu trees inside the mu fragment; GL trees get the sequence form.
FormulaPtr subst_formula(const FormulaPtr& f, const std::string& x, const TermPtr& repl,
                         const VarSet& fv_repl, bool muMode) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Equal:
      return Formula::eq(substitute_term(f->terms[0], x, repl),
                         substitute_term(f->terms[1], x, repl));
    case Formula::Kind::Rel:
      return Formula::rel(f->name, subst_params(f->terms, x, repl));
    case Formula::Kind::Not:
      return Formula::negation(subst_formula(f->child, x, repl, fv_repl, muMode));
    case Formula::Kind::And:
      return Formula::conj(subst_formula(f->child, x, repl, fv_repl, muMode),
                           subst_formula(f->child2, x, repl, fv_repl, muMode));
    case Formula::Kind::FixVar:
      return Formula::diamond(Game::assign({x}, {repl}), f);
    case Formula::Kind::Mu:
      return Formula::diamond(Game::assign({x}, {repl}), f);
    case Formula::Kind::Diamond: {
      const GamePtr& g = f->game;
      VarSet mbv = must_bound_vars(g);
      if (mbv.count(x))
        return Formula::diamond(subst_game(g, x, repl, fv_repl), f->child);
      VarSet bv = bound_vars(g);
      if (!bv.count(x) && !intersects(fv_repl, bv))
        return Formula::diamond(subst_game(g, x, repl, fv_repl),
                                subst_formula(f->child, x, repl, fv_repl, muMode));
      GamePtr load = Game::assign({x}, {repl});
      if (muMode) return Formula::diamond(load, f);
      return Formula::diamond(Game::seq(load, g), f->child);
    }
  }
  return f;
}

GamePtr subst_game(const GamePtr& g, const std::string& x, const TermPtr& repl,
                   const VarSet& fv_repl) {
  switch (g->kind) {
    case Game::Kind::Atomic:
      return Game::atomic(g->symbol, g->bound, subst_params(g->params, x, repl));
    case Game::Kind::Assign:
      return Game::assign(g->bound, subst_params(g->params, x, repl));
    case Game::Kind::Test:
      return Game::test_of(subst_formula(g->test, x, repl, fv_repl, false));
    case Game::Kind::Choice:
      return Game::choice(subst_game(g->left, x, repl, fv_repl),
                          subst_game(g->right, x, repl, fv_repl));
    case Game::Kind::Dual:
      return Game::dual(subst_game(g->left, x, repl, fv_repl));
    case Game::Kind::Seq: {
      VarSet mbv = must_bound_vars(g->left);
      if (mbv.count(x))
        return Game::seq(subst_game(g->left, x, repl, fv_repl), g->right);
      VarSet bv = bound_vars(g->left);
      if (!bv.count(x) && !intersects(fv_repl, bv))
        return Game::seq(subst_game(g->left, x, repl, fv_repl),
                         subst_game(g->right, x, repl, fv_repl));
      return Game::seq(Game::assign({x}, {repl}), g);
    }
    case Game::Kind::Star: {
      VarSet bv = bound_vars(g->left);
      if (!bv.count(x) && !intersects(fv_repl, bv))
        return Game::star(subst_game(g->left, x, repl, fv_repl));
      return Game::seq(Game::assign({x}, {repl}), g);
    }
  }
  return g;
}

}  // namespace

FormulaPtr substitute_var(const FormulaPtr& f, const std::string& x, const TermPtr& repl) {
  if (repl->kind == Term::Kind::Var && repl->name == x) return f;
  return subst_formula(f, x, repl, free_vars(repl), contains_fixpoint(f));
}

GamePtr substitute_var(const GamePtr& g, const std::string& x, const TermPtr& repl) {
  if (repl->kind == Term::Kind::Var && repl->name == x) return g;
  return subst_game(g, x, repl, free_vars(repl));
}

// ---------------------------------------------------------------------------

namespace {
GamePtr fix_game(const GamePtr& g, const std::string& X, const FormulaPtr& repl);

FormulaPtr fix_formula(const FormulaPtr& f, const std::string& X, const FormulaPtr& repl) {
  switch (f->kind) {
    case Formula::Kind::FixVar:
      return f->name == X ? repl : f;
    case Formula::Kind::Mu:
      if (f->name == X) return f;
      return Formula::mu(f->name, fix_formula(f->child, X, repl));
    case Formula::Kind::Not:
      return Formula::negation(fix_formula(f->child, X, repl));
    case Formula::Kind::And:
      return Formula::conj(fix_formula(f->child, X, repl), fix_formula(f->child2, X, repl));
    case Formula::Kind::Diamond:
      return Formula::diamond(fix_game(f->game, X, repl), fix_formula(f->child, X, repl));
    default:
      return f;
  }
}

GamePtr fix_game(const GamePtr& g, const std::string& X, const FormulaPtr& repl) {
  switch (g->kind) {
    case Game::Kind::Atomic:
    case Game::Kind::Assign:
      return g;
    case Game::Kind::Test:
      return Game::test_of(fix_formula(g->test, X, repl));
    case Game::Kind::Choice:
      return Game::choice(fix_game(g->left, X, repl), fix_game(g->right, X, repl));
    case Game::Kind::Seq:
      return Game::seq(fix_game(g->left, X, repl), fix_game(g->right, X, repl));
    case Game::Kind::Star:
      return Game::star(fix_game(g->left, X, repl));
    case Game::Kind::Dual:
      return Game::dual(fix_game(g->left, X, repl));
  }
  return g;
}
}  // namespace

FormulaPtr substitute_fixvar(const FormulaPtr& f, const std::string& X, const FormulaPtr& repl) {
  return fix_formula(f, X, repl);
}

// ---------------------------------------------------------------------------
// Assignment expansion (the paper's abbreviation contract).

namespace {

// Scalar game encoding: x:=* ; ?(x=theta) when x not free in theta, otherwise
// via a fresh intermediate y.
GamePtr expand_scalar_assign_game(const std::string& x, const TermPtr& theta,
                                  std::set<std::string>& used) {
  VarSet fvt = free_vars(theta);
  if (!fvt.count(x)) {
    return Game::seq(Game::star_assign(x),
                     Game::test_of(Formula::eq(Term::var(x), theta)));
  }
  std::string y = fresh_name(x, used);
  used.insert(y);
  return Game::seq(
      Game::seq(Game::star_assign(y), Game::test_of(Formula::eq(Term::var(y), theta))),
      Game::seq(Game::star_assign(x),
                Game::test_of(Formula::eq(Term::var(x), Term::var(y)))));
}

GamePtr expand_assign_game(const GamePtr& g, std::set<std::string>& used) {
  if (g->bound.size() == 1) return expand_scalar_assign_game(g->bound[0], g->params[0], used);
  // Vectorial: y_i := theta_i sequentially (y fresh), then x_i := y_i.
  std::vector<std::string> ys;
  GamePtr chain;
  for (size_t i = 0; i < g->bound.size(); ++i) {
    std::string y = fresh_name(g->bound[i], used);
    used.insert(y);
    ys.push_back(y);
    GamePtr step = expand_scalar_assign_game(y, g->params[i], used);
    chain = chain ? Game::seq(chain, step) : step;
  }
  for (size_t i = 0; i < g->bound.size(); ++i) {
    GamePtr step = expand_scalar_assign_game(g->bound[i], Term::var(ys[i]), used);
    chain = Game::seq(chain, step);
  }
  return chain;
}

// Mu-modality encoding: <x:=*>(x=theta & phi), with the fresh-intermediate
// nesting when x is free in theta.
FormulaPtr expand_scalar_assign_diamond(const std::string& x, const TermPtr& theta,
                                        FormulaPtr body, std::set<std::string>& used) {
  VarSet fvt = free_vars(theta);
  if (!fvt.count(x)) {
    return Formula::diamond(Game::star_assign(x),
                            Formula::conj(Formula::eq(Term::var(x), theta), std::move(body)));
  }
  std::string y = fresh_name(x, used);
  used.insert(y);
  FormulaPtr inner = Formula::diamond(
      Game::star_assign(x),
      Formula::conj(Formula::eq(Term::var(x), Term::var(y)), std::move(body)));
  return Formula::diamond(Game::star_assign(y),
                          Formula::conj(Formula::eq(Term::var(y), theta), inner));
}

FormulaPtr expand_assign_diamond(const GamePtr& g, FormulaPtr body,
                                 std::set<std::string>& used) {
  if (g->bound.size() == 1)
    return expand_scalar_assign_diamond(g->bound[0], g->params[0], std::move(body), used);
  std::vector<std::string> ys;
  for (size_t i = 0; i < g->bound.size(); ++i) {
    std::string y = fresh_name(g->bound[i], used);
    used.insert(y);
    ys.push_back(y);
  }
  FormulaPtr out = std::move(body);
  for (size_t i = g->bound.size(); i-- > 0;)
    out = expand_scalar_assign_diamond(g->bound[i], Term::var(ys[i]), std::move(out), used);
  for (size_t i = g->bound.size(); i-- > 0;)
    out = expand_scalar_assign_diamond(ys[i], g->params[i], std::move(out), used);
  return out;
}

FormulaPtr expand_formula(const FormulaPtr& f, std::set<std::string>& used, bool muMode);

GamePtr expand_game(const GamePtr& g, std::set<std::string>& used) {
  switch (g->kind) {
    case Game::Kind::Atomic:
      return g;
    case Game::Kind::Assign:
      return expand_assign_game(g, used);
    case Game::Kind::Test:
      return Game::test_of(expand_formula(g->test, used, false));
    case Game::Kind::Choice:
      return Game::choice(expand_game(g->left, used), expand_game(g->right, used));
    case Game::Kind::Seq:
      return Game::seq(expand_game(g->left, used), expand_game(g->right, used));
    case Game::Kind::Star:
      return Game::star(expand_game(g->left, used));
    case Game::Kind::Dual:
      return Game::dual(expand_game(g->left, used));
  }
  return g;
}

FormulaPtr expand_formula(const FormulaPtr& f, std::set<std::string>& used, bool muMode) {
  switch (f->kind) {
    case Formula::Kind::Not:
      return Formula::negation(expand_formula(f->child, used, muMode));
    case Formula::Kind::And:
      return Formula::conj(expand_formula(f->child, used, muMode),
                           expand_formula(f->child2, used, muMode));
    case Formula::Kind::Mu:
      return Formula::mu(f->name, expand_formula(f->child, used, muMode));
    case Formula::Kind::Diamond: {
      FormulaPtr body = expand_formula(f->child, used, muMode);
      if (f->game->kind == Game::Kind::Assign) {
        if (muMode) return expand_assign_diamond(f->game, std::move(body), used);
        return Formula::diamond(expand_assign_game(f->game, used), std::move(body));
      }
      return Formula::diamond(expand_game(f->game, used), std::move(body));
    }
    default:
      return f;
  }
}

}  // namespace

FormulaPtr expand_assignments(const FormulaPtr& f) {
  std::set<std::string> used;
  collect_names(f, used);
  return expand_formula(f, used, contains_fixpoint(f) || is_mu_formula(f));
}

GamePtr expand_assignments(const GamePtr& g) {
  std::set<std::string> used;
  collect_names(g, used);
  return expand_game(g, used);
}

// ---------------------------------------------------------------------------
// Bound renaming.

namespace {

struct Cont {
  std::vector<GamePtr> suffix;  // remaining games of the enclosing sequence
  FormulaPtr fml;               // the modality body (may be null at game level)
};

void subst_cont(Cont& c, const std::string& x, const TermPtr& y) {
  for (auto& g : c.suffix) g = substitute_var(g, x, y);
  if (c.fml) c.fml = substitute_var(c.fml, x, y);
}

// Raw name swap: renames every occurrence of `from`, bound or free, in the
// subtree. Only sound combined with a preceding load from:=... (see below).
TermPtr swap_term(const TermPtr& t, const std::string& from, const std::string& to) {
  if (t->kind == Term::Kind::Var) return t->name == from ? Term::var(to) : t;
  std::vector<TermPtr> args;
  for (const auto& a : t->args) args.push_back(swap_term(a, from, to));
  return Term::app(t->name, std::move(args));
}

FormulaPtr swap_formula(const FormulaPtr& f, const std::string& from, const std::string& to);

GamePtr swap_game(const GamePtr& g, const std::string& from, const std::string& to) {
  auto swap_list = [&](std::vector<std::string> xs) {
    for (auto& x : xs)
      if (x == from) x = to;
    return xs;
  };
  switch (g->kind) {
    case Game::Kind::Atomic: {
      std::vector<TermPtr> ps;
      for (const auto& p : g->params) ps.push_back(swap_term(p, from, to));
      return Game::atomic(g->symbol, swap_list(g->bound), std::move(ps));
    }
    case Game::Kind::Assign: {
      std::vector<TermPtr> ps;
      for (const auto& p : g->params) ps.push_back(swap_term(p, from, to));
      return Game::assign(swap_list(g->bound), std::move(ps));
    }
    case Game::Kind::Test:
      return Game::test_of(swap_formula(g->test, from, to));
    case Game::Kind::Choice:
      return Game::choice(swap_game(g->left, from, to), swap_game(g->right, from, to));
    case Game::Kind::Seq:
      return Game::seq(swap_game(g->left, from, to), swap_game(g->right, from, to));
    case Game::Kind::Star:
      return Game::star(swap_game(g->left, from, to));
    case Game::Kind::Dual:
      return Game::dual(swap_game(g->left, from, to));
  }
  return g;
}

FormulaPtr swap_formula(const FormulaPtr& f, const std::string& from, const std::string& to) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::FixVar:
      return f;
    case Formula::Kind::Equal:
      return Formula::eq(swap_term(f->terms[0], from, to), swap_term(f->terms[1], from, to));
    case Formula::Kind::Rel: {
      std::vector<TermPtr> ts;
      for (const auto& t : f->terms) ts.push_back(swap_term(t, from, to));
      return Formula::rel(f->name, std::move(ts));
    }
    case Formula::Kind::Not:
      return Formula::negation(swap_formula(f->child, from, to));
    case Formula::Kind::And:
      return Formula::conj(swap_formula(f->child, from, to), swap_formula(f->child2, from, to));
    case Formula::Kind::Diamond:
      return Formula::diamond(swap_game(f->game, from, to), swap_formula(f->child, from, to));
    case Formula::Kind::Mu:
      return Formula::mu(f->name, swap_formula(f->child, from, to));
  }
  return f;
}

struct Renamer {
  VarSet avoid;
  std::set<std::string> used;

  std::string fresh(const std::string& base) {
    std::set<std::string> all(used);
    all.insert(avoid.begin(), avoid.end());
    std::string y = fresh_name(base, all);
    used.insert(y);
    return y;
  }

  FormulaPtr formula(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::Not:
        return Formula::negation(formula(f->child));
      case Formula::Kind::And:
        return Formula::conj(formula(f->child), formula(f->child2));
      case Formula::Kind::Mu: {
        FormulaPtr body = formula(f->child);
        if (avoid.count(f->name)) {
          std::string y = fresh(f->name);
          return Formula::mu(y, substitute_fixvar(body, f->name, Formula::fixvar(y)));
        }
        return Formula::mu(f->name, body);
      }
      case Formula::Kind::Diamond: {
        Cont c{{}, formula(f->child)};
        GamePtr g = game(f->game, c);
        assert(c.suffix.empty());
        return Formula::diamond(g, c.fml);
      }
      default:
        return f;
    }
  }

  // Renames inside g; cont holds the already-processed continuation, which is
  // substituted whenever a bound variable of g is renamed.
  GamePtr game(const GamePtr& g, Cont& cont) {
    switch (g->kind) {
      case Game::Kind::Atomic:
      case Game::Kind::Assign: {
        std::vector<std::string> bound = g->bound;
        for (auto& b : bound) {
          if (!avoid.count(b)) continue;
          std::string y = fresh(b);
          subst_cont(cont, b, Term::var(y));
          b = y;
        }
        if (g->kind == Game::Kind::Assign) return Game::assign(std::move(bound), g->params);
        return Game::atomic(g->symbol, std::move(bound), g->params);
      }
      case Game::Kind::Test:
        return Game::test_of(formula(g->test));
      case Game::Kind::Seq: {
        GamePtr right = game(g->right, cont);
        cont.suffix.insert(cont.suffix.begin(), right);
        GamePtr left = game(g->left, cont);
        GamePtr right2 = cont.suffix.front();
        cont.suffix.erase(cont.suffix.begin());
        return Game::seq(left, right2);
      }
      case Game::Kind::Choice:
      case Game::Kind::Star:
      case Game::Kind::Dual: {
        // Binders inside these nodes may scope over the continuation along
        // some plays only, so plain renaming cannot touch them. Load the old
        // value into a fresh variable, swap the name throughout the subtree
        // and redirect the continuation to the fresh variable.
        GamePtr out = g;
        VarSet clashes;
        for (const auto& b : bound_vars(g))
          if (avoid.count(b)) clashes.insert(b);
        GamePtr loads;
        for (const auto& b : clashes) {
          std::string y = fresh(b);
          GamePtr load = Game::assign({y}, {Term::var(b)});
          loads = loads ? Game::seq(loads, load) : load;
          out = swap_game(out, b, y);
          subst_cont(cont, b, Term::var(y));
        }
        return loads ? Game::seq(loads, out) : out;
      }
    }
    return g;
  }
};

}  // namespace

FormulaPtr rename_bound(const FormulaPtr& f, const VarSet& avoid) {
  Renamer r;
  r.avoid = avoid;
  collect_names(f, r.used);
  if (contains_fixpoint(f)) {
    // Fixpoint variables are predicates on the whole state, so binders that
    // scope over them cannot be renamed in place. Load the old values into
    // fresh variables and swap names consistently throughout; sound for
    // formulas closed in fixpoint variables.
    VarSet clashes;
    for (const auto& b : bound_vars(f))
      if (avoid.count(b)) clashes.insert(b);
    if (clashes.empty()) return r.formula(f);
    FormulaPtr out = f;
    std::vector<std::string> targets;
    std::vector<TermPtr> values;
    for (const auto& b : clashes) {
      std::string y = r.fresh(b);
      out = swap_formula(out, b, y);
      targets.push_back(y);
      values.push_back(Term::var(b));
    }
    return Formula::diamond(Game::assign(std::move(targets), std::move(values)), out);
  }
  return r.formula(f);
}

GamePtr rename_bound(const GamePtr& g, const VarSet& avoid) {
  Renamer r;
  r.avoid = avoid;
  collect_names(g, r.used);
  Cont c{{}, nullptr};
  return r.game(g, c);
}

}  // namespace gamemu
