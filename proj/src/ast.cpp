#include "gamemu/ast.hpp"

#include <algorithm>

namespace gamemu {

void GameSignature::check_fresh(const std::string& name) const {
  if (functions_.count(name) || relations_.count(name) || actions_.count(name))
    throw SignatureError("duplicate symbol name: " + name);
  if (name == kStarSymbol || name == kAssignSymbol)
    throw SignatureError("reserved symbol name: " + name);
}

void GameSignature::add_function(const std::string& name, int arity) {
  check_fresh(name);
  if (arity < 0) throw SignatureError("negative arity for " + name);
  functions_[name] = arity;
}

void GameSignature::add_relation(const std::string& name, int arity) {
  check_fresh(name);
  if (arity < 0) throw SignatureError("negative arity for " + name);
  relations_[name] = arity;
}

void GameSignature::add_action(const std::string& name, ArityPair arity) {
  check_fresh(name);
  if (arity.affects < 0 || arity.reads < 0) throw SignatureError("negative arity for " + name);
  actions_[name] = arity;
}

bool GameSignature::has_action(const std::string& name) const {
  return name == kStarSymbol || actions_.count(name) != 0;
}

int GameSignature::function_arity(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) throw SignatureError("unknown function symbol: " + name);
  return it->second;
}

int GameSignature::relation_arity(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw SignatureError("unknown relation symbol: " + name);
  return it->second;
}

ArityPair GameSignature::action_arity(const std::string& name) const {
  if (name == kStarSymbol) return {1, 0};
  auto it = actions_.find(name);
  if (it == actions_.end()) throw SignatureError("unknown action symbol: " + name);
  return it->second;
}

// ---------------------------------------------------------------------------

TermPtr Term::var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->name = std::move(name);
  return t;
}

TermPtr Term::app(std::string fn, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::App;
  t->name = std::move(fn);
  t->args = std::move(args);
  return t;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {
std::shared_ptr<Formula> blank(Formula::Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}
}  // namespace

FormulaPtr Formula::truth() { return blank(Kind::True); }
FormulaPtr Formula::falsity() { return blank(Kind::False); }

FormulaPtr Formula::eq(TermPtr a, TermPtr b) {
  auto f = blank(Kind::Equal);
  f->terms = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr Formula::rel(std::string name, std::vector<TermPtr> args) {
  auto f = blank(Kind::Rel);
  f->name = std::move(name);
  f->terms = std::move(args);
  return f;
}

FormulaPtr Formula::negation(FormulaPtr c) {
  auto f = blank(Kind::Not);
  f->child = std::move(c);
  return f;
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  auto f = blank(Kind::And);
  f->child = std::move(a);
  f->child2 = std::move(b);
  return f;
}

FormulaPtr Formula::diamond(GamePtr g, FormulaPtr c) {
  auto f = blank(Kind::Diamond);
  f->game = std::move(g);
  f->child = std::move(c);
  return f;
}

FormulaPtr Formula::fixvar(std::string name) {
  auto f = blank(Kind::FixVar);
  f->name = std::move(name);
  return f;
}

FormulaPtr Formula::mu(std::string var, FormulaPtr body) {
  auto f = blank(Kind::Mu);
  f->name = std::move(var);
  f->child = std::move(body);
  return f;
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  return negation(conj(negation(std::move(a)), negation(std::move(b))));
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  return negation(conj(std::move(a), negation(std::move(b))));
}

FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) {
  return conj(implies(a, b), implies(b, a));
}

FormulaPtr Formula::box(GamePtr g, FormulaPtr f) {
  return diamond(Game::dual(std::move(g)), std::move(f));
}

FormulaPtr Formula::exists(const std::string& x, FormulaPtr f) {
  return diamond(Game::star_assign(x), std::move(f));
}

FormulaPtr Formula::forall(const std::string& x, FormulaPtr f) {
  return negation(exists(x, negation(std::move(f))));
}

// ---------------------------------------------------------------------------

GamePtr Game::atomic(std::string symbol, std::vector<std::string> bound,
                     std::vector<TermPtr> params) {
  for (size_t i = 0; i < bound.size(); ++i)
    for (size_t j = i + 1; j < bound.size(); ++j)
      if (bound[i] == bound[j])
        throw SignatureError("atomic game bound variables not pairwise distinct: " + bound[i]);
  auto g = std::make_shared<Game>();
  g->kind = Kind::Atomic;
  g->symbol = std::move(symbol);
  g->bound = std::move(bound);
  g->params = std::move(params);
  return g;
}

GamePtr Game::assign(std::vector<std::string> vars, std::vector<TermPtr> values) {
  if (vars.size() != values.size() || vars.empty())
    throw SignatureError("assignment variable/value lists must be non-empty and equal length");
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        throw SignatureError("assignment targets not pairwise distinct: " + vars[i]);
  auto g = std::make_shared<Game>();
  g->kind = Kind::Assign;
  g->symbol = kAssignSymbol;
  g->bound = std::move(vars);
  g->params = std::move(values);
  return g;
}

GamePtr Game::star_assign(const std::string& var) {
  return atomic(kStarSymbol, {var}, {});
}

GamePtr Game::test_of(FormulaPtr f) {
  auto g = std::make_shared<Game>();
  g->kind = Kind::Test;
  g->test = std::move(f);
  return g;
}

GamePtr Game::choice(GamePtr a, GamePtr b) {
  auto g = std::make_shared<Game>();
  g->kind = Kind::Choice;
  g->left = std::move(a);
  g->right = std::move(b);
  return g;
}

GamePtr Game::seq(GamePtr a, GamePtr b) {
  auto g = std::make_shared<Game>();
  g->kind = Kind::Seq;
  g->left = std::move(a);
  g->right = std::move(b);
  return g;
}

GamePtr Game::star(GamePtr inner) {
  auto g = std::make_shared<Game>();
  g->kind = Kind::Star;
  g->left = std::move(inner);
  return g;
}

GamePtr Game::dual(GamePtr inner) {
  auto g = std::make_shared<Game>();
  g->kind = Kind::Dual;
  g->left = std::move(inner);
  return g;
}

// ---------------------------------------------------------------------------

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (a->terms.size() != b->terms.size()) return false;
  for (size_t i = 0; i < a->terms.size(); ++i)
    if (!equal(a->terms[i], b->terms[i])) return false;
  return equal(a->child, b->child) && equal(a->child2, b->child2) && equal(a->game, b->game);
}

bool equal(const GamePtr& a, const GamePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->symbol != b->symbol || a->bound != b->bound) return false;
  if (a->params.size() != b->params.size()) return false;
  for (size_t i = 0; i < a->params.size(); ++i)
    if (!equal(a->params[i], b->params[i])) return false;
  return equal(a->test, b->test) && equal(a->left, b->left) && equal(a->right, b->right);
}

bool is_atomic_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Equal:
    case Formula::Kind::Rel:
      return true;
    default:
      return false;
  }
}

namespace {
bool gl_game(const GamePtr& g, bool (*fml)(const FormulaPtr&));

bool gl_formula_impl(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::FixVar:
    case Formula::Kind::Mu:
      return false;
    case Formula::Kind::Not:
      return gl_formula_impl(f->child);
    case Formula::Kind::And:
      return gl_formula_impl(f->child) && gl_formula_impl(f->child2);
    case Formula::Kind::Diamond:
      return gl_game(f->game, &gl_formula_impl) && gl_formula_impl(f->child);
    default:
      return true;
  }
}

bool gl_game(const GamePtr& g, bool (*fml)(const FormulaPtr&)) {
  switch (g->kind) {
    case Game::Kind::Atomic:
    case Game::Kind::Assign:
      return true;
    case Game::Kind::Test:
      return fml(g->test);
    case Game::Kind::Choice:
    case Game::Kind::Seq:
      return gl_game(g->left, fml) && gl_game(g->right, fml);
    case Game::Kind::Star:
    case Game::Kind::Dual:
      return gl_game(g->left, fml);
  }
  return false;
}
}  // namespace

bool is_gl_formula(const FormulaPtr& f) { return gl_formula_impl(f); }

bool is_mu_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Not:
    case Formula::Kind::Mu:
      return is_mu_formula(f->child);
    case Formula::Kind::And:
      return is_mu_formula(f->child) && is_mu_formula(f->child2);
    case Formula::Kind::Diamond:
      return (f->game->kind == Game::Kind::Atomic || f->game->kind == Game::Kind::Assign) &&
             is_mu_formula(f->child);
    default:
      return true;
  }
}

std::pair<bool, bool> fixvar_polarity(const FormulaPtr& f, const std::string& x) {
  switch (f->kind) {
    case Formula::Kind::FixVar:
      return f->name == x ? std::pair{true, false} : std::pair{false, false};
    case Formula::Kind::Not: {
      auto [p, n] = fixvar_polarity(f->child, x);
      return {n, p};
    }
    case Formula::Kind::And: {
      auto [p1, n1] = fixvar_polarity(f->child, x);
      auto [p2, n2] = fixvar_polarity(f->child2, x);
      return {p1 || p2, n1 || n2};
    }
    case Formula::Kind::Diamond: {
      auto [p, n] = fixvar_polarity(f->child, x);
      if (f->game && f->game->kind == Game::Kind::Test) {
        auto [tp, tn] = fixvar_polarity(f->game->test, x);
        p = p || tp;
        n = n || tn;
      }
      // Composite games of FOGL cannot contain fixpoint variables except in
      // tests; mu formulas only have atomic modalities.
      return {p, n};
    }
    case Formula::Kind::Mu:
      if (f->name == x) return {false, false};
      return fixvar_polarity(f->child, x);
    default:
      return {false, false};
  }
}

bool positivity_ok(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Not:
    case Formula::Kind::Diamond:
      return positivity_ok(f->child);
    case Formula::Kind::And:
      return positivity_ok(f->child) && positivity_ok(f->child2);
    case Formula::Kind::Mu: {
      auto [pos, neg] = fixvar_polarity(f->child, f->name);
      (void)pos;
      return !neg && positivity_ok(f->child);
    }
    default:
      return true;
  }
}

// ---------------------------------------------------------------------------

void collect_names(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::Var) out.insert(t->name);
  for (const auto& a : t->args) collect_names(a, out);
}

void collect_names(const GamePtr& g, std::set<std::string>& out) {
  if (!g) return;
  for (const auto& x : g->bound) out.insert(x);
  for (const auto& p : g->params) collect_names(p, out);
  collect_names(g->test, out);
  collect_names(g->left, out);
  collect_names(g->right, out);
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  for (const auto& t : f->terms) collect_names(t, out);
  collect_names(f->game, out);
  collect_names(f->child, out);
  collect_names(f->child2, out);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

}  // namespace gamemu
