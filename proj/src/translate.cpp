#include "gamemu/translate.hpp"

#include <json.hpp>

#include "gamemu/parser.hpp"
#include "gamemu/printer.hpp"
#include "gamemu/vars.hpp"

namespace gamemu {

namespace {

struct Flattener {
  PropReduction out;
  std::map<std::string, std::string> atomKeys;  // printed atom -> symbol
  std::map<std::string, std::string> gameKeys;
  int nAtoms = 0, nGames = 0;

  FormulaPtr atom_symbol(const FormulaPtr& f) {
    std::string key = print_formula(f);
    auto it = atomKeys.find(key);
    if (it == atomKeys.end()) {
      std::string name = "p" + std::to_string(++nAtoms);
      atomKeys.emplace(key, name);
      out.atoms.emplace(name, f);
      out.propSig.add_relation(name, 0);
      it = atomKeys.find(key);
    }
    return Formula::rel(it->second, {});
  }

  GamePtr game_symbol(const GamePtr& g) {
    std::string key = print_game(g);
    auto it = gameKeys.find(key);
    if (it == gameKeys.end()) {
      std::string name = "A" + std::to_string(++nGames);
      gameKeys.emplace(key, name);
      out.games.emplace(name, g);
      out.propSig.add_action(name, {0, 0});
      it = gameKeys.find(key);
    }
    return Game::atomic(it->second, {}, {});
  }

  FormulaPtr formula(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::True:
      case Formula::Kind::False:
      case Formula::Kind::FixVar:
        return f;
      case Formula::Kind::Equal:
      case Formula::Kind::Rel:
        return atom_symbol(f);
      case Formula::Kind::Not:
        return Formula::negation(formula(f->child));
      case Formula::Kind::And:
        return Formula::conj(formula(f->child), formula(f->child2));
      case Formula::Kind::Diamond:
        return Formula::diamond(game(f->game), formula(f->child));
      case Formula::Kind::Mu:
        return Formula::mu(f->name, formula(f->child));
    }
    return f;
  }

  GamePtr game(const GamePtr& g) {
    switch (g->kind) {
      case Game::Kind::Atomic:
      case Game::Kind::Assign:
        return game_symbol(g);
      case Game::Kind::Test:
        return Game::test_of(formula(g->test));
      case Game::Kind::Choice:
        return Game::choice(game(g->left), game(g->right));
      case Game::Kind::Seq:
        return Game::seq(game(g->left), game(g->right));
      case Game::Kind::Star:
        return Game::star(game(g->left));
      case Game::Kind::Dual:
        return Game::dual(game(g->left));
    }
    return g;
  }
};

}  // namespace

PropReduction flatten(const FormulaPtr& f) {
  Flattener fl;
  fl.out.propFormula = fl.formula(f);
  return fl.out;
}

namespace {

FormulaPtr sharpen_formula(const PropReduction& r, const FormulaPtr& f);

GamePtr sharpen_game(const PropReduction& r, const GamePtr& g) {
  switch (g->kind) {
    case Game::Kind::Atomic: {
      auto it = r.games.find(g->symbol);
      if (it == r.games.end())
        throw TranslateError("game symbol missing from the reduction table: " + g->symbol);
      return it->second;
    }
    case Game::Kind::Assign:
      throw TranslateError("assignments cannot appear in a propositional reduction");
    case Game::Kind::Test:
      return Game::test_of(sharpen_formula(r, g->test));
    case Game::Kind::Choice:
      return Game::choice(sharpen_game(r, g->left), sharpen_game(r, g->right));
    case Game::Kind::Seq:
      return Game::seq(sharpen_game(r, g->left), sharpen_game(r, g->right));
    case Game::Kind::Star:
      return Game::star(sharpen_game(r, g->left));
    case Game::Kind::Dual:
      return Game::dual(sharpen_game(r, g->left));
  }
  return g;
}

FormulaPtr sharpen_formula(const PropReduction& r, const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::FixVar:
      return f;
    case Formula::Kind::Equal:
      throw TranslateError("equality cannot appear in a propositional reduction");
    case Formula::Kind::Rel: {
      auto it = r.atoms.find(f->name);
      if (it == r.atoms.end())
        throw TranslateError("proposition symbol missing from the reduction table: " + f->name);
      return it->second;
    }
    case Formula::Kind::Not:
      return Formula::negation(sharpen_formula(r, f->child));
    case Formula::Kind::And:
      return Formula::conj(sharpen_formula(r, f->child), sharpen_formula(r, f->child2));
    case Formula::Kind::Diamond:
      return Formula::diamond(sharpen_game(r, f->game), sharpen_formula(r, f->child));
    case Formula::Kind::Mu:
      return Formula::mu(f->name, sharpen_formula(r, f->child));
  }
  return f;
}

}  // namespace

FormulaPtr sharpen(const PropReduction& r) { return sharpen_formula(r, r.propFormula); }
FormulaPtr sharpen(const PropReduction& r, const FormulaPtr& propFormula) {
  return sharpen_formula(r, propFormula);
}

std::string prop_reduction_to_json(const PropReduction& r) {
  nlohmann::json j;
  j["formula"] = print_formula(r.propFormula);
  nlohmann::json atoms = nlohmann::json::object();
  for (const auto& [name, f] : r.atoms) atoms[name] = print_formula(f);
  nlohmann::json games = nlohmann::json::object();
  for (const auto& [name, g] : r.games) games[name] = print_game(g);
  j["atoms"] = atoms;
  j["games"] = games;
  return j.dump(2);
}

PropReduction prop_reduction_from_json(const std::string& text, const GameSignature& sig) {
  nlohmann::json j = nlohmann::json::parse(text);
  PropReduction r;
  for (auto it = j["atoms"].begin(); it != j["atoms"].end(); ++it) {
    r.atoms[it.key()] = parse_formula_any(it.value().get<std::string>(), sig);
    r.propSig.add_relation(it.key(), 0);
  }
  for (auto it = j["games"].begin(); it != j["games"].end(); ++it) {
    r.games[it.key()] = parse_game(it.value().get<std::string>(), sig);
    r.propSig.add_action(it.key(), {0, 0});
  }
  r.propFormula = parse_formula_any(j["formula"].get<std::string>(), r.propSig);
  return r;
}

namespace {

class PropEvaluator {
 public:
  PropEvaluator(const FiniteNeighbourhoodStructure& N, const PropReduction& r,
                std::vector<std::string> support)
      : N_(N), r_(r), support_(std::move(support)) {}

  StateSet formula(const FormulaPtr& f, const FixpointInterpretation& I) {
    switch (f->kind) {
      case Formula::Kind::True:
        return StateSet(support_, N_.domain, true);
      case Formula::Kind::False:
        return StateSet(support_, N_.domain, false);
      case Formula::Kind::Rel: {
        auto it = r_.atoms.find(f->name);
        if (it == r_.atoms.end()) throw TranslateError("unknown proposition " + f->name);
        return eval_formula(N_, it->second, support_);
      }
      case Formula::Kind::Equal:
        throw TranslateError("equality in propositional formula");
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
        if (it == I.end()) throw TranslateError("unbound fixpoint variable " + f->name);
        return it->second;
      }
      case Formula::Kind::Mu: {
        StateSet z(support_, N_.domain);
        for (uint64_t round = 0; round <= z.size() + 1; ++round) {
          FixpointInterpretation I2 = I;
          I2.insert_or_assign(f->name, z);
          StateSet next = formula(f->child, I2);
          if (next == z) return z;
          z = std::move(next);
        }
        throw TranslateError("propositional fixpoint failed to stabilize");
      }
    }
    throw TranslateError("unreachable");
  }

  StateSet game(const GamePtr& g, const StateSet& S, const FixpointInterpretation& I) {
    switch (g->kind) {
      case Game::Kind::Atomic: {
        auto it = r_.games.find(g->symbol);
        if (it == r_.games.end()) throw TranslateError("unknown game symbol " + g->symbol);
        return eval_game(N_, it->second, S);
      }
      case Game::Kind::Assign:
        throw TranslateError("assignment in propositional game");
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
        StateSet z(support_, N_.domain);
        for (uint64_t round = 0; round <= z.size() + 1; ++round) {
          StateSet next = game(g->left, z, I);
          next |= S;
          if (next == z) return z;
          z = std::move(next);
        }
        throw TranslateError("propositional loop failed to stabilize");
      }
      case Game::Kind::Dual:
        return game(g->left, S.complement(), I).complement();
    }
    throw TranslateError("unreachable");
  }

 private:
  const FiniteNeighbourhoodStructure& N_;
  const PropReduction& r_;
  std::vector<std::string> support_;
};

}  // namespace

StateSet eval_prop(const FiniteNeighbourhoodStructure& N, const PropReduction& r,
                   const std::vector<std::string>& support) {
  PropEvaluator ev(N, r, support);
  return ev.formula(r.propFormula, {});
}

// ---------------------------------------------------------------------------
// Parikh's translation F.

namespace {

struct ParikhF {
  std::string names[2];

  FormulaPtr formula(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::Not:
        return Formula::negation(formula(f->child));
      case Formula::Kind::And:
        return Formula::conj(formula(f->child), formula(f->child2));
      case Formula::Kind::Diamond:
        return game(f->game, formula(f->child), 0);
      default:
        return f;
    }
  }

  FormulaPtr game(const GamePtr& g, FormulaPtr cont, int depth) {
    switch (g->kind) {
      case Game::Kind::Atomic:
      case Game::Kind::Assign:
        return Formula::diamond(g, std::move(cont));
      case Game::Kind::Test:
        return Formula::conj(formula(g->test), std::move(cont));
      case Game::Kind::Choice:
        return Formula::disj(game(g->left, cont, depth), game(g->right, cont, depth));
      case Game::Kind::Seq:
        return game(g->left, game(g->right, std::move(cont), depth), depth);
      case Game::Kind::Dual:
        return Formula::negation(game(g->left, Formula::negation(std::move(cont)), depth));
      case Game::Kind::Star: {
        const std::string& X = names[depth % 2];
        return Formula::mu(
            X, Formula::disj(std::move(cont), game(g->left, Formula::fixvar(X), depth + 1)));
      }
    }
    throw TranslateError("unreachable");
  }
};

}  // namespace

FormulaPtr parikh_f(const FormulaPtr& glFormula) {
  if (!is_gl_formula(glFormula))
    throw TranslateError("parikh_f expects a FOGL formula without fixpoint constructs");
  ParikhF tr;
  tr.names[0] = "X";
  tr.names[1] = "Y";
  return tr.formula(glFormula);
}

// ---------------------------------------------------------------------------
// G1, the singleton translation.

FormulaPtr g1(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::FixVar:
      return Formula::falsity();
    case Formula::Kind::Mu:
      return g1(f->child);
    case Formula::Kind::Not:
      return Formula::negation(g1(f->child));
    case Formula::Kind::And:
      return Formula::conj(g1(f->child), g1(f->child2));
    case Formula::Kind::Diamond:
      return Formula::diamond(f->game, g1(f->child));
    default:
      return f;
  }
}

// ---------------------------------------------------------------------------
// Sabotage gadget.

SabotageGadget sabotage_gadget(const GamePtr& a, const std::string& ctop,
                               const std::string& cbot, const VarSet& userVars) {
  if (a->kind != Game::Kind::Atomic && a->kind != Game::Kind::Assign)
    throw TranslateError("sabotage gadget requires an atomic game");
  std::string base = a->kind == Game::Kind::Atomic && a->symbol != kStarSymbol
                         ? a->symbol
                         : std::string("q");
  SabotageGadget out;
  out.stateVar = "s_" + base;
  out.saboteurVar = "d_" + base;
  VarSet taken = userVars;
  collect_names(a, taken);
  taken.insert(ctop);
  taken.insert(cbot);
  if (taken.count(out.stateVar) || taken.count(out.saboteurVar))
    throw TranslateError("sabotage state variables collide with user formula variables");

  auto var = [](const std::string& v) { return Term::var(v); };
  auto asg = [&](const std::string& x, const std::string& v) {
    return Game::assign({x}, {var(v)});
  };
  auto eq = [&](const std::string& x, const std::string& v) {
    return Formula::eq(var(x), var(v));
  };

  out.angelSab = Game::seq(asg(out.stateVar, ctop), asg(out.saboteurVar, ctop));
  out.demonSab = Game::seq(asg(out.stateVar, ctop), asg(out.saboteurVar, cbot));
  out.init = asg(out.stateVar, cbot);
  // (?s=cbot; a) ++ (?s=ctop; ((?d=ctop; (?false)^d) ++ (?d=cbot; ?false)))
  GamePtr unsabotaged = Game::seq(Game::test_of(eq(out.stateVar, cbot)), a);
  GamePtr angelBranch = Game::seq(Game::test_of(eq(out.saboteurVar, ctop)),
                                  Game::dual(Game::test_of(Formula::falsity())));
  GamePtr demonBranch =
      Game::seq(Game::test_of(eq(out.saboteurVar, cbot)), Game::test_of(Formula::falsity()));
  GamePtr sabotaged = Game::seq(Game::test_of(eq(out.stateVar, ctop)),
                                Game::choice(angelBranch, demonBranch));
  out.guarded = Game::choice(unsabotaged, sabotaged);
  return out;
}

// ---------------------------------------------------------------------------
// Combined translation G.

namespace {

FormulaPtr strip_nn(FormulaPtr f) {
  while (f->kind == Formula::Kind::Not && f->child->kind == Formula::Kind::Not)
    f = f->child->child;
  return f;
}

// Splits or-sugar trees !(!a & !b) into disjunct lists, modulo double
// negation; anything else is a single disjunct.
void disjuncts(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  FormulaPtr s = strip_nn(f);
  if (s->kind == Formula::Kind::Not && s->child->kind == Formula::Kind::And &&
      s->child->child->kind == Formula::Kind::Not &&
      s->child->child2->kind == Formula::Kind::Not) {
    disjuncts(s->child->child->child, out);
    disjuncts(s->child->child2->child, out);
    return;
  }
  out.push_back(s);
}

FormulaPtr or_fold(const std::vector<FormulaPtr>& ds) {
  if (ds.empty()) return Formula::falsity();
  FormulaPtr out = ds.back();
  for (size_t i = ds.size() - 1; i-- > 0;) out = Formula::disj(ds[i], out);
  return out;
}

FormulaPtr g2_formula(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::FixVar:
      throw UnsupportedFragment(print_formula(f));
    case Formula::Kind::Not:
      return Formula::negation(g2_formula(f->child));
    case Formula::Kind::And:
      return Formula::conj(g2_formula(f->child), g2_formula(f->child2));
    case Formula::Kind::Diamond:
      return Formula::diamond(f->game, g2_formula(f->child));
    case Formula::Kind::Mu: {
      // Game-shaped: mu X.(psi | <g> X) with X not free in psi or g.
      std::vector<FormulaPtr> ds;
      disjuncts(f->child, ds);
      GamePtr loop;
      std::vector<FormulaPtr> rest;
      for (const auto& d : ds) {
        FormulaPtr s = strip_nn(d);
        bool isLoop = !loop && s->kind == Formula::Kind::Diamond &&
                      (s->game->kind == Game::Kind::Atomic ||
                       s->game->kind == Game::Kind::Assign) &&
                      strip_nn(s->child)->kind == Formula::Kind::FixVar &&
                      strip_nn(s->child)->name == f->name;
        if (isLoop) {
          loop = s->game;
        } else {
          if (free_vars(d).count(f->name)) throw UnsupportedFragment(print_formula(f));
          rest.push_back(d);
        }
      }
      if (!loop) throw UnsupportedFragment(print_formula(f));
      return Formula::diamond(Game::star(loop), g2_formula(or_fold(rest)));
    }
    default:
      return f;
  }
}

}  // namespace

FormulaPtr g2_fragment(const FormulaPtr& muFormula) { return g2_formula(muFormula); }

FormulaPtr g_combined(const FormulaPtr& muFormula) {
  if (!free_fixpoint_vars(muFormula).empty())
    throw TranslateError("g_combined expects a formula closed in fixpoint variables");
  VarSet used;
  collect_names(muFormula, used);
  std::string u = fresh_name("u", used);
  used.insert(u);
  std::string v = fresh_name("v", used);
  used.insert(v);
  std::string ctop = fresh_name("ctop", used);
  used.insert(ctop);
  std::string cbot = fresh_name("cbot", used);

  FormulaPtr singleton =
      Formula::forall(u, Formula::forall(v, Formula::eq(Term::var(u), Term::var(v))));
  FormulaPtr branch1 = Formula::implies(singleton, g1(muFormula));
  FormulaPtr distinct = Formula::negation(Formula::eq(Term::var(ctop), Term::var(cbot)));
  FormulaPtr branch2 = Formula::forall(
      ctop, Formula::forall(cbot, Formula::implies(distinct, g2_formula(muFormula))));
  return Formula::conj(branch1, branch2);
}

}  // namespace gamemu
