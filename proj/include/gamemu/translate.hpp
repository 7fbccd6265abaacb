#pragma once

#include <map>
#include <string>

#include "gamemu/ast.hpp"
#include "gamemu/eval.hpp"

namespace gamemu {

class TranslateError : public std::runtime_error {
 public:
  explicit TranslateError(const std::string& what) : std::runtime_error(what) {}
};

// The general mu-to-game translation is only implemented on the game-shaped
// fragment; anything else fails with the offending subformula.
class UnsupportedFragment : public TranslateError {
 public:
  explicit UnsupportedFragment(const std::string& subformula)
      : TranslateError("fixpoint subformula is not game-shaped: " + subformula),
        subformula(subformula) {}
  std::string subformula;
};

// Propositional reduction: every atomic first-order formula becomes a fresh
// 0-ary proposition symbol, every atomic game a fresh (0,0)-ary game symbol.
// The table is injective both ways; sharpen(flatten(f)) == f syntactically.
struct PropReduction {
  FormulaPtr propFormula;
  GameSignature propSig;
  std::map<std::string, FormulaPtr> atoms;  // p_i -> atomic formula
  std::map<std::string, GamePtr> games;     // A_i -> atomic game
};

PropReduction flatten(const FormulaPtr& f);
FormulaPtr sharpen(const PropReduction& r);
FormulaPtr sharpen(const PropReduction& r, const FormulaPtr& propFormula);

std::string prop_reduction_to_json(const PropReduction& r);
PropReduction prop_reduction_from_json(const std::string& text, const GameSignature& sig);

// Evaluates the propositional formula over the induced propositional
// structure: proposition symbols and game symbols are interpreted through the
// table, never by rebuilding first-order syntax.
StateSet eval_prop(const FiniteNeighbourhoodStructure& N, const PropReduction& r,
                   const std::vector<std::string>& support);

// Game-to-fixpoint translation: structurally recursive, reuses two fixpoint
// variable names alternating with star-nesting depth.
FormulaPtr parikh_f(const FormulaPtr& glFormula);

// Singleton-structure translation: X -> false, mu X.phi -> g1(phi),
// homomorphic elsewhere.
FormulaPtr g1(const FormulaPtr& muFormula);

// State-variable encoding of sabotaging an atomic game. `a` must be an atomic
// game; ctop/cbot are the two reserved constants-as-variables; the sabotage
// state variables are s_<symbol> and d_<symbol>.
struct SabotageGadget {
  GamePtr angelSab;   // s_a := ctop ; d_a := ctop
  GamePtr demonSab;   // s_a := ctop ; d_a := cbot
  GamePtr guarded;    // case split on the sabotage state around `a`
  GamePtr init;       // s_a := cbot
  std::string stateVar, saboteurVar;
};

SabotageGadget sabotage_gadget(const GamePtr& a, const std::string& ctop,
                               const std::string& cbot, const VarSet& userVars = {});

// Combined translation: ((forall u,v u=v) -> G1(phi)) & forall ctop,cbot
// (ctop != cbot -> G2(phi)), where G2 handles only game-shaped fixpoints.
FormulaPtr g_combined(const FormulaPtr& muFormula);

// Exposed for tests: the G2 fragment inverse alone.
FormulaPtr g2_fragment(const FormulaPtr& muFormula);

}  // namespace gamemu
