#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gamemu/eval.hpp"
#include "gamemu/translate.hpp"

namespace gamemu {

// Least fixpoint logic over a first-order signature: first-order connectives
// plus [lfp R, xbar . phi](thetabar) and applications of fixpoint relation
// symbols. Fixpoint relation symbols are uppercase identifiers outside the
// signature.
struct LfpFormula;
using LfpPtr = std::shared_ptr<const LfpFormula>;

struct LfpFormula {
  enum class Kind { True, False, Equal, Rel, FixApp, Not, And, Exists, Lfp };
  Kind kind;
  std::string name;               // Rel/FixApp/Lfp relation symbol; Exists variable
  std::vector<TermPtr> terms;     // Rel/FixApp args; Lfp application args
  std::vector<std::string> vars;  // Lfp binder tuple
  LfpPtr child, child2;

  static LfpPtr truth();
  static LfpPtr falsity();
  static LfpPtr eq(TermPtr a, TermPtr b);
  static LfpPtr rel(std::string name, std::vector<TermPtr> args);
  static LfpPtr fixapp(std::string name, std::vector<TermPtr> args);
  static LfpPtr negation(LfpPtr f);
  static LfpPtr conj(LfpPtr a, LfpPtr b);
  static LfpPtr disj(LfpPtr a, LfpPtr b);
  static LfpPtr exists(std::string var, LfpPtr body);
  static LfpPtr lfp(std::string rel, std::vector<std::string> binder, LfpPtr body,
                    std::vector<TermPtr> args);
};

bool equal(const LfpPtr& a, const LfpPtr& b);
std::string print_lfp(const LfpPtr& f);
LfpPtr parse_lfp(const std::string& text, const GameSignature& sig);

VarSet free_vars_lfp(const LfpPtr& f);

// Evaluator over finite structures, reusing the fixpoint engine per parameter
// slice.
StateSet eval_lfp(const FiniteNeighbourhoodStructure& N, const LfpPtr& f,
                  const std::vector<std::string>& support);

// mu X.phi becomes [lfp R_X, vbar . phi](vbar); every individual variable of
// the input must be among vbar. Assignment modalities are unfolded into their
// exists-and-test form.
LfpPtr mu_to_lfp(const FormulaPtr& muFormula, const std::vector<std::string>& vars);

// Converse direction; normalizes fixpoints to bind all free variables of
// their bodies first. Preconditions: every fixpoint relation is bound exactly
// once and used only as a fixpoint.
FormulaPtr lfp_to_mu(const LfpPtr& f);

}  // namespace gamemu
