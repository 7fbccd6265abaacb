#pragma once

#include <functional>
#include <map>

#include "gamemu/structure.hpp"
#include "gamemu/vars.hpp"

namespace gamemu {

// Interpretation of free fixpoint variables; state sets share the evaluation
// support.
using FixpointInterpretation = std::map<std::string, StateSet>;

// Evaluation support: all free and bound individual variables plus extras,
// sorted. Justified by the coincidence lemmas.
std::vector<std::string> compute_support(const FormulaPtr& f, const VarSet& extra = {});
std::vector<std::string> compute_support(const GamePtr& g, const VarSet& extra = {});

int eval_term(const FiniteNeighbourhoodStructure& N, const StateSet& shape, uint64_t state,
              const TermPtr& t);

// Denotation of a formula (FOGL or FOLmu) over the given support.
StateSet eval_formula(const FiniteNeighbourhoodStructure& N, const FormulaPtr& f,
                      const std::vector<std::string>& support,
                      const FixpointInterpretation& I = {});

// Winning-region function of a game applied to the goal region S.
StateSet eval_game(const FiniteNeighbourhoodStructure& N, const GamePtr& g, const StateSet& S);

// Least fixpoint of a monotone step function by iteration from the empty set.
StateSet lfp(const std::function<StateSet(const StateSet&)>& step, const StateSet& bottom);

bool semantically_equal(const FiniteNeighbourhoodStructure& N, const FormulaPtr& a,
                        const FormulaPtr& b, const VarSet& extra = {});
bool valid_on(const FiniteNeighbourhoodStructure& N, const FormulaPtr& f,
              const VarSet& extra = {});

}  // namespace gamemu
