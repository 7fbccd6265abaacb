#pragma once

#include <set>
#include <string>

#include "gamemu/ast.hpp"

namespace gamemu {

// Fixpoint variables are uppercase identifiers, individual variables lowercase.
inline bool is_fixpoint_name(const std::string& s) {
  return !s.empty() && s[0] >= 'A' && s[0] <= 'Z';
}

using VarSet = std::set<std::string>;

VarSet free_vars(const TermPtr& t);
// Free variables of a formula: free individual variables plus free fixpoint
// variables, one mixed set (distinguished by case convention).
VarSet free_vars(const FormulaPtr& f);
VarSet free_vars(const GamePtr& g);

// Variables a game writes on every play / on some play.
VarSet must_bound_vars(const GamePtr& g);
VarSet bound_vars(const GamePtr& g);
// Variables bound anywhere in a formula (union over modality games).
VarSet bound_vars(const FormulaPtr& f);

inline VarSet free_individual_vars(const FormulaPtr& f) {
  VarSet out;
  for (auto& v : free_vars(f))
    if (!is_fixpoint_name(v)) out.insert(v);
  return out;
}

inline VarSet free_fixpoint_vars(const FormulaPtr& f) {
  VarSet out;
  for (auto& v : free_vars(f))
    if (is_fixpoint_name(v)) out.insert(v);
  return out;
}

}  // namespace gamemu
