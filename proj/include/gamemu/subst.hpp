#pragma once

#include <map>
#include <string>

#include "gamemu/ast.hpp"
#include "gamemu/vars.hpp"

namespace gamemu {

TermPtr substitute_term(const TermPtr& t, const std::string& x, const TermPtr& repl);
TermPtr substitute_term_simul(const TermPtr& t, const std::map<std::string, TermPtr>& repl);

// Capture-avoiding substitution of a term for an individual variable, by the
// three-case definitions (capture prevented by inserting assignments, never by
// renaming). phi[x := x] is phi syntactically.
FormulaPtr substitute_var(const FormulaPtr& f, const std::string& x, const TermPtr& repl);
GamePtr substitute_var(const GamePtr& g, const std::string& x, const TermPtr& repl);

// Substitution of a formula for a free fixpoint variable; shadowed binders are
// left untouched.
FormulaPtr substitute_fixvar(const FormulaPtr& f, const std::string& X, const FormulaPtr& repl);

// Rewrite every builtin assignment into its star-and-test definition: in game
// position  y:=* ; ?(y=theta) ; x:=* ; ?(x=y),  in mu modalities the nested
// diamond form; vectorial assignments go through the fresh-intermediate chain.
FormulaPtr expand_assignments(const FormulaPtr& f);
GamePtr expand_assignments(const GamePtr& g);

// Alpha-variant whose bound-variable set (per the bound-variable tables) is
// disjoint from `avoid`; denotation-preserving. Fresh names are the base name
// with the smallest unused numeric suffix, scanning the whole enclosing tree.
FormulaPtr rename_bound(const FormulaPtr& f, const VarSet& avoid);
GamePtr rename_bound(const GamePtr& g, const VarSet& avoid);

}  // namespace gamemu
