#pragma once

#include <string>

#include "gamemu/ast.hpp"

namespace gamemu {

// Canonical ASCII form; parse(print(t)) is the identity on elaborated trees.
// Or/implies/box patterns are printed back in sugared form.
std::string print_term(const TermPtr& t);
std::string print_formula(const FormulaPtr& f);
std::string print_game(const GamePtr& g);

}  // namespace gamemu
