#pragma once

#include <stdexcept>
#include <string>

#include "gamemu/ast.hpp"

namespace gamemu {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
  size_t position;
};

class PositivityError : public ParseError {
 public:
  PositivityError(const std::string& var, size_t pos)
      : ParseError("fixpoint variable " + var + " occurs negatively under its binder", pos) {}
};

enum class ParseKind { Term, GlFormula, Game, MuFormula };

// Parses and elaborates: box, or, implies, iff, nu and quantifier sugar are
// expanded; deterministic/vectorial assignment stays a builtin atomic game.
// Throws ParseError / PositivityError / SignatureError.
TermPtr parse_term(const std::string& text, const GameSignature& sig);
FormulaPtr parse_gl_formula(const std::string& text, const GameSignature& sig);
FormulaPtr parse_mu_formula(const std::string& text, const GameSignature& sig);
GamePtr parse_game(const std::string& text, const GameSignature& sig);
// Accepts the union grammar and classifies afterwards; pure-GL text yields a
// GL tree, fixpoint constructs are allowed.
FormulaPtr parse_formula_any(const std::string& text, const GameSignature& sig);

}  // namespace gamemu
