#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gamemu {

// Builtin action symbol names. `star` is the (1,0)-ary quantifier symbol that
// every signature contains; `assign` is the builtin deterministic assignment
// family (arity (l,l) for every l >= 1), kept as a first-class atomic game with
// an explicit expansion into the star encoding (see subst.hpp).
inline const std::string kStarSymbol = "*";
inline const std::string kAssignSymbol = ":=";

struct ArityPair {
  int affects = 0;  // k: variables written by the game
  int reads = 0;    // l: parameter terms
  bool operator==(const ArityPair&) const = default;
};

class SignatureError : public std::runtime_error {
 public:
  explicit SignatureError(const std::string& what) : std::runtime_error(what) {}
};

// Function/relation/action symbol table. Names are unique across all three
// namespaces; the quantifier symbol `*` is always present.
class GameSignature {
 public:
  GameSignature() = default;

  void add_function(const std::string& name, int arity);
  void add_relation(const std::string& name, int arity);
  void add_action(const std::string& name, ArityPair arity);

  bool has_function(const std::string& name) const { return functions_.count(name) != 0; }
  bool has_relation(const std::string& name) const { return relations_.count(name) != 0; }
  bool has_action(const std::string& name) const;

  int function_arity(const std::string& name) const;
  int relation_arity(const std::string& name) const;
  ArityPair action_arity(const std::string& name) const;

  const std::map<std::string, int>& functions() const { return functions_; }
  const std::map<std::string, int>& relations() const { return relations_; }
  const std::map<std::string, ArityPair>& actions() const { return actions_; }

 private:
  void check_fresh(const std::string& name) const;
  std::map<std::string, int> functions_;
  std::map<std::string, int> relations_;
  std::map<std::string, ArityPair> actions_;
};

// ---------------------------------------------------------------------------
// Terms

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, App };
  Kind kind;
  std::string name;           // variable name or function symbol
  std::vector<TermPtr> args;  // empty for variables and constants

  static TermPtr var(std::string name);
  static TermPtr app(std::string fn, std::vector<TermPtr> args);
};

bool equal(const TermPtr& a, const TermPtr& b);

// ---------------------------------------------------------------------------
// Formulas and games (one unified tree for FOGL and FOLmu)
//
// Core connectives only: atoms, negation, conjunction, diamond modality,
// fixpoint variables and mu binders. Box, or, implies, quantifiers and nu are
// parser sugar and never appear in elaborated trees.

struct Formula;
struct Game;
using FormulaPtr = std::shared_ptr<const Formula>;
using GamePtr = std::shared_ptr<const Game>;

struct Formula {
  enum class Kind { True, False, Equal, Rel, Not, And, Diamond, FixVar, Mu };
  Kind kind;
  // Equal: lhs/rhs in terms[0],terms[1]; Rel: name + terms.
  std::string name;  // relation symbol, or fixpoint variable (FixVar/Mu)
  std::vector<TermPtr> terms;
  FormulaPtr child;   // Not, Mu, Diamond body
  FormulaPtr child2;  // And rhs
  GamePtr game;       // Diamond

  static FormulaPtr truth();
  static FormulaPtr falsity();
  static FormulaPtr eq(TermPtr a, TermPtr b);
  static FormulaPtr rel(std::string name, std::vector<TermPtr> args);
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr diamond(GamePtr g, FormulaPtr f);
  static FormulaPtr fixvar(std::string name);
  static FormulaPtr mu(std::string var, FormulaPtr body);

  // Derived connectives, elaborated on construction.
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);       // !(!a & !b)
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);    // !(a & !b)
  static FormulaPtr iff(FormulaPtr a, FormulaPtr b);        // (a->b) & (b->a)
  static FormulaPtr box(GamePtr g, FormulaPtr f);           // <g^d> f
  static FormulaPtr exists(const std::string& x, FormulaPtr f);
  static FormulaPtr forall(const std::string& x, FormulaPtr f);
  static FormulaPtr nu(const std::string& var, FormulaPtr body);
};

struct Game {
  enum class Kind { Atomic, Assign, Test, Choice, Seq, Star, Dual };
  Kind kind;
  std::string symbol;                  // Atomic: action symbol (incl. `*`)
  std::vector<std::string> bound;      // Atomic/Assign: pairwise-distinct x̄
  std::vector<TermPtr> params;         // Atomic: θ̄; Assign: rhs terms
  FormulaPtr test;                     // Test
  GamePtr left, right;                 // Choice/Seq; Star/Dual use left

  static GamePtr atomic(std::string symbol, std::vector<std::string> bound,
                        std::vector<TermPtr> params);
  static GamePtr assign(std::vector<std::string> vars, std::vector<TermPtr> values);
  static GamePtr star_assign(const std::string& var);  // x := * as *(x:)
  static GamePtr test_of(FormulaPtr f);
  static GamePtr choice(GamePtr a, GamePtr b);
  static GamePtr seq(GamePtr a, GamePtr b);
  static GamePtr star(GamePtr g);
  static GamePtr dual(GamePtr g);
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const GamePtr& a, const GamePtr& b);

bool is_atomic_formula(const Formula& f);
// True if the tree is a pure FOGL formula (no fixpoint constructs).
bool is_gl_formula(const FormulaPtr& f);
// True if the tree is an FOLmu formula (every modality is an atomic game or
// a builtin assignment).
bool is_mu_formula(const FormulaPtr& f);

// Polarity check: in every mu binder, the bound variable occurs only under an
// even number of negations.
bool positivity_ok(const FormulaPtr& f);
// Polarity of one free fixpoint variable in f: returns {may occur positively,
// may occur negatively}.
std::pair<bool, bool> fixvar_polarity(const FormulaPtr& f, const std::string& x);

// All variable names (individual, free or bound, plus bound-list names)
// occurring anywhere; used for fresh-name generation.
void collect_names(const TermPtr& t, std::set<std::string>& out);
void collect_names(const FormulaPtr& f, std::set<std::string>& out);
void collect_names(const GamePtr& g, std::set<std::string>& out);

// Smallest `base` + numeric suffix not in `used` (the base itself is never
// returned).
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

}  // namespace gamemu
