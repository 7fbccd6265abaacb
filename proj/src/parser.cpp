#include "gamemu/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "gamemu/subst.hpp"
#include "gamemu/vars.hpp"

namespace gamemu {

FormulaPtr Formula::nu(const std::string& var, FormulaPtr body) {
  // nu X . p  ==  !mu X . !p[X := !X]
  FormulaPtr flipped = substitute_fixvar(body, var, Formula::negation(Formula::fixvar(var)));
  return Formula::negation(Formula::mu(var, Formula::negation(flipped)));
}

namespace {

enum class Tok {
  End, Ident, LParen, RParen, Comma, Colon, Semi, Eq, Bang, Amp, Bar, Arrow, Iff,
  Lt, Gt, LBrack, RBrack, Quest, PlusPlus, Star, DualOp, Assign, Dot,
  KwTrue, KwFalse, KwMu, KwNu
};

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.kind = Tok::End;
      tok_.text.clear();
      return;
    }
    char c = src_[i_];
    auto sym = [&](Tok k, size_t len) {
      tok_.kind = k;
      tok_.text = src_.substr(i_, len);
      i_ += len;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
        ++j;
      tok_.text = src_.substr(i_, j - i_);
      i_ = j;
      if (tok_.text == "true") tok_.kind = Tok::KwTrue;
      else if (tok_.text == "false") tok_.kind = Tok::KwFalse;
      else if (tok_.text == "mu") tok_.kind = Tok::KwMu;
      else if (tok_.text == "nu") tok_.kind = Tok::KwNu;
      else tok_.kind = Tok::Ident;
      return;
    }
    switch (c) {
      case '(': sym(Tok::LParen, 1); return;
      case ')': sym(Tok::RParen, 1); return;
      case ',': sym(Tok::Comma, 1); return;
      case ';': sym(Tok::Semi, 1); return;
      case '=': sym(Tok::Eq, 1); return;
      case '!': sym(Tok::Bang, 1); return;
      case '&': sym(Tok::Amp, 1); return;
      case '|': sym(Tok::Bar, 1); return;
      case '.': sym(Tok::Dot, 1); return;
      case '?': sym(Tok::Quest, 1); return;
      case '>': sym(Tok::Gt, 1); return;
      case '[': sym(Tok::LBrack, 1); return;
      case ']': sym(Tok::RBrack, 1); return;
      case '*': sym(Tok::Star, 1); return;
      case ':':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '=') { sym(Tok::Assign, 2); return; }
        sym(Tok::Colon, 1);
        return;
      case '+':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '+') { sym(Tok::PlusPlus, 2); return; }
        break;
      case '-':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '>') { sym(Tok::Arrow, 2); return; }
        break;
      case '<':
        if (i_ + 2 < src_.size() && src_[i_ + 1] == '-' && src_[i_ + 2] == '>') {
          sym(Tok::Iff, 3);
          return;
        }
        sym(Tok::Lt, 1);
        return;
      case '^':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == 'd') { sym(Tok::DualOp, 2); return; }
        break;
      default:
        break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  const std::string& src_;
  size_t i_ = 0;
  Token tok_;
};

bool uppercase_start(const std::string& s) { return !s.empty() && s[0] >= 'A' && s[0] <= 'Z'; }

class Parser {
 public:
  Parser(const std::string& text, const GameSignature& sig, bool allowFix)
      : lex_(text), sig_(sig), allow_fix_(allowFix) {}

  TermPtr term() {
    Token t = expect(Tok::Ident, "term");
    if (sig_.has_function(t.text)) {
      int arity = sig_.function_arity(t.text);
      std::vector<TermPtr> args;
      if (arity > 0 || lex_.peek().kind == Tok::LParen) {
        expect(Tok::LParen, "'(' after function symbol");
        if (lex_.peek().kind != Tok::RParen) {
          args.push_back(term());
          while (accept(Tok::Comma)) args.push_back(term());
        }
        expect(Tok::RParen, "')'");
      }
      if (static_cast<int>(args.size()) != arity)
        throw ParseError("arity mismatch for function " + t.text + ": expected " +
                             std::to_string(arity) + ", got " + std::to_string(args.size()),
                         t.pos);
      return Term::app(t.text, std::move(args));
    }
    if (sig_.has_relation(t.text) || sig_.has_action(t.text))
      throw ParseError("symbol " + t.text + " is not a function symbol", t.pos);
    if (uppercase_start(t.text))
      throw ParseError("fixpoint variable " + t.text + " cannot appear in a term", t.pos);
    return Term::var(t.text);
  }

  FormulaPtr formula() { return iff(); }

  GamePtr game() { return choice(); }

  void finish() {
    if (lex_.peek().kind != Tok::End)
      throw ParseError("unexpected trailing input '" + lex_.peek().text + "'", lex_.peek().pos);
  }

 private:
  bool accept(Tok k) {
    if (lex_.peek().kind == k) {
      lex_.next();
      return true;
    }
    return false;
  }

  Token expect(Tok k, const std::string& what) {
    if (lex_.peek().kind != k)
      throw ParseError("expected " + what + ", found '" + lex_.peek().text + "'",
                       lex_.peek().pos);
    return lex_.next();
  }

  FormulaPtr iff() {
    FormulaPtr f = implies();
    while (lex_.peek().kind == Tok::Iff) {
      lex_.next();
      f = Formula::iff(f, implies());
    }
    return f;
  }

  FormulaPtr implies() {
    FormulaPtr f = disj();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.next();
      return Formula::implies(f, implies());
    }
    return f;
  }

  FormulaPtr disj() {
    FormulaPtr f = conj();
    while (lex_.peek().kind == Tok::Bar) {
      lex_.next();
      f = Formula::disj(f, conj());
    }
    return f;
  }

  FormulaPtr conj() {
    FormulaPtr f = unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.next();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  FormulaPtr unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Bang:
        lex_.next();
        return Formula::negation(unary());
      case Tok::Lt: {
        lex_.next();
        GamePtr g = game();
        expect(Tok::Gt, "'>' closing modality");
        return Formula::diamond(g, unary());
      }
      case Tok::LBrack: {
        lex_.next();
        GamePtr g = game();
        expect(Tok::RBrack, "']' closing modality");
        return Formula::box(g, unary());
      }
      case Tok::KwMu:
      case Tok::KwNu: {
        bool isMu = t.kind == Tok::KwMu;
        Token kw = lex_.next();
        Token var = expect(Tok::Ident, "fixpoint variable");
        if (!uppercase_start(var.text))
          throw ParseError("fixpoint variable must be uppercase: " + var.text, var.pos);
        if (sig_.has_relation(var.text) || sig_.has_function(var.text) ||
            sig_.has_action(var.text))
          throw ParseError("fixpoint variable clashes with signature symbol: " + var.text,
                           var.pos);
        if (!allow_fix_)
          throw ParseError("fixpoint binder not allowed in a gl formula", kw.pos);
        expect(Tok::Dot, "'.' after fixpoint variable");
        FormulaPtr body = iff();
        auto [pos, neg] = fixvar_polarity(body, var.text);
        (void)pos;
        if (neg) throw PositivityError(var.text, kw.pos);
        return isMu ? Formula::mu(var.text, body) : Formula::nu(var.text, body);
      }
      case Tok::KwTrue:
        lex_.next();
        return Formula::truth();
      case Tok::KwFalse:
        lex_.next();
        return Formula::falsity();
      case Tok::LParen: {
        lex_.next();
        FormulaPtr f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident:
        return atom();
      default:
        throw ParseError("expected a formula, found '" + t.text + "'", t.pos);
    }
  }

  FormulaPtr atom() {
    Token t = lex_.peek();
    if (sig_.has_relation(t.text)) {
      lex_.next();
      int arity = sig_.relation_arity(t.text);
      std::vector<TermPtr> args;
      if (arity > 0 || lex_.peek().kind == Tok::LParen) {
        expect(Tok::LParen, "'(' after relation symbol");
        if (lex_.peek().kind != Tok::RParen) {
          args.push_back(term());
          while (accept(Tok::Comma)) args.push_back(term());
        }
        expect(Tok::RParen, "')'");
      }
      if (static_cast<int>(args.size()) != arity)
        throw ParseError("arity mismatch for relation " + t.text, t.pos);
      return Formula::rel(t.text, std::move(args));
    }
    if (uppercase_start(t.text) && !sig_.has_function(t.text) && !sig_.has_action(t.text)) {
      if (!allow_fix_)
        throw ParseError("fixpoint variable " + t.text + " not allowed in a gl formula", t.pos);
      lex_.next();
      return Formula::fixvar(t.text);
    }
    // Equality atom.
    TermPtr lhs = term();
    expect(Tok::Eq, "'=' in atomic formula");
    TermPtr rhs = term();
    return Formula::eq(lhs, rhs);
  }

  GamePtr choice() {
    GamePtr g = gseq();
    if (lex_.peek().kind == Tok::PlusPlus) {
      lex_.next();
      return Game::choice(g, choice());
    }
    return g;
  }

  GamePtr gseq() {
    GamePtr g = gpost();
    if (lex_.peek().kind == Tok::Semi) {
      lex_.next();
      return Game::seq(g, gseq());
    }
    return g;
  }

  GamePtr gpost() {
    GamePtr g = gprim();
    for (;;) {
      if (lex_.peek().kind == Tok::Star) {
        lex_.next();
        g = Game::star(g);
      } else if (lex_.peek().kind == Tok::DualOp) {
        lex_.next();
        g = Game::dual(g);
      } else {
        return g;
      }
    }
  }

  GamePtr gprim() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Quest:
        lex_.next();
        return Game::test_of(unary());
      case Tok::LParen: {
        lex_.next();
        GamePtr g = game();
        expect(Tok::RParen, "')'");
        return g;
      }
      case Tok::Star: {
        // Star acts as an action symbol name: *(x :).
        Token star = lex_.next();
        expect(Tok::LParen, "'(' after quantifier symbol");
        Token var = expect(Tok::Ident, "bound variable");
        accept(Tok::Colon);
        expect(Tok::RParen, "')'");
        if (uppercase_start(var.text))
          throw ParseError("bound variable must be lowercase: " + var.text, var.pos);
        (void)star;
        return Game::star_assign(var.text);
      }
      case Tok::Ident:
        return ident_game();
      default:
        throw ParseError("expected a game, found '" + t.text + "'", t.pos);
    }
  }

  GamePtr ident_game() {
    Token head = lex_.next();
    if (sig_.has_action(head.text) && lex_.peek().kind == Tok::LParen) {
      lex_.next();
      ArityPair ar = sig_.action_arity(head.text);
      std::vector<std::string> bound;
      if (lex_.peek().kind == Tok::Ident) {
        bound.push_back(lex_.next().text);
        while (accept(Tok::Comma)) bound.push_back(expect(Tok::Ident, "bound variable").text);
      }
      expect(Tok::Colon, "':' in atomic game");
      std::vector<TermPtr> params;
      if (lex_.peek().kind != Tok::RParen) {
        params.push_back(term());
        while (accept(Tok::Comma)) params.push_back(term());
      }
      expect(Tok::RParen, "')'");
      if (static_cast<int>(bound.size()) != ar.affects ||
          static_cast<int>(params.size()) != ar.reads)
        throw ParseError("arity mismatch for action " + head.text + ": expected (" +
                             std::to_string(ar.affects) + "," + std::to_string(ar.reads) + ")",
                         head.pos);
      for (const auto& b : bound)
        if (uppercase_start(b) || sig_.has_function(b) || sig_.has_relation(b) ||
            sig_.has_action(b))
          throw ParseError("invalid bound variable: " + b, head.pos);
      return Game::atomic(head.text, std::move(bound), std::move(params));
    }
    // Assignment: x := ..., or x, y := ...
    std::vector<std::string> vars{head.text};
    while (accept(Tok::Comma)) vars.push_back(expect(Tok::Ident, "assignment target").text);
    for (const auto& v : vars) {
      if (uppercase_start(v) || sig_.has_function(v) || sig_.has_relation(v) ||
          sig_.has_action(v))
        throw ParseError("invalid assignment target: " + v, head.pos);
    }
    expect(Tok::Assign, "':=' in assignment");
    if (lex_.peek().kind == Tok::Star) {
      Token star = lex_.next();
      if (vars.size() != 1)
        throw ParseError("nondeterministic assignment takes a single variable", star.pos);
      return Game::star_assign(vars[0]);
    }
    std::vector<TermPtr> values;
    values.push_back(term());
    while (accept(Tok::Comma)) values.push_back(term());
    if (values.size() != vars.size())
      throw ParseError("assignment length mismatch", head.pos);
    return Game::assign(std::move(vars), std::move(values));
  }

  Lexer lex_;
  const GameSignature& sig_;
  bool allow_fix_;
};

}  // namespace

TermPtr parse_term(const std::string& text, const GameSignature& sig) {
  Parser p(text, sig, false);
  TermPtr t = p.term();
  p.finish();
  return t;
}

FormulaPtr parse_gl_formula(const std::string& text, const GameSignature& sig) {
  Parser p(text, sig, false);
  FormulaPtr f = p.formula();
  p.finish();
  return f;
}

FormulaPtr parse_mu_formula(const std::string& text, const GameSignature& sig) {
  Parser p(text, sig, true);
  FormulaPtr f = p.formula();
  p.finish();
  if (!is_mu_formula(f))
    throw ParseError("composite game modality not allowed in a mu formula", 0);
  return f;
}

FormulaPtr parse_formula_any(const std::string& text, const GameSignature& sig) {
  Parser p(text, sig, true);
  FormulaPtr f = p.formula();
  p.finish();
  return f;
}

GamePtr parse_game(const std::string& text, const GameSignature& sig) {
  Parser p(text, sig, false);
  GamePtr g = p.game();
  p.finish();
  return g;
}

}  // namespace gamemu
