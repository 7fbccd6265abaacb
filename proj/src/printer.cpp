#include "gamemu/printer.hpp"

#include <sstream>

namespace gamemu {

namespace {

// Formula precedence: 1 implies, 2 or, 3 and, 4 unary, 5 atom.
// Game precedence: 1 choice, 2 seq, 3 postfix, 4 primary.

void fml(std::ostringstream& os, const FormulaPtr& f, int prec);
void game(std::ostringstream& os, const GamePtr& g, int prec);

void term(std::ostringstream& os, const TermPtr& t) {
  os << t->name;
  if (t->kind == Term::Kind::App && !t->args.empty()) {
    os << '(';
    for (size_t i = 0; i < t->args.size(); ++i) {
      if (i) os << ", ";
      term(os, t->args[i]);
    }
    os << ')';
  }
}

bool is_not(const FormulaPtr& f) { return f && f->kind == Formula::Kind::Not; }

void fml(std::ostringstream& os, const FormulaPtr& f, int prec) {
  auto paren = [&](int mine, auto&& body) {
    if (mine < prec) {
      os << '(';
      body();
      os << ')';
    } else {
      body();
    }
  };
  switch (f->kind) {
    case Formula::Kind::True:
      os << "true";
      return;
    case Formula::Kind::False:
      os << "false";
      return;
    case Formula::Kind::Equal:
      paren(5, [&] {
        term(os, f->terms[0]);
        os << " = ";
        term(os, f->terms[1]);
      });
      return;
    case Formula::Kind::Rel:
      os << f->name;
      if (!f->terms.empty()) {
        os << '(';
        for (size_t i = 0; i < f->terms.size(); ++i) {
          if (i) os << ", ";
          term(os, f->terms[i]);
        }
        os << ')';
      }
      return;
    case Formula::Kind::FixVar:
      os << f->name;
      return;
    case Formula::Kind::Not: {
      const FormulaPtr& c = f->child;
      // a | b  ==  !(!a & !b);   a -> b  ==  !(a & !b)
      if (c->kind == Formula::Kind::And && is_not(c->child2)) {
        if (is_not(c->child)) {
          paren(2, [&] {
            fml(os, c->child->child, 3);
            os << " | ";
            fml(os, c->child2->child, 3);
          });
          return;
        }
        paren(1, [&] {
          fml(os, c->child, 2);
          os << " -> ";
          fml(os, c->child2->child, 1);
        });
        return;
      }
      os << '!';
      fml(os, c, 4);
      return;
    }
    case Formula::Kind::And:
      paren(3, [&] {
        fml(os, f->child, 4);
        os << " & ";
        fml(os, f->child2, 4);
      });
      return;
    case Formula::Kind::Diamond: {
      if (f->game->kind == Game::Kind::Dual) {
        os << '[';
        game(os, f->game->left, 1);
        os << "] ";
      } else {
        os << '<';
        game(os, f->game, 1);
        os << "> ";
      }
      fml(os, f->child, 4);
      return;
    }
    case Formula::Kind::Mu:
      paren(1, [&] {
        os << "mu " << f->name << " . ";
        fml(os, f->child, 1);
      });
      return;
  }
}

void game(std::ostringstream& os, const GamePtr& g, int prec) {
  auto paren = [&](int mine, auto&& body) {
    if (mine < prec) {
      os << '(';
      body();
      os << ')';
    } else {
      body();
    }
  };
  switch (g->kind) {
    case Game::Kind::Atomic:
      if (g->symbol == kStarSymbol) {
        os << g->bound[0] << " := *";
        return;
      }
      os << g->symbol << '(';
      for (size_t i = 0; i < g->bound.size(); ++i) {
        if (i) os << ", ";
        os << g->bound[i];
      }
      os << " :";
      for (size_t i = 0; i < g->params.size(); ++i) {
        os << (i ? ", " : " ");
        term(os, g->params[i]);
      }
      os << ')';
      return;
    case Game::Kind::Assign:
      for (size_t i = 0; i < g->bound.size(); ++i) {
        if (i) os << ", ";
        os << g->bound[i];
      }
      os << " := ";
      for (size_t i = 0; i < g->params.size(); ++i) {
        if (i) os << ", ";
        term(os, g->params[i]);
      }
      return;
    case Game::Kind::Test:
      os << "? ";
      fml(os, g->test, 4);
      return;
    case Game::Kind::Choice:
      paren(1, [&] {
        game(os, g->left, 2);
        os << " ++ ";
        game(os, g->right, 1);
      });
      return;
    case Game::Kind::Seq:
      paren(2, [&] {
        game(os, g->left, 3);
        os << " ; ";
        game(os, g->right, 2);
      });
      return;
    case Game::Kind::Star:
      paren(3, [&] {
        game(os, g->left, 4);
        os << '*';
      });
      return;
    case Game::Kind::Dual:
      paren(3, [&] {
        game(os, g->left, 4);
        os << "^d";
      });
      return;
  }
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::ostringstream os;
  term(os, t);
  return os.str();
}

std::string print_formula(const FormulaPtr& f) {
  std::ostringstream os;
  fml(os, f, 1);
  return os.str();
}

std::string print_game(const GamePtr& g) {
  std::ostringstream os;
  game(os, g, 1);
  return os.str();
}

}  // namespace gamemu
