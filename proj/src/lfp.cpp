#include "gamemu/lfp.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gamemu/parser.hpp"
#include "gamemu/printer.hpp"
#include "gamemu/subst.hpp"

namespace gamemu {

namespace {
std::shared_ptr<LfpFormula> blank(LfpFormula::Kind k) {
  auto f = std::make_shared<LfpFormula>();
  f->kind = k;
  return f;
}
}  // namespace

LfpPtr LfpFormula::truth() { return blank(Kind::True); }
LfpPtr LfpFormula::falsity() { return blank(Kind::False); }

LfpPtr LfpFormula::eq(TermPtr a, TermPtr b) {
  auto f = blank(Kind::Equal);
  f->terms = {std::move(a), std::move(b)};
  return f;
}

LfpPtr LfpFormula::rel(std::string name, std::vector<TermPtr> args) {
  auto f = blank(Kind::Rel);
  f->name = std::move(name);
  f->terms = std::move(args);
  return f;
}

LfpPtr LfpFormula::fixapp(std::string name, std::vector<TermPtr> args) {
  auto f = blank(Kind::FixApp);
  f->name = std::move(name);
  f->terms = std::move(args);
  return f;
}

LfpPtr LfpFormula::negation(LfpPtr c) {
  auto f = blank(Kind::Not);
  f->child = std::move(c);
  return f;
}

LfpPtr LfpFormula::conj(LfpPtr a, LfpPtr b) {
  auto f = blank(Kind::And);
  f->child = std::move(a);
  f->child2 = std::move(b);
  return f;
}

LfpPtr LfpFormula::disj(LfpPtr a, LfpPtr b) {
  return negation(conj(negation(std::move(a)), negation(std::move(b))));
}

LfpPtr LfpFormula::exists(std::string var, LfpPtr body) {
  auto f = blank(Kind::Exists);
  f->name = std::move(var);
  f->child = std::move(body);
  return f;
}

LfpPtr LfpFormula::lfp(std::string rel, std::vector<std::string> binder, LfpPtr body,
                       std::vector<TermPtr> args) {
  if (binder.size() != args.size())
    throw TranslateError("lfp binder tuple and application arity differ for " + rel);
  auto f = blank(Kind::Lfp);
  f->name = std::move(rel);
  f->vars = std::move(binder);
  f->child = std::move(body);
  f->terms = std::move(args);
  return f;
}

bool equal(const LfpPtr& a, const LfpPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->vars != b->vars) return false;
  if (a->terms.size() != b->terms.size()) return false;
  for (size_t i = 0; i < a->terms.size(); ++i)
    if (!equal(a->terms[i], b->terms[i])) return false;
  return equal(a->child, b->child) && equal(a->child2, b->child2);
}

// ---------------------------------------------------------------------------
// Printing. Precedence: 1 and, 2 unary, 3 atom; exists/lfp bodies maximal.

namespace {
void print_node(std::ostringstream& os, const LfpPtr& f, int prec) {
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
    case LfpFormula::Kind::True:
      os << "true";
      return;
    case LfpFormula::Kind::False:
      os << "false";
      return;
    case LfpFormula::Kind::Equal:
      paren(3, [&] { os << print_term(f->terms[0]) << " = " << print_term(f->terms[1]); });
      return;
    case LfpFormula::Kind::Rel:
    case LfpFormula::Kind::FixApp:
      os << f->name;
      if (!f->terms.empty()) {
        os << '(';
        for (size_t i = 0; i < f->terms.size(); ++i)
          os << (i ? ", " : "") << print_term(f->terms[i]);
        os << ')';
      }
      return;
    case LfpFormula::Kind::Not:
      os << '!';
      print_node(os, f->child, 2);
      return;
    case LfpFormula::Kind::And:
      paren(1, [&] {
        print_node(os, f->child, 2);
        os << " & ";
        print_node(os, f->child2, 2);
      });
      return;
    case LfpFormula::Kind::Exists:
      paren(1, [&] {
        os << "exists " << f->name << " . ";
        print_node(os, f->child, 1);
      });
      return;
    case LfpFormula::Kind::Lfp:
      os << "[lfp " << f->name;
      for (const auto& v : f->vars) os << ", " << v;
      os << " . ";
      print_node(os, f->child, 1);
      os << "](";
      for (size_t i = 0; i < f->terms.size(); ++i)
        os << (i ? ", " : "") << print_term(f->terms[i]);
      os << ')';
      return;
  }
}
}  // namespace

std::string print_lfp(const LfpPtr& f) {
  std::ostringstream os;
  print_node(os, f, 1);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing (small standalone grammar: ! & | -> exists forall [lfp ...](...)).

namespace {

struct LfpParser {
  const std::string& src;
  const GameSignature& sig;
  size_t i = 0;

  explicit LfpParser(const std::string& s, const GameSignature& g) : src(s), sig(g) {}

  void skip() {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
  }

  bool eat(const std::string& tok) {
    skip();
    if (src.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& tok) {
    if (!eat(tok)) throw ParseError("expected '" + tok + "'", i);
  }

  bool peek(char c) {
    skip();
    return i < src.size() && src[i] == c;
  }

  std::string ident() {
    skip();
    size_t j = i;
    while (j < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
      ++j;
    if (j == i) throw ParseError("expected an identifier", i);
    std::string s = src.substr(i, j - i);
    i = j;
    return s;
  }

  TermPtr term() {
    std::string name = ident();
    if (sig.has_function(name)) {
      int arity = sig.function_arity(name);
      std::vector<TermPtr> args;
      if (arity > 0 || peek('(')) {
        expect("(");
        if (!peek(')')) {
          args.push_back(term());
          while (eat(",")) args.push_back(term());
        }
        expect(")");
      }
      if (static_cast<int>(args.size()) != arity)
        throw ParseError("arity mismatch for function " + name, i);
      return Term::app(name, std::move(args));
    }
    if (name.empty() || std::isupper(static_cast<unsigned char>(name[0])))
      throw ParseError("fixpoint relation in term position: " + name, i);
    return Term::var(name);
  }

  LfpPtr formula() { return implies(); }

  LfpPtr implies() {
    LfpPtr f = disj();
    if (eat("->")) return LfpFormula::negation(LfpFormula::conj(f, LfpFormula::negation(implies())));
    return f;
  }

  LfpPtr disj() {
    LfpPtr f = conj();
    while (eat("|")) f = LfpFormula::disj(f, conj());
    return f;
  }

  LfpPtr conj() {
    LfpPtr f = unary();
    while (eat("&")) f = LfpFormula::conj(f, unary());
    return f;
  }

  LfpPtr unary() {
    skip();
    if (eat("!")) return LfpFormula::negation(unary());
    if (eat("[")) {
      expect("lfp");
      std::string rel = ident();
      std::vector<std::string> binder;
      while (eat(",")) binder.push_back(ident());
      expect(".");
      LfpPtr body = formula();
      expect("]");
      expect("(");
      std::vector<TermPtr> args;
      if (!peek(')')) {
        args.push_back(term());
        while (eat(",")) args.push_back(term());
      }
      expect(")");
      return LfpFormula::lfp(rel, std::move(binder), body, std::move(args));
    }
    if (eat("(")) {
      LfpPtr f = formula();
      expect(")");
      return f;
    }
    size_t save = i;
    std::string word = ident();
    if (word == "true") return LfpFormula::truth();
    if (word == "false") return LfpFormula::falsity();
    if (word == "exists" || word == "forall") {
      std::string v = ident();
      expect(".");
      LfpPtr body = formula();
      if (word == "exists") return LfpFormula::exists(v, body);
      return LfpFormula::negation(LfpFormula::exists(v, LfpFormula::negation(body)));
    }
    if (sig.has_relation(word)) {
      int arity = sig.relation_arity(word);
      std::vector<TermPtr> args;
      if (arity > 0 || peek('(')) {
        expect("(");
        if (!peek(')')) {
          args.push_back(term());
          while (eat(",")) args.push_back(term());
        }
        expect(")");
      }
      if (static_cast<int>(args.size()) != arity)
        throw ParseError("arity mismatch for relation " + word, i);
      return LfpFormula::rel(word, std::move(args));
    }
    if (std::isupper(static_cast<unsigned char>(word[0]))) {
      std::vector<TermPtr> args;
      if (peek('(')) {
        expect("(");
        if (!peek(')')) {
          args.push_back(term());
          while (eat(",")) args.push_back(term());
        }
        expect(")");
      }
      return LfpFormula::fixapp(word, std::move(args));
    }
    // equality atom: rewind and parse term = term
    i = save;
    TermPtr lhs = term();
    expect("=");
    return LfpFormula::eq(lhs, term());
  }
};

}  // namespace

LfpPtr parse_lfp(const std::string& text, const GameSignature& sig) {
  LfpParser p(text, sig);
  LfpPtr f = p.formula();
  p.skip();
  if (p.i != text.size()) throw ParseError("unexpected trailing input", p.i);
  return f;
}

// ---------------------------------------------------------------------------

VarSet free_vars_lfp(const LfpPtr& f) {
  switch (f->kind) {
    case LfpFormula::Kind::True:
    case LfpFormula::Kind::False:
      return {};
    case LfpFormula::Kind::Equal:
    case LfpFormula::Kind::Rel:
    case LfpFormula::Kind::FixApp: {
      VarSet out;
      for (const auto& t : f->terms) collect_names(t, out);
      return out;
    }
    case LfpFormula::Kind::Not:
      return free_vars_lfp(f->child);
    case LfpFormula::Kind::And: {
      VarSet out = free_vars_lfp(f->child);
      for (const auto& v : free_vars_lfp(f->child2)) out.insert(v);
      return out;
    }
    case LfpFormula::Kind::Exists: {
      VarSet out = free_vars_lfp(f->child);
      out.erase(f->name);
      return out;
    }
    case LfpFormula::Kind::Lfp: {
      VarSet out = free_vars_lfp(f->child);
      for (const auto& v : f->vars) out.erase(v);
      for (const auto& t : f->terms) collect_names(t, out);
      return out;
    }
  }
  return {};
}

namespace {

void collect_all_names_lfp(const LfpPtr& f, VarSet& out) {
  if (!f) return;
  for (const auto& t : f->terms) collect_names(t, out);
  if (f->kind == LfpFormula::Kind::Exists) out.insert(f->name);
  for (const auto& v : f->vars) out.insert(v);
  collect_all_names_lfp(f->child, out);
  collect_all_names_lfp(f->child2, out);
}

class LfpEvaluator {
 public:
  LfpEvaluator(const FiniteNeighbourhoodStructure& N, std::vector<std::string> support)
      : N_(N), shape_(std::move(support), N.domain) {}

  using RelEnv = std::map<std::string, std::set<Tuple>>;

  StateSet eval(const LfpPtr& f, const RelEnv& env) {
    switch (f->kind) {
      case LfpFormula::Kind::True:
        return StateSet(shape_.support(), N_.domain, true);
      case LfpFormula::Kind::False:
        return StateSet(shape_.support(), N_.domain);
      case LfpFormula::Kind::Equal: {
        StateSet out(shape_.support(), N_.domain);
        for (uint64_t s = 0; s < shape_.size(); ++s)
          if (eval_term(N_, shape_, s, f->terms[0]) == eval_term(N_, shape_, s, f->terms[1]))
            out.set(s);
        return out;
      }
      case LfpFormula::Kind::Rel: {
        StateSet out(shape_.support(), N_.domain);
        Tuple args(f->terms.size());
        for (uint64_t s = 0; s < shape_.size(); ++s) {
          for (size_t i = 0; i < f->terms.size(); ++i)
            args[i] = eval_term(N_, shape_, s, f->terms[i]);
          if (N_.in_relation(f->name, args)) out.set(s);
        }
        return out;
      }
      case LfpFormula::Kind::FixApp: {
        auto it = env.find(f->name);
        if (it == env.end())
          throw TranslateError("fixpoint relation used outside its binder: " + f->name);
        StateSet out(shape_.support(), N_.domain);
        Tuple args(f->terms.size());
        for (uint64_t s = 0; s < shape_.size(); ++s) {
          for (size_t i = 0; i < f->terms.size(); ++i)
            args[i] = eval_term(N_, shape_, s, f->terms[i]);
          if (it->second.count(args)) out.set(s);
        }
        return out;
      }
      case LfpFormula::Kind::Not:
        return eval(f->child, env).complement();
      case LfpFormula::Kind::And: {
        StateSet out = eval(f->child, env);
        out &= eval(f->child2, env);
        return out;
      }
      case LfpFormula::Kind::Exists: {
        StateSet body = eval(f->child, env);
        StateSet out(shape_.support(), N_.domain);
        size_t pos = shape_.var_pos(f->name);
        for (uint64_t s = 0; s < shape_.size(); ++s)
          for (int u = 0; u < N_.domain; ++u)
            if (body.test(shape_.with_digit(s, pos, u))) {
              out.set(s);
              break;
            }
        return out;
      }
      case LfpFormula::Kind::Lfp:
        return eval_lfp_node(f, env);
    }
    throw TranslateError("unreachable");
  }

 private:
  StateSet eval_lfp_node(const LfpPtr& f, const RelEnv& env) {
    std::vector<size_t> binderPos;
    for (const auto& v : f->vars) binderPos.push_back(shape_.var_pos(v));
    // Outer variables the fixpoint body reads beyond its binder tuple.
    VarSet outerSet = free_vars_lfp(f->child);
    for (const auto& v : f->vars) outerSet.erase(v);
    std::vector<size_t> outerPos;
    for (const auto& v : outerSet) outerPos.push_back(shape_.var_pos(v));

    uint64_t k = f->vars.size();
    uint64_t tupleCount = StateSet::state_count(k, N_.domain);

    std::map<Tuple, std::set<Tuple>> memo;  // outer projection -> fixpoint
    auto fixpoint_for = [&](const Tuple& outerVals) -> const std::set<Tuple>& {
      auto it = memo.find(outerVals);
      if (it != memo.end()) return it->second;
      std::set<Tuple> A;
      bool stable = false;
      for (uint64_t round = 0; round <= tupleCount + 1; ++round) {
        RelEnv env2 = env;
        env2.insert_or_assign(f->name, A);
        StateSet body = eval(f->child, env2);
        // base state with the outer values, zero elsewhere
        uint64_t base = 0;
        for (size_t i = 0; i < outerPos.size(); ++i)
          base = shape_.with_digit(base, outerPos[i], outerVals[i]);
        std::set<Tuple> next;
        Tuple u(k, 0);
        for (uint64_t t = 0; t < tupleCount; ++t) {
          uint64_t s = base;
          uint64_t rem = t;
          for (size_t i = k; i-- > 0;) {
            u[i] = static_cast<int>(rem % N_.domain);
            rem /= N_.domain;
          }
          for (size_t i = 0; i < k; ++i) s = shape_.with_digit(s, binderPos[i], u[i]);
          if (body.test(s)) next.insert(u);
        }
        if (next == A) {
          stable = true;
          break;
        }
        A = std::move(next);
      }
      if (!stable)
        throw TranslateError("lfp iteration failed to stabilize (relation " + f->name +
                             " used non-monotonically?)");
      return memo.emplace(outerVals, std::move(A)).first->second;
    };

    StateSet out(shape_.support(), N_.domain);
    Tuple args(f->terms.size());
    Tuple outerVals(outerPos.size());
    for (uint64_t s = 0; s < shape_.size(); ++s) {
      for (size_t i = 0; i < f->terms.size(); ++i)
        args[i] = eval_term(N_, shape_, s, f->terms[i]);
      for (size_t i = 0; i < outerPos.size(); ++i)
        outerVals[i] = shape_.digit(s, outerPos[i]);
      if (fixpoint_for(outerVals).count(args)) out.set(s);
    }
    return out;
  }

  const FiniteNeighbourhoodStructure& N_;
  StateSet shape_;
};

}  // namespace

StateSet eval_lfp(const FiniteNeighbourhoodStructure& N, const LfpPtr& f,
                  const std::vector<std::string>& support) {
  VarSet needed;
  collect_all_names_lfp(f, needed);
  for (const auto& v : needed)
    if (std::find(support.begin(), support.end(), v) == support.end() &&
        !(v[0] >= 'A' && v[0] <= 'Z'))
      throw SemanticsError("variable outside evaluation support: " + v);
  LfpEvaluator ev(N, support);
  return ev.eval(f, {});
}

// ---------------------------------------------------------------------------
// mu -> LFP

namespace {

struct MuToLfp {
  std::vector<std::string> vars;
  VarSet used;

  LfpPtr dia_assign(const GamePtr& g, LfpPtr cont) {
    // <xbar := thetabar> phi as exists-and-test, with fresh intermediates for
    // simultaneity.
    std::vector<std::string> ys;
    for (size_t i = 0; i < g->bound.size(); ++i) {
      std::string y = fresh_name(g->bound[i], used);
      used.insert(y);
      ys.push_back(y);
    }
    LfpPtr out = std::move(cont);
    for (size_t i = g->bound.size(); i-- > 0;)
      out = LfpFormula::exists(
          g->bound[i],
          LfpFormula::conj(LfpFormula::eq(Term::var(g->bound[i]), Term::var(ys[i])), out));
    for (size_t i = g->bound.size(); i-- > 0;)
      out = LfpFormula::exists(
          ys[i], LfpFormula::conj(LfpFormula::eq(Term::var(ys[i]), g->params[i]), out));
    return out;
  }

  LfpPtr tr(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::True:
        return LfpFormula::truth();
      case Formula::Kind::False:
        return LfpFormula::falsity();
      case Formula::Kind::Equal:
        return LfpFormula::eq(f->terms[0], f->terms[1]);
      case Formula::Kind::Rel:
        return LfpFormula::rel(f->name, f->terms);
      case Formula::Kind::Not:
        return LfpFormula::negation(tr(f->child));
      case Formula::Kind::And:
        return LfpFormula::conj(tr(f->child), tr(f->child2));
      case Formula::Kind::FixVar: {
        std::vector<TermPtr> args;
        for (const auto& v : vars) args.push_back(Term::var(v));
        return LfpFormula::fixapp("R_" + f->name, std::move(args));
      }
      case Formula::Kind::Mu: {
        std::vector<TermPtr> args;
        for (const auto& v : vars) args.push_back(Term::var(v));
        return LfpFormula::lfp("R_" + f->name, vars, tr(f->child), std::move(args));
      }
      case Formula::Kind::Diamond: {
        const GamePtr& g = f->game;
        if (g->kind == Game::Kind::Atomic && g->symbol == kStarSymbol)
          return LfpFormula::exists(g->bound[0], tr(f->child));
        if (g->kind == Game::Kind::Assign) return dia_assign(g, tr(f->child));
        throw TranslateError(
            "mu_to_lfp: action symbol outside the LFP fragment (only * and assignments "
            "allowed): " +
            g->symbol);
      }
    }
    throw TranslateError("unreachable");
  }
};

}  // namespace

LfpPtr mu_to_lfp(const FormulaPtr& muFormula, const std::vector<std::string>& vars) {
  if (!is_mu_formula(muFormula)) throw TranslateError("mu_to_lfp expects an FOLmu formula");
  if (!free_fixpoint_vars(muFormula).empty())
    throw TranslateError("mu_to_lfp expects a formula closed in fixpoint variables");
  VarSet names;
  collect_names(muFormula, names);
  for (const auto& v : names)
    if (!is_fixpoint_name(v) &&
        std::find(vars.begin(), vars.end(), v) == vars.end())
      throw TranslateError("mu_to_lfp: variable " + v + " is not among the fixpoint tuple");
  MuToLfp tr;
  tr.vars = vars;
  tr.used = names;
  for (const auto& v : vars) tr.used.insert(v);
  return tr.tr(muFormula);
}

// ---------------------------------------------------------------------------
// LFP -> mu

namespace {

void check_single_binding(const LfpPtr& f, std::set<std::string>& bound) {
  if (!f) return;
  if (f->kind == LfpFormula::Kind::Lfp) {
    if (!bound.insert(f->name).second)
      throw TranslateError("fixpoint relation bound more than once: " + f->name);
  }
  check_single_binding(f->child, bound);
  check_single_binding(f->child2, bound);
}

void collect_binder_names(const LfpPtr& f, VarSet& out) {
  if (!f) return;
  if (f->kind == LfpFormula::Kind::Exists) out.insert(f->name);
  for (const auto& v : f->vars) out.insert(v);
  collect_binder_names(f->child, out);
  collect_binder_names(f->child2, out);
}

// Widens every fixpoint to bind all free variables of its body: extra
// variables are appended to the binder tuple, every application of the
// relation and the outer application get them appended as arguments.
LfpPtr pad_fixapps(const LfpPtr& f, const std::string& rel,
                   const std::vector<std::string>& extra) {
  if (!f) return f;
  switch (f->kind) {
    case LfpFormula::Kind::FixApp:
      if (f->name == rel) {
        std::vector<TermPtr> args = f->terms;
        for (const auto& v : extra) args.push_back(Term::var(v));
        return LfpFormula::fixapp(rel, std::move(args));
      }
      return f;
    case LfpFormula::Kind::Not:
      return LfpFormula::negation(pad_fixapps(f->child, rel, extra));
    case LfpFormula::Kind::And:
      return LfpFormula::conj(pad_fixapps(f->child, rel, extra),
                              pad_fixapps(f->child2, rel, extra));
    case LfpFormula::Kind::Exists:
      return LfpFormula::exists(f->name, pad_fixapps(f->child, rel, extra));
    case LfpFormula::Kind::Lfp:
      return LfpFormula::lfp(f->name, f->vars, pad_fixapps(f->child, rel, extra), f->terms);
    default:
      return f;
  }
}

LfpPtr normalize(const LfpPtr& f) {
  switch (f->kind) {
    case LfpFormula::Kind::Not:
      return LfpFormula::negation(normalize(f->child));
    case LfpFormula::Kind::And:
      return LfpFormula::conj(normalize(f->child), normalize(f->child2));
    case LfpFormula::Kind::Exists:
      return LfpFormula::exists(f->name, normalize(f->child));
    case LfpFormula::Kind::Lfp: {
      LfpPtr body = normalize(f->child);
      VarSet fv = free_vars_lfp(body);
      std::vector<std::string> extra;
      for (const auto& v : fv)
        if (std::find(f->vars.begin(), f->vars.end(), v) == f->vars.end() &&
            !is_fixpoint_name(v))
          extra.push_back(v);
      if (extra.empty()) return LfpFormula::lfp(f->name, f->vars, body, f->terms);
      VarSet binders;
      collect_binder_names(body, binders);
      for (const auto& v : extra)
        if (binders.count(v))
          throw TranslateError("lfp_to_mu: variable " + v +
                               " is both free and bound inside the fixpoint body of " + f->name);
      LfpPtr padded = pad_fixapps(body, f->name, extra);
      std::vector<std::string> binder = f->vars;
      std::vector<TermPtr> args = f->terms;
      for (const auto& v : extra) {
        binder.push_back(v);
        args.push_back(Term::var(v));
      }
      return LfpFormula::lfp(f->name, std::move(binder), padded, std::move(args));
    }
    default:
      return f;
  }
}

struct LfpToMu {
  std::map<std::string, std::vector<std::string>> binderOf;

  FormulaPtr tr(const LfpPtr& f) {
    switch (f->kind) {
      case LfpFormula::Kind::True:
        return Formula::truth();
      case LfpFormula::Kind::False:
        return Formula::falsity();
      case LfpFormula::Kind::Equal:
        return Formula::eq(f->terms[0], f->terms[1]);
      case LfpFormula::Kind::Rel:
        return Formula::rel(f->name, f->terms);
      case LfpFormula::Kind::Not:
        return Formula::negation(tr(f->child));
      case LfpFormula::Kind::And:
        return Formula::conj(tr(f->child), tr(f->child2));
      case LfpFormula::Kind::Exists:
        return Formula::exists(f->name, tr(f->child));
      case LfpFormula::Kind::FixApp: {
        auto it = binderOf.find(f->name);
        if (it == binderOf.end())
          throw TranslateError("fixpoint relation used outside its binder: " + f->name);
        return assign_then(it->second, f->terms, Formula::fixvar(f->name));
      }
      case LfpFormula::Kind::Lfp: {
        binderOf[f->name] = f->vars;
        FormulaPtr body = tr(f->child);
        binderOf.erase(f->name);
        return assign_then(f->vars, f->terms, Formula::mu(f->name, body));
      }
    }
    throw TranslateError("unreachable");
  }

  static FormulaPtr assign_then(const std::vector<std::string>& vars,
                                const std::vector<TermPtr>& args, FormulaPtr body) {
    if (vars.empty()) return body;
    // Skip the no-op assignment xbar := xbar.
    bool trivial = true;
    for (size_t i = 0; i < vars.size(); ++i)
      if (!(args[i]->kind == Term::Kind::Var && args[i]->name == vars[i])) {
        trivial = false;
        break;
      }
    if (trivial) return body;
    return Formula::diamond(Game::assign(vars, args), std::move(body));
  }
};

}  // namespace

FormulaPtr lfp_to_mu(const LfpPtr& f) {
  std::set<std::string> bound;
  check_single_binding(f, bound);
  LfpPtr norm = normalize(f);
  LfpToMu tr;
  FormulaPtr out = tr.tr(norm);
  if (!positivity_ok(out))
    throw TranslateError("lfp_to_mu produced a non-positive fixpoint (relation used negatively)");
  return out;
}

}  // namespace gamemu
