#include "gamemu/vars.hpp"

#include <algorithm>

namespace gamemu {

namespace {
VarSet set_union(VarSet a, const VarSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

VarSet set_minus(VarSet a, const VarSet& b) {
  for (const auto& x : b) a.erase(x);
  return a;
}

VarSet set_intersect(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

VarSet of_list(const std::vector<std::string>& xs) { return VarSet(xs.begin(), xs.end()); }
}  // namespace

VarSet free_vars(const TermPtr& t) {
  VarSet out;
  collect_names(t, out);
  return out;
}

VarSet must_bound_vars(const GamePtr& g) {
  switch (g->kind) {
    case Game::Kind::Atomic:
    case Game::Kind::Assign:
      return of_list(g->bound);
    case Game::Kind::Dual:
      return must_bound_vars(g->left);
    case Game::Kind::Test:
    case Game::Kind::Star:
      return {};
    case Game::Kind::Choice:
      return set_intersect(must_bound_vars(g->left), must_bound_vars(g->right));
    case Game::Kind::Seq:
      return set_union(must_bound_vars(g->left), must_bound_vars(g->right));
  }
  return {};
}

VarSet bound_vars(const GamePtr& g) {
  switch (g->kind) {
    case Game::Kind::Atomic:
    case Game::Kind::Assign:
      return of_list(g->bound);
    case Game::Kind::Dual:
    case Game::Kind::Star:
      return bound_vars(g->left);
    case Game::Kind::Test:
      return {};
    case Game::Kind::Choice:
    case Game::Kind::Seq:
      return set_union(bound_vars(g->left), bound_vars(g->right));
  }
  return {};
}

VarSet bound_vars(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Not:
    case Formula::Kind::Mu:
      return bound_vars(f->child);
    case Formula::Kind::And:
      return set_union(bound_vars(f->child), bound_vars(f->child2));
    case Formula::Kind::Diamond:
      return set_union(bound_vars(f->game), bound_vars(f->child));
    default:
      return {};
  }
}

VarSet free_vars(const GamePtr& g) {
  switch (g->kind) {
    case Game::Kind::Atomic:
    case Game::Kind::Assign: {
      VarSet out;
      for (const auto& p : g->params) collect_names(p, out);
      return out;
    }
    case Game::Kind::Dual:
    case Game::Kind::Star:
      return free_vars(g->left);
    case Game::Kind::Test:
      return free_vars(g->test);
    case Game::Kind::Choice:
      return set_union(free_vars(g->left), free_vars(g->right));
    case Game::Kind::Seq:
      return set_union(free_vars(g->left),
                       set_minus(free_vars(g->right), must_bound_vars(g->left)));
  }
  return {};
}

VarSet free_vars(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return {};
    case Formula::Kind::Equal:
    case Formula::Kind::Rel: {
      VarSet out;
      for (const auto& t : f->terms) collect_names(t, out);
      return out;
    }
    case Formula::Kind::Not:
      return free_vars(f->child);
    case Formula::Kind::And:
      return set_union(free_vars(f->child), free_vars(f->child2));
    case Formula::Kind::Diamond:
      return set_union(free_vars(f->game),
                       set_minus(free_vars(f->child), must_bound_vars(f->game)));
    case Formula::Kind::FixVar:
      return {f->name};
    case Formula::Kind::Mu: {
      VarSet out = free_vars(f->child);
      out.erase(f->name);
      return out;
    }
  }
  return {};
}

}  // namespace gamemu
