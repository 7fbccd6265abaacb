#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamemu/enumerate.hpp"
#include "gamemu/eval.hpp"
#include "gamemu/json_io.hpp"
#include "gamemu/parser.hpp"
#include "gamemu/printer.hpp"
#include "gamemu/subst.hpp"
#include "gen.hpp"

using namespace gamemu;
using testgen::Gen;

namespace {

// D = {0,1}, f = identity, c = 0, R = {1}, a = successor mod 2 on its bound
// variable (generators {{u+1 mod 2}} for parameter u), b: no moves.
FiniteNeighbourhoodStructure base_structure() {
  FiniteNeighbourhoodStructure s;
  s.sig = testgen::test_signature();
  s.domain = 2;
  s.functions["c"] = {0};
  s.functions["f"] = {0, 1};
  s.relations["R"] = {{1}};
  s.actions["a"][{0}] = {Generator{{1}}};
  s.actions["a"][{1}] = {Generator{{0}}};
  s.validate();
  return s;
}

StateSet eval_str(const FiniteNeighbourhoodStructure& N, const std::string& text,
                  const VarSet& extra = {}) {
  FormulaPtr f = parse_formula_any(text, N.sig);
  return eval_formula(N, f, compute_support(f, extra));
}

}  // namespace

TEST_CASE("term evaluation") {
  auto N = base_structure();
  StateSet shape({"x"}, 2);
  TermPtr fx = parse_term("f(x)", N.sig);
  CHECK(eval_term(N, shape, /*state x=1*/ 1, fx) == 1);
  CHECK(eval_term(N, shape, 0, parse_term("c", N.sig)) == 0);
  auto N2 = N;
  N2.functions["f"] = {1, 0};  // successor mod 2
  CHECK(eval_term(N2, shape, 0, parse_term("f(f(x))", N2.sig)) == 0);
}

TEST_CASE("game evaluation clauses") {
  auto N = base_structure();
  std::vector<std::string> sup{"x"};
  StateSet S(sup, 2);
  S.set(1);  // {x = 1}

  CHECK(eval_game(N, parse_game("x := *", N.sig), S).full());
  CHECK(eval_game(N, parse_game("? false", N.sig), S).empty());
  // successor action repeated reaches everything from {x=1}
  CHECK(eval_game(N, parse_game("(a(x : x))*", N.sig), S).full());
  // deterministic assignment fast path: c = 0, goal wants x = 1
  CHECK(eval_game(N, parse_game("x := c", N.sig), S).empty());
}

TEST_CASE("mu evaluation") {
  auto N = base_structure();
  CHECK(eval_str(N, "mu X . (R(x) | <x := *> X)").full());
  CHECK(eval_str(N, "mu X . X", {"x"}).empty());
  CHECK(eval_str(N, "nu X . X", {"x"}).full());
}

TEST_CASE("lfp helper") {
  StateSet bottom({"x"}, 2);
  StateSet top = bottom.complement();
  CHECK(lfp([&](const StateSet&) { return top; }, bottom) == top);
  CHECK(lfp([&](const StateSet& z) { return z; }, bottom) == bottom);
}

TEST_CASE("structure enumeration counts") {
  GameSignature relOnly;
  relOnly.add_relation("R", 1);
  CHECK(enumerate_structures_vec(relOnly, 1, 1).size() == 2);

  GameSignature empty;
  CHECK(enumerate_structures_vec(empty, 2, 1).size() == 2);

  GameSignature act;
  act.add_action("g", {1, 0});
  auto vec = enumerate_structures_vec(act, 1, 1);
  CHECK(vec.size() == count_structures(act, 1, 1));
  // domain 1: subsets of D^1 are {} and {0}; families of <=1 generator: 3
  CHECK(vec.size() == 3);

  CHECK_THROWS_AS(enumerate_structures_vec(testgen::small_signature(), 2, 2, 10),
                  EnumerationCapError);

  auto all = enumerate_structures_vec(testgen::small_signature(), 2, 2);
  CHECK(all.size() == count_structures(testgen::small_signature(), 2, 2));
  CHECK(all.size() == 8 + 4 * 121);  // n=1: 2 relations x 4 families; n=2: 4 x 11^2
}

TEST_CASE("semantic equality examples") {
  auto N = base_structure();
  CHECK(semantically_equal(N, parse_formula_any("<? R(y)> R(x)", N.sig),
                           parse_formula_any("R(y) & R(x)", N.sig)));
  CHECK(semantically_equal(N, parse_formula_any("<(a(x : x))^d> R(x)", N.sig),
                           parse_formula_any("!<a(x : x)> !R(x)", N.sig)));
  CHECK(!semantically_equal(N, parse_formula_any("<x := *> R(x)", N.sig),
                            parse_formula_any("R(x)", N.sig)));
}

TEST_CASE("monotonicity of game denotations") {
  Gen gen(101, true);
  auto structures = enumerate_structures_vec(testgen::small_signature(), 2, 1);
  for (int i = 0; i < 60; ++i) {
    GamePtr g = gen.game(3);
    const auto& N = structures[gen.pick(structures.size())];
    auto sup = compute_support(g, {"x", "y"});
    StateSet S = testgen::random_state_set(gen, sup, N.domain);
    StateSet T = S;
    for (uint64_t s = 0; s < T.size(); ++s)
      if (gen.coin()) T.set(s);
    CHECK(eval_game(N, g, S).subset_of(eval_game(N, g, T)));
  }
}

TEST_CASE("least fixpoint law and minimality on small state spaces") {
  Gen gen(103, true);
  auto structures = enumerate_structures_vec(testgen::small_signature(), 2, 1);
  int done = 0;
  for (int i = 0; done < 25 && i < 200; ++i) {
    GamePtr g = gen.game(2);
    auto sup = compute_support(g, {"x"});
    if (StateSet::state_count(sup.size(), 2) > 8) continue;
    ++done;
    const auto& N = structures[gen.pick(structures.size())];
    StateSet S = testgen::random_state_set(gen, sup, N.domain);
    StateSet fix = eval_game(N, Game::star(g), S);
    StateSet rhs = eval_game(N, g, fix);
    rhs |= S;
    CHECK(rhs == fix);
    uint64_t states = fix.size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << states); ++mask) {
      StateSet Z(sup, N.domain);
      for (uint64_t s = 0; s < states; ++s)
        if (mask & (uint64_t{1} << s)) Z.set(s);
      StateSet step = eval_game(N, g, Z);
      step |= S;
      if (step.subset_of(Z)) CHECK(fix.subset_of(Z));
    }
  }
  CHECK(done == 25);
}

TEST_CASE("duality involution") {
  Gen gen(107, true);
  auto structures = enumerate_structures_vec(testgen::small_signature(), 2, 1);
  for (int i = 0; i < 40; ++i) {
    GamePtr g = gen.game(3);
    const auto& N = structures[gen.pick(structures.size())];
    auto sup = compute_support(g, {"x"});
    StateSet S = testgen::random_state_set(gen, sup, N.domain);
    CHECK(eval_game(N, Game::dual(Game::dual(g)), S) == eval_game(N, g, S));
  }
}

TEST_CASE("coincidence: enlarged supports project") {
  Gen gen(109);
  auto N = base_structure();
  for (int i = 0; i < 60; ++i) {
    FormulaPtr f = gen.coin() ? gen.gl_formula(3) : gen.mu_formula(3);
    if (!free_fixpoint_vars(f).empty()) continue;
    auto sup = compute_support(f);
    StateSet small = eval_formula(N, f, sup);
    auto supBig = compute_support(f, {"zextra"});
    StateSet big = eval_formula(N, f, supBig);
    StateSet shape(supBig, 2);
    for (uint64_t s = 0; s < big.size(); ++s) {
      uint64_t proj = 0;
      for (size_t k = 0; k < sup.size(); ++k) {
        size_t pos = shape.var_pos(sup[k]);
        proj = small.with_digit(proj, k, shape.digit(s, pos));
      }
      CHECK(big.test(s) == small.test(proj));
    }
  }
}

TEST_CASE("bound effect lemma") {
  Gen gen(113, true);
  auto structures = enumerate_structures_vec(testgen::small_signature(), 2, 1);
  for (int i = 0; i < 40; ++i) {
    GamePtr g = gen.game(3);
    const auto& N = structures[gen.pick(structures.size())];
    auto sup = compute_support(g, {"x"});
    StateSet S = testgen::random_state_set(gen, sup, N.domain);
    StateSet lhs = eval_game(N, g, S);
    VarSet bv = bound_vars(g);
    StateSet shape(sup, N.domain);
    for (uint64_t w = 0; w < shape.size(); ++w) {
      StateSet T(sup, N.domain);
      for (uint64_t s = 0; s < T.size(); ++s) {
        if (!S.test(s)) continue;
        bool same = true;
        for (size_t k = 0; k < sup.size(); ++k)
          if (!bv.count(sup[k]) && shape.digit(s, k) != shape.digit(w, k)) {
            same = false;
            break;
          }
        if (same) T.set(s);
      }
      CHECK(lhs.test(w) == eval_game(N, g, T).test(w));
    }
  }
}

TEST_CASE("substitution adjoint for both logics") {
  Gen gen(127);
  auto N = base_structure();
  for (int i = 0; i < 120; ++i) {
    FormulaPtr f = gen.coin() ? gen.gl_formula(3) : gen.mu_formula(3);
    if (!free_fixpoint_vars(f).empty()) continue;
    std::string x = gen.var();
    TermPtr theta = gen.term(2);
    FormulaPtr sub = substitute_var(f, x, theta);
    VarSet all;
    for (const auto& v : compute_support(sub)) all.insert(v);
    for (const auto& v : compute_support(f)) all.insert(v);
    for (const auto& v : free_vars(theta)) all.insert(v);
    all.insert(x);
    std::vector<std::string> support(all.begin(), all.end());
    StateSet lhs = eval_formula(N, sub, support);
    StateSet rhs = eval_formula(N, f, support);
    StateSet shape(support, 2);
    size_t pos = shape.var_pos(x);
    for (uint64_t s = 0; s < lhs.size(); ++s) {
      int v = eval_term(N, shape, s, theta);
      CHECK(lhs.test(s) == rhs.test(shape.with_digit(s, pos, v)));
    }
  }
}

TEST_CASE("fixpoint substitution law") {
  Gen gen(131);
  auto N = base_structure();
  int done = 0;
  for (int i = 0; done < 60 && i < 600; ++i) {
    FormulaPtr f = gen.mu_formula(3, {"X"});
    FormulaPtr rho = gen.mu_formula(2);
    if (!free_fixpoint_vars(rho).empty()) continue;
    ++done;
    FormulaPtr sub = substitute_fixvar(f, "X", rho);
    VarSet all;
    for (const auto& v : compute_support(sub)) all.insert(v);
    for (const auto& v : compute_support(f)) all.insert(v);
    for (const auto& v : compute_support(rho)) all.insert(v);
    std::vector<std::string> support(all.begin(), all.end());
    StateSet rhoVal = eval_formula(N, rho, support);
    FixpointInterpretation I{{"X", rhoVal}};
    CHECK(eval_formula(N, sub, support) == eval_formula(N, f, support, I));
  }
  CHECK(done == 60);
}

TEST_CASE("native assignment equals its star encoding") {
  Gen gen(137);
  auto N = base_structure();
  for (int i = 0; i < 80; ++i) {
    FormulaPtr f = gen.coin() ? gen.gl_formula(3) : gen.mu_formula(3);
    if (!free_fixpoint_vars(f).empty()) continue;
    FormulaPtr expanded = expand_assignments(f);
    CHECK(semantically_equal(N, f, expanded));
  }
  FormulaPtr swap = parse_formula_any("<x, y := y, x> R(x)", N.sig);
  FormulaPtr direct = parse_formula_any("R(y)", N.sig);
  CHECK(semantically_equal(N, swap, direct, {"x", "y"}));
  CHECK(semantically_equal(N, expand_assignments(swap), direct, {"x", "y"}));
}

TEST_CASE("rename_bound preserves denotations") {
  Gen gen(139);
  auto N = base_structure();
  for (int i = 0; i < 80; ++i) {
    FormulaPtr f = gen.coin() ? gen.gl_formula(3) : gen.mu_formula(3);
    if (!free_fixpoint_vars(f).empty()) continue;
    VarSet avoid;
    if (gen.coin()) avoid.insert("x");
    if (gen.coin()) avoid.insert("y");
    if (avoid.empty()) avoid.insert("x");
    FormulaPtr r = rename_bound(f, avoid);
    for (const auto& v : bound_vars(r)) CHECK(avoid.count(v) == 0);
    CHECK(semantically_equal(N, f, r, avoid));
  }
}

TEST_CASE("structure json round trip") {
  auto N = base_structure();
  std::string js = structure_to_json(N);
  auto N2 = parse_structure_json(js);
  CHECK(N2.domain == N.domain);
  CHECK(N2.functions == N.functions);
  CHECK(N2.relations == N.relations);
  CHECK(N2.actions == N.actions);

  // the spec's example file shape: values wrapped in 1-element arrays
  auto N3 = parse_structure_json(R"({"domain": 2,
    "functions": {"f": [[0],[1]]},
    "relations": {"R": [[1]]},
    "actions": {"a": {"arity": [1,1],
      "map": [{"params": [0], "generators": [[[1]]]},
              {"params": [1], "generators": [[[0]]]}]}}})");
  CHECK(N3.functions["f"] == std::vector<int>{0, 1});
  CHECK(N3.relations["R"].count({1}) == 1);
  CHECK(N3.actions["a"][{0}].size() == 1);

  CHECK_THROWS(parse_structure_json(R"({"domain": 0})"));
  CHECK_THROWS(parse_structure_json(
      R"({"domain": 1, "actions": {"*": {"arity": [1,0], "map": []}}})"));
}
