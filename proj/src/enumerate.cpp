#include "gamemu/enumerate.hpp"

namespace gamemu {

namespace {

uint64_t checked_pow(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  while (exp--) {
    if (base != 0 && r > UINT64_MAX / base) throw SemanticsError("enumeration count overflow");
    r *= base;
  }
  return r;
}

uint64_t checked_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw SemanticsError("enumeration count overflow");
  return a * b;
}

uint64_t binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}

// Families of at most maxGen distinct subsets of a set with `subsets` members.
uint64_t family_count(uint64_t subsets, int maxGen) {
  uint64_t total = 0;
  for (int j = 0; j <= maxGen; ++j) total += binomial(subsets, j);
  return total;
}

uint64_t count_for_domain(const GameSignature& sig, int n, int maxGen) {
  uint64_t total = 1;
  for (const auto& [name, arity] : sig.functions()) {
    (void)name;
    total = checked_mul(total, checked_pow(n, checked_pow(n, arity)));
  }
  for (const auto& [name, arity] : sig.relations()) {
    (void)name;
    total = checked_mul(total, checked_pow(2, checked_pow(n, arity)));
  }
  for (const auto& [name, ar] : sig.actions()) {
    (void)name;
    uint64_t subsets = checked_pow(2, checked_pow(n, ar.affects));
    uint64_t perTuple = family_count(subsets, maxGen);
    total = checked_mul(total, checked_pow(perTuple, checked_pow(n, ar.reads)));
  }
  return total;
}

std::vector<Tuple> all_tuples(int n, int len) {
  std::vector<Tuple> out;
  Tuple cur(len, 0);
  for (;;) {
    out.push_back(cur);
    int i = len - 1;
    while (i >= 0 && cur[i] == n - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  if (len == 0) out.resize(1);
  return out;
}

// All subsets of `universe`, ordered by bitmask value.
std::vector<Generator> all_subsets(const std::vector<Tuple>& universe) {
  std::vector<Generator> out;
  size_t m = universe.size();
  if (m > 20) throw SemanticsError("generator universe too large to enumerate");
  for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
    Generator g;
    for (size_t i = 0; i < m; ++i)
      if (mask & (uint64_t{1} << i)) g.insert(universe[i]);
    out.push_back(std::move(g));
  }
  return out;
}

// All families of at most maxGen distinct subsets (strictly increasing index
// sequences), deterministic order.
std::vector<GeneratorList> all_families(const std::vector<Generator>& subsets, int maxGen) {
  std::vector<GeneratorList> out;
  out.push_back({});  // empty family: Angel has no move
  std::vector<size_t> idx;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (!idx.empty()) {
      GeneratorList fam;
      for (size_t i : idx) fam.push_back(subsets[i]);
      out.push_back(std::move(fam));
    }
    if (static_cast<int>(idx.size()) == maxGen) return;
    for (size_t i = start; i < subsets.size(); ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

uint64_t count_structures(const GameSignature& sig, int maxDomain, int maxGenerators) {
  uint64_t total = 0;
  for (int n = 1; n <= maxDomain; ++n) total += count_for_domain(sig, n, maxGenerators);
  return total;
}

void enumerate_structures(const GameSignature& sig, int maxDomain, int maxGenerators,
                          uint64_t cap,
                          const std::function<void(const FiniteNeighbourhoodStructure&)>& sink) {
  uint64_t total = count_structures(sig, maxDomain, maxGenerators);
  if (total > cap) throw EnumerationCapError(total, cap);

  for (int n = 1; n <= maxDomain; ++n) {
    FiniteNeighbourhoodStructure base;
    base.sig = sig;
    base.domain = n;

    // Fill tables dimension by dimension: functions, then relations, then
    // actions, depth-first.
    std::function<void(FiniteNeighbourhoodStructure&, size_t)> emit_funcs, emit_rels, emit_acts;
    std::vector<std::pair<std::string, int>> funcs(sig.functions().begin(), sig.functions().end());
    std::vector<std::pair<std::string, int>> rels(sig.relations().begin(), sig.relations().end());
    std::vector<std::pair<std::string, ArityPair>> acts(sig.actions().begin(),
                                                        sig.actions().end());

    emit_acts = [&](FiniteNeighbourhoodStructure& s, size_t i) {
      if (i == acts.size()) {
        sink(s);
        return;
      }
      const auto& [name, ar] = acts[i];
      std::vector<Tuple> paramTuples = all_tuples(n, ar.reads);
      std::vector<Generator> subsets = all_subsets(all_tuples(n, ar.affects));
      std::vector<GeneratorList> families = all_families(subsets, maxGenerators);
      std::vector<size_t> choice(paramTuples.size(), 0);
      for (;;) {
        auto& table = s.actions[name];
        table.clear();
        for (size_t p = 0; p < paramTuples.size(); ++p)
          if (!families[choice[p]].empty()) table[paramTuples[p]] = families[choice[p]];
        emit_acts(s, i + 1);
        size_t d = 0;
        while (d < choice.size() && choice[d] == families.size() - 1) choice[d++] = 0;
        if (d == choice.size()) break;
        ++choice[d];
      }
      s.actions.erase(name);
    };

    emit_rels = [&](FiniteNeighbourhoodStructure& s, size_t i) {
      if (i == rels.size()) {
        emit_acts(s, 0);
        return;
      }
      const auto& [name, arity] = rels[i];
      std::vector<Tuple> tuples = all_tuples(n, arity);
      if (tuples.size() > 20) throw SemanticsError("relation universe too large");
      for (uint64_t mask = 0; mask < (uint64_t{1} << tuples.size()); ++mask) {
        auto& table = s.relations[name];
        table.clear();
        for (size_t t = 0; t < tuples.size(); ++t)
          if (mask & (uint64_t{1} << t)) table.insert(tuples[t]);
        emit_rels(s, i + 1);
      }
      s.relations.erase(name);
    };

    emit_funcs = [&](FiniteNeighbourhoodStructure& s, size_t i) {
      if (i == funcs.size()) {
        emit_rels(s, 0);
        return;
      }
      const auto& [name, arity] = funcs[i];
      uint64_t tableSize = checked_pow(n, arity);
      std::vector<int> table(tableSize, 0);
      for (;;) {
        s.functions[name] = table;
        emit_funcs(s, i + 1);
        size_t d = 0;
        while (d < table.size() && table[d] == n - 1) table[d++] = 0;
        if (d == table.size()) break;
        ++table[d];
      }
      s.functions.erase(name);
    };

    emit_funcs(base, 0);
  }
}

std::vector<FiniteNeighbourhoodStructure> enumerate_structures_vec(const GameSignature& sig,
                                                                   int maxDomain,
                                                                   int maxGenerators,
                                                                   uint64_t cap) {
  std::vector<FiniteNeighbourhoodStructure> out;
  enumerate_structures(sig, maxDomain, maxGenerators, cap,
                       [&](const FiniteNeighbourhoodStructure& s) { out.push_back(s); });
  return out;
}

}  // namespace gamemu
