#include "gamemu/structure.hpp"

#include <bit>

namespace gamemu {

namespace {
uint64_t ipow(uint64_t base, unsigned exp) {
  uint64_t r = 1;
  while (exp--) {
    if (base != 0 && r > UINT64_MAX / base) throw SemanticsError("state space overflow");
    r *= base;
  }
  return r;
}
}  // namespace

void FiniteNeighbourhoodStructure::validate() const {
  if (domain < 1) throw SemanticsError("domain must be non-empty");
  auto check_el = [&](int v, const std::string& where) {
    if (v < 0 || v >= domain) throw SemanticsError("domain element out of range in " + where);
  };
  for (const auto& [name, arity] : sig.functions()) {
    auto it = functions.find(name);
    if (it == functions.end()) throw SemanticsError("missing function table for " + name);
    if (it->second.size() != ipow(domain, arity))
      throw SemanticsError("function table size mismatch for " + name);
    for (int v : it->second) check_el(v, name);
  }
  for (const auto& [name, arity] : sig.relations()) {
    auto it = relations.find(name);
    if (it == relations.end()) throw SemanticsError("missing relation table for " + name);
    for (const auto& tup : it->second) {
      if (tup.size() != static_cast<size_t>(arity))
        throw SemanticsError("relation tuple arity mismatch for " + name);
      for (int v : tup) check_el(v, name);
    }
  }
  if (actions.count(kStarSymbol))
    throw SemanticsError("the quantifier symbol * must not be interpreted explicitly");
  for (const auto& [name, table] : actions) {
    ArityPair ar = sig.action_arity(name);
    for (const auto& [params, gens] : table) {
      if (params.size() != static_cast<size_t>(ar.reads))
        throw SemanticsError("action parameter arity mismatch for " + name);
      for (int v : params) check_el(v, name);
      for (const auto& gen : gens)
        for (const auto& tup : gen) {
          if (tup.size() != static_cast<size_t>(ar.affects))
            throw SemanticsError("generator tuple arity mismatch for " + name);
          for (int v : tup) check_el(v, name);
        }
    }
  }
}

int FiniteNeighbourhoodStructure::apply_function(const std::string& f, const Tuple& args) const {
  auto it = functions.find(f);
  if (it == functions.end()) throw SemanticsError("no table for function " + f);
  uint64_t idx = 0;
  for (int a : args) idx = idx * domain + a;
  return it->second.at(idx);
}

bool FiniteNeighbourhoodStructure::in_relation(const std::string& r, const Tuple& args) const {
  auto it = relations.find(r);
  if (it == relations.end()) throw SemanticsError("no table for relation " + r);
  return it->second.count(args) != 0;
}

const GeneratorList& FiniteNeighbourhoodStructure::action_family(const std::string& a,
                                                                 const Tuple& params) const {
  static const GeneratorList kEmpty;
  auto it = actions.find(a);
  if (it == actions.end()) return kEmpty;
  auto jt = it->second.find(params);
  return jt == it->second.end() ? kEmpty : jt->second;
}

// ---------------------------------------------------------------------------

uint64_t StateSet::state_count(size_t vars, int domain) {
  return ipow(domain, static_cast<unsigned>(vars));
}

StateSet::StateSet(std::vector<std::string> support, int domain, bool fullSet)
    : support_(std::move(support)), domain_(domain) {
  size_ = state_count(support_.size(), domain_);
  weights_.resize(support_.size());
  uint64_t w = 1;
  for (size_t i = support_.size(); i-- > 0;) {
    weights_[i] = w;
    w *= domain_;
  }
  bits_.assign((size_ + 63) / 64, 0);
  if (fullSet) {
    for (auto& word : bits_) word = ~uint64_t{0};
    trim_mask();
  }
}

void StateSet::check_compatible(const StateSet& o) const {
  if (support_ != o.support_ || domain_ != o.domain_)
    throw SemanticsError("state set support mismatch");
}

void StateSet::trim_mask() {
  if (bits_.empty()) return;
  unsigned rem = size_ & 63;
  if (rem) bits_.back() &= (uint64_t{1} << rem) - 1;
}

StateSet& StateSet::operator|=(const StateSet& o) {
  check_compatible(o);
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

StateSet& StateSet::operator&=(const StateSet& o) {
  check_compatible(o);
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

StateSet StateSet::complement() const {
  StateSet out = *this;
  for (auto& word : out.bits_) word = ~word;
  out.trim_mask();
  return out;
}

bool StateSet::operator==(const StateSet& o) const {
  return support_ == o.support_ && domain_ == o.domain_ && bits_ == o.bits_;
}

bool StateSet::subset_of(const StateSet& o) const {
  check_compatible(o);
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

bool StateSet::empty() const {
  for (auto word : bits_)
    if (word) return false;
  return true;
}

bool StateSet::full() const { return count() == size_; }

uint64_t StateSet::count() const {
  uint64_t c = 0;
  for (auto word : bits_) c += std::popcount(word);
  return c;
}

size_t StateSet::var_pos(const std::string& v) const {
  for (size_t i = 0; i < support_.size(); ++i)
    if (support_[i] == v) return i;
  throw SemanticsError("variable outside evaluation support: " + v);
}

void StateSet::decode(uint64_t idx, std::vector<int>& out) const {
  out.resize(support_.size());
  for (size_t i = 0; i < support_.size(); ++i) out[i] = digit(idx, i);
}

}  // namespace gamemu
