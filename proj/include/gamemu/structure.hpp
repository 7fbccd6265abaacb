#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gamemu/ast.hpp"

namespace gamemu {

class SemanticsError : public std::runtime_error {
 public:
  explicit SemanticsError(const std::string& what) : std::runtime_error(what) {}
};

// Generator presentation of a neighbourhood function value: the interpreted
// family is the upward closure of the listed generator sets. A generator is a
// set of k-tuples over the domain; an absent parameter tuple means the empty
// family (Angel has no move there).
using Tuple = std::vector<int>;
using Generator = std::set<Tuple>;
using GeneratorList = std::vector<Generator>;

struct FiniteNeighbourhoodStructure {
  GameSignature sig;
  int domain = 1;  // elements 0..domain-1
  // Function tables, flat in lexicographic order of argument tuples (first
  // argument most significant). 0-ary symbols have a single entry.
  std::map<std::string, std::vector<int>> functions;
  std::map<std::string, std::set<Tuple>> relations;
  std::map<std::string, std::map<Tuple, GeneratorList>> actions;

  // Table-completeness and range checks; `*` must not be interpreted.
  void validate() const;

  int apply_function(const std::string& f, const Tuple& args) const;
  bool in_relation(const std::string& r, const Tuple& args) const;
  // Empty list when the parameter tuple has no entry.
  const GeneratorList& action_family(const std::string& a, const Tuple& params) const;
};

// Dense bitset over the n^|support| variable assignments with the given
// finite support, in lexicographic order (first support variable most
// significant).
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::vector<std::string> support, int domain, bool full = false);

  const std::vector<std::string>& support() const { return support_; }
  int domain() const { return domain_; }
  uint64_t size() const { return size_; }  // number of assignments

  bool test(uint64_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1; }
  void set(uint64_t idx) { bits_[idx >> 6] |= uint64_t{1} << (idx & 63); }
  void reset(uint64_t idx) { bits_[idx >> 6] &= ~(uint64_t{1} << (idx & 63)); }

  StateSet& operator|=(const StateSet& o);
  StateSet& operator&=(const StateSet& o);
  StateSet complement() const;
  bool operator==(const StateSet& o) const;
  bool subset_of(const StateSet& o) const;
  bool empty() const;
  bool full() const;
  uint64_t count() const;

  // Mixed-radix index arithmetic.
  static uint64_t state_count(size_t vars, int domain);
  uint64_t weight(size_t pos) const { return weights_[pos]; }
  int digit(uint64_t idx, size_t pos) const {
    return static_cast<int>((idx / weights_[pos]) % domain_);
  }
  uint64_t with_digit(uint64_t idx, size_t pos, int value) const {
    return idx + (static_cast<int64_t>(value) - digit(idx, pos)) * weights_[pos];
  }
  size_t var_pos(const std::string& v) const;

  void decode(uint64_t idx, std::vector<int>& out) const;

 private:
  void check_compatible(const StateSet& o) const;
  void trim_mask();
  std::vector<std::string> support_;
  int domain_ = 1;
  uint64_t size_ = 0;
  std::vector<uint64_t> weights_;  // weights_[i] = domain^(|support|-1-i)
  std::vector<uint64_t> bits_;
};

}  // namespace gamemu
