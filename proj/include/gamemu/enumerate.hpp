#pragma once

#include <functional>

#include "gamemu/structure.hpp"

namespace gamemu {

class EnumerationCapError : public SemanticsError {
 public:
  explicit EnumerationCapError(uint64_t count, uint64_t cap)
      : SemanticsError("structure enumeration would produce " + std::to_string(count) +
                       " structures, over the cap of " + std::to_string(cap)) {}
};

// Number of structures enumerate_structures would yield (closed form).
uint64_t count_structures(const GameSignature& sig, int maxDomain, int maxGenerators);

// Exhaustively enumerates all structures with 1 <= |D| <= maxDomain and at
// most maxGenerators generator sets per action parameter tuple, deduplicated
// up to table identity; `*` is never varied. Throws EnumerationCapError when
// the closed-form count exceeds cap.
void enumerate_structures(const GameSignature& sig, int maxDomain, int maxGenerators,
                          uint64_t cap,
                          const std::function<void(const FiniteNeighbourhoodStructure&)>& sink);

std::vector<FiniteNeighbourhoodStructure> enumerate_structures_vec(const GameSignature& sig,
                                                                   int maxDomain,
                                                                   int maxGenerators,
                                                                   uint64_t cap = 200000);

}  // namespace gamemu
