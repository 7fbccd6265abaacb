#pragma once

#include <string>

#include "gamemu/structure.hpp"

namespace gamemu {

// Structure file format (see README): domain size, function tables flat in
// lexicographic argument order (values optionally wrapped in 1-element
// arrays), relations as tuple lists, actions as {"arity":[k,l],"map":[...]}
// with explicit generator lists. An optional "signature" block pins arities
// when tables alone are ambiguous. `*` must not appear.
FiniteNeighbourhoodStructure load_structure(const std::string& path);
FiniteNeighbourhoodStructure parse_structure_json(const std::string& text);
std::string structure_to_json(const FiniteNeighbourhoodStructure& s);

}  // namespace gamemu
