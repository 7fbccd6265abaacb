#include "gamemu/json_io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

namespace gamemu {

using nlohmann::json;

namespace {

int unwrap_value(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_array() && v.size() == 1 && v[0].is_number_integer()) return v[0].get<int>();
  throw SemanticsError("bad table entry in " + where);
}

// Flat table in lexicographic argument order; entries may be wrapped in
// 1-element arrays. Arity is inferred from the length unless pinned.
std::vector<int> read_function_table(const json& v, const std::string& name, int domain,
                                     int declaredArity, int* arityOut) {
  std::vector<int> table;
  if (v.is_number_integer()) {
    table.push_back(v.get<int>());
  } else if (v.is_array()) {
    for (const auto& e : v) table.push_back(unwrap_value(e, name));
  } else {
    throw SemanticsError("bad function table for " + name);
  }
  int arity;
  if (declaredArity >= 0) {
    arity = declaredArity;
  } else {
    arity = 0;
    uint64_t want = 1;
    while (want < table.size()) {
      want *= domain;
      ++arity;
    }
    if (want != table.size())
      throw SemanticsError("function table for " + name +
                           " has no domain-power length; declare its arity in a signature block");
  }
  *arityOut = arity;
  return table;
}

Tuple read_tuple(const json& v, const std::string& where) {
  if (!v.is_array()) throw SemanticsError("expected a tuple in " + where);
  Tuple t;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw SemanticsError("bad tuple element in " + where);
    t.push_back(e.get<int>());
  }
  return t;
}

}  // namespace

FiniteNeighbourhoodStructure parse_structure_json(const std::string& text) {
  json j = json::parse(text);
  FiniteNeighbourhoodStructure s;
  if (!j.contains("domain") || !j["domain"].is_number_integer())
    throw SemanticsError("structure file needs an integer domain size");
  s.domain = j["domain"].get<int>();
  if (s.domain < 1) throw SemanticsError("domain must be non-empty");

  std::map<std::string, int> declaredFns, declaredRels;
  std::map<std::string, ArityPair> declaredActs;
  if (j.contains("signature")) {
    const json& sg = j["signature"];
    if (sg.contains("functions"))
      for (auto it = sg["functions"].begin(); it != sg["functions"].end(); ++it)
        declaredFns[it.key()] = it.value().get<int>();
    if (sg.contains("relations"))
      for (auto it = sg["relations"].begin(); it != sg["relations"].end(); ++it)
        declaredRels[it.key()] = it.value().get<int>();
    if (sg.contains("actions"))
      for (auto it = sg["actions"].begin(); it != sg["actions"].end(); ++it) {
        Tuple kl = read_tuple(it.value(), "signature.actions");
        if (kl.size() != 2) throw SemanticsError("action arity must be a [k,l] pair");
        declaredActs[it.key()] = {kl[0], kl[1]};
      }
  }

  if (j.contains("functions"))
    for (auto it = j["functions"].begin(); it != j["functions"].end(); ++it) {
      int declared = declaredFns.count(it.key()) ? declaredFns[it.key()] : -1;
      int arity = 0;
      s.functions[it.key()] = read_function_table(it.value(), it.key(), s.domain, declared, &arity);
      s.sig.add_function(it.key(), arity);
    }

  if (j.contains("relations"))
    for (auto it = j["relations"].begin(); it != j["relations"].end(); ++it) {
      std::set<Tuple> tuples;
      int arity = declaredRels.count(it.key()) ? declaredRels[it.key()] : -1;
      for (const auto& e : it.value()) {
        Tuple t = read_tuple(e, it.key());
        if (arity < 0) arity = static_cast<int>(t.size());
        tuples.insert(std::move(t));
      }
      if (arity < 0)
        throw SemanticsError("empty relation " + it.key() +
                             " needs a declared arity in a signature block");
      s.relations[it.key()] = std::move(tuples);
      s.sig.add_relation(it.key(), arity);
    }

  if (j.contains("actions"))
    for (auto it = j["actions"].begin(); it != j["actions"].end(); ++it) {
      const json& av = it.value();
      if (it.key() == kStarSymbol)
        throw SemanticsError("the quantifier symbol * must not appear in a structure file");
      ArityPair ar;
      if (av.contains("arity")) {
        Tuple kl = read_tuple(av["arity"], it.key());
        if (kl.size() != 2) throw SemanticsError("action arity must be a [k,l] pair");
        ar = {kl[0], kl[1]};
      } else if (declaredActs.count(it.key())) {
        ar = declaredActs[it.key()];
      } else {
        throw SemanticsError("action " + it.key() + " needs an arity");
      }
      s.sig.add_action(it.key(), ar);
      std::map<Tuple, GeneratorList> table;
      if (av.contains("map"))
        for (const auto& entry : av["map"]) {
          Tuple params = read_tuple(entry.at("params"), it.key());
          GeneratorList gens;
          for (const auto& g : entry.at("generators")) {
            Generator gen;
            for (const auto& tup : g) gen.insert(read_tuple(tup, it.key()));
            gens.push_back(std::move(gen));
          }
          if (table.count(params))
            throw SemanticsError("duplicate parameter tuple in action " + it.key());
          table[params] = std::move(gens);
        }
      if (!table.empty()) s.actions[it.key()] = std::move(table);
    }

  s.validate();
  return s;
}

FiniteNeighbourhoodStructure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SemanticsError("cannot open structure file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_structure_json(text);
}

std::string structure_to_json(const FiniteNeighbourhoodStructure& s) {
  json j;
  j["domain"] = s.domain;
  json sg;
  for (const auto& [name, arity] : s.sig.functions()) sg["functions"][name] = arity;
  for (const auto& [name, arity] : s.sig.relations()) sg["relations"][name] = arity;
  for (const auto& [name, ar] : s.sig.actions())
    sg["actions"][name] = json::array({ar.affects, ar.reads});
  j["signature"] = sg;
  for (const auto& [name, table] : s.functions) j["functions"][name] = table;
  for (const auto& [name, tuples] : s.relations) {
    json arr = json::array();
    for (const auto& t : tuples) arr.push_back(t);
    j["relations"][name] = arr;
  }
  for (const auto& [name, table] : s.actions) {
    json map = json::array();
    for (const auto& [params, gens] : table) {
      json entry;
      entry["params"] = params;
      json garr = json::array();
      for (const auto& g : gens) {
        json tuples = json::array();
        for (const auto& t : g) tuples.push_back(t);
        garr.push_back(tuples);
      }
      entry["generators"] = garr;
      map.push_back(entry);
    }
    ArityPair ar = s.sig.action_arity(name);
    j["actions"][name] = {{"arity", json::array({ar.affects, ar.reads})}, {"map", map}};
  }
  return j.dump(2);
}

}  // namespace gamemu
