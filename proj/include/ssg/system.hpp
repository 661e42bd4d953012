#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssg/localmap.hpp"

namespace ssg {

struct BranchLine {
  std::string x, y, next;  // next is a generator name, NAME^-1, or "id"
  std::string when;        // cylinder text, empty for none
  bool operator==(const BranchLine&) const = default;
};

struct GeneratorSpec {
  std::string name;
  std::string inverse_of;  // when set, branches are ignored
  std::string domain;      // optional declared domain, checked on load
  std::vector<BranchLine> branches;
  bool operator==(const GeneratorSpec&) const = default;
};

// Text-level description of a self-similar system.
struct SystemSpec {
  std::string name;
  bool markov = false;
  VertexGraph graph;                    // edge shift
  std::vector<std::string> letters;     // markov shift
  std::vector<std::pair<std::string, std::string>> forbidden;
  std::vector<GeneratorSpec> generators;
  std::map<std::string, std::string> options;
  std::map<std::string, std::string> expected;

  Shift shift() const;
  bool operator==(const SystemSpec& o) const;
};

SystemSpec parse_system(const std::string& text);
SystemSpec parse_system_file(const std::string& path);
std::string serialize(const SystemSpec& s);

// A spec realized in a universe.
struct System {
  SystemSpec spec;
  std::unique_ptr<Universe> u;
  std::vector<std::string> names;  // generator names in file order
  std::vector<AtomId> gens;

  AtomId gen(const std::string& name) const;
  // expression in generator names: products "A*B", inverses "A^-1", "1", "I[cells]"
  AtomId parse_element(const std::string& text);
};

System load(const SystemSpec& spec);

}  // namespace ssg
