#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssg/localmap.hpp"

namespace ssg {

struct NotContracting : CapExceeded {
  std::vector<std::size_t> trace;  // element count after each sweep
  NotContracting(const std::string& msg, std::vector<std::size_t> t) : CapExceeded(msg), trace(std::move(t)) {}
};

struct NotInNucleus : Error {
  using Error::Error;
};

struct NucleusOptions {
  std::size_t max_elements = 512;
  int max_depth = 64;
};

struct Nucleus {
  std::vector<AtomId> elements;  // empty map excluded; ordered by canonical key
  std::vector<std::string> names;
  int n0 = 1;
  int k1 = 0;

  int index(AtomId a) const;  // -1 if absent
  bool contains(AtomId a) const { return index(a) >= 0; }
  int size() const { return int(elements.size()); }
};

// Stable serialization of the transducer rooted at a.
std::string canonical_key(const Universe& u, AtomId a);

// All maps reachable from the seed by sections (the seed included).
std::vector<AtomId> section_closure(const Universe& u, const std::vector<AtomId>& seed, std::size_t cap = 100000);

// Maps that occur as sections of the seed at arbitrarily large depth.
std::vector<AtomId> eventual_sections(const Universe& u, const std::vector<AtomId>& seed);

// Nonempty sections at depth d, counted with multiplicity over pairs (u, v).
std::map<AtomId, long> section_counts(const Universe& u, AtomId a, int d);

struct SectionCell {
  Word u, v;  // output, input
  AtomId f;
};
// All nonempty sections S_u^-1 a S_v with |u| = |v| = d.
std::vector<SectionCell> sections_at(const Universe& u, AtomId a, int d);

Nucleus compute_nucleus(Universe& u, const std::vector<AtomId>& gens, const NucleusOptions& opt = {});

// Decomposition of F1 F2 into sections at depth n0 (or the given depth).
std::vector<SectionCell> product_section_table(Universe& u, const Nucleus& nuc, AtomId f1, AtomId f2,
                                               int depth = -1);

// Ordered multisections. Pairs are stored restricted so that dom(F1) = ran(F2).
struct MultiNucleus {
  int n = 1;
  std::vector<std::vector<AtomId>> tuples;
};
MultiNucleus multi_nucleus(Universe& u, const Nucleus& nuc, int n);
// canonical restricted form of a pair; empty vector if the multisection is empty
std::vector<AtomId> canonical_pair(Universe& u, AtomId f1, AtomId f2);

std::vector<AtomId> vertex_idempotents(Universe& u);

}  // namespace ssg
