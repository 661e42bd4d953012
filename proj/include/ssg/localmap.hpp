#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssg/sft.hpp"

namespace ssg {

// Canonical id of a nonempty partial homeomorphism. Two ids are equal iff the
// maps are equal, so `equal` on interned maps is id comparison.
using AtomId = int;
constexpr AtomId kEmpty = -1;
using CylId = int;

struct StateExplosion : CapExceeded {
  using CapExceeded::CapExceeded;
};

struct AtomEdge {
  Letter x, y;  // input, output
  AtomId to;
  bool operator==(const AtomEdge&) const = default;
  auto operator<=>(const AtomEdge&) const = default;
};

struct Atom {
  std::vector<AtomEdge> out;  // sorted by (x, y)
  AtomId inv = kEmpty;
  CylId dom = -1, ran = -1;  // computed lazily
};

// Explicit transducer handed to the interner. Edge targets are either local
// nodes or already interned atoms.
struct XEdge {
  Letter x, y;
  bool local;
  int to;
};
struct XGraph {
  std::vector<std::vector<XEdge>> nodes;
};

// A generator as written in a system file, before interning.
struct Branch {
  Letter x, y;
  int next;  // index of a pending state; -1 is the identity
  bool next_inverse = false;
  CylId when = -1;  // restriction of the next state's domain; -1 = none
};
struct PendingState {
  std::string name;
  std::vector<Branch> branches;
};

class Universe {
 public:
  explicit Universe(Shift s);

  const Shift& shift() const { return shift_; }
  std::size_t max_states = 100000;
  int max_depth = 64;

  // cylinders
  CylId cyl(const CylinderSet& c);
  const CylinderSet& cylinder(CylId id) const { return cyls_[id]; }
  CylId full() const { return 0; }
  CylId none() const { return 1; }
  CylId followers(int prev);

  // atoms
  int size() const { return int(atoms_.size()); }
  const Atom& atom(AtomId a) const { return atoms_[a]; }
  AtomId section(AtomId a, Letter x, Letter y) const;
  AtomId inverse(AtomId a) const { return a == kEmpty ? kEmpty : atoms_[a].inv; }
  AtomId compose(AtomId a, AtomId b);  // a after b
  AtomId identity(CylId c);
  AtomId restrict(AtomId a, CylId c);    // a o Id_c
  AtomId corestrict(CylId c, AtomId a);  // Id_c o a
  AtomId unite(AtomId a, AtomId b);      // requires disjoint domains and ranges
  AtomId prefix(Letter y, AtomId f, Letter x);  // S_y f S_x^-1
  AtomId prefix(const Word& u, AtomId f, const Word& v);
  CylId dom(AtomId a);
  CylId ran(AtomId a);
  bool is_idempotent(AtomId a);

  // pending (file-defined) machines
  int add_pending(PendingState st);
  PendingState& pending(int i) { return pending_[i]; }
  int num_pending() const { return int(pending_.size()); }
  AtomId realize_pending(int state, bool inverse);

  std::vector<AtomId> intern_graph(const XGraph& g, const std::vector<int>& roots, bool validate = false);

  // germ-level questions
  bool germ_disjoint(AtomId a, AtomId b);
  bool germs_equal_at(AtomId a, AtomId b, const EPWord& w);
  std::optional<EPWord> evaluate(AtomId a, const EPWord& w);
  bool in_domain(AtomId a, const EPWord& w);

  // naming
  void set_name(AtomId a, const std::string& n);
  std::string label(AtomId a);
  const std::map<AtomId, std::string>& names() const { return names_; }

  // checks the determinism invariant; throws ValidationError naming the atom
  void validate_atom(AtomId a);

 private:
  struct Sym {
    std::uint8_t k;  // 0 atom, 1 identity on cylinder, 2 pending, 3 pending inverse
    int a;
    bool operator==(const Sym&) const = default;
    auto operator<=>(const Sym&) const = default;
  };
  using SWord = std::vector<Sym>;
  using SNode = std::vector<SWord>;
  struct SNodeHash {
    std::size_t operator()(const SNode& n) const;
  };
  struct EdgesHash {
    std::size_t operator()(const std::vector<AtomEdge>& e) const;
  };

  Shift shift_;
  std::vector<CylinderSet> cyls_;
  std::map<CylinderSet, CylId> cyl_index_;
  std::vector<CylId> fol_cyl_;
  std::vector<std::unordered_map<int, CylId>> after_memo_;
  std::map<std::pair<CylId, CylId>, CylId> meet_memo_;

  std::vector<Atom> atoms_;
  std::unordered_map<std::vector<AtomEdge>, AtomId, EdgesHash> table_index_;
  std::unordered_map<std::string, AtomId> closed_index_;
  std::vector<std::vector<AtomId>> revedges_;
  std::map<std::pair<AtomId, AtomId>, AtomId> compose_memo_;
  std::map<std::pair<AtomId, CylId>, AtomId> restrict_memo_, corestrict_memo_;
  std::map<CylId, AtomId> id_memo_;
  std::map<std::pair<AtomId, AtomId>, bool> disjoint_memo_;
  std::map<std::pair<std::vector<AtomId>, int>, bool> full_memo_;
  std::vector<PendingState> pending_;
  std::map<AtomId, std::string> names_;

  CylId after(CylId c, Letter x);
  CylId meet(CylId a, CylId b);
  bool simplify(SWord& w);
  AtomId intern_node(const SNode& root, bool validate);
  void sym_sections(const Sym& s, Letter z, std::vector<std::pair<Letter, SWord>>& out);
  std::vector<AtomId> resolve(const XGraph& g, std::vector<AtomId>& fresh);
  bool full_state(const std::vector<AtomId>& s, int ctx);
  std::vector<AtomId> step(const std::vector<AtomId>& s, Letter x) const;
  AtomId make_atom(std::vector<AtomEdge> out);
};

// Expression trees over interned maps.
struct MapExpr {
  enum Kind { Atom, Inverse, Compose, Restrict, Section, Union, Prefix } kind = Atom;
  AtomId atom = kEmpty;
  CylinderSet cyl;
  Letter x = 0, y = 0;
  std::shared_ptr<const MapExpr> a, b;

  static MapExpr of(AtomId id);
  static MapExpr inverse(MapExpr e);
  static MapExpr compose(MapExpr e1, MapExpr e2);
  static MapExpr restrict(MapExpr e, CylinderSet c);
  static MapExpr section(Letter y, MapExpr e, Letter x);  // S_y^-1 e S_x
  static MapExpr disjoint_union(MapExpr e1, MapExpr e2);
  static MapExpr prefix(Letter y, MapExpr e, Letter x);  // S_y e S_x^-1
};

AtomId realize(Universe& u, const MapExpr& e);
bool equal(Universe& u, const MapExpr& a, const MapExpr& b);
bool germ_disjoint(Universe& u, const MapExpr& a, const MapExpr& b);

// Self-similar closure test: returns a witness (state, x, y) when not closed.
struct ClosureWitness {
  AtomId state;
  Letter x, y;
};
std::optional<ClosureWitness> self_similar_counterexample(Universe& u, const std::vector<AtomId>& set);

struct MooreArrow {
  int from, to;
  Letter x, y;
  bool operator==(const MooreArrow&) const = default;
  auto operator<=>(const MooreArrow&) const = default;
};
// Arrows between members of a self-similar set, indexed by position.
std::vector<MooreArrow> moore_diagram(Universe& u, const std::vector<AtomId>& set);
std::string moore_dot(Universe& u, const std::vector<AtomId>& set);

// Conjugate maps of a Markov shift to its width-2 block code.
std::vector<AtomId> recode_to_edges(Universe& from, Universe& to, const std::vector<AtomId>& maps);

}  // namespace ssg
