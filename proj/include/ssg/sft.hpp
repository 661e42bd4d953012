#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ssg {

using Letter = char16_t;
using Word = std::u16string;

constexpr int kNoLetter = -1;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input that does not describe a valid object (parse errors, broken invariants).
struct ValidationError : Error {
  using Error::Error;
};

// A configured resource cap was hit.
struct CapExceeded : Error {
  using Error::Error;
};

struct VertexGraph {
  std::vector<std::string> vertices;
  std::vector<std::string> edges;
  std::vector<int> src, dst;

  int num_vertices() const { return int(vertices.size()); }
  int num_edges() const { return int(edges.size()); }
  int add_vertex(std::string name);
  int add_edge(std::string name, int s, int d);
  int vertex_index(const std::string& name) const;  // -1 if missing

  // adjacency counts A[a][b] = number of edges a -> b
  std::vector<std::vector<long>> adjacency() const;
  std::string to_dot(const std::string& title = "G") const;
};

struct Path {
  int start = 0;  // start vertex; meaningful for empty paths
  Word word;
  bool operator==(const Path&) const = default;
  auto operator<=>(const Path&) const = default;
};

std::vector<Path> allowed_paths(const VertexGraph& g, int n);

struct Primitivity {
  bool primitive = false;
  std::optional<int> witness;
};
Primitivity is_primitive(const VertexGraph& g);
Primitivity is_primitive(const std::vector<std::vector<long>>& adj);

// Subgraph spanned by vertices that are endpoints of arbitrarily long paths.
VertexGraph eventual_image(const VertexGraph& g);

// One-sided shift of finite type: letters with an allowed-transition relation.
// Edge shifts keep their graph; Markov shifts only have letters.
class Shift {
 public:
  static Shift edge_shift(const VertexGraph& g);
  static Shift markov(std::vector<std::string> letters,
                      const std::vector<std::pair<int, int>>& forbidden);

  int size() const { return int(names_.size()); }
  bool allowed(int a, int b) const { return allow_[a * size() + b]; }
  // followers of a letter; kNoLetter gives all letters
  const std::vector<Letter>& followers(int prev) const;
  bool is_edge_shift() const { return graph_.has_value(); }
  const VertexGraph& graph() const;
  const std::string& name(int a) const { return names_[a]; }
  int letter(const std::string& name) const;  // -1 if missing

  bool word_allowed(const Word& w, int prev = kNoLetter) const;
  std::vector<Word> words(int n, int prev = kNoLetter) const;
  std::vector<std::vector<long>> transition_matrix() const;

  std::string format(const Word& w) const;  // comma separated names
  Word parse_word(const std::string& s) const;

  bool operator==(const Shift& o) const {
    return names_ == o.names_ && allow_ == o.allow_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<char> allow_;
  std::vector<std::vector<Letter>> fol_;
  std::vector<Letter> all_;
  std::optional<VertexGraph> graph_;
  void finish();
};

// Width-k block code of an edge graph. Dictionary maps new edges to old paths.
struct BlockCode {
  VertexGraph graph;
  std::vector<Word> dictionary;
  std::vector<Word> vertex_words;
};
BlockCode block_code(const VertexGraph& g, int k);
// Markov shifts recode into an edge graph: vertices are allowed words of
// length k-1, edges are allowed words of length k.
BlockCode block_code(const Shift& s, int k);

// Uniform-depth set of cylinders. depth 0 means either empty or everything.
struct CylinderSet {
  int depth = 0;
  std::vector<Word> cells;  // sorted, distinct, all of length depth

  static CylinderSet full() { return {0, {Word()}}; }
  static CylinderSet empty() { return {0, {}}; }
  bool is_empty() const { return cells.empty(); }
  bool is_full_depth0() const { return depth == 0 && !cells.empty(); }
  bool operator==(const CylinderSet&) const = default;
  auto operator<=>(const CylinderSet&) const = default;
};

// Cylinder algebra relative to a shift. Results are in canonical (coarsest) form.
namespace cyl {
CylinderSet make(const Shift& s, std::vector<Word> cells);
CylinderSet normalize_to_depth(const Shift& s, const CylinderSet& c, int d);
CylinderSet canonical(const Shift& s, const CylinderSet& c);
CylinderSet unite(const Shift& s, const CylinderSet& a, const CylinderSet& b);
CylinderSet intersect(const Shift& s, const CylinderSet& a, const CylinderSet& b);
CylinderSet complement(const Shift& s, const CylinderSet& a);
CylinderSet minus(const Shift& s, const CylinderSet& a, const CylinderSet& b);
bool equal(const Shift& s, const CylinderSet& a, const CylinderSet& b);
bool subset(const Shift& s, const CylinderSet& a, const CylinderSet& b);
// {w : x w in c}, expressed as a subset of the followers of x
CylinderSet after(const Shift& s, const CylinderSet& c, Letter x);
// x . c  (c must lie inside the followers of x)
CylinderSet prepend(const Shift& s, Letter x, const CylinderSet& c);
CylinderSet followers(const Shift& s, int prev);
CylinderSet vertex(const Shift& s, int v);  // edges leaving v
std::string format(const Shift& s, const CylinderSet& c);
CylinderSet parse(const Shift& s, const std::string& text);
}  // namespace cyl

// Eventually periodic point pre . period^omega.
struct EPWord {
  Word pre, period;

  EPWord() = default;
  EPWord(Word p, Word q);
  Letter at(std::size_t i) const {
    return i < pre.size() ? pre[i] : period[(i - pre.size()) % period.size()];
  }
  // drop the first n letters
  EPWord tail(std::size_t n) const;
  EPWord prepend(const Word& u) const;
  Word prefix(std::size_t n) const;
  void normalize();
  bool operator==(const EPWord& o) const { return pre == o.pre && period == o.period; }
  bool operator<(const EPWord& o) const {
    return pre != o.pre ? pre < o.pre : period < o.period;
  }
};

bool allowed(const Shift& s, const EPWord& w);
bool contains(const CylinderSet& c, const EPWord& w);
EPWord parse_epword(const Shift& s, const std::string& text);  // "u(v)"
std::string format(const Shift& s, const EPWord& w);

}  // namespace ssg
