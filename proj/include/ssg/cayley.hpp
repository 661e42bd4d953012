#pragma once

#include <set>
#include <string>
#include <vector>

#include "ssg/localmap.hpp"

namespace ssg {

struct LabeledArrow {
  int from, label, to;
  auto operator<=>(const LabeledArrow&) const = default;
};

// Ball of the Cayley graph at a basepoint. Vertex 0 is the center; vertices
// are germs at the center, numbered in discovery order.
struct LabeledBall {
  EPWord center;
  int radius = 0;
  std::vector<std::string> labels;
  std::vector<AtomId> maps;     // a representative map for each germ
  std::vector<EPWord> points;   // image of the center
  std::vector<int> dist;
  std::vector<LabeledArrow> arrows;  // sorted

  int size() const { return int(maps.size()); }
  bool well_labeled() const;
  // canonical form of the rooted labeled graph; equal strings iff isomorphic
  std::string canonical() const;
  std::string to_dot(const Shift& s) const;
};

// Generators are tried in lexicographic order of their names.
LabeledBall ball(Universe& u, const std::vector<AtomId>& gens, const std::vector<std::string>& names, const EPWord& x,
                 int r);
std::vector<long> growth(Universe& u, const std::vector<AtomId>& gens, const std::vector<std::string>& names,
                         const EPWord& x, int r);

struct ComplexityResult {
  long classes = 0;
  int depth = 0;      // prefix depth at which the count stabilized
  long samples = 0;   // basepoints examined at that depth
};
// Number of isomorphism classes of radius-r balls over all basepoints.
ComplexityResult complexity(Universe& u, const std::vector<AtomId>& gens, const std::vector<std::string>& names, int r,
                            int max_depth = 24);

// Labels (generator indices) read along a chain graph through x: the window
// arrows ending at x followed by the window arrows starting at x.
std::string label_word(Universe& u, const std::vector<AtomId>& gens, const std::vector<std::string>& names,
                       const EPWord& x, int window);

// Periodic tails for building sample points: for each letter a shortest
// cycle starting with it.
std::vector<Word> letter_cycles(const Shift& s);

namespace fibonacci {
// tau(0) = 1, tau(1) = 10
std::string substitute(const std::string& w);
std::string power(int n, const std::string& w = "1");
// all length-n factors of the substitutional shift
std::set<std::string> factors(int n);
// centers of bi-infinite palindromes: "1", "0" or "" (between two letters)
std::vector<std::string> palindromic_centers(int length = 60);
}  // namespace fibonacci

}  // namespace ssg
