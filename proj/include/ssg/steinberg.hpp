#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ssg/nucleus.hpp"

namespace ssg {

// Field elements are kept as rationals; over Z/p they are integers in [0, p).
using Scalar = mpq_class;

// S_u F S_v^-1
struct Term {
  Word u;
  AtomId f;
  Word v;
  int grade() const { return int(u.size()) - int(v.size()); }
  auto operator<=>(const Term&) const = default;
};

struct Element {
  std::map<Term, Scalar> terms;  // no zero coefficients
  bool empty() const { return terms.empty(); }
};

struct RelationCheck {
  std::string kind;  // CK1, nuc1, nuc2, or a caller-supplied tag
  std::string text;
  bool algebra_ok = false;
  bool map_ok = false;
  bool ok() const { return algebra_ok && map_ok; }
};

struct PresentationReport {
  std::vector<RelationCheck> checks;
  int failures() const;
  bool ok() const { return failures() == 0; }
  std::string format(bool verbose = false) const;
};

struct BlockMatrix {
  std::vector<Word> rows, cols;
  std::vector<int> row_group, col_group;  // start vertex (edge shift) or first letter
  std::vector<std::vector<Element>> entries;
};

// Convolution algebra of the groupoid of a contracting system, over Q (p = 0)
// or Z/p.
class Algebra {
 public:
  Algebra(Universe& u, const Nucleus& nuc, long p = 0);

  Universe& universe() { return *u_; }
  const Nucleus& nucleus() const { return *nuc_; }
  long characteristic() const { return p_; }
  Scalar normalize(Scalar c) const;

  Element zero() const { return {}; }
  Element one();
  Element of(AtomId a, const Scalar& c = 1);
  Element term(const Word& u, AtomId f, const Word& v, const Scalar& c = 1);
  Element monomial(const Word& u, const Word& v);  // S_u S_v^-1
  Element S(const Word& w) { return monomial(w, Word()); }
  Element S_inv(const Word& w) { return monomial(Word(), w); }

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element scale(const Element& a, const Scalar& c) const;
  Element multiply(const Element& a, const Element& b);
  Element star(const Element& a);

  bool is_zero(const Element& a);
  bool equal(const Element& a, const Element& b) { return is_zero(sub(a, b)); }

  // every term pushed down until min(|u|, |v|) >= level
  Element expand(const Element& a, int level) const;
  int level(const Element& a) const;
  // values on germ patterns, block by block; a faithful coordinate system
  std::map<std::tuple<Word, Word, int>, Scalar> coordinates(const Element& a, int level);
  // the union of the terms as a partial map per block (u, v), when a is the
  // indicator of a bisection written with disjoint terms
  std::optional<std::map<std::pair<Word, Word>, AtomId>> as_bisection(const Element& a, int level);
  bool equal_as_maps(const Element& a, const Element& b);

  std::string format(const Element& a);
  // sums of products, e.g. "S[0,0]*S[0,1]^-1 + S[0]*R1^-1*S[1]^-1 - 2*I0"
  Element parse(const std::string& text, const std::function<AtomId(const std::string&)>& atom_of);

 private:
  Universe* u_;
  const Nucleus* nuc_;
  long p_;
  std::vector<std::vector<int>> pats_of_;  // nucleus index -> patterns containing it
  int npats_ = 0;
  std::vector<int> pivots_;                // independent nucleus columns
  std::vector<std::vector<Scalar>> lift_;  // pattern values -> pivot coefficients
  std::vector<int> lift_rows_;
  std::map<AtomId, std::string> vertex_names_;  // edge shifts: P_v

  Scalar inv(const Scalar& c) const;
  void push_term(Element& e, const Word& u, AtomId f, const Word& v, const Scalar& c);
  Element reduce(const Element& a);
};

PresentationReport verify_presentation(Algebra& alg);

BlockMatrix matrix_recursion(Algebra& alg, const Element& a, int k);
// Only the block of rows starting at vertex (or letter) r and columns at c.
BlockMatrix block(const BlockMatrix& m, int r, int c);
std::string format(Algebra& alg, const BlockMatrix& m);

// dim V_0, ..., dim V_n for V_n the span of products of length <= n.
std::vector<long> graded_dimension(Algebra& alg, const std::vector<Element>& gens, int n,
                                   std::size_t max_terms = 2000000);

}  // namespace ssg
