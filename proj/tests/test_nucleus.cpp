#include <set>

#include "doctest.h"
#include "ssg/gallery.hpp"
#include "ssg/steinberg.hpp"

using namespace ssg;

TEST_CASE("adding machine nucleus") {
  System sys = load(gallery::adding_machine());
  Universe& u = *sys.u;
  Nucleus n = compute_nucleus(u, sys.gens);
  AtomId a = sys.gen("a");
  CHECK(n.size() == 3);
  CHECK(n.contains(a));
  CHECK(n.contains(u.inverse(a)));
  CHECK(n.contains(u.identity(u.full())));
}

TEST_CASE("golden rotation nucleus") {
  System sys = load(gallery::golden_rotation());
  Universe& u = *sys.u;
  Nucleus n = compute_nucleus(u, sys.gens);
  std::set<AtomId> want{u.identity(u.full()), sys.parse_element("I[0]"), sys.gen("R0"), sys.gen("R1"),
                        sys.parse_element("R0^-1"), sys.parse_element("R1^-1")};
  CHECK(std::set<AtomId>(n.elements.begin(), n.elements.end()) == want);
  CHECK(n.n0 == 2);
  CHECK_FALSE(self_similar_counterexample(u, n.elements));
}

TEST_CASE("nucleus sizes of the gallery") {
  // frozen from independent runs of compute_nucleus and section closure
  std::map<std::string, int> want{{"adding-machine", 3}, {"golden-rotation", 6}, {"golden-rotation-edge", 8},
                                  {"penrose", 64},       {"intermediate-growth", 11}, {"identity", 1}};
  for (auto& [name, size] : want) {
    CAPTURE(name);
    System sys = load(gallery::by_name(name));
    Nucleus n = compute_nucleus(*sys.u, sys.gens);
    CHECK(n.size() == size);
    // closed under sections, and every pair product has its n0-sections inside
    CHECK_FALSE(self_similar_counterexample(*sys.u, n.elements));
    for (AtomId f : n.elements)
      for (AtomId g : n.elements)
        for (auto& c : sections_at(*sys.u, sys.u->compose(f, g), n.n0)) CHECK(n.contains(c.f));
  }
}

TEST_CASE("intermediate growth nucleus terminates under default caps") {
  System sys = load(gallery::intermediate_growth());
  CHECK_NOTHROW(compute_nucleus(*sys.u, sys.gens));
}

TEST_CASE("lamplighter automaton is not contracting") {
  SystemSpec s = parse_system(R"([system]
name lamplighter

[graph]
vertices v
0: v -> v
1: v -> v

[generator a]
0 -> 1 b
1 -> 0 a

[generator b]
0 -> 0 b
1 -> 1 a
)");
  System sys = load(s);
  CHECK_THROWS_AS(compute_nucleus(*sys.u, sys.gens, {64, 64}), NotContracting);
}

TEST_CASE("product section table agrees with the matrix recursion") {
  System sys = load(gallery::penrose());
  Universe& u = *sys.u;
  Nucleus nuc = compute_nucleus(u, sys.gens);
  Algebra alg(u, nuc);
  AtomId d11 = sys.gen("D11"), c = sys.gen("C");
  auto table = product_section_table(u, nuc, d11, c);
  BlockMatrix m = matrix_recursion(alg, alg.multiply(alg.of(d11), alg.of(c)), nuc.n0);
  int nonzero = 0;
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols.size(); ++j) {
      Element want;
      for (auto& cell : table)
        if (cell.u == m.rows[i] && cell.v == m.cols[j]) want = alg.of(cell.f);
      CHECK(alg.equal(m.entries[i][j], want));
      nonzero += !want.empty();
    }
  CHECK(nonzero == int(table.size()));
}

TEST_CASE("multisections") {
  System sys = load(gallery::adding_machine());
  Universe& u = *sys.u;
  Nucleus nuc = compute_nucleus(u, sys.gens);
  MultiNucleus m1 = multi_nucleus(u, nuc, 1);
  CHECK(m1.tuples.size() == 3);
  MultiNucleus m2 = multi_nucleus(u, nuc, 2);
  for (auto& t : m2.tuples) {
    REQUIRE(t.size() == 2);
    CHECK(u.dom(t[0]) == u.ran(t[1]));
  }
  CHECK(vertex_idempotents(u).size() == 1);
}
