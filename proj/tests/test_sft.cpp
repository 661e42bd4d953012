#include "doctest.h"
#include "ssg/gallery.hpp"

using namespace ssg;

namespace {

VertexGraph golden_graph() {
  VertexGraph g;
  g.add_vertex("0");
  g.add_vertex("1");
  g.add_edge("0_0", 0, 0);
  g.add_edge("0_1", 0, 1);
  g.add_edge("1_0", 1, 0);
  return g;
}

long fib(int n) {
  long a = 1, b = 2;
  for (int i = 1; i < n; ++i) b = std::exchange(a, b) + b;
  return n == 0 ? 1 : b;
}

}  // namespace

TEST_CASE("golden mean shift counts paths by Fibonacci numbers") {
  Shift s = Shift::markov({"0", "1"}, {{1, 1}});
  for (int n = 0; n <= 12; ++n) CHECK(long(s.words(n).size()) == fib(n));
  CHECK(s.word_allowed(s.parse_word("0,1,0")));
  CHECK_FALSE(s.word_allowed(s.parse_word("0,1,1")));
  CHECK(allowed_paths(golden_graph(), 4).size() == 13);
}

TEST_CASE("primitivity") {
  auto g = is_primitive(golden_graph());
  CHECK(g.primitive);
  REQUIRE(g.witness);
  CHECK(*g.witness == 2);

  auto p = is_primitive(gallery::penrose().graph);
  CHECK(p.primitive);
  CHECK(p.witness);

  VertexGraph d;
  d.add_vertex("a");
  d.add_vertex("b");
  d.add_edge("x", 0, 0);
  d.add_edge("y", 1, 1);
  CHECK_FALSE(is_primitive(d).primitive);
  CHECK_FALSE(is_primitive(d).witness);

  // irreducible but periodic
  VertexGraph c;
  c.add_vertex("a");
  c.add_vertex("b");
  c.add_edge("x", 0, 1);
  c.add_edge("y", 1, 0);
  CHECK_FALSE(is_primitive(c).primitive);
}

TEST_CASE("eventual image drops transient vertices") {
  VertexGraph g = golden_graph();
  int t = g.add_vertex("t");
  g.add_edge("in", t, 0);
  VertexGraph e = eventual_image(g);
  CHECK(e.num_vertices() == 2);
  CHECK(e.num_edges() == 3);
}

TEST_CASE("block codes") {
  Shift s = Shift::markov({"0", "1"}, {{1, 1}});
  BlockCode b = block_code(s, 2);
  CHECK(b.graph.num_vertices() == 2);
  CHECK(b.graph.num_edges() == 3);
  CHECK(b.graph.adjacency() == golden_graph().adjacency());

  BlockCode b3 = block_code(golden_graph(), 2);
  CHECK(b3.graph.num_vertices() == 3);
  CHECK(b3.graph.num_edges() == 5);
  for (std::size_t e = 0; e < b3.dictionary.size(); ++e) CHECK(b3.dictionary[e].size() == 2);
}

TEST_CASE("cylinder algebra") {
  Shift s = Shift::markov({"0", "1"}, {{1, 1}});
  auto c0 = cyl::parse(s, "0");
  auto c1 = cyl::parse(s, "1");
  CHECK(cyl::equal(s, cyl::unite(s, c0, c1), CylinderSet::full()));
  CHECK(cyl::intersect(s, c0, c1).is_empty());
  CHECK(cyl::equal(s, cyl::complement(s, c0), c1));
  // [0,0] + [0,1] = [0]
  auto c00 = cyl::parse(s, "0,0");
  auto c01 = cyl::parse(s, "0,1");
  CHECK(cyl::unite(s, c00, c01) == c0);
  CHECK(cyl::subset(s, c01, c0));
  CHECK_FALSE(cyl::subset(s, c0, c01));
  CHECK(cyl::minus(s, c0, c00) == c01);
  // after 1 only 0 may follow
  CHECK(cyl::equal(s, cyl::followers(s, 1), c0));
  CHECK(cyl::prepend(s, 1, c0) == c1);
  CHECK(cyl::parse(s, cyl::format(s, c00)) == c00);
}

TEST_CASE("eventually periodic words") {
  Shift s = Shift::markov({"0", "1"}, {{1, 1}});
  EPWord x = parse_epword(s, "0,1(0,1)");
  CHECK(x == parse_epword(s, "(0,1)"));
  CHECK(format(s, x.tail(1)) == format(s, parse_epword(s, "(1,0)")));
  CHECK(allowed(s, x));
  CHECK_FALSE(allowed(s, EPWord(s.parse_word("1"), s.parse_word("1,0"))));
  CHECK_THROWS_AS(parse_epword(s, "1(1,0)"), ValidationError);
  CHECK(contains(cyl::parse(s, "0,1"), x));
  CHECK_FALSE(contains(cyl::parse(s, "1"), x));
}
