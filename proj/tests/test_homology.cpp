#include <random>

#include "doctest.h"
#include "ssg/gallery.hpp"
#include "ssg/homology.hpp"

using namespace ssg;

namespace {

IntMatrix random_matrix(std::mt19937& rng, int r, int c, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  IntMatrix m(r, c);
  for (auto& x : m.a) x = d(rng);
  return m;
}

bool diagonal_chain(const Smith& s) {
  for (int i = 0; i < s.D.rows; ++i)
    for (int j = 0; j < s.D.cols; ++j)
      if (i != j && s.D(i, j) != 0) return false;
  for (int i = 0; i < s.rank; ++i) {
    if (s.diag[i] <= 0 || s.D(i, i) != s.diag[i]) return false;
    if (i + 1 < s.rank && s.diag[i + 1] % s.diag[i] != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Smith normal form transforms are unimodular") {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    int r = 1 + int(rng() % 6), c = 1 + int(rng() % 6);
    IntMatrix a = random_matrix(rng, r, c, t % 2 ? 3 : 40);
    if (t % 5 == 0)  // force rank deficiency
      for (int j = 0; j < c; ++j) a(r - 1, j) = 2 * a(0, j);
    Smith s = smith(a);
    CAPTURE(a.format());
    CHECK(s.U * a * s.V == s.D);
    CHECK(abs(det(s.U)) == 1);
    CHECK(abs(det(s.V)) == 1);
    CHECK(s.U * s.Uinv == IntMatrix::identity(r));
    CHECK(diagonal_chain(s));
  }
}

TEST_CASE("kernels and lattices") {
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    IntMatrix a = random_matrix(rng, 3, 5, 4);
    IntMatrix k = kernel(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols >= 2);
    IntMatrix b = lattice_basis(a);
    CHECK(lattice_contains(b, a));
    CHECK(lattice_contains(a, b));
  }
  IntMatrix two = IntMatrix::diagonal({2});
  IntVec c;
  CHECK_FALSE(solve(two, {3}, c));
  CHECK(solve(two, {4}, c));
  CHECK(c[0] == 2);
}

TEST_CASE("finitely generated abelian groups") {
  CHECK(abelian_group(IntMatrix::diagonal({2, 4})).format() == "Z/2 + Z/4");
  CHECK(abelian_group(IntMatrix(2, 0)).format() == "Z^2");
  CHECK(abelian_group(IntMatrix::diagonal({1, 1})).format() == "0");
  auto g = abelian_group(IntMatrix::from_columns(2, {{2, 0}, {0, 3}}));
  CHECK(g.free_rank == 0);
  CHECK(g.torsion == IntVec{6});
}

TEST_CASE("relations between indicators") {
  System sys = load(gallery::identity_system(2));
  Universe& u = *sys.u;
  AtomId one = u.identity(u.full());
  AtomId i0 = u.identity(u.cyl(cyl::parse(u.shift(), "e0")));
  AtomId i1 = u.identity(u.cyl(cyl::parse(u.shift(), "e1")));
  IntMatrix r = relation_module(u, {one, i0, i1});
  REQUIRE(r.cols == 1);
  IntVec v = r.column(0);
  if (v[0] < 0)
    for (auto& x : v) x = -x;
  CHECK(v == IntVec{1, -1, -1});
  CHECK(relation_module(u, {i0, i1}).cols == 0);
}

TEST_CASE("chain identities") {
  for (auto& name : gallery::names()) {
    CAPTURE(name);
    System sys = load(gallery::by_name(name));
    HomologyEngine h(sys);
    const ChainData& cd = h.chains();
    // S0 B1 = B1 S1 and S1 B2 = B2 S2, up to the level shift built into B
    CHECK(cd.S0 * cd.B1 == cd.B1 * cd.S1);
    CHECK(cd.S1 * cd.B2 == cd.B2 * cd.S2);
    CHECK((cd.B1 * cd.B2).is_zero());
  }
}

TEST_CASE("homology of the golden rotation") {
  System sys = load(gallery::golden_rotation());
  HomologyEngine h(sys);
  CHECK(h.h0().descriptor().format() == "Z^2");
  CHECK(h.chains().S0 == IntMatrix::from_columns(2, {{1, 1}, {1, 0}}));
  const Colimit& h1 = h.h1();
  CHECK(h1.descriptor().format() == "Z");
  CHECK(h.h1_class(h.to_edges(sys.gen("R0"))).is_zero());
  auto r1 = h.h1_class(h.to_edges(sys.gen("R1")));
  REQUIRE(r1.coords.size() == 1);
  CHECK(abs(r1.coords[0]) == 1);
  CHECK(h1.endo_on_classes() == IntMatrix::diagonal({-1}));
  auto inv = h.h1_class(h.to_edges(sys.parse_element("R1^-1")));
  CHECK(inv.coords[0] == -r1.coords[0]);
}

TEST_CASE("adding machine") {
  System sys = load(gallery::adding_machine());
  HomologyEngine h(sys);
  CHECK(h.h0().descriptor().kind == ColimitKind::ZOneOver);
  CHECK(h.h0().descriptor().format() == "Z[1/2]");
  DimensionGroup dg = dimension_group(h);
  const Shift& s = h.universe().shift();
  for (int n = 0; n <= 5; ++n)
    for (auto& w : s.words(n)) {
      Quadratic m = dg.measure(s, w);
      CHECK(m.b == 0);
      CHECK(m.a == mpq_class(1, 1L << n));
    }
  CHECK(h.h1().descriptor().format() == "Z");
}

TEST_CASE("Penrose homology") {
  System sys = load(gallery::penrose());
  HomologyEngine h(sys);
  CHECK(h.chains().S0 == IntMatrix::from_columns(2, {{1, 1}, {1, 2}}));
  CHECK(h.h0().descriptor().format() == "Z^2");
  CHECK(h.h1().descriptor().format() == "(Z/2)^3");
  CHECK(h.h0(2).descriptor().format() == "(Z/2)^2");
  for (auto n : {"A0", "A1", "D01", "D10", "D11"}) {
    CAPTURE(n);
    CHECK(h.h1_class(h.to_edges(sys.gen(n))).is_zero());
  }
  // B, C, D00 span (Z/2)^3
  IntMatrix m(3, 3);
  int j = 0;
  for (auto n : {"B", "C", "D00"}) {
    auto c = h.h1_class(h.to_edges(sys.gen(n)));
    REQUIRE(c.coords.size() == 3);
    for (int i = 0; i < 3; ++i) m(i, j) = c.coords[i].get_num();
    ++j;
  }
  Int d = det(m);
  CHECK(d % 2 != 0);
}

TEST_CASE("dimension group of the rotation") {
  System sys = load(gallery::golden_rotation());
  HomologyEngine h(sys);
  DimensionGroup dg = dimension_group(h);
  CHECK(dg.primitive);
  CHECK(dg.lambda.format() == "1/2 + 1/2*sqrt(5)");
  // measure of [0] is 1/phi, of [1] is 1/phi^2; they add up to 1
  const Shift& s = h.universe().shift();
  Quadratic total{0, 0, 5};
  for (int e = 0; e < s.size(); ++e) {
    Quadratic m = dg.measure(s, Word(1, Letter(e)));
    total.a += m.a;
    total.b += m.b;
  }
  CHECK(total.a == 1);
  CHECK(total.b == 0);
}
