#include <random>

#include "doctest.h"
#include "util.hpp"

using namespace ssg;
using ssg::testing::Parsed;

namespace {

struct Fixture {
  System sys;
  Nucleus nuc;
  Algebra alg;
  explicit Fixture(const std::string& name, long p = 0)
      : sys(load(gallery::by_name(name))), nuc(compute_nucleus(*sys.u, sys.gens)), alg(*sys.u, nuc, p) {}
  Element operator()(const std::string& t) { return Parsed{sys, alg}(t); }
};

Element random_element(Fixture& f, std::mt19937& rng) {
  const Shift& s = f.sys.u->shift();
  Element e;
  int n = 1 + int(rng() % 3);
  for (int i = 0; i < n; ++i) {
    auto us = s.words(int(rng() % 3)), vs = s.words(int(rng() % 3));
    Word u = us[rng() % us.size()], v = vs[rng() % vs.size()];
    AtomId a = f.nuc.elements[rng() % f.nuc.elements.size()];
    int c = int(rng() % 5) - 2;
    if (c == 0) c = 1;
    e = f.alg.add(e, f.alg.term(u, a, v, c));
  }
  return e;
}

}  // namespace

TEST_CASE("rotation relations") {
  Fixture f("golden-rotation");
  Algebra& a = f.alg;
  CHECK(a.equal(f("R0"), f("S[1]*I[0]*S[0]^-1")));
  CHECK(a.equal(f("R1"), f("S[0]*R0^-1*S[0]^-1 + S[0]*R1^-1*S[1]^-1")));
  CHECK(a.equal(f("R0^-1"), f("S[0]*I[0]*S[1]^-1")));
  CHECK(a.equal(f("R1^-1"), f("S[0]*R0*S[0]^-1 + S[1]*R1*S[0]^-1")));
  CHECK(a.equal(f("I[0]"), f("S[0]*S[0]^-1")));
  CHECK(a.equal(f("1"), f("S[0]*S[0]^-1 + S[1]*I[0]*S[1]^-1")));
  CHECK(a.is_zero(f("R0*R0")));
  CHECK(a.equal(f("R1*R1"), f("S[0,0]*R1*S[1,0]^-1")));
  CHECK_FALSE(a.equal(f("R1*R1"), f("S[0,0]*R1*S[0,1]^-1")));
  CHECK(a.equal(f("R1*R1^-1"), f("S[0]*S[0]^-1")));
  CHECK(a.equal(f("R1^-1*R1"), f("S[0,1]*S[0,1]^-1 + S[1]*S[1]^-1")));
  CHECK_FALSE(a.equal(f("R0"), f("R1")));
}

TEST_CASE("Cuntz-Krieger relations of the edge rotation") {
  Fixture f("golden-rotation-edge");
  Algebra& a = f.alg;
  // S_x^-1 S_x is the sum over the followers of x
  CHECK(a.equal(f("S[0_0]^-1*S[0_0]"), f("S[0_0]*S[0_0]^-1 + S[0_1]*S[0_1]^-1")));
  CHECK(a.equal(f("S[0_1]^-1*S[0_1]"), f("S[1_0]*S[1_0]^-1")));
  CHECK(a.is_zero(f("S[0_0]^-1*S[0_1]")));
  CHECK(a.equal(f("1"), f("S[0_0]*S[0_0]^-1 + S[0_1]*S[0_1]^-1 + S[1_0]*S[1_0]^-1")));
}

TEST_CASE("adding machine matrix recursion") {
  Fixture f("adding-machine");
  BlockMatrix m = matrix_recursion(f.alg, f("a"), 2);
  REQUIRE(m.rows.size() == 4);
  const Shift& s = f.sys.u->shift();
  // a(00w) = 10w, a(10w) = 01w, a(01w) = 11w, a(11w) = 00 a(w)
  std::map<std::pair<std::string, std::string>, std::string> want{
      {{"1,0", "0,0"}, "1"}, {{"0,1", "1,0"}, "1"}, {{"1,1", "0,1"}, "1"}, {{"0,0", "1,1"}, "a"}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      auto it = want.find({s.format(m.rows[i]), s.format(m.cols[j])});
      CHECK(f.alg.equal(m.entries[i][j], it == want.end() ? Element() : f(it->second)));
    }
  std::string text = format(f.alg, m);
  CHECK(text.find('a') != std::string::npos);
}

TEST_CASE("edge rotation recursion uses vertex idempotents") {
  Fixture f("golden-rotation-edge");
  BlockMatrix b = block(matrix_recursion(f.alg, f("A"), 1), 1, 0);
  std::string text = format(f.alg, b);
  CHECK(text.find("P_0") != std::string::npos);
}

TEST_CASE("Penrose recursion and worm identities") {
  Fixture f("penrose");
  Algebra& a = f.alg;
  BlockMatrix c = block(matrix_recursion(a, f("C"), 1), 1, 1);
  REQUIRE(c.rows.size() == 3);
  auto P1 = a.of(vertex_idempotents(*f.sys.u)[1]);
  std::vector<std::vector<Element>> cw{{f("B"), {}, {}}, {{}, {}, P1}, {{}, P1, {}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(a.equal(c.entries[i][j], cw[i][j]));

  Element w1 = f("D11*A0*D00*A1*D11"), w2 = f("D11*C*A2*C*D11"), w3 = f("A0*B*D00*B*A1");
  CHECK(a.equal(w1, w2));
  CHECK(a.equal(w1, w3));
  CHECK(a.equal_as_maps(w1, w2));
  CHECK(a.equal_as_maps(w1, w3));
  CHECK(!a.is_zero(w1));
  std::vector<std::vector<std::string>> display{
      {"D01*C*D10", "D01*C*D11", ""}, {"D11*C*D10", "D11*C*D11", ""}, {"", "", ""}};
  for (auto* w : {&w1, &w2, &w3}) {
    BlockMatrix m = block(matrix_recursion(a, *w, 1), 1, 1);
    REQUIRE(m.rows.size() == 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(a.equal(m.entries[i][j], display[i][j].empty() ? Element() : f(display[i][j])));
  }
}

TEST_CASE("presentation holds on the gallery") {
  for (auto& name : gallery::names()) {
    CAPTURE(name);
    Fixture f(name);
    PresentationReport r = verify_presentation(f.alg);
    CHECK(r.ok());
    CHECK(r.checks.size() > 0);
  }
}

TEST_CASE("algebra laws on random elements") {
  for (auto name : {"adding-machine", "golden-rotation", "golden-rotation-edge"}) {
    CAPTURE(name);
    Fixture f(name);
    Algebra& a = f.alg;
    std::mt19937 rng(1234);
    for (int t = 0; t < 500; ++t) {
      Element x = random_element(f, rng), y = random_element(f, rng), z = random_element(f, rng);
      CHECK(a.equal(a.multiply(a.multiply(x, y), z), a.multiply(x, a.multiply(y, z))));
      CHECK(a.equal(a.star(a.multiply(x, y)), a.multiply(a.star(y), a.star(x))));
      CHECK(a.equal(a.multiply(x, a.add(y, z)), a.add(a.multiply(x, y), a.multiply(x, z))));
      CHECK(a.equal(a.star(a.star(x)), x));
    }
  }
}

TEST_CASE("grading is additive") {
  Fixture f("golden-rotation");
  Algebra& a = f.alg;
  std::mt19937 rng(5);
  const Shift& s = f.sys.u->shift();
  for (int t = 0; t < 200; ++t) {
    auto pick = [&](int len) {
      auto ws = s.words(len);
      return ws[rng() % ws.size()];
    };
    Word u1 = pick(rng() % 3), v1 = pick(rng() % 3), u2 = pick(rng() % 3), v2 = pick(rng() % 3);
    AtomId f1 = f.nuc.elements[rng() % f.nuc.size()], f2 = f.nuc.elements[rng() % f.nuc.size()];
    Element p = a.multiply(a.term(u1, f1, v1), a.term(u2, f2, v2));
    int g = int(u1.size()) - int(v1.size()) + int(u2.size()) - int(v2.size());
    for (auto& [term, c] : p.terms) CHECK(term.grade() == g);
  }
}

TEST_CASE("multiplication agrees with composition") {
  for (auto name : {"golden-rotation", "penrose", "intermediate-growth"}) {
    CAPTURE(name);
    Fixture f(name);
    Universe& u = *f.sys.u;
    for (AtomId x : f.nuc.elements)
      for (AtomId y : f.nuc.elements) {
        Element p = f.alg.multiply(f.alg.of(x), f.alg.of(y));
        AtomId xy = u.compose(x, y);
        CHECK(f.alg.equal(p, xy == kEmpty ? Element() : f.alg.of(xy)));
      }
  }
}

TEST_CASE("finite characteristic") {
  Fixture f("golden-rotation", 2);
  Algebra& a = f.alg;
  CHECK(a.is_zero(a.add(a.one(), a.one())));
  CHECK(a.equal(f("S[0]*S[0]^-1"), f("1 + S[1]*S[1]^-1")));
  CHECK(verify_presentation(a).ok());
  Fixture g("penrose", 3);
  CHECK(g.alg.is_zero(g.alg.scale(g("B"), 3)));
  CHECK_FALSE(g.alg.is_zero(g.alg.scale(g("B"), 2)));
}

TEST_CASE("graded dimensions") {
  // one loop: the algebra is Laurent polynomials in S, so dim V_n = 2n + 1
  System one = load(gallery::identity_system(1));
  Nucleus n1 = compute_nucleus(*one.u, one.gens);
  Algebra a1(*one.u, n1);
  auto d = graded_dimension(a1, {a1.S(Word(1, 0)), a1.S_inv(Word(1, 0))}, 8);
  for (int n = 0; n <= 8; ++n) CHECK(d[n] == 2 * n + 1);

  // rotation: frozen values, and the bound (|C n| + 1)^2 from the growth of the groupoid
  Fixture f("golden-rotation");
  std::vector<Element> g{f("S[0]"), f("S[1]"), f("S[0]^-1"), f("S[1]^-1"), f("R1"), f("R1^-1")};
  auto dr = graded_dimension(f.alg, g, 5);
  CHECK(dr == std::vector<long>{1, 7, 31, 95, 232, 504});
  for (int n = 1; n <= 5; ++n) {
    CHECK(dr[n] >= dr[n - 1]);
    CHECK(dr[n] <= long(6 * n + 1) * (6 * n + 1));
  }
}

TEST_CASE("parse and format round trip") {
  Fixture f("golden-rotation");
  Element e = f("2*S[0]*R1*S[1]^-1 - I[0] + R0");
  Element back = f(f.alg.format(e));
  CHECK(f.alg.equal(e, back));
  CHECK_THROWS_AS(f("S[1,1]"), ValidationError);
  CHECK_THROWS(f("Q7"));
}
