// Acceptance checks: one PASS/FAIL line per criterion.
#include <cmath>
#include <deque>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "ssg/cayley.hpp"
#include "ssg/gallery.hpp"
#include "ssg/homology.hpp"
#include "ssg/steinberg.hpp"

using namespace ssg;

namespace {

struct Loaded {
  System sys;
  Nucleus nuc;
  Algebra alg;
  explicit Loaded(const std::string& name)
      : sys(load(gallery::by_name(name))), nuc(compute_nucleus(*sys.u, sys.gens)), alg(*sys.u, nuc) {}
  Element operator()(const std::string& t) {
    return alg.parse(t, [&](const std::string& s) { return sys.parse_element(s); });
  }
};

std::string detail;

bool golden_nucleus() {
  System sys = load(gallery::golden_rotation());
  Universe& u = *sys.u;
  Nucleus n = compute_nucleus(u, sys.gens);
  std::set<AtomId> want{u.identity(u.full()), sys.parse_element("I[0]"), sys.gen("R0"), sys.gen("R1"),
                        sys.parse_element("R0^-1"), sys.parse_element("R1^-1")};
  detail = "size " + std::to_string(n.size()) + ", n0 " + std::to_string(n.n0);
  return std::set<AtomId>(n.elements.begin(), n.elements.end()) == want && n.size() == 6 && n.n0 == 2;
}

bool rotation_relations() {
  Loaded g("golden-rotation");
  Algebra& a = g.alg;
  return a.equal(g("R0"), g("S[1]*I[0]*S[0]^-1")) && a.equal(g("R1"), g("S[0]*R0^-1*S[0]^-1 + S[0]*R1^-1*S[1]^-1")) &&
         a.equal(g("R0^-1"), g("S[0]*I[0]*S[1]^-1")) &&
         a.equal(g("R1^-1"), g("S[0]*R0*S[0]^-1 + S[1]*R1*S[0]^-1")) && a.equal(g("I[0]"), g("S[0]*S[0]^-1")) &&
         a.equal(g("1"), g("S[0]*S[0]^-1 + S[1]*I[0]*S[1]^-1")) && a.is_zero(g("R0*R0")) &&
         a.equal(g("R1*R1"), g("S[0,0]*R1*S[1,0]^-1"));
}

bool rotation_homology() {
  System sys = load(gallery::golden_rotation());
  HomologyEngine h(sys);
  bool ok = h.h0().descriptor().format() == "Z^2" && h.chains().S0 == IntMatrix::from_columns(2, {{1, 1}, {1, 0}});
  const Colimit& h1 = h.h1();
  ok = ok && h1.descriptor().format() == "Z";
  ok = ok && h.h1_class(h.to_edges(sys.gen("R0"))).is_zero();
  auto r1 = h.h1_class(h.to_edges(sys.gen("R1")));
  ok = ok && r1.coords.size() == 1 && abs(r1.coords[0]) == 1;
  ok = ok && h1.endo_on_classes() == IntMatrix::diagonal({-1});
  detail = "H0 " + h.h0().descriptor().format() + ", H1 " + h1.descriptor().format() + ", [R1] " + r1.format();
  return ok;
}

bool adding_machine() {
  System sys = load(gallery::adding_machine());
  HomologyEngine h(sys);
  bool ok = h.h0().descriptor().format() == "Z[1/2]";
  DimensionGroup dg = dimension_group(h);
  const Shift& s = h.universe().shift();
  for (int n = 0; n <= 6; ++n)
    for (auto& w : s.words(n)) {
      Quadratic m = dg.measure(s, w);
      ok = ok && m.b == 0 && m.a == mpq_class(1, 1L << n);
    }
  Loaded l("adding-machine");
  BlockMatrix m = matrix_recursion(l.alg, l("a"), 2);
  // rows and columns ordered 00, 01, 10, 11
  const char* want[4][4] = {{"", "", "", "a"}, {"", "", "1", ""}, {"1", "", "", ""}, {"", "1", "", ""}};
  ok = ok && m.rows.size() == 4 && m.cols.size() == 4;
  for (int i = 0; ok && i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Element e = *want[i][j] ? l(want[i][j]) : Element();
      ok = ok && l.alg.equal(m.entries[i][j], e);
    }
  detail = "H0 " + h.h0().descriptor().format();
  return ok;
}

bool penrose_homology() {
  System sys = load(gallery::penrose());
  HomologyEngine h(sys);
  bool ok = h.chains().S0 == IntMatrix::from_columns(2, {{1, 1}, {1, 2}}) && h.h0().descriptor().format() == "Z^2" &&
            h.h1().descriptor().format() == "(Z/2)^3" && h.h0(2).descriptor().format() == "(Z/2)^2";
  for (auto n : {"A0", "A1", "D01", "D10", "D11"}) ok = ok && h.h1_class(h.to_edges(sys.gen(n))).is_zero();
  IntMatrix m(3, 3);
  int j = 0;
  for (auto n : {"B", "C", "D00"}) {
    auto c = h.h1_class(h.to_edges(sys.gen(n)));
    if (c.coords.size() != 3) return false;
    for (int i = 0; i < 3; ++i) m(i, j) = c.coords[i].get_num();
    ++j;
  }
  Int d = det(m);
  ok = ok && d % 2 != 0;
  detail = "H1 " + h.h1().descriptor().format() + ", H0 mod 2 " + h.h0(2).descriptor().format();
  return ok;
}

bool worm_identities() {
  Loaded p("penrose");
  Algebra& a = p.alg;
  Element w1 = p("D11*A0*D00*A1*D11"), w2 = p("D11*C*A2*C*D11"), w3 = p("A0*B*D00*B*A1");
  bool ok = a.equal(w1, w2) && a.equal(w1, w3) && a.equal_as_maps(w1, w2) && a.equal_as_maps(w1, w3);
  const char* display[3][3] = {{"D01*C*D10", "D01*C*D11", ""}, {"D11*C*D10", "D11*C*D11", ""}, {"", "", ""}};
  for (auto* w : {&w1, &w2, &w3}) {
    BlockMatrix m = block(matrix_recursion(a, *w, 1), 1, 1);
    if (m.rows.size() != 3 || m.cols.size() != 3) return false;
    // every other block row and column is zero
    BlockMatrix full = matrix_recursion(a, *w, 1);
    for (std::size_t i = 0; i < full.rows.size(); ++i)
      for (std::size_t k = 0; k < full.cols.size(); ++k)
        if ((full.row_group[i] != 1 || full.col_group[k] != 1) && !a.is_zero(full.entries[i][k])) ok = false;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) ok = ok && a.equal(m.entries[i][k], *display[i][k] ? p(display[i][k]) : Element());
  }
  return ok;
}

bool presentation() {
  int checks = 0, failures = 0;
  for (auto name : {"adding-machine", "golden-rotation", "penrose", "intermediate-growth"}) {
    Loaded l(name);
    PresentationReport r = verify_presentation(l.alg);
    checks += int(r.checks.size());
    failures += r.failures();
  }
  detail = std::to_string(checks) + " relations, " + std::to_string(failures) + " failures";
  return failures == 0 && checks > 0;
}

bool fibonacci_facts() {
  System sys = load(gallery::golden_rotation());
  Universe& u = *sys.u;
  const char* bases[] = {"(0)",   "(0,1)",   "1(0)",       "(0,0,1)",     "0,1(0,0,1)",
                         "(0,1,0,0,1)", "1,0,1(0)", "0,0(0,1)", "1(0,0,1,0,1)", "0,1,0,0,1,0(0,1,0)"};
  std::vector<std::set<std::string>> seen(25);
  for (auto b : bases) {
    std::string lw = label_word(u, sys.gens, sys.names, parse_epword(u.shift(), b), 120);
    for (int n = 1; n <= 24; ++n)
      for (std::size_t i = 0; i + n <= lw.size(); ++i) seen[n].insert(lw.substr(i, n));
  }
  // oracle: factors of the concatenation word f_n = f_{n-1} f_{n-2}
  std::string a = "1", w = "10";
  while (w.size() < 20000) a = std::exchange(w, w + a);
  bool ok = true;
  for (int n = 1; n <= 24; ++n) {
    std::set<std::string> oracle;
    for (std::size_t i = 0; i + n <= w.size(); ++i) oracle.insert(w.substr(i, n));
    for (auto& f : seen[n]) ok = ok && oracle.count(f);
    if (n <= 20) ok = ok && long(oracle.size()) == n + 1 && fibonacci::factors(n) == oracle;
  }
  auto centers = fibonacci::palindromic_centers();
  ok = ok && centers.size() == 3;
  detail = std::to_string(centers.size()) + " palindromic centers";
  return ok;
}

bool growth_rates() {
  System r = load(gallery::golden_rotation());
  auto g = ssg::growth(*r.u, r.gens, r.names, parse_epword(r.u->shift(), "(0,1)"), 50);
  bool ok = true;
  for (int k = 0; k <= 50; ++k) ok = ok && g[k] == 2 * k + 1;
  System p = load(gallery::penrose());
  auto gp = ssg::growth(*p.u, p.gens, p.names, parse_epword(p.u->shift(), "(0_0)"), 12);
  // least squares slope of log gamma against log r
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int k = 1; k <= 12; ++k, ++n) {
    double x = std::log(double(k)), y = std::log(double(gp[k]));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  detail = "Penrose exponent " + std::to_string(slope);
  return ok && slope <= 2.5;
}

bool primitivity() {
  VertexGraph golden;
  golden.add_vertex("0");
  golden.add_vertex("1");
  golden.add_edge("0_0", 0, 0);
  golden.add_edge("0_1", 0, 1);
  golden.add_edge("1_0", 1, 0);
  VertexGraph split;
  split.add_vertex("a");
  split.add_vertex("b");
  split.add_edge("x", 0, 0);
  split.add_edge("y", 1, 1);
  auto g = is_primitive(golden), p = is_primitive(gallery::penrose().graph), s = is_primitive(split);
  detail = "witnesses " + std::to_string(g.witness.value_or(-1)) + ", " + std::to_string(p.witness.value_or(-1));
  return g.primitive && g.witness && p.primitive && p.witness && !s.primitive;
}

bool property_suites() {
  int failures = 0;
  // inverse semigroup laws
  for (auto& name : gallery::names()) {
    System sys = load(gallery::by_name(name));
    Universe& u = *sys.u;
    std::mt19937 rng(99);
    std::vector<AtomId> pool;
    for (AtomId g : sys.gens) {
      pool.push_back(g);
      pool.push_back(u.inverse(g));
    }
    for (auto& w : u.shift().words(1)) pool.push_back(u.identity(u.cyl(cyl::make(u.shift(), {w}))));
    auto pick = [&] {
      AtomId a = pool[rng() % pool.size()];
      for (int i = int(rng() % 3); i > 0; --i) a = u.compose(a, pool[rng() % pool.size()]);
      return a;
    };
    for (int t = 0; t < 1000; ++t) {
      AtomId x = pick(), y = pick(), z = pick();
      AtomId xi = u.inverse(x), e = u.compose(xi, x), f = u.compose(y, u.inverse(y));
      bool ok = u.compose(u.compose(x, xi), x) == x && u.inverse(u.compose(x, y)) == u.compose(u.inverse(y), xi) &&
                u.compose(u.compose(x, y), z) == u.compose(x, u.compose(y, z)) && u.compose(e, f) == u.compose(f, e);
      failures += !ok;
    }
  }
  // chain identities
  for (auto& name : gallery::names()) {
    System sys = load(gallery::by_name(name));
    HomologyEngine h(sys);
    auto& cd = h.chains();
    failures += !(cd.S0 * cd.B1 == cd.B1 * cd.S1) + !(cd.B1 * cd.B2).is_zero();
  }
  // Smith normal form
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    IntMatrix a(1 + rng() % 5, 1 + rng() % 5);
    for (auto& x : a.a) x = int(rng() % 21) - 10;
    Smith s = smith(a);
    failures += !(s.U * a * s.V == s.D && abs(det(s.U)) == 1 && abs(det(s.V)) == 1);
  }
  // associativity
  Loaded g("golden-rotation");
  const Shift& sh = g.sys.u->shift();
  auto rnd = [&] {
    Element e;
    for (int i = 1 + int(rng() % 3); i > 0; --i) {
      auto us = sh.words(int(rng() % 3)), vs = sh.words(int(rng() % 3));
      e = g.alg.add(e, g.alg.term(us[rng() % us.size()], g.nuc.elements[rng() % g.nuc.size()], vs[rng() % vs.size()],
                                  int(rng() % 3) + 1));
    }
    return e;
  };
  for (int t = 0; t < 500; ++t) {
    Element x = rnd(), y = rnd(), z = rnd();
    failures += !g.alg.equal(g.alg.multiply(g.alg.multiply(x, y), z), g.alg.multiply(x, g.alg.multiply(y, z)));
  }
  detail = std::to_string(failures) + " failures";
  return failures == 0;
}

bool intermediate_growth() {
  System sys = load(gallery::intermediate_growth());
  Universe& u = *sys.u;
  Nucleus n = compute_nucleus(u, sys.gens);
  const Shift& s = u.shift();
  std::map<char, CylinderSet> level{{'0', CylinderSet::full()}, {'1', cyl::parse(s, "0")}, {'2', cyl::parse(s, "1")}};
  bool ok = sys.names.size() == 9;
  for (auto& name : sys.names) {
    AtomId g = sys.gen(name);
    ok = ok && u.cylinder(u.dom(g)) == level.at(name[1]) && u.cylinder(u.ran(g)) == level.at(name[1]);
  }
  detail = "nucleus size " + std::to_string(n.size());
  return ok;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<bool()>>> criteria{
      {"golden rotation nucleus", golden_nucleus},
      {"rotation relations", rotation_relations},
      {"rotation homology", rotation_homology},
      {"adding machine", adding_machine},
      {"Penrose homology", penrose_homology},
      {"worm identities", worm_identities},
      {"presentation", presentation},
      {"Fibonacci label words", fibonacci_facts},
      {"growth", growth_rates},
      {"primitivity", primitivity},
      {"property suites", property_suites},
      {"intermediate growth", intermediate_growth},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    detail.clear();
    bool ok = false;
    try {
      ok = criteria[i].second();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    failed += !ok;
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (ok ? "PASS" : "FAIL")
              << (detail.empty() ? "" : " (" + detail + ")") << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
