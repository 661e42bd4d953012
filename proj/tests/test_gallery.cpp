#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "ssg/gallery.hpp"
#include "ssg/homology.hpp"

using namespace ssg;

TEST_CASE("system files match the built-in gallery") {
  for (auto& name : gallery::names()) {
    CAPTURE(name);
    SystemSpec spec = gallery::by_name(name);
    SystemSpec file = parse_system_file(std::string(SSG_SOURCE_DIR) + "/systems/" + name + ".ssg");
    CHECK(file == spec);
    CHECK(parse_system(serialize(spec)) == spec);
  }
}

TEST_CASE("expected blocks match computed values") {
  for (auto& name : gallery::names()) {
    CAPTURE(name);
    System sys = load(gallery::by_name(name));
    auto& ex = sys.spec.expected;
    Nucleus n = compute_nucleus(*sys.u, sys.gens);
    if (ex.count("nucleus-size")) CHECK(std::to_string(n.size()) == ex.at("nucleus-size"));
    if (ex.count("n0")) CHECK(std::to_string(n.n0) == ex.at("n0"));
    if (ex.count("h0") || ex.count("h1")) {
      HomologyEngine h(sys);
      if (ex.count("h0")) CHECK(h.h0().descriptor().format() == ex.at("h0"));
      if (ex.count("h1")) CHECK(h.h1().descriptor().format() == ex.at("h1"));
    }
  }
}

TEST_CASE("parse errors name the line") {
  std::string bad = "[system]\nname x\n\n[graph]\nvertices v\n0: v -> v\n\n[generator a]\n0 -> 7 id\n";
  try {
    parse_system(bad);
    load(parse_system(bad));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find('7') != std::string::npos);
  }
  CHECK_THROWS_AS(parse_system("[graph]\nvertices v\n0: v -> w\n"), ValidationError);
  CHECK_THROWS_AS(parse_system_file(std::string(SSG_SOURCE_DIR) + "/tests/data/missing.ssg"), Error);
}

TEST_CASE("Penrose symmetries generate the dihedral group of order 280") {
  // A and D as unions of their parts; the group of germs they generate is
  // computed by closing the atom set under composition with A and D.
  System sys = load(gallery::penrose());
  Universe& u = *sys.u;
  AtomId A = u.unite(u.unite(sys.gen("A0"), sys.gen("A1")), sys.gen("A2"));
  AtomId D = u.unite(u.unite(sys.gen("D00"), sys.gen("D01")), u.unite(sys.gen("D10"), sys.gen("D11")));
  CHECK(u.cylinder(u.dom(A)) == CylinderSet::full());
  CHECK(u.cylinder(u.dom(D)) == CylinderSet::full());
  CHECK(u.compose(A, A) == u.identity(u.full()));
  CHECK(u.compose(D, D) == u.identity(u.full()));
  std::set<AtomId> seen{u.identity(u.full())};
  std::deque<AtomId> q(seen.begin(), seen.end());
  while (!q.empty() && seen.size() < 1000) {
    AtomId g = q.front();
    q.pop_front();
    for (AtomId s : {A, D}) {
      AtomId h = u.compose(s, g);
      if (seen.insert(h).second) q.push_back(h);
    }
  }
  CHECK(seen.size() == 280);
}

TEST_CASE("intermediate growth domains and ranges") {
  System sys = load(gallery::intermediate_growth());
  Universe& u = *sys.u;
  const Shift& s = u.shift();
  std::map<char, CylinderSet> level{{'0', CylinderSet::full()}, {'1', cyl::parse(s, "0")}, {'2', cyl::parse(s, "1")}};
  for (auto& n : sys.names) {
    CAPTURE(n);
    AtomId g = sys.gen(n);
    CHECK(u.cylinder(u.dom(g)) == level.at(n[1]));
    CHECK(u.cylinder(u.ran(g)) == level.at(n[1]));
  }
}
