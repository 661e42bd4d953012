#include <random>

#include "doctest.h"
#include "ssg/gallery.hpp"

using namespace ssg;

namespace {

// Random small expression over the generators, their inverses and restricted identities.
MapExpr random_expr(System& sys, std::mt19937& rng, int depth) {
  Universe& u = *sys.u;
  const Shift& s = u.shift();
  int k = depth <= 0 ? int(rng() % 3) : int(rng() % 6);
  switch (k) {
    case 0:
      return MapExpr::of(sys.gens[rng() % sys.gens.size()]);
    case 1:
      return MapExpr::inverse(MapExpr::of(sys.gens[rng() % sys.gens.size()]));
    case 2: {
      auto ws = s.words(1 + int(rng() % 2));
      return MapExpr::restrict(MapExpr::of(u.identity(u.full())), cyl::make(s, {ws[rng() % ws.size()]}));
    }
    case 3:
      return MapExpr::inverse(random_expr(sys, rng, depth - 1));
    case 4: {
      auto ws = s.words(1);
      return MapExpr::restrict(random_expr(sys, rng, depth - 1), cyl::make(s, {ws[rng() % ws.size()]}));
    }
    default:
      return MapExpr::compose(random_expr(sys, rng, depth - 1), random_expr(sys, rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("inverse semigroup laws") {
  for (auto& name : gallery::names()) {
    CAPTURE(name);
    System sys = load(gallery::by_name(name));
    Universe& u = *sys.u;
    std::mt19937 rng(42);
    int failures = 0, nonempty = 0;
    for (int t = 0; t < 1000; ++t) {
      MapExpr x = random_expr(sys, rng, 2), y = random_expr(sys, rng, 2), z = random_expr(sys, rng, 1);
      auto C = MapExpr::compose;
      auto I = MapExpr::inverse;
      MapExpr e = C(I(x), x), f = C(y, I(y));
      bool ok = equal(u, C(C(x, I(x)), x), x) && equal(u, C(C(I(x), x), I(x)), I(x)) &&
                equal(u, I(C(x, y)), C(I(y), I(x))) && equal(u, C(C(x, y), z), C(x, C(y, z))) &&
                equal(u, C(e, f), C(f, e)) && equal(u, C(e, e), e) && equal(u, I(I(x)), x);
      failures += !ok;
      nonempty += realize(u, C(x, y)) != kEmpty;
    }
    CHECK(failures == 0);
    CHECK(nonempty > 100);
  }
}

TEST_CASE("sections and prefixes are inverse operations") {
  for (auto& name : gallery::names()) {
    CAPTURE(name);
    System sys = load(gallery::by_name(name));
    Universe& u = *sys.u;
    const Shift& s = u.shift();
    for (AtomId g : sys.gens) {
      // F is the disjoint union of S_y (S_y^-1 F S_x) S_x^-1
      AtomId acc = kEmpty;
      for (int x = 0; x < s.size(); ++x)
        for (int y = 0; y < s.size(); ++y) acc = u.unite(acc, u.prefix(Letter(y), u.section(g, x, y), Letter(x)));
      CHECK(acc == g);
    }
  }
}
