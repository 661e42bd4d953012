#include "ssg/nucleus.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ssg {

int Nucleus::index(AtomId a) const {
  auto it = std::find(elements.begin(), elements.end(), a);
  return it == elements.end() ? -1 : int(it - elements.begin());
}

std::string canonical_key(const Universe& u, AtomId a) {
  if (a == kEmpty) return "0";
  std::map<AtomId, int> num{{a, 0}};
  std::vector<AtomId> ord{a};
  std::string key;
  for (std::size_t i = 0; i < ord.size(); ++i) {
    key += '[';
    for (auto& e : u.atom(ord[i]).out) {
      auto [it, ins] = num.emplace(e.to, int(ord.size()));
      if (ins) ord.push_back(e.to);
      key += std::to_string(e.x) + ',' + std::to_string(e.y) + '>' + std::to_string(it->second) + ';';
    }
    key += ']';
  }
  return key;
}

std::vector<AtomId> section_closure(const Universe& u, const std::vector<AtomId>& seed, std::size_t cap) {
  std::set<AtomId> seen;
  std::vector<AtomId> ord;
  for (AtomId a : seed)
    if (a != kEmpty && seen.insert(a).second) ord.push_back(a);
  for (std::size_t i = 0; i < ord.size(); ++i) {
    for (auto& e : u.atom(ord[i]).out)
      if (seen.insert(e.to).second) ord.push_back(e.to);
    if (ord.size() > cap) throw StateExplosion("section closure exceeded " + std::to_string(cap) + " maps");
  }
  return ord;
}

std::vector<AtomId> eventual_sections(const Universe& u, const std::vector<AtomId>& seed) {
  auto all = section_closure(u, seed);
  // iterate the section map until the set stops shrinking
  std::set<AtomId> cur(all.begin(), all.end());
  for (;;) {
    std::set<AtomId> nxt;
    for (AtomId a : cur)
      for (auto& e : u.atom(a).out) nxt.insert(e.to);
    if (nxt == cur) break;
    cur = std::move(nxt);
  }
  return {cur.begin(), cur.end()};
}

std::map<AtomId, long> section_counts(const Universe& u, AtomId a, int d) {
  std::map<AtomId, long> cur;
  if (a != kEmpty) cur[a] = 1;
  for (int i = 0; i < d; ++i) {
    std::map<AtomId, long> nxt;
    for (auto& [b, c] : cur)
      for (auto& e : u.atom(b).out) nxt[e.to] += c;
    cur = std::move(nxt);
  }
  return cur;
}

std::vector<SectionCell> sections_at(const Universe& u, AtomId a, int d) {
  std::vector<SectionCell> cur;
  if (a != kEmpty) cur.push_back({Word(), Word(), a});
  for (int i = 0; i < d; ++i) {
    std::vector<SectionCell> nxt;
    for (auto& c : cur)
      for (auto& e : u.atom(c.f).out) nxt.push_back({c.u + e.y, c.v + e.x, e.to});
    cur = std::move(nxt);
  }
  std::sort(cur.begin(), cur.end(), [](const SectionCell& a, const SectionCell& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return cur;
}

namespace {

std::string product_name(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + parts[i];
  return s;
}

void name_elements(Universe& u, Nucleus& nuc) {
  nuc.names.assign(nuc.elements.size(), "");
  std::vector<std::pair<AtomId, std::string>> letters;
  for (auto& [a, n] : u.names()) {
    letters.push_back({a, n});
    if (u.inverse(a) != a) letters.push_back({u.inverse(a), n + "^-1"});
  }
  std::sort(letters.begin(), letters.end(), [](auto& a, auto& b) { return a.second < b.second; });
  std::map<AtomId, std::string> found;
  for (std::size_t i = 0; i < nuc.elements.size(); ++i) {
    AtomId a = nuc.elements[i];
    std::string l = u.label(a);
    if (l[0] != '#') found[a] = l;
  }
  for (auto& [a, n] : letters) found.emplace(a, n);
  // short products of generators
  std::vector<std::pair<AtomId, std::vector<std::string>>> layer;
  for (auto& [a, n] : letters) layer.push_back({a, {n}});
  auto missing = [&] {
    for (AtomId a : nuc.elements)
      if (!found.count(a)) return true;
    return false;
  };
  for (int len = 2; len <= 3 && missing(); ++len) {
    std::vector<std::pair<AtomId, std::vector<std::string>>> next;
    std::set<AtomId> seen_layer;
    for (auto& [a, parts] : layer)
      for (auto& [b, n] : letters) {
        AtomId c = u.compose(a, b);
        if (c == kEmpty || found.count(c) || !seen_layer.insert(c).second) continue;
        auto p = parts;
        p.push_back(n);
        if (nuc.contains(c)) found[c] = product_name(p);
        next.push_back({c, std::move(p)});
      }
    layer = std::move(next);
    if (layer.size() > 20000) break;
  }
  for (std::size_t i = 0; i < nuc.elements.size(); ++i) {
    auto it = found.find(nuc.elements[i]);
    nuc.names[i] = it != found.end() ? it->second : "N#" + std::to_string(i);
  }
}

int depth_of(Universe& u, CylId c) { return u.cylinder(c).depth; }

}  // namespace

Nucleus compute_nucleus(Universe& u, const std::vector<AtomId>& gens, const NucleusOptions& opt) {
  int saved_depth = u.max_depth;
  u.max_depth = opt.max_depth;
  std::vector<AtomId> seed;
  for (AtomId g : gens)
    if (g != kEmpty) {
      seed.push_back(g);
      seed.push_back(u.inverse(g));
    }
  std::vector<std::size_t> trace;
  auto ev = eventual_sections(u, seed);
  std::set<AtomId> cur(ev.begin(), ev.end());
  std::set<std::pair<AtomId, AtomId>> done;
  for (;;) {
    trace.push_back(cur.size());
    if (cur.size() > opt.max_elements)
      throw NotContracting("nucleus exceeded " + std::to_string(opt.max_elements) + " elements", trace);
    std::vector<AtomId> snapshot(cur.begin(), cur.end());
    std::vector<AtomId> added;
    for (AtomId a : snapshot)
      for (AtomId b : snapshot) {
        if (!done.insert({a, b}).second) continue;
        AtomId p = u.compose(a, b);
        if (p == kEmpty || cur.count(p)) continue;
        for (AtomId e : eventual_sections(u, {p}))
          if (!cur.count(e)) added.push_back(e);
      }
    if (added.empty()) break;
    cur.insert(added.begin(), added.end());
  }
  Nucleus nuc;
  std::vector<std::pair<std::string, AtomId>> keyed;
  for (AtomId a : cur) keyed.push_back({canonical_key(u, a), a});
  std::sort(keyed.begin(), keyed.end(), [](auto& x, auto& y) {
    return x.first.size() != y.first.size() ? x.first.size() < y.first.size() : x.first < y.first;
  });
  for (auto& [k, a] : keyed) nuc.elements.push_back(a);

  // n0: least depth at which every pair product has all sections inside
  int n0 = 1;
  for (AtomId a : nuc.elements)
    for (AtomId b : nuc.elements) {
      AtomId p = u.compose(a, b);
      if (p == kEmpty) continue;
      std::set<AtomId> layer{p};
      int d = 0;
      for (;;) {
        bool inside = true;
        for (AtomId x : layer) inside = inside && cur.count(x);
        if (inside && d >= 1) break;
        if (++d > opt.max_depth)
          throw NotContracting("product depth exceeded " + std::to_string(opt.max_depth), trace);
        std::set<AtomId> nxt;
        for (AtomId x : layer)
          for (auto& e : u.atom(x).out) nxt.insert(e.to);
        layer = std::move(nxt);
      }
      n0 = std::max(n0, d);
    }
  nuc.n0 = n0;
  for (AtomId a : nuc.elements) nuc.k1 = std::max({nuc.k1, depth_of(u, u.dom(a)), depth_of(u, u.ran(a))});
  name_elements(u, nuc);
  u.max_depth = saved_depth;
  return nuc;
}

std::vector<SectionCell> product_section_table(Universe& u, const Nucleus& nuc, AtomId f1, AtomId f2, int depth) {
  if (depth < 0) depth = nuc.n0;
  auto cells = sections_at(u, u.compose(f1, f2), depth);
  for (auto& c : cells)
    if (!nuc.contains(c.f))
      throw NotInNucleus("section of " + u.label(f1) + "*" + u.label(f2) + " at (" + u.shift().format(c.u) + "; " +
                         u.shift().format(c.v) + ") is not a nucleus element");
  return cells;
}

std::vector<AtomId> canonical_pair(Universe& u, AtomId f1, AtomId f2) {
  if (u.compose(f1, f2) == kEmpty) return {};
  return {u.restrict(f1, u.ran(f2)), u.corestrict(u.dom(f1), f2)};
}

std::vector<AtomId> vertex_idempotents(Universe& u) {
  const Shift& s = u.shift();
  std::vector<AtomId> r;
  if (s.is_edge_shift()) {
    for (int v = 0; v < s.graph().num_vertices(); ++v) {
      AtomId a = u.identity(u.cyl(cyl::vertex(s, v)));
      if (a != kEmpty) r.push_back(a);
    }
  } else {
    std::set<AtomId> seen;
    for (int x = 0; x < s.size(); ++x) {
      AtomId a = u.identity(u.followers(x));
      if (seen.insert(a).second) r.push_back(a);
    }
  }
  return r;
}

MultiNucleus multi_nucleus(Universe& u, const Nucleus& nuc, int n) {
  MultiNucleus m;
  m.n = n;
  if (n == 0) {
    for (AtomId a : vertex_idempotents(u)) m.tuples.push_back({a});
    return m;
  }
  if (n == 1) {
    for (AtomId a : nuc.elements) m.tuples.push_back({a});
    return m;
  }
  if (n != 2) throw ValidationError("multi-nucleus is available for n = 0, 1, 2");
  using P = std::vector<AtomId>;
  std::map<P, int> ids;
  std::vector<P> ord;
  std::vector<std::vector<int>> succ;
  auto add = [&](const P& p) {
    auto [it, ins] = ids.emplace(p, int(ord.size()));
    if (ins) {
      ord.push_back(p);
      succ.emplace_back();
    }
    return it->second;
  };
  for (AtomId a : nuc.elements)
    for (AtomId b : nuc.elements) {
      auto p = canonical_pair(u, a, b);
      if (!p.empty()) add(p);
    }
  for (std::size_t i = 0; i < ord.size(); ++i) {
    P p = ord[i];
    for (auto& e1 : u.atom(p[0]).out)
      for (auto& e2 : u.atom(p[1]).out) {
        if (e2.y != e1.x) continue;
        auto q = canonical_pair(u, e1.to, e2.to);
        if (!q.empty()) succ[i].push_back(add(q));
      }
  }
  std::set<int> cur;
  for (std::size_t i = 0; i < ord.size(); ++i) cur.insert(int(i));
  for (;;) {
    std::set<int> nxt;
    for (int i : cur) nxt.insert(succ[i].begin(), succ[i].end());
    if (nxt == cur) break;
    cur = std::move(nxt);
  }
  std::vector<std::pair<std::string, int>> keyed;
  for (int i : cur) keyed.push_back({canonical_key(u, ord[i][0]) + "|" + canonical_key(u, ord[i][1]), i});
  std::sort(keyed.begin(), keyed.end());
  for (auto& [k, i] : keyed) m.tuples.push_back(ord[i]);
  return m;
}

}  // namespace ssg
