#include "ssg/localmap.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace ssg {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

std::size_t Universe::SNodeHash::operator()(const SNode& n) const {
  std::size_t h = n.size();
  for (auto& w : n) {
    h = mix(h, w.size());
    for (auto& s : w) h = mix(h, std::size_t(s.k) * 1000003u + std::size_t(s.a));
  }
  return h;
}

std::size_t Universe::EdgesHash::operator()(const std::vector<AtomEdge>& e) const {
  std::size_t h = e.size();
  for (auto& x : e) h = mix(mix(mix(h, x.x), x.y), std::size_t(x.to));
  return h;
}

Universe::Universe(Shift s) : shift_(std::move(s)) {
  cyl(CylinderSet::full());
  cyl(CylinderSet::empty());
  for (int a = 0; a < shift_.size(); ++a) fol_cyl_.push_back(cyl(cyl::followers(shift_, a)));
}

CylId Universe::cyl(const CylinderSet& c0) {
  CylinderSet c = cyl::canonical(shift_, c0);
  auto it = cyl_index_.find(c);
  if (it != cyl_index_.end()) return it->second;
  CylId id = CylId(cyls_.size());
  cyls_.push_back(c);
  cyl_index_.emplace(c, id);
  after_memo_.emplace_back();
  return id;
}

CylId Universe::followers(int prev) { return prev == kNoLetter ? full() : fol_cyl_[prev]; }

CylId Universe::after(CylId c, Letter x) {
  auto& m = after_memo_[c];
  auto it = m.find(x);
  if (it != m.end()) return it->second;
  CylId r = cyl(cyl::after(shift_, cyls_[c], x));
  after_memo_[c][x] = r;
  return r;
}

CylId Universe::meet(CylId a, CylId b) {
  if (a == b || b == full()) return a;
  if (a == full()) return b;
  if (a == none() || b == none()) return none();
  if (a > b) std::swap(a, b);
  auto it = meet_memo_.find({a, b});
  if (it != meet_memo_.end()) return it->second;
  CylId r = cyl(cyl::intersect(shift_, cyls_[a], cyls_[b]));
  meet_memo_[{a, b}] = r;
  return r;
}

AtomId Universe::section(AtomId a, Letter x, Letter y) const {
  if (a == kEmpty) return kEmpty;
  const auto& out = atoms_[a].out;
  auto it = std::lower_bound(out.begin(), out.end(), AtomEdge{x, y, kEmpty - 1});
  if (it != out.end() && it->x == x && it->y == y) return it->to;
  return kEmpty;
}

// ------------------------------------------------------------ words of symbols

bool Universe::simplify(SWord& w) {
  bool changed = true;
  while (changed) {
    changed = false;
    SWord r;
    for (const Sym& s : w) {
      if (s.k == 1 && s.a == none()) return false;
      if (!r.empty()) {
        Sym& p = r.back();
        if (p.k == 1 && s.k == 1) {
          p.a = meet(p.a, s.a);
          if (p.a == none()) return false;
          changed = true;
          continue;
        }
        if (p.k == 0 && s.k == 0) {
          auto it = compose_memo_.find({p.a, s.a});
          if (it != compose_memo_.end()) {
            if (it->second == kEmpty) return false;
            p.a = it->second;
            changed = true;
            continue;
          }
        }
        if (p.k == 0 && s.k == 1) {
          auto it = restrict_memo_.find({p.a, s.a});
          if (it != restrict_memo_.end()) {
            if (it->second == kEmpty) return false;
            p.a = it->second;
            changed = true;
            continue;
          }
        }
        if (p.k == 1 && s.k == 0) {
          auto it = corestrict_memo_.find({s.a, p.a});
          if (it != corestrict_memo_.end()) {
            if (it->second == kEmpty) return false;
            p = Sym{0, it->second};
            changed = true;
            continue;
          }
        }
      }
      r.push_back(s);
    }
    if (r.size() > 1) {
      auto e = std::remove_if(r.begin(), r.end(), [&](const Sym& s) { return s.k == 1 && s.a == full(); });
      if (e != r.end()) {
        r.erase(e, r.end());
        changed = true;
      }
    }
    if (r.empty()) r.push_back(Sym{1, full()});
    if (r.size() == 1 && r[0].k == 1) {
      auto it = id_memo_.find(r[0].a);
      if (it != id_memo_.end()) {
        if (it->second == kEmpty) return false;
        r[0] = Sym{0, it->second};
      }
    }
    w = std::move(r);
  }
  return true;
}

void Universe::sym_sections(const Sym& s, Letter z, std::vector<std::pair<Letter, SWord>>& out) {
  switch (s.k) {
    case 0:
      for (auto& e : atoms_[s.a].out)
        if (e.x == z) out.push_back({e.y, SWord{Sym{0, e.to}}});
      break;
    case 1: {
      CylId c = after(s.a, z);
      if (c != none()) out.push_back({z, SWord{Sym{1, c}}});
      break;
    }
    case 2:
      for (auto& b : pending_[s.a].branches) {
        if (b.x != z) continue;
        SWord w{Sym{1, fol_cyl_[b.y]}};
        if (b.next >= 0) w.push_back(Sym{std::uint8_t(b.next_inverse ? 3 : 2), b.next});
        w.push_back(Sym{1, meet(b.when < 0 ? full() : b.when, fol_cyl_[z])});
        out.push_back({b.y, std::move(w)});
      }
      break;
    case 3:
      for (auto& b : pending_[s.a].branches) {
        if (b.y != z) continue;
        SWord w{Sym{1, meet(b.when < 0 ? full() : b.when, fol_cyl_[b.x])}};
        if (b.next >= 0) w.push_back(Sym{std::uint8_t(b.next_inverse ? 2 : 3), b.next});
        w.push_back(Sym{1, fol_cyl_[z]});
        out.push_back({b.x, std::move(w)});
      }
      break;
  }
}

AtomId Universe::intern_node(const SNode& root0, bool validate) {
  SNode root;
  for (auto w : root0)
    if (simplify(w)) root.push_back(std::move(w));
  std::sort(root.begin(), root.end());
  root.erase(std::unique(root.begin(), root.end()), root.end());
  if (root.empty()) return kEmpty;
  if (root.size() == 1 && root[0].size() == 1 && root[0][0].k == 0) return root[0][0].a;

  std::unordered_map<SNode, int, SNodeHash> ids;
  std::vector<const SNode*> order;
  XGraph g;
  auto add = [&](SNode&& n) -> int {
    auto [it, ins] = ids.emplace(std::move(n), int(order.size()));
    if (ins) {
      order.push_back(&it->first);
      g.nodes.emplace_back();
      if (order.size() > max_states)
        throw StateExplosion("section exploration exceeded " + std::to_string(max_states) + " states");
    }
    return it->second;
  };
  add(SNode(root));
  int L = shift_.size();
  std::vector<std::pair<Letter, SWord>> cur, nxt, part;
  std::vector<SNode> by_y(L);
  for (std::size_t i = 0; i < order.size(); ++i) {
    SNode node = *order[i];
    for (int x = 0; x < L; ++x) {
      for (auto& b : by_y) b.clear();
      for (auto& w : node) {
        cur.assign(1, {Letter(x), SWord()});
        for (int k = int(w.size()) - 1; k >= 0 && !cur.empty(); --k) {
          nxt.clear();
          for (auto& [z, tailw] : cur) {
            part.clear();
            sym_sections(w[k], z, part);
            for (auto& [z2, pw] : part) {
              SWord nw = pw;
              nw.insert(nw.end(), tailw.begin(), tailw.end());
              nxt.push_back({z2, std::move(nw)});
            }
          }
          std::swap(cur, nxt);
        }
        for (auto& [y, sw] : cur)
          if (simplify(sw)) by_y[y].push_back(std::move(sw));
      }
      for (int y = 0; y < L; ++y) {
        auto& sn = by_y[y];
        if (sn.empty()) continue;
        std::sort(sn.begin(), sn.end());
        sn.erase(std::unique(sn.begin(), sn.end()), sn.end());
        if (sn.size() == 1 && sn[0].size() == 1 && sn[0][0].k == 0) {
          g.nodes[i].push_back({Letter(x), Letter(y), false, sn[0][0].a});
        } else {
          int t = add(std::move(sn));
          g.nodes[i].push_back({Letter(x), Letter(y), true, t});
        }
        sn = SNode();
      }
    }
  }
  auto res = intern_graph(g, {0}, validate);
  return res[0];
}

// ------------------------------------------------------------ interning

AtomId Universe::make_atom(std::vector<AtomEdge> out) {
  AtomId id = AtomId(atoms_.size());
  atoms_.push_back(Atom{std::move(out), kEmpty, -1, -1});
  revedges_.emplace_back();
  return id;
}

std::vector<AtomId> Universe::resolve(const XGraph& g0, std::vector<AtomId>& fresh) {
  XGraph g = g0;
  int n = int(g.nodes.size());
  for (auto& ed : g.nodes)
    std::sort(ed.begin(), ed.end(), [](const XEdge& a, const XEdge& b) {
      return a.x != b.x ? a.x < b.x : a.y < b.y;
    });

  // a node is nonempty iff it has an infinite run: reaches a known atom or a cycle
  std::vector<char> alive(n, 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      bool ok = false;
      for (auto& e : g.nodes[i])
        if (!e.local ? e.to != kEmpty : alive[e.to]) {
          ok = true;
          break;
        }
      if (!ok) {
        alive[i] = 0;
        changed = true;
      }
    }
  }
  for (auto& ed : g.nodes)
    ed.erase(std::remove_if(ed.begin(), ed.end(),
                            [&](const XEdge& e) { return e.local ? !alive[e.to] : e.to == kEmpty; }),
             ed.end());

  // iterative Tarjan; components come out sinks first
  std::vector<int> index(n, -1), low(n, 0), stk, comp_of(n, -1);
  std::vector<char> on(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  for (int s = 0; s < n; ++s) {
    if (!alive[s] || index[s] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> cs{{s, 0}};
    index[s] = low[s] = counter++;
    stk.push_back(s);
    on[s] = 1;
    while (!cs.empty()) {
      auto& [v, ei] = cs.back();
      if (ei < g.nodes[v].size()) {
        const XEdge& e = g.nodes[v][ei++];
        if (!e.local) continue;
        int w = e.to;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stk.push_back(w);
          on[w] = 1;
          cs.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        int vv = v;
        cs.pop_back();
        if (!cs.empty()) low[cs.back().first] = std::min(low[cs.back().first], low[vv]);
        if (low[vv] == index[vv]) {
          std::vector<int> comp;
          for (;;) {
            int w = stk.back();
            stk.pop_back();
            on[w] = 0;
            comp_of[w] = int(comps.size());
            comp.push_back(w);
            if (w == vv) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      }
    }
  }

  std::vector<AtomId> res(n, kEmpty);
  std::vector<int> where(n, -1);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    auto& comp = comps[ci];
    int m = int(comp.size());
    for (int i = 0; i < m; ++i) where[comp[i]] = i;
    // per member: edges with internal member index or resolved atom
    struct E {
      Letter x, y;
      bool internal;
      int t;
    };
    std::vector<std::vector<E>> ed(m);
    bool any_internal = false, any_external = false;
    for (int i = 0; i < m; ++i)
      for (auto& e : g.nodes[comp[i]]) {
        if (e.local && comp_of[e.to] == int(ci)) {
          ed[i].push_back({e.x, e.y, true, where[e.to]});
          any_internal = true;
        } else {
          ed[i].push_back({e.x, e.y, false, e.local ? res[e.to] : e.to});
          any_external = true;
        }
      }
    // Moore refinement inside the component
    std::vector<int> cls(m, 0);
    int ncls = 0;
    for (bool first = true;; first = false) {
      std::map<std::vector<long>, int> sig;
      std::vector<int> nc(m);
      for (int i = 0; i < m; ++i) {
        std::vector<long> key{first ? 0 : cls[i]};
        for (auto& e : ed[i]) {
          key.push_back(e.x);
          key.push_back(e.y);
          key.push_back(e.internal ? (first ? -1 : cls[e.t]) : -2 - long(e.t));
        }
        nc[i] = sig.emplace(std::move(key), int(sig.size())).first->second;
      }
      int k = int(sig.size());
      cls = nc;
      if (!first && k == ncls) break;
      ncls = k;
    }
    // representative edge lists per class
    std::vector<int> rep(ncls, -1);
    for (int i = 0; i < m; ++i)
      if (rep[cls[i]] < 0) rep[cls[i]] = i;
    std::vector<std::vector<E>> ced(ncls);
    for (int c = 0; c < ncls; ++c) {
      ced[c] = ed[rep[c]];
      for (auto& e : ced[c])
        if (e.internal) e.t = cls[e.t];
    }

    std::vector<AtomId> match(ncls, kEmpty);
    auto bisim = [&](int c0, AtomId b0) -> bool {
      std::fill(match.begin(), match.end(), kEmpty);
      std::deque<int> q{c0};
      match[c0] = b0;
      while (!q.empty()) {
        int c = q.front();
        q.pop_front();
        const auto& ao = atoms_[match[c]].out;
        if (ao.size() != ced[c].size()) return false;
        for (std::size_t j = 0; j < ao.size(); ++j) {
          const E& e = ced[c][j];
          if (ao[j].x != e.x || ao[j].y != e.y) return false;
          if (e.internal) {
            if (match[e.t] == kEmpty) {
              match[e.t] = ao[j].to;
              q.push_back(e.t);
            } else if (match[e.t] != ao[j].to) {
              return false;
            }
          } else if (e.t != ao[j].to) {
            return false;
          }
        }
      }
      return true;
    };
    auto closed_key = [&](int c0) {
      std::vector<int> num(ncls, -1), ord{c0};
      num[c0] = 0;
      std::string key;
      for (std::size_t i = 0; i < ord.size(); ++i) {
        key += '[';
        for (auto& e : ced[ord[i]]) {
          if (num[e.t] < 0) {
            num[e.t] = int(ord.size());
            ord.push_back(e.t);
          }
          key += std::to_string(e.x) + "," + std::to_string(e.y) + ">" + std::to_string(num[e.t]) + ";";
        }
        key += ']';
      }
      return key;
    };

    bool matched = false;
    if (!any_internal) {
      std::vector<AtomEdge> tab;
      for (auto& e : ced[0]) tab.push_back({e.x, e.y, e.t});
      auto it = table_index_.find(tab);
      if (it != table_index_.end()) {
        match[0] = it->second;
        matched = true;
      }
    } else if (any_external) {
      int bc = -1;
      std::size_t best = SIZE_MAX;
      const E* be = nullptr;
      for (int c = 0; c < ncls; ++c)
        for (auto& e : ced[c])
          if (!e.internal && revedges_[e.t].size() < best) {
            best = revedges_[e.t].size();
            bc = c;
            be = &e;
          }
      for (AtomId b : revedges_[be->t]) {
        if (section(b, be->x, be->y) != be->t) continue;
        if (bisim(bc, b)) {
          matched = true;
          break;
        }
      }
    } else {
      auto it = closed_index_.find(closed_key(0));
      if (it != closed_index_.end()) matched = bisim(0, it->second);
    }

    if (!matched) {
      for (int c = 0; c < ncls; ++c) {
        match[c] = make_atom({});
        fresh.push_back(match[c]);
      }
      for (int c = 0; c < ncls; ++c) {
        std::vector<AtomEdge> out;
        for (auto& e : ced[c]) out.push_back({e.x, e.y, e.internal ? match[e.t] : e.t});
        for (auto& e : out)
          if (revedges_[e.to].empty() || revedges_[e.to].back() != match[c]) revedges_[e.to].push_back(match[c]);
        table_index_.emplace(out, match[c]);
        atoms_[match[c]].out = std::move(out);
      }
      if (!any_external)
        for (int c = 0; c < ncls; ++c) closed_index_.emplace(closed_key(c), match[c]);
    }
    for (int i = 0; i < m; ++i) res[comp[i]] = match[cls[i]];
  }
  return res;
}

std::vector<AtomId> Universe::intern_graph(const XGraph& g, const std::vector<int>& roots, bool validate) {
  std::vector<AtomId> fresh;
  auto res = resolve(g, fresh);
  if (!fresh.empty()) {
    std::map<AtomId, int> pos;
    for (std::size_t i = 0; i < fresh.size(); ++i) pos[fresh[i]] = int(i);
    XGraph ig;
    ig.nodes.resize(fresh.size());
    for (std::size_t i = 0; i < fresh.size(); ++i)
      for (auto& e : atoms_[fresh[i]].out) {
        auto it = pos.find(e.to);
        if (it != pos.end()) ig.nodes[i].push_back({e.y, e.x, true, it->second});
        else ig.nodes[i].push_back({e.y, e.x, false, atoms_[e.to].inv});
      }
    std::vector<AtomId> fresh2;
    auto inv = resolve(ig, fresh2);
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      atoms_[fresh[i]].inv = inv[i];
      atoms_[inv[i]].inv = fresh[i];
    }
    if (validate) {
      for (AtomId a : fresh) validate_atom(a);
      for (AtomId a : fresh2) validate_atom(a);
    }
  }
  std::vector<AtomId> out;
  for (int r : roots) out.push_back(res[r]);
  return out;
}

// ------------------------------------------------------------ constructors

AtomId Universe::compose(AtomId a, AtomId b) {
  if (a == kEmpty || b == kEmpty) return kEmpty;
  auto it = compose_memo_.find({a, b});
  if (it != compose_memo_.end()) return it->second;
  AtomId r = intern_node(SNode{SWord{Sym{0, a}, Sym{0, b}}}, false);
  compose_memo_[{a, b}] = r;
  return r;
}

AtomId Universe::identity(CylId c) {
  auto it = id_memo_.find(c);
  if (it != id_memo_.end()) return it->second;
  AtomId r = c == none() ? kEmpty : intern_node(SNode{SWord{Sym{1, c}}}, false);
  id_memo_[c] = r;
  return r;
}

AtomId Universe::restrict(AtomId a, CylId c) {
  if (a == kEmpty || c == none()) return kEmpty;
  if (c == full()) return a;
  auto it = restrict_memo_.find({a, c});
  if (it != restrict_memo_.end()) return it->second;
  AtomId r = intern_node(SNode{SWord{Sym{0, a}, Sym{1, c}}}, false);
  restrict_memo_[{a, c}] = r;
  return r;
}

AtomId Universe::corestrict(CylId c, AtomId a) {
  if (a == kEmpty || c == none()) return kEmpty;
  if (c == full()) return a;
  auto it = corestrict_memo_.find({a, c});
  if (it != corestrict_memo_.end()) return it->second;
  AtomId r = intern_node(SNode{SWord{Sym{1, c}, Sym{0, a}}}, false);
  corestrict_memo_[{a, c}] = r;
  return r;
}

AtomId Universe::unite(AtomId a, AtomId b) {
  if (a == kEmpty) return b;
  if (b == kEmpty || a == b) return a;
  if (meet(dom(a), dom(b)) != none() || meet(ran(a), ran(b)) != none())
    throw ValidationError("disjoint union of maps with overlapping domains or ranges");
  return intern_node(SNode{SWord{Sym{0, a}}, SWord{Sym{0, b}}}, false);
}

AtomId Universe::prefix(Letter y, AtomId f, Letter x) {
  AtomId t = corestrict(fol_cyl_[y], restrict(f, fol_cyl_[x]));
  if (t == kEmpty) return kEmpty;
  XGraph g;
  g.nodes.push_back({XEdge{x, y, false, t}});
  return intern_graph(g, {0})[0];
}

AtomId Universe::prefix(const Word& u, AtomId f, const Word& v) {
  if (u.size() != v.size()) throw ValidationError("prefix words must have equal length");
  for (int i = int(u.size()) - 1; i >= 0 && f != kEmpty; --i) f = prefix(u[i], f, v[i]);
  return f;
}

int Universe::add_pending(PendingState st) {
  pending_.push_back(std::move(st));
  return int(pending_.size()) - 1;
}

AtomId Universe::realize_pending(int state, bool inv) {
  return intern_node(SNode{SWord{Sym{std::uint8_t(inv ? 3 : 2), state}}}, true);
}

// ------------------------------------------------------------ domains

std::vector<AtomId> Universe::step(const std::vector<AtomId>& s, Letter x) const {
  std::vector<AtomId> r;
  for (AtomId a : s)
    for (auto& e : atoms_[a].out)
      if (e.x == x) r.push_back(e.to);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

// Does the union of the domains of s cover all continuations after ctx?
// Greatest fixed point over the subset automaton.
bool Universe::full_state(const std::vector<AtomId>& s, int ctx) {
  auto key = std::make_pair(s, ctx);
  if (auto it = full_memo_.find(key); it != full_memo_.end()) return it->second;
  std::map<std::pair<std::vector<AtomId>, int>, int> idx;
  std::vector<std::pair<std::vector<AtomId>, int>> nodes;
  std::vector<std::vector<int>> succ;
  std::vector<char> bad;
  auto add = [&](const std::pair<std::vector<AtomId>, int>& k) {
    auto [it, ins] = idx.emplace(k, int(nodes.size()));
    if (ins) {
      nodes.push_back(k);
      succ.emplace_back();
      bad.push_back(0);
      if (nodes.size() > max_states) throw StateExplosion("domain computation exceeded state cap");
    }
    return it->second;
  };
  add(key);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [st, c] = nodes[i];
    if (st.empty()) {
      bad[i] = 1;
      continue;
    }
    if (auto it = full_memo_.find(nodes[i]); it != full_memo_.end() && i > 0) {
      bad[i] = !it->second;
      continue;
    }
    for (Letter l : shift_.followers(c)) {
      int j = add({step(st, l), int(l)});
      succ[i].push_back(j);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (bad[i]) continue;
      for (int j : succ[i])
        if (bad[j]) {
          bad[i] = 1;
          changed = true;
          break;
        }
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) full_memo_[nodes[i]] = !bad[i];
  return !bad[0];
}

CylId Universe::dom(AtomId a) {
  if (a == kEmpty) return none();
  if (atoms_[a].dom >= 0) return atoms_[a].dom;
  std::vector<Word> cells;
  std::vector<std::pair<Word, std::vector<AtomId>>> frontier{{Word(), {a}}}, next;
  for (int depth = 0; !frontier.empty(); ++depth) {
    if (depth > max_depth) throw StateExplosion("domain depth exceeded cap");
    next.clear();
    for (auto& [p, s] : frontier) {
      int ctx = p.empty() ? kNoLetter : int(p.back());
      if (full_state(s, ctx)) {
        cells.push_back(p);
        continue;
      }
      for (Letter l : shift_.followers(ctx)) {
        auto s2 = step(s, l);
        if (!s2.empty()) next.push_back({p + l, std::move(s2)});
      }
    }
    std::swap(frontier, next);
  }
  CylId c = cyl(cyl::make(shift_, cells));
  atoms_[a].dom = c;
  return c;
}

CylId Universe::ran(AtomId a) {
  if (a == kEmpty) return none();
  if (atoms_[a].ran < 0) atoms_[a].ran = dom(atoms_[a].inv);
  return atoms_[a].ran;
}

bool Universe::is_idempotent(AtomId a) { return a != kEmpty && a == identity(dom(a)); }

void Universe::validate_atom(AtomId a) {
  const auto& out = atoms_[a].out;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (out[i].x == out[j].x && meet(dom(out[i].to), dom(out[j].to)) != none())
        throw ValidationError("map " + label(a) + " is not deterministic on input " + shift_.name(out[i].x));
      if (out[i].y == out[j].y && meet(ran(out[i].to), ran(out[j].to)) != none())
        throw ValidationError("map " + label(a) + " is not injective on output " + shift_.name(out[i].y));
    }
}

// ------------------------------------------------------------ germs

bool Universe::germ_disjoint(AtomId a, AtomId b) {
  if (a == kEmpty || b == kEmpty) return true;
  if (a == b) return false;
  auto key = std::minmax(a, b);
  if (auto it = disjoint_memo_.find(key); it != disjoint_memo_.end()) return it->second;
  std::set<std::pair<AtomId, AtomId>> seen{{a, b}};
  std::deque<std::pair<AtomId, AtomId>> q{{a, b}};
  bool disjoint = true;
  while (!q.empty() && disjoint) {
    auto [p, r] = q.front();
    q.pop_front();
    const auto& po = atoms_[p].out;
    const auto& ro = atoms_[r].out;
    std::size_t i = 0, j = 0;
    while (i < po.size() && j < ro.size()) {
      if (po[i].x < ro[j].x || (po[i].x == ro[j].x && po[i].y < ro[j].y)) ++i;
      else if (ro[j].x < po[i].x || (ro[j].x == po[i].x && ro[j].y < po[i].y)) ++j;
      else {
        auto pr = std::make_pair(po[i].to, ro[j].to);
        if (pr.first == pr.second) {
          disjoint = false;
          break;
        }
        if (seen.insert(pr).second) q.push_back(pr);
        ++i, ++j;
      }
    }
  }
  disjoint_memo_[key] = disjoint;
  return disjoint;
}

bool Universe::in_domain(AtomId a, const EPWord& w) { return evaluate(a, w).has_value(); }

std::optional<EPWord> Universe::evaluate(AtomId a, const EPWord& w) {
  if (a == kEmpty) return std::nullopt;
  std::size_t P = w.pre.size(), Q = w.period.size();
  auto canon = [&](std::size_t p) { return p < P ? p : P + (p - P) % Q; };
  std::map<std::pair<AtomId, std::size_t>, std::size_t> seen;
  Word out;
  std::size_t pos = 0;
  AtomId cur = a;
  if (!contains(cylinder(dom(a)), w)) return std::nullopt;
  for (;;) {
    auto key = std::make_pair(cur, canon(pos));
    auto it = seen.find(key);
    if (it != seen.end()) {
      std::size_t start = it->second;
      return EPWord(out.substr(0, start), out.substr(start));
    }
    seen.emplace(key, out.size());
    Letter x = w.at(pos);
    EPWord rest = w.tail(pos + 1);
    AtomId nxt = kEmpty;
    Letter y = 0;
    for (auto& e : atoms_[cur].out)
      if (e.x == x && contains(cylinder(dom(e.to)), rest)) {
        nxt = e.to;
        y = e.y;
        break;
      }
    if (nxt == kEmpty) return std::nullopt;
    out.push_back(y);
    cur = nxt;
    ++pos;
  }
}

bool Universe::germs_equal_at(AtomId a, AtomId b, const EPWord& w) {
  if (a == kEmpty || b == kEmpty) return false;
  if (!in_domain(a, w) || !in_domain(b, w)) return false;
  if (a == b) return true;
  std::size_t P = w.pre.size(), Q = w.period.size();
  auto canon = [&](std::size_t p) { return p < P ? p : P + (p - P) % Q; };
  using PS = std::vector<std::pair<AtomId, AtomId>>;
  PS cur{{a, b}};
  std::set<std::pair<PS, std::size_t>> seen;
  std::size_t pos = 0;
  for (;;) {
    bool all_eq = true;
    for (auto& [p, q] : cur) all_eq = all_eq && p == q;
    if (all_eq) return true;
    if (!seen.insert({cur, canon(pos)}).second) return false;
    Letter x = w.at(pos);
    PS nxt;
    for (auto& [p, q] : cur) {
      for (int y = 0; y < shift_.size(); ++y) {
        AtomId p2 = section(p, x, Letter(y)), q2 = section(q, x, Letter(y));
        if (p2 == kEmpty && q2 == kEmpty) continue;
        nxt.push_back({p2, q2});
      }
    }
    std::sort(nxt.begin(), nxt.end());
    nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
    cur = std::move(nxt);
    ++pos;
  }
}

// ------------------------------------------------------------ names

void Universe::set_name(AtomId a, const std::string& n) {
  if (a != kEmpty) names_[a] = n;
}

std::string Universe::label(AtomId a) {
  if (a == kEmpty) return "0";
  if (auto it = names_.find(a); it != names_.end()) return it->second;
  if (auto it = names_.find(atoms_[a].inv); it != names_.end()) return it->second + "^-1";
  if (is_idempotent(a)) {
    CylId d = dom(a);
    if (d == full()) return "1";
    return "I[" + cyl::format(shift_, cyls_[d]) + "]";
  }
  return "#" + std::to_string(a);
}

// ------------------------------------------------------------ expressions

MapExpr MapExpr::of(AtomId id) {
  MapExpr e;
  e.kind = Atom;
  e.atom = id;
  return e;
}

MapExpr MapExpr::inverse(MapExpr x) {
  MapExpr e;
  e.kind = Inverse;
  e.a = std::make_shared<const MapExpr>(std::move(x));
  return e;
}

MapExpr MapExpr::compose(MapExpr e1, MapExpr e2) {
  MapExpr e;
  e.kind = Compose;
  e.a = std::make_shared<const MapExpr>(std::move(e1));
  e.b = std::make_shared<const MapExpr>(std::move(e2));
  return e;
}

MapExpr MapExpr::restrict(MapExpr x, CylinderSet c) {
  MapExpr e;
  e.kind = Restrict;
  e.a = std::make_shared<const MapExpr>(std::move(x));
  e.cyl = std::move(c);
  return e;
}

MapExpr MapExpr::section(Letter y, MapExpr x, Letter xl) {
  MapExpr e;
  e.kind = Section;
  e.a = std::make_shared<const MapExpr>(std::move(x));
  e.x = xl;
  e.y = y;
  return e;
}

MapExpr MapExpr::disjoint_union(MapExpr e1, MapExpr e2) {
  MapExpr e;
  e.kind = Union;
  e.a = std::make_shared<const MapExpr>(std::move(e1));
  e.b = std::make_shared<const MapExpr>(std::move(e2));
  return e;
}

MapExpr MapExpr::prefix(Letter y, MapExpr x, Letter xl) {
  MapExpr e;
  e.kind = Prefix;
  e.a = std::make_shared<const MapExpr>(std::move(x));
  e.x = xl;
  e.y = y;
  return e;
}

AtomId realize(Universe& u, const MapExpr& e) {
  switch (e.kind) {
    case MapExpr::Atom: return e.atom;
    case MapExpr::Inverse: return u.inverse(realize(u, *e.a));
    case MapExpr::Compose: return u.compose(realize(u, *e.a), realize(u, *e.b));
    case MapExpr::Restrict: return u.restrict(realize(u, *e.a), u.cyl(e.cyl));
    case MapExpr::Section: return u.section(realize(u, *e.a), e.x, e.y);
    case MapExpr::Union: return u.unite(realize(u, *e.a), realize(u, *e.b));
    case MapExpr::Prefix: return u.prefix(e.y, realize(u, *e.a), e.x);
  }
  return kEmpty;
}

bool equal(Universe& u, const MapExpr& a, const MapExpr& b) { return realize(u, a) == realize(u, b); }

bool germ_disjoint(Universe& u, const MapExpr& a, const MapExpr& b) {
  return u.germ_disjoint(realize(u, a), realize(u, b));
}

std::optional<ClosureWitness> self_similar_counterexample(Universe& u, const std::vector<AtomId>& set) {
  std::set<AtomId> s(set.begin(), set.end());
  for (AtomId a : set)
    for (auto& e : u.atom(a).out)
      if (!s.count(e.to)) return ClosureWitness{a, e.x, e.y};
  return std::nullopt;
}

std::vector<MooreArrow> moore_diagram(Universe& u, const std::vector<AtomId>& set) {
  std::map<AtomId, int> pos;
  for (std::size_t i = 0; i < set.size(); ++i) pos[set[i]] = int(i);
  std::vector<MooreArrow> r;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (auto& e : u.atom(set[i]).out) {
      auto it = pos.find(e.to);
      if (it == pos.end()) throw ValidationError("moore diagram of a set that is not self-similar");
      r.push_back({int(i), it->second, e.x, e.y});
    }
  std::sort(r.begin(), r.end());
  return r;
}

std::string moore_dot(Universe& u, const std::vector<AtomId>& set) {
  auto arrows = moore_diagram(u, set);
  std::ostringstream os;
  os << "digraph moore {\n";
  for (std::size_t i = 0; i < set.size(); ++i) os << "  n" << i << " [label=\"" << u.label(set[i]) << "\"];\n";
  for (auto& a : arrows)
    os << "  n" << a.from << " -> n" << a.to << " [label=\"" << u.shift().name(a.x) << "|"
       << u.shift().name(a.y) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::vector<AtomId> recode_to_edges(Universe& from, Universe& to, const std::vector<AtomId>& maps) {
  BlockCode bc = block_code(from.shift(), 2);
  if (!(Shift::edge_shift(bc.graph) == to.shift()))
    throw ValidationError("target universe is not the width-2 block code of the source shift");
  // node (L, F, R) stands for Id_[R] o F o Id_[L] read on the recoded shift
  std::map<std::tuple<int, AtomId, int>, int> ids;
  std::vector<std::tuple<int, AtomId, int>> order;
  XGraph g;
  auto add = [&](std::tuple<int, AtomId, int> k) {
    auto [it, ins] = ids.emplace(k, int(order.size()));
    if (ins) {
      order.push_back(k);
      g.nodes.emplace_back();
    }
    return it->second;
  };
  std::vector<int> roots;
  for (AtomId m : maps) roots.push_back(m == kEmpty ? -1 : add({-1, m, -1}));
  int E = int(bc.dictionary.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [L, F, R] = order[i];
    for (int ein = 0; ein < E; ++ein) {
      Letter p = bc.dictionary[ein][0], q = bc.dictionary[ein][1];
      if (L >= 0 && p != L) continue;
      for (int eout = 0; eout < E; ++eout) {
        Letter r = bc.dictionary[eout][0], s = bc.dictionary[eout][1];
        if (R >= 0 && r != R) continue;
        AtomId t = from.section(F, p, r);
        if (t == kEmpty) continue;
        int j = add({int(q), t, int(s)});
        g.nodes[i].push_back({Letter(ein), Letter(eout), true, j});
      }
    }
  }
  std::vector<int> rr;
  for (int r : roots)
    if (r >= 0) rr.push_back(r);
  auto res = to.intern_graph(g, rr);
  std::vector<AtomId> out;
  std::size_t k = 0;
  for (int r : roots) out.push_back(r < 0 ? kEmpty : res[k++]);
  return out;
}

}  // namespace ssg
