#include "ssg/cayley.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace ssg {

bool LabeledBall::well_labeled() const {
  std::set<std::pair<int, int>> out, in;
  for (auto& a : arrows)
    if (!out.insert({a.from, a.label}).second || !in.insert({a.to, a.label}).second) return false;
  return true;
}

std::string LabeledBall::canonical() const {
  // BFS from the root, taking arrows in (direction, label) order. Labels are
  // unique per direction at a vertex, so the numbering is canonical.
  std::vector<std::vector<std::pair<int, int>>> adj(maps.size());  // (key, neighbor)
  for (auto& a : arrows) {
    adj[a.from].push_back({2 * a.label, a.to});
    adj[a.to].push_back({2 * a.label + 1, a.from});
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());
  std::vector<int> id(maps.size(), -1);
  std::deque<int> q{0};
  id[0] = 0;
  int next = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (auto& [k, w] : adj[v])
      if (id[w] < 0) {
        id[w] = next++;
        q.push_back(w);
      }
  }
  std::vector<std::tuple<int, int, int>> es;
  for (auto& a : arrows) es.push_back({id[a.from], a.label, id[a.to]});
  std::sort(es.begin(), es.end());
  std::ostringstream os;
  os << maps.size() << ':';
  for (auto& [f, l, t] : es) os << f << ',' << l << ',' << t << ';';
  return os.str();
}

std::string LabeledBall::to_dot(const Shift& s) const {
  std::ostringstream os;
  os << "digraph ball {\n";
  for (int i = 0; i < size(); ++i)
    os << "  n" << i << " [label=\"" << format(s, points[i]) << "\"" << (i == 0 ? ", shape=doublecircle" : "")
       << "];\n";
  for (auto& a : arrows) os << "  n" << a.from << " -> n" << a.to << " [label=\"" << labels[a.label] << "\"];\n";
  os << "}\n";
  return os.str();
}

LabeledBall ball(Universe& u, const std::vector<AtomId>& gens, const std::vector<std::string>& names, const EPWord& x,
                 int r) {
  if (r < 0) throw ValidationError("radius must be nonnegative");
  if (!allowed(u.shift(), x)) throw ValidationError("basepoint is not an allowed sequence");
  LabeledBall b;
  b.center = x;
  b.radius = r;
  b.labels = names;
  std::vector<int> order(gens.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return names[i] < names[j]; });

  std::map<EPWord, std::vector<int>> at;  // image point -> vertices
  auto find_or_add = [&](AtomId m, const EPWord& y, int d) {
    auto& list = at[y];
    for (int v : list)
      if (u.germs_equal_at(m, b.maps[v], x)) return v;
    int v = b.size();
    b.maps.push_back(m);
    b.points.push_back(y);
    b.dist.push_back(d);
    list.push_back(v);
    return v;
  };
  find_or_add(u.identity(u.full()), x, 0);
  std::set<LabeledArrow> arrows;
  for (int v = 0; v < b.size(); ++v) {
    if (b.dist[v] >= r) continue;
    for (int i : order)
      for (int dir = 0; dir < 2; ++dir) {
        AtomId g = dir == 0 ? gens[i] : u.inverse(gens[i]);
        auto y = u.evaluate(g, b.points[v]);
        if (!y) continue;
        int w = find_or_add(u.compose(g, b.maps[v]), *y, b.dist[v] + 1);
        arrows.insert(dir == 0 ? LabeledArrow{v, i, w} : LabeledArrow{w, i, v});
      }
  }
  b.arrows.assign(arrows.begin(), arrows.end());
  return b;
}

std::vector<long> growth(Universe& u, const std::vector<AtomId>& gens, const std::vector<std::string>& names,
                         const EPWord& x, int r) {
  LabeledBall b = ball(u, gens, names, x, r);
  std::vector<long> g(r + 1, 0);
  for (int d : b.dist) ++g[d];
  for (int k = 1; k <= r; ++k) g[k] += g[k - 1];
  return g;
}

std::vector<Word> letter_cycles(const Shift& s) {
  std::vector<Word> out(s.size());
  for (int a = 0; a < s.size(); ++a) {
    // shortest path a -> ... -> a in the letter graph
    std::vector<int> prev(s.size(), -2);
    std::deque<int> q;
    for (Letter b : s.followers(a))
      if (prev[b] == -2) {
        prev[b] = -1;
        q.push_back(b);
      }
    while (!q.empty() && prev[a] == -2) {
      int c = q.front();
      q.pop_front();
      for (Letter d : s.followers(c))
        if (prev[d] == -2) {
          prev[d] = c;
          q.push_back(d);
        }
    }
    if (prev[a] == -2) continue;
    Word w;
    for (int c = prev[a]; c >= 0; c = prev[c]) w.insert(w.begin(), Letter(c));
    w.insert(w.begin(), Letter(a));
    out[a] = w;
  }
  return out;
}

ComplexityResult complexity(Universe& u, const std::vector<AtomId>& gens, const std::vector<std::string>& names, int r,
                            int max_depth) {
  const Shift& s = u.shift();
  auto cycles = letter_cycles(s);
  std::vector<long> counts;
  std::vector<long> samples;
  for (int D = 0; D <= max_depth; ++D) {
    std::set<std::string> classes;
    long n = 0;
    for (auto& w : s.words(D))
      for (Letter c : s.followers(w.empty() ? kNoLetter : int(w.back()))) {
        if (cycles[c].empty()) continue;
        ++n;
        classes.insert(ball(u, gens, names, EPWord(w, cycles[c]), r).canonical());
      }
    counts.push_back(long(classes.size()));
    samples.push_back(n);
    // stable under two further refinements
    if (D >= 2 && counts[D] == counts[D - 1] && counts[D] == counts[D - 2] && counts[D] > 0)
      return {counts[D - 2], D - 2, samples[D - 2]};
  }
  throw CapExceeded("complexity count did not stabilize by depth " + std::to_string(max_depth));
}

std::string label_word(Universe& u, const std::vector<AtomId>& gens, const std::vector<std::string>& names,
                       const EPWord& x, int window) {
  if (gens.size() > 10) throw ValidationError("label words need at most ten generators");
  LabeledBall b = ball(u, gens, names, x, window);
  if (!b.well_labeled()) throw ValidationError("Cayley graph is not well labeled");
  std::map<int, std::vector<const LabeledArrow*>> out, in;
  for (auto& a : b.arrows) {
    out[a.from].push_back(&a);
    in[a.to].push_back(&a);
  }
  for (auto* m : {&out, &in})
    for (auto& [v, l] : *m)
      if (l.size() > 1) throw ValidationError("Cayley graph is not a chain");
  std::string fwd, back;
  int v = 0;
  for (int i = 0; i < window && out.count(v); ++i) {
    fwd += char('0' + out[v][0]->label);
    v = out[v][0]->to;
  }
  v = 0;
  for (int i = 0; i < window && in.count(v); ++i) {
    back += char('0' + in[v][0]->label);
    v = in[v][0]->from;
  }
  std::reverse(back.begin(), back.end());
  return back + fwd;
}

namespace fibonacci {

std::string substitute(const std::string& w) {
  std::string r;
  for (char c : w) {
    if (c == '0') r += "1";
    else if (c == '1') r += "10";
    else throw ValidationError("Fibonacci words use the letters 0 and 1");
  }
  return r;
}

std::string power(int n, const std::string& w) {
  std::string r = w;
  for (int i = 0; i < n; ++i) r = substitute(r);
  return r;
}

namespace {
std::set<std::string> factors_of(const std::string& w, int n) {
  std::set<std::string> f;
  for (std::size_t i = 0; i + n <= w.size(); ++i) f.insert(w.substr(i, n));
  return f;
}
}  // namespace

std::set<std::string> factors(int n) {
  std::string w = "1";
  std::set<std::string> last;
  int stable = 0;
  while (stable < 2) {
    w = substitute(w);
    if (int(w.size()) < 10 * n + 10) continue;
    auto f = factors_of(w, n);
    stable = f == last ? stable + 1 : 0;
    last = std::move(f);
  }
  return last;
}

std::vector<std::string> palindromic_centers(int length) {
  std::vector<std::string> found;
  for (std::string c : {"1", "0", ""}) {
    bool ok = true;
    for (int m = int(c.size()) + 2; m <= length && ok; m += 2) {
      bool any = false;
      for (auto& f : factors(m))
        if (std::equal(f.begin(), f.end(), f.rbegin()) && f.substr((m - c.size()) / 2, c.size()) == c) any = true;
      ok = any;
    }
    if (ok) found.push_back(c);
  }
  return found;
}

}  // namespace fibonacci

}  // namespace ssg
