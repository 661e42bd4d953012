#include "ssg/sft.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ssg {

int VertexGraph::add_vertex(std::string name) {
  vertices.push_back(std::move(name));
  return num_vertices() - 1;
}

int VertexGraph::add_edge(std::string name, int s, int d) {
  edges.push_back(std::move(name));
  src.push_back(s);
  dst.push_back(d);
  return num_edges() - 1;
}

int VertexGraph::vertex_index(const std::string& name) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices[i] == name) return i;
  return -1;
}

std::vector<std::vector<long>> VertexGraph::adjacency() const {
  std::vector<std::vector<long>> a(num_vertices(), std::vector<long>(num_vertices(), 0));
  for (int e = 0; e < num_edges(); ++e) a[src[e]][dst[e]]++;
  return a;
}

std::string VertexGraph::to_dot(const std::string& title) const {
  std::ostringstream os;
  os << "digraph \"" << title << "\" {\n";
  for (int v = 0; v < num_vertices(); ++v) os << "  v" << v << " [label=\"" << vertices[v] << "\"];\n";
  for (int e = 0; e < num_edges(); ++e)
    os << "  v" << src[e] << " -> v" << dst[e] << " [label=\"" << edges[e] << "\"];\n";
  os << "}\n";
  return os.str();
}

std::vector<Path> allowed_paths(const VertexGraph& g, int n) {
  std::vector<Path> cur;
  for (int v = 0; v < g.num_vertices(); ++v) cur.push_back({v, Word()});
  for (int step = 0; step < n; ++step) {
    std::vector<Path> next;
    for (auto& p : cur) {
      int at = p.word.empty() ? p.start : g.dst[p.word.back()];
      for (int e = 0; e < g.num_edges(); ++e)
        if (g.src[e] == at) next.push_back({p.start, p.word + Letter(e)});
    }
    cur = std::move(next);
  }
  if (n > 0) {
    std::sort(cur.begin(), cur.end(), [](const Path& a, const Path& b) { return a.word < b.word; });
  }
  return cur;
}

Primitivity is_primitive(const std::vector<std::vector<long>>& adj) {
  int n = int(adj.size());
  if (n == 0) return {};
  // boolean powers are enough
  std::vector<std::vector<char>> a(n, std::vector<char>(n)), p;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = adj[i][j] != 0;
  p = a;
  int cap = n * n + 1;
  for (int m = 1; m <= cap; ++m) {
    bool pos = true;
    for (auto& r : p)
      for (char c : r) pos = pos && c;
    if (pos) return {true, m};
    std::vector<std::vector<char>> q(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (p[i][k])
          for (int j = 0; j < n; ++j) q[i][j] |= a[k][j];
    p = std::move(q);
  }
  return {};
}

Primitivity is_primitive(const VertexGraph& g) { return is_primitive(g.adjacency()); }

VertexGraph eventual_image(const VertexGraph& g) {
  std::vector<char> alive(g.num_vertices(), 1);
  // V_{n+1} = targets of edges out of V_n; stabilizes within |V| steps
  for (;;) {
    std::vector<char> nxt(g.num_vertices(), 0);
    for (int e = 0; e < g.num_edges(); ++e)
      if (alive[g.src[e]]) nxt[g.dst[e]] = 1;
    if (nxt == alive) break;
    alive = nxt;
  }
  VertexGraph r;
  std::vector<int> idx(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (alive[v]) idx[v] = r.add_vertex(g.vertices[v]);
  for (int e = 0; e < g.num_edges(); ++e)
    if (alive[g.src[e]] && alive[g.dst[e]]) r.add_edge(g.edges[e], idx[g.src[e]], idx[g.dst[e]]);
  return r;
}

// ---------------------------------------------------------------- Shift

void Shift::finish() {
  int n = size();
  fol_.assign(n, {});
  all_.clear();
  for (int a = 0; a < n; ++a) {
    all_.push_back(Letter(a));
    for (int b = 0; b < n; ++b)
      if (allowed(a, b)) fol_[a].push_back(Letter(b));
  }
}

Shift Shift::edge_shift(const VertexGraph& g) {
  Shift s;
  s.names_ = g.edges;
  int n = g.num_edges();
  s.allow_.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s.allow_[a * n + b] = g.dst[a] == g.src[b];
  s.graph_ = g;
  s.finish();
  return s;
}

Shift Shift::markov(std::vector<std::string> letters, const std::vector<std::pair<int, int>>& forbidden) {
  Shift s;
  s.names_ = std::move(letters);
  int n = s.size();
  s.allow_.assign(n * n, 1);
  for (auto [a, b] : forbidden) s.allow_[a * n + b] = 0;
  s.finish();
  return s;
}

const std::vector<Letter>& Shift::followers(int prev) const {
  return prev == kNoLetter ? all_ : fol_[prev];
}

const VertexGraph& Shift::graph() const {
  if (!graph_) throw Error("shift is not an edge shift");
  return *graph_;
}

int Shift::letter(const std::string& nm) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == nm) return i;
  return -1;
}

bool Shift::word_allowed(const Word& w, int prev) const {
  for (Letter c : w) {
    if (int(c) >= size()) return false;
    if (prev != kNoLetter && !allowed(prev, c)) return false;
    prev = c;
  }
  return true;
}

std::vector<Word> Shift::words(int n, int prev) const {
  std::vector<Word> cur{Word()};
  for (int i = 0; i < n; ++i) {
    std::vector<Word> nxt;
    for (auto& w : cur)
      for (Letter b : followers(w.empty() ? prev : int(w.back()))) nxt.push_back(w + b);
    cur = std::move(nxt);
  }
  return cur;
}

std::vector<std::vector<long>> Shift::transition_matrix() const {
  std::vector<std::vector<long>> m(size(), std::vector<long>(size()));
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) m[a][b] = allowed(a, b);
  return m;
}

std::string Shift::format(const Word& w) const {
  std::string r;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) r += ',';
    r += names_[w[i]];
  }
  return r;
}

Word Shift::parse_word(const std::string& s) const {
  Word w;
  if (s.empty()) return w;
  std::string tok;
  auto flush = [&] {
    int l = letter(tok);
    if (l < 0) throw ValidationError("unknown letter '" + tok + "'");
    w.push_back(Letter(l));
    tok.clear();
  };
  for (char c : s) {
    if (c == ',') flush();
    else if (c != ' ') tok += c;
  }
  flush();
  return w;
}

BlockCode block_code(const Shift& s, int k) {
  if (k < 1) throw ValidationError("block code width must be at least 1");
  if (k == 1 && !s.is_edge_shift()) throw ValidationError("a Markov shift needs block width at least 2");
  BlockCode bc;
  bc.vertex_words = s.words(k - 1);
  std::map<Word, int> vid;
  for (auto& w : bc.vertex_words) vid[w] = bc.graph.add_vertex(w.empty() ? "*" : s.format(w));
  for (auto& w : s.words(k)) {
    Word a = w.substr(0, k - 1), b = w.substr(1);
    std::string nm;
    if (k == 1) nm = s.format(w);
    else {
      // "x_y" style names for width 2, dotted for longer blocks
      for (std::size_t i = 0; i < w.size(); ++i) nm += (i ? (k == 2 ? "_" : ".") : "") + s.name(w[i]);
    }
    bc.graph.add_edge(nm, vid[a], vid[k == 1 ? Word() : b]);
    bc.dictionary.push_back(w);
  }
  return bc;
}

BlockCode block_code(const VertexGraph& g, int k) {
  Shift s = Shift::edge_shift(g);
  if (k == 1) {
    BlockCode bc;
    bc.graph = g;
    for (int e = 0; e < g.num_edges(); ++e) bc.dictionary.push_back(Word(1, Letter(e)));
    return bc;
  }
  return block_code(s, k);
}

// ---------------------------------------------------------------- cylinders

namespace cyl {

static void sort_unique(std::vector<Word>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

CylinderSet canonical(const Shift& s, const CylinderSet& c0) {
  if (c0.cells.empty()) return CylinderSet::empty();
  CylinderSet c = c0;
  sort_unique(c.cells);
  while (c.depth > 0) {
    std::map<Word, std::vector<Letter>> groups;
    for (auto& w : c.cells) groups[w.substr(0, c.depth - 1)].push_back(w.back());
    bool ok = true;
    for (auto& [p, ls] : groups) {
      const auto& f = s.followers(p.empty() ? kNoLetter : int(p.back()));
      if (ls.size() != f.size()) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
    std::vector<Word> nc;
    for (auto& [p, ls] : groups) nc.push_back(p);
    c.cells = std::move(nc);
    c.depth--;
  }
  return c;
}

CylinderSet make(const Shift& s, std::vector<Word> cells) {
  if (cells.empty()) return CylinderSet::empty();
  std::size_t d = 0;
  for (auto& w : cells) d = std::max(d, w.size());
  CylinderSet c{int(d), {}};
  for (auto& w : cells) {
    if (!s.word_allowed(w)) throw ValidationError("cylinder word not allowed: " + s.format(w));
    for (auto& ext : s.words(int(d - w.size()), w.empty() ? kNoLetter : int(w.back())))
      c.cells.push_back(w + ext);
  }
  return canonical(s, c);
}

CylinderSet normalize_to_depth(const Shift& s, const CylinderSet& c, int d) {
  if (d < c.depth) throw ValidationError("normalize_to_depth: target depth below current depth");
  CylinderSet r{d, {}};
  for (auto& w : c.cells)
    for (auto& ext : s.words(d - c.depth, w.empty() ? kNoLetter : int(w.back()))) r.cells.push_back(w + ext);
  sort_unique(r.cells);
  if (r.cells.empty()) r.depth = d;
  return r;
}

template <class Op>
static CylinderSet binop(const Shift& s, const CylinderSet& a, const CylinderSet& b, Op op) {
  int d = std::max(a.depth, b.depth);
  auto x = normalize_to_depth(s, a, d), y = normalize_to_depth(s, b, d);
  CylinderSet r{d, {}};
  op(x.cells, y.cells, r.cells);
  return canonical(s, r);
}

CylinderSet unite(const Shift& s, const CylinderSet& a, const CylinderSet& b) {
  return binop(s, a, b, [](auto& x, auto& y, auto& out) {
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}

CylinderSet intersect(const Shift& s, const CylinderSet& a, const CylinderSet& b) {
  return binop(s, a, b, [](auto& x, auto& y, auto& out) {
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}

CylinderSet minus(const Shift& s, const CylinderSet& a, const CylinderSet& b) {
  return binop(s, a, b, [](auto& x, auto& y, auto& out) {
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}

CylinderSet complement(const Shift& s, const CylinderSet& a) { return minus(s, CylinderSet::full(), a); }

bool equal(const Shift& s, const CylinderSet& a, const CylinderSet& b) {
  return canonical(s, a) == canonical(s, b);
}

bool subset(const Shift& s, const CylinderSet& a, const CylinderSet& b) {
  return minus(s, a, b).is_empty();
}

CylinderSet followers(const Shift& s, int prev) {
  if (prev == kNoLetter) return CylinderSet::full();
  CylinderSet r{1, {}};
  for (Letter b : s.followers(prev)) r.cells.push_back(Word(1, b));
  return canonical(s, r);
}

CylinderSet after(const Shift& s, const CylinderSet& c, Letter x) {
  if (c.is_empty()) return c;
  if (c.depth == 0) return followers(s, x);
  CylinderSet r{c.depth - 1, {}};
  for (auto& w : c.cells)
    if (w[0] == x) r.cells.push_back(w.substr(1));
  if (r.cells.empty()) return CylinderSet::empty();
  if (r.depth == 0) return followers(s, x);
  return canonical(s, r);
}

CylinderSet prepend(const Shift& s, Letter x, const CylinderSet& c) {
  if (c.is_empty()) return c;
  auto cc = c.depth == 0 ? followers(s, x) : c;
  if (cc.depth == 0) cc = normalize_to_depth(s, cc, 1);
  CylinderSet r{cc.depth + 1, {}};
  for (auto& w : cc.cells) {
    if (!s.allowed(x, w[0])) throw Error("prepend: cell not allowed after letter");
    r.cells.push_back(Word(1, x) + w);
  }
  return canonical(s, r);
}

CylinderSet vertex(const Shift& s, int v) {
  const auto& g = s.graph();
  CylinderSet r{1, {}};
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.src[e] == v) r.cells.push_back(Word(1, Letter(e)));
  return canonical(s, r);
}

std::string format(const Shift& s, const CylinderSet& c) {
  if (c.is_empty()) return "{}";
  if (c.depth == 0) return "*";
  std::string r;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    if (i) r += ' ';
    r += s.format(c.cells[i]);
  }
  return r;
}

CylinderSet parse(const Shift& s, const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::vector<Word> cells;
  while (is >> tok) {
    if (tok == "*") return CylinderSet::full();
    if (tok == "{}") continue;
    cells.push_back(s.parse_word(tok));
  }
  return make(s, cells);
}

}  // namespace cyl

// ---------------------------------------------------------------- EPWord

EPWord::EPWord(Word p, Word q) : pre(std::move(p)), period(std::move(q)) {
  if (period.empty()) throw ValidationError("EPWord period must be nonempty");
  normalize();
}

void EPWord::normalize() {
  // shortest period
  std::size_t n = period.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = period[i] == period[i - d];
    if (ok) {
      period.resize(d);
      break;
    }
  }
  // shortest preperiod: rotate the period backwards while possible
  while (!pre.empty() && pre.back() == period.back()) {
    pre.pop_back();
    period = period.back() + period.substr(0, period.size() - 1);
  }
}

EPWord EPWord::tail(std::size_t n) const {
  if (n <= pre.size()) return EPWord(pre.substr(n), period);
  std::size_t k = (n - pre.size()) % period.size();
  return EPWord(Word(), period.substr(k) + period.substr(0, k));
}

EPWord EPWord::prepend(const Word& u) const { return EPWord(u + pre, period); }

Word EPWord::prefix(std::size_t n) const {
  Word r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(at(i));
  return r;
}

bool allowed(const Shift& s, const EPWord& w) {
  return s.word_allowed(w.pre + w.period + w.period);
}

bool contains(const CylinderSet& c, const EPWord& w) {
  if (c.is_empty()) return false;
  if (c.depth == 0) return true;
  return std::binary_search(c.cells.begin(), c.cells.end(), w.prefix(c.depth));
}

EPWord parse_epword(const Shift& s, const std::string& text) {
  auto l = text.find('('), r = text.rfind(')');
  if (l == std::string::npos || r == std::string::npos || r < l)
    throw ValidationError("EPWord must look like u(v): " + text);
  EPWord w(s.parse_word(text.substr(0, l)), s.parse_word(text.substr(l + 1, r - l - 1)));
  if (!allowed(s, w)) throw ValidationError("EPWord is not an allowed sequence: " + text);
  return w;
}

std::string format(const Shift& s, const EPWord& w) {
  return s.format(w.pre) + "(" + s.format(w.period) + ")";
}

}  // namespace ssg
