#include "ssg/system.hpp"

#include <fstream>
#include <sstream>

namespace ssg {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, int col, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> r;
  std::string t;
  while (is >> t) r.push_back(t);
  return r;
}

}  // namespace

Shift SystemSpec::shift() const {
  if (!markov) return Shift::edge_shift(graph);
  std::vector<std::pair<int, int>> f;
  auto idx = [&](const std::string& n) {
    for (std::size_t i = 0; i < letters.size(); ++i)
      if (letters[i] == n) return int(i);
    throw ValidationError("unknown letter " + n);
  };
  for (auto& [a, b] : forbidden) f.push_back({idx(a), idx(b)});
  return Shift::markov(letters, f);
}

bool SystemSpec::operator==(const SystemSpec& o) const {
  return name == o.name && markov == o.markov && graph.vertices == o.graph.vertices &&
         graph.edges == o.graph.edges && graph.src == o.graph.src && graph.dst == o.graph.dst &&
         letters == o.letters && forbidden == o.forbidden && generators == o.generators &&
         options == o.options && expected == o.expected;
}

SystemSpec parse_system(const std::string& text) {
  SystemSpec s;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  enum { None, Sys, Graph, Gen, Opt, Exp } sec = None;
  GeneratorSpec* gen = nullptr;
  bool have_graph = false;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    int col = int(raw.find_first_not_of(" \t")) + 1;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, col, "unterminated section header");
      auto parts = split_ws(line.substr(1, line.size() - 2));
      if (parts.empty()) fail(lineno, col, "empty section header");
      if (parts[0] == "system") sec = Sys;
      else if (parts[0] == "graph") sec = Graph, have_graph = true;
      else if (parts[0] == "options") sec = Opt;
      else if (parts[0] == "expected") sec = Exp;
      else if (parts[0] == "generator") {
        if (parts.size() != 2) fail(lineno, col, "generator section needs exactly one name");
        for (auto& g : s.generators)
          if (g.name == parts[1]) fail(lineno, col, "duplicate generator " + parts[1]);
        s.generators.push_back({parts[1], "", "", {}});
        gen = &s.generators.back();
        sec = Gen;
      } else fail(lineno, col, "unknown section [" + parts[0] + "]");
      continue;
    }
    auto words = split_ws(line);
    switch (sec) {
      case None: fail(lineno, col, "content before any section");
      case Sys:
        if (words[0] == "name" && words.size() == 2) s.name = words[1];
        else fail(lineno, col, "expected 'name NAME'");
        break;
      case Graph: {
        if (words[0] == "vertices") {
          for (std::size_t i = 1; i < words.size(); ++i) s.graph.add_vertex(words[i]);
        } else if (words[0] == "letters") {
          s.markov = true;
          s.letters.assign(words.begin() + 1, words.end());
        } else if (words[0] == "forbid") {
          for (std::size_t i = 1; i < words.size(); ++i) {
            auto c = words[i].find(',');
            if (c == std::string::npos) fail(lineno, col, "forbidden word must be 'a,b'");
            s.forbidden.push_back({words[i].substr(0, c), words[i].substr(c + 1)});
          }
        } else if (words.size() == 4 && words[0].back() == ':' && words[2] == "->") {
          int a = s.graph.vertex_index(words[1]), b = s.graph.vertex_index(words[3]);
          if (a < 0 || b < 0) fail(lineno, col, "edge uses an undeclared vertex");
          s.graph.add_edge(words[0].substr(0, words[0].size() - 1), a, b);
        } else {
          fail(lineno, col, "expected 'vertices ...', 'NAME: SRC -> DST', 'letters ...' or 'forbid a,b'");
        }
        break;
      }
      case Gen: {
        if (words[0] == "inverse-of" && words.size() == 2) gen->inverse_of = words[1];
        else if (words[0] == "domain") gen->domain = trim(line.substr(6));
        else if (words.size() >= 4 && words[1] == "->") {
          BranchLine b{words[0], words[2], words[3], ""};
          if (words.size() > 4) {
            if (words[4] != "when" || words.size() < 6) fail(lineno, col, "expected 'when CYLINDER'");
            std::string w;
            for (std::size_t i = 5; i < words.size(); ++i) w += (i > 5 ? " " : "") + words[i];
            b.when = w;
          }
          gen->branches.push_back(b);
        } else fail(lineno, col, "expected 'x -> y NEXT [when CYL]', 'domain ...' or 'inverse-of NAME'");
        break;
      }
      case Opt:
      case Exp: {
        std::string rest = words.size() > 1 ? trim(line.substr(line.find(words[0]) + words[0].size())) : "";
        (sec == Opt ? s.options : s.expected)[words[0]] = rest;
        break;
      }
    }
  }
  if (!have_graph) throw ValidationError("missing [graph] section");
  if (s.markov && s.graph.num_vertices() > 0) throw ValidationError("graph mixes letters and vertices");
  // letters referenced by branches must exist
  Shift sh = s.shift();
  for (auto& g : s.generators)
    for (auto& b : g.branches)
      if (sh.letter(b.x) < 0 || sh.letter(b.y) < 0)
        throw ValidationError("generator " + g.name + ": unknown letter in branch " + b.x + " -> " + b.y);
  return s;
}

SystemSpec parse_system_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_system(ss.str());
}

std::string serialize(const SystemSpec& s) {
  std::ostringstream os;
  os << "[system]\nname " << s.name << "\n\n[graph]\n";
  if (s.markov) {
    os << "letters";
    for (auto& l : s.letters) os << ' ' << l;
    os << '\n';
    if (!s.forbidden.empty()) {
      os << "forbid";
      for (auto& [a, b] : s.forbidden) os << ' ' << a << ',' << b;
      os << '\n';
    }
  } else {
    os << "vertices";
    for (auto& v : s.graph.vertices) os << ' ' << v;
    os << '\n';
    for (int e = 0; e < s.graph.num_edges(); ++e)
      os << s.graph.edges[e] << ": " << s.graph.vertices[s.graph.src[e]] << " -> "
         << s.graph.vertices[s.graph.dst[e]] << '\n';
  }
  for (auto& g : s.generators) {
    os << "\n[generator " << g.name << "]\n";
    if (!g.inverse_of.empty()) {
      os << "inverse-of " << g.inverse_of << '\n';
      continue;
    }
    if (!g.domain.empty()) os << "domain " << g.domain << '\n';
    for (auto& b : g.branches) {
      os << b.x << " -> " << b.y << ' ' << b.next;
      if (!b.when.empty()) os << " when " << b.when;
      os << '\n';
    }
  }
  if (!s.options.empty()) {
    os << "\n[options]\n";
    for (auto& [k, v] : s.options) os << k << (v.empty() ? "" : " ") << v << '\n';
  }
  if (!s.expected.empty()) {
    os << "\n[expected]\n";
    for (auto& [k, v] : s.expected) os << k << (v.empty() ? "" : " ") << v << '\n';
  }
  return os.str();
}

AtomId System::gen(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return gens[i];
  throw ValidationError("unknown generator " + name);
}

AtomId System::parse_element(const std::string& text) {
  // product of factors separated by '*'; each factor NAME, NAME^-1, 1, or I[cells]
  AtomId acc = kEmpty;
  bool first = true;
  std::string t = text;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    auto star = t.find('*', pos);
    std::string f = trim(t.substr(pos, star == std::string::npos ? std::string::npos : star - pos));
    pos = star == std::string::npos ? t.size() + 1 : star + 1;
    AtomId a;
    bool inv = false;
    if (f.size() > 3 && f.substr(f.size() - 3) == "^-1") {
      inv = true;
      f = f.substr(0, f.size() - 3);
    }
    if (f == "1") a = u->identity(u->full());
    else if (f.size() > 2 && f[0] == 'I' && f[1] == '[' && f.back() == ']')
      a = u->identity(u->cyl(cyl::parse(u->shift(), f.substr(2, f.size() - 3))));
    else a = gen(f);
    if (inv) a = u->inverse(a);
    acc = first ? a : u->compose(acc, a);
    first = false;
  }
  return acc;
}

System load(const SystemSpec& spec) {
  System sys;
  sys.spec = spec;
  sys.u = std::make_unique<Universe>(spec.shift());
  Universe& u = *sys.u;
  if (auto it = spec.options.find("max-states"); it != spec.options.end()) u.max_states = std::stoul(it->second);
  if (auto it = spec.options.find("max-depth"); it != spec.options.end()) u.max_depth = std::stoi(it->second);
  const Shift& sh = u.shift();

  // pending state per directly defined generator; inverse-of entries alias
  std::map<std::string, std::pair<int, bool>> ref;
  for (auto& g : spec.generators)
    if (g.inverse_of.empty()) ref[g.name] = {u.add_pending({g.name, {}}), false};
  for (int round = 0; round < int(spec.generators.size()); ++round)
    for (auto& g : spec.generators) {
      if (g.inverse_of.empty() || ref.count(g.name)) continue;
      auto it = ref.find(g.inverse_of);
      if (it != ref.end()) ref[g.name] = {it->second.first, !it->second.second};
    }
  for (auto& g : spec.generators)
    if (!ref.count(g.name)) throw ValidationError("generator " + g.name + ": inverse-of refers to an unknown name");

  auto lookup = [&](const std::string& tok, const std::string& owner) -> std::pair<int, bool> {
    if (tok == "id") return {-1, false};
    std::string n = tok;
    bool inv = false;
    if (n.size() > 3 && n.substr(n.size() - 3) == "^-1") {
      inv = true;
      n = n.substr(0, n.size() - 3);
    }
    auto it = ref.find(n);
    if (it == ref.end()) throw ValidationError("generator " + owner + ": unknown target " + tok);
    return {it->second.first, it->second.second != inv};
  };
  for (auto& g : spec.generators) {
    if (!g.inverse_of.empty()) continue;
    auto& st = u.pending(ref[g.name].first);
    for (auto& b : g.branches) {
      auto [nx, ninv] = lookup(b.next, g.name);
      CylId when = b.when.empty() ? -1 : u.cyl(cyl::parse(sh, b.when));
      st.branches.push_back({Letter(sh.letter(b.x)), Letter(sh.letter(b.y)), nx, ninv, when});
    }
  }
  for (auto& g : spec.generators) {
    auto [st, inv] = ref[g.name];
    AtomId a = u.realize_pending(st, inv);
    if (a == kEmpty) throw ValidationError("generator " + g.name + " defines the empty map");
    sys.names.push_back(g.name);
    sys.gens.push_back(a);
    u.set_name(a, g.name);
  }
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    auto& g = spec.generators[i];
    if (g.domain.empty()) continue;
    CylId d = u.cyl(cyl::parse(sh, g.domain));
    if (d != u.dom(sys.gens[i]))
      throw ValidationError("generator " + g.name + ": declared domain " + g.domain + " differs from computed " +
                            cyl::format(sh, u.cylinder(u.dom(sys.gens[i]))));
  }
  return sys;
}

}  // namespace ssg
