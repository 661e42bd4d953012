#include "ssg/steinberg.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "ssg/homology.hpp"

namespace ssg {

namespace {

bool starts_with(const Word& w, const Word& p) {
  return w.size() >= p.size() && std::equal(p.begin(), p.end(), w.begin());
}

// Maps reached from f by reading `w` on the input side: (output word, section).
std::vector<std::pair<Word, AtomId>> walk_input(const Universe& u, AtomId f, const Word& w) {
  std::vector<std::pair<Word, AtomId>> cur{{Word(), f}};
  for (Letter x : w) {
    std::vector<std::pair<Word, AtomId>> nxt;
    for (auto& [o, h] : cur)
      for (auto& e : u.atom(h).out)
        if (e.x == x) nxt.push_back({o + e.y, e.to});
    cur = std::move(nxt);
  }
  return cur;
}

// Same, reading `w` on the output side: (input word, section).
std::vector<std::pair<Word, AtomId>> walk_output(const Universe& u, AtomId f, const Word& w) {
  std::vector<std::pair<Word, AtomId>> cur{{Word(), f}};
  for (Letter y : w) {
    std::vector<std::pair<Word, AtomId>> nxt;
    for (auto& [i, h] : cur)
      for (auto& e : u.atom(h).out)
        if (e.y == y) nxt.push_back({i + e.x, e.to});
    cur = std::move(nxt);
  }
  return cur;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string scalar_text(const Scalar& c) {
  return c.get_den() == 1 ? c.get_num().get_str() : c.get_str();
}

}  // namespace

int PresentationReport::failures() const {
  int n = 0;
  for (auto& c : checks) n += !c.ok();
  return n;
}

std::string PresentationReport::format(bool verbose) const {
  std::map<std::string, std::pair<int, int>> by_kind;  // passed, total
  std::vector<std::string> order;
  std::ostringstream os;
  for (auto& c : checks) {
    if (!by_kind.count(c.kind)) order.push_back(c.kind);
    auto& k = by_kind[c.kind];
    k.first += c.ok();
    ++k.second;
    if (verbose || !c.ok())
      os << (c.ok() ? "pass " : "FAIL ") << c.kind << ": " << c.text << " [algebra " << (c.algebra_ok ? "ok" : "fails")
         << ", maps " << (c.map_ok ? "ok" : "fail") << "]\n";
  }
  for (auto& k : order) os << k << ": " << by_kind[k].first << "/" << by_kind[k].second << " relations hold\n";
  return os.str();
}

// ------------------------------------------------------------------ algebra

Algebra::Algebra(Universe& u, const Nucleus& nuc, long p) : u_(&u), nuc_(&nuc), p_(p) {
  if (p < 0 || p == 1) throw ValidationError("field characteristic must be 0 or a prime");
  if (p > 1 && mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
    throw ValidationError("field characteristic " + std::to_string(p) + " is not prime");
  const Shift& sh = u.shift();
  if (sh.is_edge_shift() && sh.graph().num_vertices() > 1)
    for (int v = 0; v < sh.graph().num_vertices(); ++v) {
      AtomId a = u.identity(u.cyl(cyl::vertex(sh, v)));
      if (a != kEmpty) vertex_names_[a] = "P_" + sh.graph().vertices[v];
    }
  IntMatrix P;
  relation_module(u, nuc.elements, &P);
  npats_ = P.rows;
  int n = nuc.size();
  pats_of_.assign(n, {});
  for (int i = 0; i < P.rows; ++i)
    for (int j = 0; j < n; ++j)
      if (P(i, j) != 0) pats_of_[j].push_back(i);

  // pivot columns of P over the field, then an invertible square submatrix
  std::vector<std::vector<Scalar>> rows;  // echelon rows over the column space
  std::vector<int> pivot_row_of;          // pivot position per echelon row
  auto column = [&](int j) {
    std::vector<Scalar> c(P.rows);
    for (int i = 0; i < P.rows; ++i) c[i] = normalize(Scalar(P(i, j)));
    return c;
  };
  for (int j = 0; j < n; ++j) {
    auto c = column(j);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Scalar f = c[pivot_row_of[r]];
      if (f == 0) continue;
      for (int i = 0; i < P.rows; ++i) c[i] = normalize(c[i] - f * rows[r][i]);
    }
    int piv = -1;
    for (int i = 0; i < P.rows && piv < 0; ++i)
      if (c[i] != 0) piv = i;
    if (piv < 0) continue;
    Scalar s = inv(c[piv]);
    for (auto& x : c) x = normalize(x * s);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Scalar f = rows[r][piv];
      if (f == 0) continue;
      for (int i = 0; i < P.rows; ++i) rows[r][i] = normalize(rows[r][i] - f * c[i]);
    }
    rows.push_back(std::move(c));
    pivot_row_of.push_back(piv);
    pivots_.push_back(j);
  }
  lift_rows_ = pivot_row_of;
  // M = P restricted to (lift_rows_, pivots_); lift_ = M^-1
  int r = int(pivots_.size());
  std::vector<std::vector<Scalar>> M(r, std::vector<Scalar>(2 * r));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) M[i][j] = normalize(Scalar(P(lift_rows_[i], pivots_[j])));
    M[i][r + i] = 1;
  }
  for (int c = 0; c < r; ++c) {
    int piv = c;
    while (piv < r && M[piv][c] == 0) ++piv;
    if (piv == r) throw Error("singular lift matrix");
    std::swap(M[c], M[piv]);
    Scalar s = inv(M[c][c]);
    for (auto& x : M[c]) x = normalize(x * s);
    for (int i = 0; i < r; ++i) {
      if (i == c || M[i][c] == 0) continue;
      Scalar f = M[i][c];
      for (int j = 0; j < 2 * r; ++j) M[i][j] = normalize(M[i][j] - f * M[c][j]);
    }
  }
  lift_.assign(r, std::vector<Scalar>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) lift_[i][j] = M[i][r + j];
}

Scalar Algebra::normalize(Scalar c) const {
  c.canonicalize();
  if (p_ == 0) return c;
  mpz_class m(p_), num = c.get_num(), den = c.get_den(), di;
  if (mpz_invert(di.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error("denominator not invertible modulo " + std::to_string(p_));
  mpz_class r = num * di;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return Scalar(r);
}

Scalar Algebra::inv(const Scalar& c) const {
  if (c == 0) throw Error("division by zero");
  return normalize(Scalar(1) / c);
}

void Algebra::push_term(Element& e, const Word& u, AtomId f, const Word& v, const Scalar& c0) {
  Scalar c = normalize(c0);
  if (f == kEmpty || c == 0) return;
  if (nuc_->contains(f)) {
    auto& slot = e.terms[Term{u, f, v}];
    slot = normalize(slot + c);
    if (slot == 0) e.terms.erase(Term{u, f, v});
    return;
  }
  for (int d = 1; d <= u_->max_depth; ++d) {
    auto cells = sections_at(*u_, f, d);
    bool inside = std::all_of(cells.begin(), cells.end(), [&](const SectionCell& s) { return nuc_->contains(s.f); });
    if (!inside) continue;
    for (auto& s : cells) push_term(e, u + s.u, s.f, v + s.v, c);
    return;
  }
  throw NotInNucleus("sections of " + u_->label(f) + " do not reach the nucleus");
}

Element Algebra::of(AtomId a, const Scalar& c) {
  Element e;
  push_term(e, Word(), a, Word(), c);
  return e;
}

Element Algebra::one() { return of(u_->identity(u_->full())); }

Element Algebra::term(const Word& u, AtomId f, const Word& v, const Scalar& c) {
  const Shift& s = u_->shift();
  if (!s.word_allowed(u) || !s.word_allowed(v)) throw ValidationError("term uses a forbidden word");
  Element e;
  push_term(e, u, f, v, c);
  return e;
}

Element Algebra::monomial(const Word& u, const Word& v) {
  const Shift& s = u_->shift();
  if (!s.word_allowed(u) || !s.word_allowed(v)) throw ValidationError("monomial uses a forbidden word");
  CylId a = u.empty() ? u_->full() : u_->followers(u.back());
  CylId b = v.empty() ? u_->full() : u_->followers(v.back());
  CylId c = u_->cyl(cyl::intersect(s, u_->cylinder(a), u_->cylinder(b)));
  Element e;
  push_term(e, u, u_->identity(c), v, 1);
  return e;
}

Element Algebra::add(const Element& a, const Element& b) const {
  Element r = a;
  for (auto& [t, c] : b.terms) {
    auto& slot = r.terms[t];
    slot = normalize(slot + c);
    if (slot == 0) r.terms.erase(t);
  }
  return r;
}

Element Algebra::scale(const Element& a, const Scalar& c0) const {
  Scalar c = normalize(c0);
  Element r;
  if (c == 0) return r;
  for (auto& [t, x] : a.terms) {
    Scalar y = normalize(x * c);
    if (y != 0) r.terms[t] = y;
  }
  return r;
}

Element Algebra::sub(const Element& a, const Element& b) const { return add(a, scale(b, -1)); }

Element Algebra::multiply(const Element& a, const Element& b) {
  Element r;
  for (auto& [t1, c1] : a.terms)
    for (auto& [t2, c2] : b.terms) {
      Scalar c = c1 * c2;
      if (starts_with(t2.u, t1.v)) {
        // F S_rest = sum S_o F_{rest,o}
        Word rest = t2.u.substr(t1.v.size());
        for (auto& [o, h] : walk_input(*u_, t1.f, rest)) push_term(r, t1.u + o, u_->compose(h, t2.f), t2.v, c);
      } else if (starts_with(t1.v, t2.u)) {
        // S_rest^-1 G = sum G_{z,rest} S_z^-1
        Word rest = t1.v.substr(t2.u.size());
        for (auto& [z, h] : walk_output(*u_, t2.f, rest)) push_term(r, t1.u, u_->compose(t1.f, h), t2.v + z, c);
      }
    }
  return reduce(r);
}

Element Algebra::star(const Element& a) {
  Element r;
  for (auto& [t, c] : a.terms) push_term(r, t.v, u_->inverse(t.f), t.u, c);
  return r;
}

Element Algebra::reduce(const Element& a) {
  // rewrite each block (u, v) on the independent nucleus columns
  std::map<std::pair<Word, Word>, std::vector<Scalar>> vals;
  for (auto& [t, c] : a.terms) {
    auto& y = vals[{t.u, t.v}];
    if (y.empty()) y.assign(npats_, 0);
    for (int j : pats_of_[nuc_->index(t.f)]) y[j] += c;
  }
  Element r;
  int k = int(pivots_.size());
  for (auto& [uv, y] : vals) {
    for (int i = 0; i < k; ++i) {
      Scalar c = 0;
      for (int j = 0; j < k; ++j) c += lift_[i][j] * y[lift_rows_[j]];
      c = normalize(c);
      if (c != 0) r.terms[Term{uv.first, nuc_->elements[pivots_[i]], uv.second}] = c;
    }
  }
  return r;
}

int Algebra::level(const Element& a) const {
  int L = 0;
  for (auto& [t, c] : a.terms) L = std::max(L, int(std::min(t.u.size(), t.v.size())));
  return L;
}

Element Algebra::expand(const Element& a, int L) const {
  Element r;
  for (auto& [t, c] : a.terms) {
    int d = L - int(std::min(t.u.size(), t.v.size()));
    if (d <= 0) {
      auto& slot = r.terms[t];
      slot = normalize(slot + c);
      continue;
    }
    for (auto& s : sections_at(*u_, t.f, d)) {
      auto& slot = r.terms[Term{t.u + s.u, s.f, t.v + s.v}];
      slot = normalize(slot + c);
    }
  }
  std::erase_if(r.terms, [](auto& kv) { return kv.second == 0; });
  return r;
}

std::map<std::tuple<Word, Word, int>, Scalar> Algebra::coordinates(const Element& a, int L) {
  std::map<std::tuple<Word, Word, int>, Scalar> out;
  for (auto& [t, c] : expand(a, L).terms)
    for (int j : pats_of_[nuc_->index(t.f)]) {
      auto& slot = out[{t.u, t.v, j}];
      slot = normalize(slot + c);
    }
  std::erase_if(out, [](auto& kv) { return kv.second == 0; });
  return out;
}

bool Algebra::is_zero(const Element& a) { return coordinates(a, level(a)).empty(); }

std::optional<std::map<std::pair<Word, Word>, AtomId>> Algebra::as_bisection(const Element& a, int L) {
  std::map<std::pair<Word, Word>, AtomId> out;
  const Shift& s = u_->shift();
  for (auto& [t, c] : expand(a, L).terms) {
    if (c != 1) return std::nullopt;
    auto [it, fresh] = out.emplace(std::make_pair(t.u, t.v), t.f);
    if (fresh) continue;
    AtomId g = it->second;
    if (!cyl::intersect(s, u_->cylinder(u_->dom(g)), u_->cylinder(u_->dom(t.f))).is_empty() ||
        !cyl::intersect(s, u_->cylinder(u_->ran(g)), u_->cylinder(u_->ran(t.f))).is_empty())
      return std::nullopt;
    it->second = u_->unite(g, t.f);
  }
  return out;
}

bool Algebra::equal_as_maps(const Element& a, const Element& b) {
  int L = std::max(level(a), level(b));
  auto x = as_bisection(a, L), y = as_bisection(b, L);
  return x && y && *x == *y;
}

std::string Algebra::format(const Element& a) {
  if (a.empty()) return "0";
  const Shift& s = u_->shift();
  std::string out;
  bool first = true;
  for (auto& [t, c] : a.terms) {
    std::vector<std::string> f;
    if (!t.u.empty()) f.push_back("S[" + s.format(t.u) + "]");
    CylId ca = t.u.empty() ? u_->full() : u_->followers(t.u.back());
    CylId cb = t.v.empty() ? u_->full() : u_->followers(t.v.back());
    AtomId plain = u_->identity(u_->cyl(cyl::intersect(s, u_->cylinder(ca), u_->cylinder(cb))));
    if (t.f != plain || (t.u.empty() && t.v.empty())) {
      int i = nuc_->index(t.f);
      auto vn = vertex_names_.find(t.f);
      if (vn != vertex_names_.end()) f.push_back(vn->second);
      else f.push_back(i >= 0 && !nuc_->names[i].empty() ? nuc_->names[i] : u_->label(t.f));
    }
    if (!t.v.empty()) f.push_back("S[" + s.format(t.v) + "]^-1");
    std::string body;
    for (std::size_t i = 0; i < f.size(); ++i) body += (i ? "*" : "") + f[i];
    Scalar x = c;
    if (p_ == 0 && x < 0) {
      out += first ? "-" : " - ";
      x = -x;
    } else if (!first) {
      out += " + ";
    }
    if (x != 1) body = scalar_text(x) + "*" + body;
    out += body;
    first = false;
  }
  return out;
}

Element Algebra::parse(const std::string& text, const std::function<AtomId(const std::string&)>& atom_of) {
  // split into signed summands at top-level + and -, skipping the sign in ^-1
  std::vector<std::pair<int, std::string>> parts;
  int depth = 0, sign = 1;
  bool signed_once = false;
  std::string cur;
  char prev = 0;
  for (char ch : text) {
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-') && prev != '^' && prev != '*') {
      if (!trim(cur).empty()) parts.push_back({sign, trim(cur)});
      else if (!parts.empty() || signed_once) throw ValidationError("empty summand in " + text);
      sign = ch == '-' ? -1 : 1;
      signed_once = true;
      cur.clear();
    } else {
      cur += ch;
    }
    if (!std::isspace(static_cast<unsigned char>(ch))) prev = ch;
  }
  if (trim(cur).empty()) throw ValidationError("empty algebra expression");
  parts.push_back({sign, trim(cur)});

  const Shift& s = u_->shift();
  Element total;
  for (auto& [sg, body] : parts) {
    Element prod = one();
    Scalar coef = sg;
    std::stringstream ss(body);
    std::string fac;
    while (std::getline(ss, fac, '*')) {
      fac = trim(fac);
      if (fac.empty()) throw ValidationError("empty factor in " + body);
      if (std::isdigit(static_cast<unsigned char>(fac[0]))) {
        coef *= Scalar(fac);
        continue;
      }
      if (fac.rfind("S[", 0) == 0) {
        auto close = fac.find(']');
        if (close == std::string::npos) throw ValidationError("unterminated word in " + fac);
        Word w = s.parse_word(fac.substr(2, close - 2));
        std::string rest = trim(fac.substr(close + 1));
        if (rest.empty()) prod = multiply(prod, S(w));
        else if (rest == "^-1") prod = multiply(prod, S_inv(w));
        else throw ValidationError("cannot parse factor " + fac);
        continue;
      }
      prod = multiply(prod, of(atom_of(fac)));
    }
    total = add(total, scale(prod, coef));
  }
  return reduce(total);
}

// ------------------------------------------------------------ presentation

PresentationReport verify_presentation(Algebra& alg) {
  Universe& u = alg.universe();
  const Nucleus& nuc = alg.nucleus();
  const Shift& s = u.shift();
  PresentationReport rep;
  AtomId id = u.identity(u.full());
  auto unite_all = [&](const std::vector<AtomId>& v) {
    AtomId r = kEmpty;
    for (AtomId a : v) r = u.unite(r, a);
    return r;
  };
  auto name = [&](AtomId a) {
    int i = nuc.index(a);
    return i >= 0 && !nuc.names[i].empty() ? nuc.names[i] : u.label(a);
  };

  // Cuntz-Krieger relations
  Element all = alg.zero();
  std::vector<AtomId> all_maps;
  for (int x = 0; x < s.size(); ++x) {
    Word wx(1, Letter(x));
    Element rhs = alg.zero();
    std::vector<AtomId> pieces;
    for (Letter y : s.followers(x)) {
      Word wy(1, y);
      rhs = alg.add(rhs, alg.monomial(wy, wy));
      pieces.push_back(u.prefix(y, u.identity(u.followers(y)), y));
    }
    RelationCheck c{"CK1", "S[" + s.name(x) + "]^-1*S[" + s.name(x) + "] = sum of S[y]*S[y]^-1 over followers"};
    c.algebra_ok = alg.equal(alg.multiply(alg.S_inv(wx), alg.S(wx)), rhs);
    c.map_ok = u.section(id, Letter(x), Letter(x)) == unite_all(pieces);
    rep.checks.push_back(c);
    all = alg.add(all, alg.monomial(wx, wx));
    all_maps.push_back(u.prefix(Letter(x), u.identity(u.followers(x)), Letter(x)));
  }
  {
    RelationCheck c{"CK1", "sum of S[x]*S[x]^-1 = 1"};
    c.algebra_ok = alg.equal(all, alg.one());
    c.map_ok = unite_all(all_maps) == id;
    rep.checks.push_back(c);
  }
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b) {
      if (a == b) continue;
      RelationCheck c{"CK1", "S[" + s.name(a) + "]^-1*S[" + s.name(b) + "] = 0"};
      c.algebra_ok = alg.is_zero(alg.multiply(alg.S_inv(Word(1, Letter(a))), alg.S(Word(1, Letter(b)))));
      c.map_ok = u.section(id, Letter(b), Letter(a)) == kEmpty;
      rep.checks.push_back(c);
    }

  // each nucleus element from its sections
  for (AtomId f : nuc.elements) {
    Element rhs = alg.zero();
    std::vector<AtomId> pieces;
    for (auto& cell : sections_at(u, f, 1)) {
      rhs = alg.add(rhs, alg.term(cell.u, cell.f, cell.v));
      pieces.push_back(u.prefix(cell.u, cell.f, cell.v));
    }
    RelationCheck c{"nuc1", name(f) + " = sum of S[y]*F_xy*S[x]^-1"};
    c.algebra_ok = alg.equal(alg.of(f), rhs);
    c.map_ok = unite_all(pieces) == f;
    rep.checks.push_back(c);
  }

  // pairwise products at depth n0
  for (AtomId f1 : nuc.elements)
    for (AtomId f2 : nuc.elements) {
      RelationCheck c{"nuc2", name(f1) + "*" + name(f2) + " at depth " + std::to_string(nuc.n0)};
      Element rhs = alg.zero();
      std::vector<AtomId> pieces;
      try {
        for (auto& cell : product_section_table(u, nuc, f1, f2)) {
          rhs = alg.add(rhs, alg.term(cell.u, cell.f, cell.v));
          pieces.push_back(u.prefix(cell.u, cell.f, cell.v));
        }
      } catch (const NotInNucleus&) {
        rep.checks.push_back(c);
        continue;
      }
      c.algebra_ok = alg.equal(alg.multiply(alg.of(f1), alg.of(f2)), rhs);
      c.map_ok = unite_all(pieces) == u.compose(f1, f2);
      rep.checks.push_back(c);
    }
  return rep;
}

// ---------------------------------------------------------- matrix recursion

BlockMatrix matrix_recursion(Algebra& alg, const Element& a, int k) {
  if (k < 1) throw ValidationError("matrix recursion needs k >= 1");
  const Shift& s = alg.universe().shift();
  BlockMatrix m;
  m.rows = m.cols = s.words(k);
  bool by_vertex = s.is_edge_shift() && s.graph().num_vertices() > 1;
  for (auto& w : m.rows) {
    int g = by_vertex ? s.graph().src[w[0]] : (k >= 2 ? int(w[0]) : 0);
    m.row_group.push_back(g);
  }
  m.col_group = m.row_group;
  for (auto& r : m.rows) {
    Element left = alg.multiply(alg.S_inv(r), a);
    std::vector<Element> row;
    for (auto& c : m.cols) row.push_back(alg.multiply(left, alg.S(c)));
    m.entries.push_back(std::move(row));
  }
  return m;
}

BlockMatrix block(const BlockMatrix& m, int r, int c) {
  BlockMatrix b;
  std::vector<int> ri, ci;
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    if (m.row_group[i] == r) ri.push_back(int(i));
  for (std::size_t j = 0; j < m.cols.size(); ++j)
    if (m.col_group[j] == c) ci.push_back(int(j));
  for (int i : ri) {
    b.rows.push_back(m.rows[i]);
    b.row_group.push_back(r);
    std::vector<Element> row;
    for (int j : ci) row.push_back(m.entries[i][j]);
    b.entries.push_back(std::move(row));
  }
  for (int j : ci) {
    b.cols.push_back(m.cols[j]);
    b.col_group.push_back(c);
  }
  return b;
}

std::string format(Algebra& alg, const BlockMatrix& m) {
  std::size_t R = m.rows.size(), C = m.cols.size();
  std::vector<std::vector<std::string>> cell(R, std::vector<std::string>(C));
  std::vector<std::size_t> width(C, 1);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) {
      cell[i][j] = alg.format(m.entries[i][j]);
      width[j] = std::max(width[j], cell[i][j].size());
    }
  std::ostringstream os;
  std::size_t total = 0;
  for (std::size_t j = 0; j < C; ++j) total += width[j] + 2 + (j && m.col_group[j] != m.col_group[j - 1] ? 2 : 0);
  for (std::size_t i = 0; i < R; ++i) {
    if (i && m.row_group[i] != m.row_group[i - 1]) os << std::string(total, '-') << "\n";
    for (std::size_t j = 0; j < C; ++j) {
      if (j && m.col_group[j] != m.col_group[j - 1]) os << "| ";
      os << cell[i][j] << std::string(width[j] - cell[i][j].size() + 2, ' ');
    }
    std::string line = os.str();
    os.str("");
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return os.str();
}

// ------------------------------------------------------------- growth

std::vector<long> graded_dimension(Algebra& alg, const std::vector<Element>& gens, int n, std::size_t max_terms) {
  using Coord = std::tuple<Word, Word, int>;
  std::vector<Element> basis, frontier;
  std::map<Coord, int> index;
  std::map<int, std::map<int, Scalar>> echelon;  // pivot -> row with leading 1
  int L = -1;

  auto vec = [&](const Element& e) {
    std::map<int, Scalar> v;
    for (auto& [k, c] : alg.coordinates(e, L)) {
      auto it = index.emplace(k, int(index.size())).first;
      v[it->second] = c;
    }
    return v;
  };
  // true when e is independent of the rows so far (and then records it)
  auto insert = [&](const Element& e) {
    auto v = vec(e);
    while (!v.empty()) {
      auto [k, c] = *v.begin();
      auto it = echelon.find(k);
      if (it == echelon.end()) {
        Scalar s = alg.normalize(Scalar(1) / c);
        for (auto& [kk, x] : v) x = alg.normalize(x * s);
        echelon[k] = std::move(v);
        return true;
      }
      for (auto& [kk, x] : it->second) {
        auto& slot = v[kk];
        slot = alg.normalize(slot - c * x);
        if (slot == 0) v.erase(kk);
      }
    }
    return false;
  };
  auto rebuild = [&](int level) {
    L = level;
    index.clear();
    echelon.clear();
    for (auto& b : basis) insert(b);
  };

  std::vector<long> dims;
  Element one = alg.one();
  rebuild(alg.level(one));
  if (insert(one)) {
    basis.push_back(one);
    frontier.push_back(one);
  }
  dims.push_back(long(basis.size()));
  for (int step = 1; step <= n; ++step) {
    std::vector<Element> cand;
    std::size_t terms = 0;
    int need = L;
    for (auto& b : frontier)
      for (auto& g : gens) {
        cand.push_back(alg.multiply(b, g));
        terms += cand.back().terms.size();
        need = std::max(need, alg.level(cand.back()));
      }
    if (terms > max_terms) throw CapExceeded("graded dimension exceeded the term cap at n = " + std::to_string(step));
    if (need > L) rebuild(need);
    std::vector<Element> next;
    for (auto& c : cand)
      if (insert(c)) {
        basis.push_back(c);
        next.push_back(c);
      }
    frontier = std::move(next);
    dims.push_back(long(basis.size()));
  }
  return dims;
}

}  // namespace ssg
