#include "ssg/homology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ssg {

namespace {

Int mod(const Int& a, const Int& m) {
  if (m == 0) return a;
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

std::string group_string(int free_rank, const IntVec& torsion) {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  // group equal orders: (Z/2)^3
  for (std::size_t i = 0; i < torsion.size();) {
    std::size_t j = i;
    while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
    std::string t = "Z/" + torsion[i].get_str();
    parts.push_back(j - i == 1 ? t : "(" + t + ")^" + std::to_string(j - i));
    i = j;
  }
  if (parts.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
  return s;
}

std::vector<int> iota(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

// ------------------------------------------------------------ groups

std::string FGAbelianGroup::format() const { return group_string(free_rank, torsion); }

FGAbelianGroup abelian_group(const IntMatrix& P) {
  FGAbelianGroup g;
  g.presentation = P;
  Smith s = smith(P);
  g.free_rank = P.rows - s.rank;
  for (auto& d : s.diag)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

std::string ColimitDescriptor::format() const {
  switch (kind) {
    case ColimitKind::FreeZ: return group_string(rational_rank, {});
    case ColimitKind::ZOneOver: return "Z[1/" + Int(abs(d)).get_str() + "]";
    case ColimitKind::TorsionOnly: return group_string(0, eventual_torsion);
    case ColimitKind::Presented: break;
  }
  return "presented at level: " + level.format();
}

bool ColimitClass::is_zero() const {
  for (auto& c : coords)
    if (c != 0) return false;
  return true;
}

std::string ColimitClass::format() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? ", " : "") + coords[i].get_str();
  return s + ")";
}

// ------------------------------------------------------------ colimits

Colimit::Colimit(const IntMatrix& P, const IntMatrix& T) : k_(T.rows) {
  s_ = smith(P.cols ? P : IntMatrix(k_, 0));
  desc_.level = abelian_group(P.cols ? P : IntMatrix(k_, 0));
  for (int i = 0; i < k_; ++i) {
    if (i >= s_.rank) free_.push_back(i);
    else if (s_.diag[i] > 1) tors_.push_back(i);
  }
  TG_ = s_.U * T * s_.Uinv;

  // free quotient
  int f = int(free_.size());
  M_ = TG_.submatrix(free_, free_);
  int srank = 0;
  if (f > 0) {
    // nonsingular: the system is injective and level-0 coordinates are kept
    if (det(M_) != 0) {
      J_ = 0;
      MJ_ = IntMatrix::identity(f);
      Lb_ = IntMatrix::identity(f);
    } else {
      J_ = f;
      MJ_ = M_.pow(J_);
      Lb_ = lattice_basis(MJ_);
    }
    srank = Lb_.cols;
    if (srank > 0) {
      ML_ = solve_all(Lb_, M_ * Lb_);
      desc_.endo_det = det(ML_);
    }
  }
  desc_.rational_rank = srank;
  sign_.assign(srank, 1);

  // torsion subgroup and its eventual image
  int t = int(tors_.size());
  for (int i : tors_) tmod_.push_back(s_.diag[i]);
  nil_ = f;
  IntMatrix Tt = TG_.submatrix(tors_, tors_);
  IntMatrix Lam = IntMatrix::diagonal(tmod_);
  H_ = IntMatrix::identity(t);
  if (t > 0) {
    Int d0 = abs(det(H_));
    for (;;) {
      IntMatrix nh = lattice_basis((Tt * H_).hcat(Lam));
      Int d1 = abs(det(nh));
      if (d1 == d0) break;
      H_ = nh;
      d0 = d1;
      ++Jt_;
    }
    Smith s2 = smith(solve_all(H_, Lam));
    U2_ = s2.U;
    e_ = s2.diag;
    for (int i = 0; i < t; ++i)
      if (e_[i] > 1) {
        eidx_.push_back(i);
        desc_.eventual_torsion.push_back(e_[i]);
      }
    TE_ = U2_ * solve_all(H_, Tt * H_) * s2.Uinv;
    // order of T on the eventual torsion
    if (!eidx_.empty()) {
      IntMatrix Pw = TE_;
      for (order_ = 1;; ++order_) {
        bool id = true;
        for (int i : eidx_)
          for (int j : eidx_)
            if (mod(Pw(i, j) - (i == j ? 1 : 0), e_[i]) != 0) id = false;
        if (id) break;
        if (order_ > 1000000) throw CapExceeded("order of the shift on torsion exceeds 10^6");
        Pw = TE_ * Pw;
        for (int i = 0; i < t; ++i)
          for (int j = 0; j < t; ++j) Pw(i, j) = mod(Pw(i, j), e_[i]);
      }
    }
  }

  bool tors = !desc_.eventual_torsion.empty();
  if (srank > 0 && !tors) {
    if (abs(*desc_.endo_det) == 1) desc_.kind = ColimitKind::FreeZ;
    else if (srank == 1) {
      desc_.kind = ColimitKind::ZOneOver;
      desc_.d = ML_(0, 0);
    } else desc_.kind = ColimitKind::Presented;
  } else if (srank == 0) {
    desc_.kind = ColimitKind::TorsionOnly;
  } else {
    desc_.kind = ColimitKind::Presented;
  }
  if (desc_.kind == ColimitKind::FreeZ) MLinv_ = solve_all(ML_, IntMatrix::identity(srank));
}

IntVec Colimit::torsion_coords(const IntVec& y0) const {
  // push until the free part vanishes, then into the eventual image
  IntVec y = y0;
  for (int i = 0; i < nil_; ++i) y = TG_ * y;
  IntVec tv;
  for (int idx : tors_) tv.push_back(y[idx]);
  IntMatrix Tt = TG_.submatrix(tors_, tors_);
  for (int i = 0; i < Jt_; ++i) tv = Tt * tv;
  IntVec c;
  // tv lies in H_ modulo the relations; adjust by multiples of the moduli
  IntMatrix HL = H_;
  if (!solve(HL, tv, c)) throw std::logic_error("torsion push left the eventual image");
  IntVec z = U2_ * c;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod(z[i], e_[i]);
  return z;
}

ColimitClass Colimit::class_of(const IntVec& v, int level) const {
  IntVec y = s_.U * v;
  ColimitClass cl;
  switch (desc_.kind) {
    case ColimitKind::FreeZ:
    case ColimitKind::ZOneOver: {
      IntVec yf;
      for (int i : free_) yf.push_back(y[i]);
      IntVec w = MJ_ * yf, c;
      if (!solve(Lb_, w, c)) throw std::logic_error("free push left the eventual image");
      int p = level + J_;
      if (desc_.kind == ColimitKind::FreeZ) {
        IntMatrix Minv = MLinv_.pow(p);
        IntVec r = Minv * c;
        for (std::size_t i = 0; i < r.size(); ++i) cl.coords.push_back(mpq_class(r[i] * sign_[i]));
      } else {
        Int den;
        mpz_pow_ui(den.get_mpz_t(), desc_.d.get_mpz_t(), p);
        mpq_class q(c[0], den);
        q.canonicalize();
        cl.coords.push_back(q * sign_[0]);
      }
      return cl;
    }
    case ColimitKind::TorsionOnly: {
      if (eidx_.empty()) return cl;
      IntVec z = torsion_coords(y);
      long back = (order_ - (long(level) + nil_ + Jt_) % order_) % order_;
      for (long i = 0; i < back; ++i) {
        z = TE_ * z;
        for (std::size_t j = 0; j < z.size(); ++j) z[j] = mod(z[j], e_[j]);
      }
      for (int i : eidx_) cl.coords.push_back(mpq_class(z[i]));
      return cl;
    }
    case ColimitKind::Presented: break;
  }
  throw Error("colimit is not classified; no class coordinates");
}

IntMatrix Colimit::endo_on_classes() const {
  switch (desc_.kind) {
    case ColimitKind::FreeZ: {
      IntMatrix r = ML_;
      for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j) r(i, j) *= sign_[i] * sign_[j];
      return r;
    }
    case ColimitKind::ZOneOver: {
      IntMatrix r(1, 1);
      r(0, 0) = desc_.d;
      return r;
    }
    case ColimitKind::TorsionOnly: {
      IntMatrix r = TE_.submatrix(eidx_, eidx_);
      for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j) r(i, j) = mod(r(i, j), e_[eidx_[i]]);
      return r;
    }
    case ColimitKind::Presented: break;
  }
  return TG_;
}

void Colimit::flip(int i) { sign_.at(i) = -sign_.at(i); }

// ------------------------------------------------------------ chain data

IntMatrix relation_module(Universe& u, const std::vector<AtomId>& el, IntMatrix* patterns) {
  // A germ (F, w) lies in G iff some section of G along w equals the matching
  // section of F. Walk F while tracking the sections of the other elements;
  // a pattern is realized when its state set carries a cycle.
  int n = int(el.size());
  struct State {
    AtomId cur;
    std::vector<std::pair<int, AtomId>> tracks;
    std::vector<int> acc;
    bool operator<(const State& o) const {
      return std::tie(cur, tracks, acc) < std::tie(o.cur, o.tracks, o.acc);
    }
  };
  std::map<State, int> ids;
  std::vector<const State*> ord;
  std::vector<std::vector<int>> same;  // successors keeping acc
  auto add = [&](State s) {
    auto [it, ins] = ids.emplace(std::move(s), int(ord.size()));
    if (ins) {
      ord.push_back(&it->first);
      same.emplace_back();
      if (ord.size() > u.max_states) throw StateExplosion("germ pattern automaton exceeded the state cap");
    }
    return it->second;
  };
  for (int i = 0; i < n; ++i) {
    State s{el[i], {}, {i}};
    for (int j = 0; j < n; ++j)
      if (j != i) s.tracks.push_back({j, el[j]});
    add(std::move(s));
  }
  for (std::size_t q = 0; q < ord.size(); ++q) {
    State s = *ord[q];
    for (auto& e : u.atom(s.cur).out) {
      State t{e.to, {}, s.acc};
      for (auto& [j, g] : s.tracks) {
        AtomId h = u.section(g, e.x, e.y);
        if (h == kEmpty) continue;
        if (h == e.to) t.acc.push_back(j);
        else t.tracks.push_back({j, h});
      }
      std::sort(t.acc.begin(), t.acc.end());
      bool keep = t.acc == s.acc;
      int id = add(std::move(t));
      if (keep) same[q].push_back(id);
    }
  }
  // Tarjan on the acc-preserving subgraph
  int N = int(ord.size());
  std::vector<int> index(N, -1), low(N, 0), stk;
  std::vector<char> on(N, 0), cyc(N, 0);
  int counter = 0;
  std::function<void(int)> dfs = [&](int v) {
    index[v] = low[v] = counter++;
    stk.push_back(v);
    on[v] = 1;
    for (int w : same[v]) {
      if (index[w] < 0) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) low[v] = std::min(low[v], index[w]);
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w;
      do {
        w = stk.back();
        stk.pop_back();
        on[w] = 0;
        comp.push_back(w);
      } while (w != v);
      bool c = comp.size() > 1 || std::count(same[v].begin(), same[v].end(), v) > 0;
      if (c)
        for (int x : comp) cyc[x] = 1;
    }
  };
  for (int v = 0; v < N; ++v)
    if (index[v] < 0) dfs(v);
  std::set<std::vector<int>> pats;
  for (int v = 0; v < N; ++v)
    if (cyc[v]) pats.insert(ord[v]->acc);
  IntMatrix P(int(pats.size()), n);
  int r = 0;
  for (auto& p : pats) {
    for (int j : p) P(r, j) = 1;
    ++r;
  }
  if (patterns) *patterns = P;
  return kernel(P);
}

namespace {

int index_in(const std::vector<AtomId>& v, AtomId a) {
  auto it = std::find(v.begin(), v.end(), a);
  return it == v.end() ? -1 : int(it - v.begin());
}

std::vector<std::vector<AtomId>> basis2_of(Universe& u, const Nucleus& nuc) {
  return multi_nucleus(u, nuc, 2).tuples;
}

// vertex vector of a clopen set pushed to depth K
IntVec vertex_vector(Universe& u, CylId c, int K) {
  const Shift& s = u.shift();
  const VertexGraph& g = s.graph();
  IntVec v(g.num_vertices());
  CylinderSet cs = cyl::normalize_to_depth(s, u.cylinder(c), K);
  for (auto& w : cs.cells) v[g.dst[w.back()]] += 1;
  return v;
}

void add_counts(IntVec& v, const std::map<AtomId, long>& counts, const std::vector<AtomId>& basis, int sign) {
  for (auto& [a, c] : counts) {
    int i = index_in(basis, a);
    if (i < 0) throw NotInNucleus("section outside the nucleus while pushing a chain");
    v[i] += sign * c;
  }
}

bool counts_inside(const std::map<AtomId, long>& counts, const std::vector<AtomId>& basis) {
  for (auto& [a, c] : counts)
    if (index_in(basis, a) < 0) return false;
  return true;
}

}  // namespace

IntMatrix shift_matrix(Universe& u, const Nucleus& nuc, int n) {
  if (n == 0 || n == 1) {
    auto basis = n == 0 ? vertex_idempotents(u) : nuc.elements;
    int k = int(basis.size());
    IntMatrix S(k, k);
    for (int j = 0; j < k; ++j)
      for (auto& e : u.atom(basis[j]).out) {
        int i = index_in(basis, e.to);
        if (i < 0) throw NotInNucleus("section outside the basis");
        S(i, j) += 1;
      }
    return S;
  }
  if (n != 2) throw ValidationError("shift matrix is available for n = 0, 1, 2");
  auto b2 = basis2_of(u, nuc);
  std::map<std::vector<AtomId>, int> idx;
  for (std::size_t i = 0; i < b2.size(); ++i) idx[b2[i]] = int(i);
  int k = int(b2.size());
  IntMatrix S(k, k);
  for (int j = 0; j < k; ++j)
    for (auto& e1 : u.atom(b2[j][0]).out)
      for (auto& e2 : u.atom(b2[j][1]).out) {
        if (e2.y != e1.x) continue;
        auto q = canonical_pair(u, e1.to, e2.to);
        if (q.empty()) continue;
        auto it = idx.find(q);
        if (it == idx.end()) throw NotInNucleus("pair section outside the 2-dimensional nucleus");
        S(it->second, j) += 1;
      }
  return S;
}

IntMatrix boundary_matrix(Universe& u, const Nucleus& nuc, int n, int* shift) {
  if (!u.shift().is_edge_shift()) throw ValidationError("boundary matrices need an edge shift");
  if (n == 1) {
    int K = std::max(1, nuc.k1);
    auto b0 = vertex_idempotents(u);
    IntMatrix B(int(b0.size()), nuc.size());
    for (int j = 0; j < nuc.size(); ++j) {
      AtomId F = nuc.elements[j];
      IntVec r = vertex_vector(u, u.ran(F), K), d = vertex_vector(u, u.dom(F), K);
      for (int i = 0; i < B.rows; ++i) B(i, j) = r[i] - d[i];
    }
    if (shift) *shift = K;
    return B;
  }
  if (n != 2) throw ValidationError("boundary matrices are available for n = 1, 2");
  auto b2 = basis2_of(u, nuc);
  // common push depth so that every face lies in the nucleus
  int L = std::max(1, nuc.n0);
  for (;; ++L) {
    if (L > u.max_depth) throw NotContracting("faces of 2-chains do not reach the nucleus", {});
    bool ok = true;
    for (auto& p : b2) {
      AtomId prod = u.compose(p[0], p[1]);
      if (!counts_inside(section_counts(u, p[0], L), nuc.elements) ||
          !counts_inside(section_counts(u, p[1], L), nuc.elements) ||
          !counts_inside(section_counts(u, prod, L), nuc.elements)) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  IntMatrix B(nuc.size(), int(b2.size()));
  for (int j = 0; j < B.cols; ++j) {
    IntVec v(nuc.size());
    auto& p = b2[j];
    add_counts(v, section_counts(u, p[1], L), nuc.elements, 1);
    add_counts(v, section_counts(u, u.compose(p[0], p[1]), L), nuc.elements, -1);
    add_counts(v, section_counts(u, p[0], L), nuc.elements, 1);
    for (int i = 0; i < B.rows; ++i) B(i, j) = v[i];
  }
  if (shift) *shift = L;
  return B;
}

ChainData chain_data(Universe& u, const Nucleus& nuc) {
  ChainData cd;
  cd.basis0 = vertex_idempotents(u);
  cd.basis1 = nuc.elements;
  cd.basis2 = basis2_of(u, nuc);
  cd.R1 = relation_module(u, nuc.elements, &cd.patterns1);
  cd.B1 = boundary_matrix(u, nuc, 1, &cd.b1_shift);
  cd.B2 = boundary_matrix(u, nuc, 2, &cd.b2_shift);
  cd.S0 = shift_matrix(u, nuc, 0);
  cd.S1 = shift_matrix(u, nuc, 1);
  cd.S2 = shift_matrix(u, nuc, 2);
  return cd;
}

// ------------------------------------------------------------ engine

HomologyEngine::HomologyEngine(System& sys, const NucleusOptions& opt) : sys_(&sys) {
  if (sys.u->shift().is_edge_shift()) {
    eu_ = sys.u.get();
  } else {
    BlockCode bc = block_code(sys.u->shift(), 2);
    owned_ = std::make_unique<Universe>(Shift::edge_shift(bc.graph));
    owned_->max_states = sys.u->max_states;
    owned_->max_depth = sys.u->max_depth;
    eu_ = owned_.get();
  }
  std::vector<AtomId> gens;
  for (std::size_t i = 0; i < sys.gens.size(); ++i) {
    AtomId g = to_edges(sys.gens[i]);
    gens.push_back(g);
    if (owned_) eu_->set_name(g, sys.names[i]);
  }
  nuc_ = compute_nucleus(*eu_, gens, opt);
  cd_ = chain_data(*eu_, nuc_);
}

AtomId HomologyEngine::to_edges(AtomId a) {
  if (!owned_) return a;
  return recode_to_edges(*sys_->u, *owned_, {a})[0];
}

namespace {

// {x : X x = 0 mod m}, as a lattice basis (m = 0 means over Z)
IntMatrix kernel_mod(const IntMatrix& X, long m) {
  if (m == 0) return kernel(X);
  IntMatrix Y = X.hcat(IntMatrix::diagonal(IntVec(X.rows, Int(m))));
  IntMatrix K = kernel(Y);
  IntMatrix top = K.submatrix(iota(X.cols), iota(K.cols));
  return lattice_basis(top);
}

}  // namespace

IntMatrix HomologyEngine::cycles(long m) {
  auto it = kbasis_.find(m);
  if (it != kbasis_.end()) return it->second;
  IntMatrix X = cd_.B1;
  IntMatrix K = kernel_mod(X, m);
  for (int J = 0;; ++J) {
    X = cd_.S0 * X;
    IntMatrix K2 = kernel_mod(X, m);
    if (lattice_contains(K, K2)) break;
    K = K2;
    if (J > 64) throw CapExceeded("cycle lattice did not stabilize");
  }
  kbasis_[m] = K;
  return K;
}

const Colimit& HomologyEngine::h0(long m) {
  auto it = h0_.find(m);
  if (it != h0_.end()) return *it->second;
  IntMatrix P = cd_.B1;
  int V = cd_.S0.rows;
  if (m > 0) P = P.hcat(IntMatrix::diagonal(IntVec(V, Int(m))));
  auto c = std::make_unique<Colimit>(P, cd_.S0);
  return *(h0_[m] = std::move(c));
}

const Colimit& HomologyEngine::h1(long m) {
  auto it = h1_.find(m);
  if (it != h1_.end()) return *it->second;
  IntMatrix K = cycles(m);
  int N = nuc_.size();
  IntMatrix R = m == 0 ? cd_.R1 : kernel_mod(cd_.patterns1, m);
  IntMatrix D = cd_.B2.hcat(R);
  if (m > 0) D = D.hcat(IntMatrix::diagonal(IntVec(N, Int(m))));
  IntMatrix Dk = solve_all(K, D);
  IntMatrix Tk = solve_all(K, cd_.S1 * K);
  auto c = std::make_unique<Colimit>(Dk, Tk);
  if (m == 0) orient(*c, m);
  return *(h1_[m] = std::move(c));
}

void HomologyEngine::orient(Colimit& c, long m) {
  if (c.descriptor().kind != ColimitKind::FreeZ && c.descriptor().kind != ColimitKind::ZOneOver) return;
  IntMatrix K = cycles(m);
  int r = c.descriptor().rational_rank;
  std::vector<char> fixed(r, 0);
  for (AtomId g : sys_->gens) {
    AtomId e = to_edges(g);
    int level = 0;
    IntVec v = push(e, level), k;
    if (!solve(K, v, k)) continue;
    auto cl = c.class_of(k, level);
    for (int i = 0; i < r; ++i)
      if (!fixed[i] && cl.coords[i] != 0) {
        fixed[i] = 1;
        if (cl.coords[i] < 0) c.flip(i);
      }
  }
}

IntVec HomologyEngine::push(AtomId e, int& level) {
  Universe& u = *eu_;
  for (int d = 0; d <= u.max_depth; ++d) {
    auto counts = section_counts(u, e, d);
    if (counts_inside(counts, nuc_.elements)) {
      IntVec v(nuc_.size());
      add_counts(v, counts, nuc_.elements, 1);
      level = d;
      return v;
    }
  }
  throw NotContracting("element does not reach the nucleus within the depth cap", {});
}

ColimitClass HomologyEngine::h1_class(AtomId e) {
  Universe& u = *eu_;
  const Colimit& c = h1(0);
  if (e != kEmpty) {
    int K = std::max({1, u.cylinder(u.dom(e)).depth, u.cylinder(u.ran(e)).depth});
    IntVec r = vertex_vector(u, u.ran(e), K), d = vertex_vector(u, u.dom(e), K);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= d[i];
    IntVec z = cd_.S0.pow(int(r.size())) * r;
    for (auto& x : z)
      if (x != 0) throw NotACycle("element is not a cycle: its range and domain differ in H0");
  }
  ColimitClass zero;
  zero.coords.assign(c.descriptor().kind == ColimitKind::TorsionOnly ? c.descriptor().eventual_torsion.size()
                                                                     : std::size_t(c.descriptor().rational_rank),
                     0);
  if (e == kEmpty) return zero;
  int level = 0;
  IntVec v = push(e, level), k;
  if (!solve(cycles(0), v, k)) throw NotACycle("pushed element is not a cycle at its level");
  return c.class_of(k, level);
}

ColimitClass HomologyEngine::h0_class_of_unit() {
  IntVec one(cd_.basis0.size(), Int(1));
  return h0(0).class_of(one, 0);
}

// ------------------------------------------------------------ dimension group

namespace {

Quadratic qmul(const Quadratic& x, const Quadratic& y) {
  return {x.a * y.a + x.b * y.b * mpq_class(x.D), x.a * y.b + x.b * y.a, x.D};
}
Quadratic qadd(const Quadratic& x, const Quadratic& y) { return {x.a + y.a, x.b + y.b, x.D}; }
Quadratic qinv(const Quadratic& x) {
  mpq_class n = x.a * x.a - x.b * x.b * mpq_class(x.D);
  return {x.a / n, -x.b / n, x.D};
}

}  // namespace

std::string Quadratic::format() const {
  if (b == 0 || D == 0) return a.get_str();
  std::string s = a == 0 ? "" : a.get_str() + (b > 0 ? " + " : " - ");
  mpq_class bb = a == 0 ? b : mpq_class(abs(b));
  s += (bb == 1 ? "" : bb == -1 ? "-" : bb.get_str() + "*") + "sqrt(" + D.get_str() + ")";
  return s;
}

DimensionGroup dimension_group(HomologyEngine& h) {
  DimensionGroup dg;
  const Colimit& c = h.h0(0);
  dg.h0 = c.descriptor();
  if (dg.h0.kind == ColimitKind::Presented || dg.h0.kind == ColimitKind::TorsionOnly)
    throw Error("H0 is not classified as free or Z[1/d]; no dimension group data");
  dg.unit = h.h0_class_of_unit();
  dg.sigma0 = h.chains().S0;
  int V = dg.sigma0.rows;
  std::vector<std::vector<long>> adj(V, std::vector<long>(V));
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) adj[i][j] = dg.sigma0(i, j).get_si();
  dg.primitive = is_primitive(adj).primitive;
  if (!dg.primitive) return dg;
  if (V == 1) {
    dg.lambda = {mpq_class(dg.sigma0(0, 0)), 0, 0};
    dg.state = {{1, 0, 0}};
  } else if (V == 2) {
    const IntMatrix& S = dg.sigma0;
    Int tr = S(0, 0) + S(1, 1), dt = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
    Int disc = tr * tr - 4 * dt;
    Quadratic lam;
    if (mpz_perfect_square_p(disc.get_mpz_t())) {
      Int r = sqrt(disc);
      lam = {mpq_class(tr + r, 2), 0, 0};
    } else {
      lam = {mpq_class(tr, 2), mpq_class(1, 2), disc};
    }
    lam.a.canonicalize();
    lam.b.canonicalize();
    dg.lambda = lam;
    // left eigenvector: mu S = lambda mu
    Quadratic m0{1, 0, lam.D}, m1;
    if (S(1, 0) != 0) m1 = qmul(qadd(lam, {-mpq_class(S(0, 0)), 0, lam.D}), {mpq_class(1, S(1, 0).get_si()), 0, lam.D});
    else {
      m1 = {1, 0, lam.D};
      m0 = qmul(qadd(lam, {-mpq_class(S(1, 1)), 0, lam.D}), {mpq_class(1, S(0, 1).get_si()), 0, lam.D});
    }
    m0.a.canonicalize();
    m1.a.canonicalize();
    Quadratic inv = qinv(qadd(m0, m1));
    dg.state = {qmul(m0, inv), qmul(m1, inv)};
  } else {
    // rational approximation from a deep level
    IntMatrix P = dg.sigma0.pow(32);
    IntVec row(V);
    Int tot = 0;
    for (int j = 0; j < V; ++j) {
      for (int i = 0; i < V; ++i) row[j] += P(i, j);
      tot += row[j];
    }
    for (int j = 0; j < V; ++j) dg.state.push_back({mpq_class(row[j], tot), 0, 0});
    dg.approximate = true;
  }
  return dg;
}

Quadratic DimensionGroup::measure(const Shift& s, const Word& w) const {
  if (state.empty()) throw Error("no invariant state available");
  int v = w.empty() ? -1 : s.graph().dst[w.back()];
  Quadratic r;
  if (v < 0) {
    r = {0, 0, lambda.D};
    for (auto& q : state) r = qadd(r, q);
    return r;
  }
  r = state[v];
  Quadratic li = qinv(lambda);
  for (std::size_t i = 0; i < w.size(); ++i) r = qmul(r, li);
  return r;
}

std::string DimensionGroup::report(const std::vector<std::string>& vnames) const {
  std::ostringstream os;
  os << "h0: " << h0.format() << "\n";
  os << "sigma0: " << sigma0.format() << "\n";
  os << "unit: " << unit.format() << "\n";
  os << "primitive: " << (primitive ? "yes" : "no") << "\n";
  if (!state.empty()) {
    os << "perron: " << lambda.format() << "\n";
    os << "state" << (approximate ? " (level 32 approximation)" : "") << ":\n";
    for (std::size_t i = 0; i < state.size(); ++i)
      os << "  " << (i < vnames.size() ? vnames[i] : std::to_string(i)) << ": " << state[i].format() << "\n";
  }
  return os.str();
}

}  // namespace ssg
