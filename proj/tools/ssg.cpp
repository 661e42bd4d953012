// Command-line front end: one subcommand per computation, plain-text reports.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ssg/cayley.hpp"
#include "ssg/gallery.hpp"
#include "ssg/homology.hpp"
#include "ssg/nucleus.hpp"
#include "ssg/steinberg.hpp"
#include "ssg/system.hpp"

using namespace ssg;

namespace {

struct Common {
  std::string file = "-";
  long max_states = 0;
  int max_depth = 0;
};

SystemSpec read_spec(const std::string& path) {
  if (path != "-") return parse_system_file(path);
  std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  return parse_system(text);
}

System open(const Common& c) {
  System sys = load(read_spec(c.file));
  if (c.max_states > 0) sys.u->max_states = std::size_t(c.max_states);
  if (c.max_depth > 0) sys.u->max_depth = c.max_depth;
  return sys;
}

NucleusOptions nucleus_options(const Common& c) {
  NucleusOptions o;
  if (c.max_depth > 0) o.max_depth = c.max_depth;
  return o;
}

long parse_coeff(const std::string& s) {
  if (s == "Z") return 0;
  if (s.rfind("Z/", 0) == 0) {
    long m = std::stol(s.substr(2));
    if (m < 2) throw ValidationError("coefficient modulus must be at least 2");
    return m;
  }
  throw ValidationError("coefficients must be Z or Z/m");
}

std::string cyl_text(Universe& u, CylId c) { return cyl::format(u.shift(), u.cylinder(c)); }

void add_common(CLI::App* app, Common& c) {
  app->add_option("file", c.file, "system file, - for standard input");
  app->add_option("--max-states", c.max_states, "state cap for interned maps");
  app->add_option("--max-depth", c.max_depth, "depth cap for contraction and cylinder searches");
}

std::vector<AtomId> generator_list(System& sys, const std::string& names, std::vector<std::string>& labels) {
  if (names.empty()) {
    labels = sys.names;
    return sys.gens;
  }
  std::vector<AtomId> gens;
  std::stringstream ss(names);
  std::string n;
  while (std::getline(ss, n, ',')) {
    gens.push_back(sys.parse_element(n));
    labels.push_back(n);
  }
  return gens;
}

int run(int argc, char** argv) {
  CLI::App app{"Self-similar groupoids: nuclei, homology, algebras and Cayley graphs"};
  app.require_subcommand(1);
  Common c;

  auto* nuc = app.add_subcommand("nucleus", "compute the nucleus");
  add_common(nuc, c);
  auto* chk = app.add_subcommand("check-contracting", "report whether the system is contracting");
  add_common(chk, c);

  std::string base = "(0)", gens_opt;
  int radius = 3;
  bool dot = false;
  auto* cay = app.add_subcommand("cayley", "ball of the Cayley graph at a basepoint");
  add_common(cay, c);
  cay->add_option("--base", base, "basepoint u(v), letters comma separated");
  cay->add_option("--radius", radius);
  cay->add_option("--gens", gens_opt, "comma separated generator expressions");
  cay->add_flag("--dot", dot, "emit DOT");
  auto* gro = app.add_subcommand("growth", "growth function at a basepoint");
  add_common(gro, c);
  gro->add_option("--base", base);
  gro->add_option("--radius", radius);
  gro->add_option("--gens", gens_opt);
  auto* cpx = app.add_subcommand("complexity", "number of isomorphism classes of balls");
  add_common(cpx, c);
  cpx->add_option("--radius", radius);
  cpx->add_option("--gens", gens_opt);

  int hn = 1;
  std::string coeff = "Z";
  auto* hom = app.add_subcommand("homology", "groupoid homology H0 or H1");
  add_common(hom, c);
  hom->add_option("--n", hn)->check(CLI::IsMember({0, 1}));
  hom->add_option("--coeff", coeff, "Z or Z/m");
  std::string element;
  auto* h1c = app.add_subcommand("h1class", "class of a bisection in H1");
  add_common(h1c, c);
  h1c->add_option("--element", element)->required();
  auto* dim = app.add_subcommand("dimgroup", "dimension group data of H0");
  add_common(dim, c);

  long field = 0;
  bool verbose = false;
  int dim_n = 4, depth_k = 1;
  std::string alg_gens, block_opt;
  auto* alg = app.add_subcommand("algebra", "convolution algebra");
  alg->require_subcommand(1);
  alg->add_option("--field", field, "0 for Q, or a prime p");
  auto* aver = alg->add_subcommand("verify", "check the finite presentation");
  add_common(aver, c);
  aver->add_flag("--verbose", verbose);
  auto* adim = alg->add_subcommand("dim", "dimensions of the filtration V_n");
  add_common(adim, c);
  adim->add_option("--n", dim_n);
  adim->add_option("--gens", alg_gens, "semicolon separated algebra expressions");
  auto* arec = alg->add_subcommand("recursion", "matrix recursion of an element");
  add_common(arec, c);
  arec->add_option("--element", element)->required();
  arec->add_option("--k", depth_k);
  arec->add_option("--block", block_opt, "row,column group");

  std::string gname;
  bool list = false;
  auto* gal = app.add_subcommand("gallery", "print a built-in system");
  gal->add_option("name", gname);
  gal->add_flag("--list", list);

  auto* dot_cmd = app.add_subcommand("export-dot", "DOT export");
  dot_cmd->require_subcommand(1);
  auto* dmoore = dot_cmd->add_subcommand("moore", "Moore diagram of the nucleus");
  add_common(dmoore, c);
  auto* dcay = dot_cmd->add_subcommand("cayley", "Cayley ball");
  add_common(dcay, c);
  dcay->add_option("--base", base);
  dcay->add_option("--radius", radius);
  dcay->add_option("--gens", gens_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  std::ostream& out = std::cout;
  if (gal->parsed()) {
    if (list || gname.empty()) {
      for (auto& n : gallery::names()) out << n << "\n";
      return 0;
    }
    out << serialize(gallery::by_name(gname));
    return 0;
  }

  if (nuc->parsed() || chk->parsed()) {
    System sys = open(c);
    Universe& u = *sys.u;
    Nucleus n;
    try {
      n = compute_nucleus(u, sys.gens, nucleus_options(c));
    } catch (const NotContracting& e) {
      if (!chk->parsed()) throw;
      out << "system: " << sys.spec.name << "\ncontracting: no\nreason: " << e.what() << "\ntrace:";
      for (auto t : e.trace) out << " " << t;
      out << "\n";
      return 2;
    }
    out << "system: " << sys.spec.name << "\n";
    if (chk->parsed()) out << "contracting: yes\n";
    out << "nucleus-size: " << n.size() << "\nn0: " << n.n0 << "\nk1: " << n.k1 << "\n";
    if (nuc->parsed()) {
      out << "elements:\n";
      for (int i = 0; i < n.size(); ++i)
        out << "  " << (n.names[i].empty() ? u.label(n.elements[i]) : n.names[i]) << ": "
            << cyl_text(u, u.dom(n.elements[i])) << " -> " << cyl_text(u, u.ran(n.elements[i])) << "\n";
    }
    return 0;
  }

  if (cay->parsed() || gro->parsed() || cpx->parsed() || dcay->parsed()) {
    System sys = open(c);
    Universe& u = *sys.u;
    std::vector<std::string> labels;
    auto gens = generator_list(sys, gens_opt, labels);
    if (cpx->parsed()) {
      out << "system: " << sys.spec.name << "\ncomplexity:\n";
      for (int r = 0; r <= radius; ++r) {
        auto res = complexity(u, gens, labels, r);
        out << "  " << r << ": " << res.classes << " (depth " << res.depth << ")\n";
      }
      return 0;
    }
    EPWord x = parse_epword(u.shift(), base);
    if (gro->parsed()) {
      out << "system: " << sys.spec.name << "\nbase: " << format(u.shift(), x) << "\ngrowth:";
      for (auto g : growth(u, gens, labels, x, radius)) out << " " << g;
      out << "\n";
      return 0;
    }
    LabeledBall b = ball(u, gens, labels, x, radius);
    if (dot || dcay->parsed()) {
      out << b.to_dot(u.shift());
      return 0;
    }
    out << "system: " << sys.spec.name << "\nbase: " << format(u.shift(), x) << "\nradius: " << radius
        << "\nvertices: " << b.size() << "\nwell-labeled: " << (b.well_labeled() ? "yes" : "no") << "\n";
    for (int i = 0; i < b.size(); ++i) out << "  " << i << " " << format(u.shift(), b.points[i]) << " d=" << b.dist[i] << "\n";
    out << "arrows:\n";
    for (auto& a : b.arrows) out << "  " << a.from << " -" << labels[a.label] << "-> " << a.to << "\n";
    return 0;
  }

  if (hom->parsed() || h1c->parsed() || dim->parsed()) {
    System sys = open(c);
    HomologyEngine h(sys, nucleus_options(c));
    if (dim->parsed()) {
      auto dg = dimension_group(h);
      out << "system: " << sys.spec.name << "\n" << dg.report(h.universe().shift().graph().vertices);
      return 0;
    }
    if (h1c->parsed()) {
      AtomId e = h.to_edges(sys.parse_element(element));
      try {
        out << "class: " << h.h1_class(e).format() << "\n";
      } catch (const NotACycle& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
      }
      return 0;
    }
    long m = parse_coeff(coeff);
    const Colimit& col = hn == 0 ? h.h0(m) : h.h1(m);
    out << "system: " << sys.spec.name << "\nH" << hn << ": " << col.descriptor().format() << "\n";
    out << "level group: " << col.descriptor().level.format() << "\n";
    if (hn == 0) out << "sigma0: " << h.chains().S0.format() << "\n";
    if (hn == 1 && m == 0 && col.descriptor().kind != ColimitKind::Presented) {
      out << "classes:\n";
      for (std::size_t i = 0; i < sys.gens.size(); ++i) {
        std::string cls;
        try {
          cls = h.h1_class(h.to_edges(sys.gens[i])).format();
        } catch (const NotACycle&) {
          cls = "not a cycle";
        }
        out << "  [" << sys.names[i] << "] = " << cls << "\n";
      }
    }
    return 0;
  }

  if (alg->parsed()) {
    System sys = open(c);
    Nucleus n = compute_nucleus(*sys.u, sys.gens, nucleus_options(c));
    Algebra a(*sys.u, n, field);
    auto atom_of = [&](const std::string& s) { return sys.parse_element(s); };
    if (aver->parsed()) {
      auto rep = verify_presentation(a);
      out << "system: " << sys.spec.name << "\n" << rep.format(verbose) << "presentation: " << (rep.ok() ? "holds" : "fails")
          << "\n";
      return rep.ok() ? 0 : 3;
    }
    if (adim->parsed()) {
      std::vector<Element> gens;
      if (alg_gens.empty()) {
        const Shift& s = sys.u->shift();
        for (int x = 0; x < s.size(); ++x) {
          gens.push_back(a.S(Word(1, Letter(x))));
          gens.push_back(a.S_inv(Word(1, Letter(x))));
        }
        for (AtomId g : sys.gens) {
          gens.push_back(a.of(g));
          gens.push_back(a.of(sys.u->inverse(g)));
        }
      } else {
        std::stringstream ss(alg_gens);
        std::string t;
        while (std::getline(ss, t, ';')) gens.push_back(a.parse(t, atom_of));
      }
      auto d = graded_dimension(a, gens, dim_n);
      out << "system: " << sys.spec.name << "\ndimensions:";
      for (auto x : d) out << " " << x;
      out << "\n";
      return 0;
    }
    BlockMatrix m = matrix_recursion(a, a.parse(element, atom_of), depth_k);
    if (!block_opt.empty()) {
      auto comma = block_opt.find(',');
      if (comma == std::string::npos) throw ValidationError("--block expects ROW,COLUMN");
      m = block(m, std::stoi(block_opt.substr(0, comma)), std::stoi(block_opt.substr(comma + 1)));
    }
    out << format(a, m);
    return 0;
  }

  if (dmoore->parsed()) {
    System sys = open(c);
    Nucleus n = compute_nucleus(*sys.u, sys.gens, nucleus_options(c));
    out << moore_dot(*sys.u, n.elements);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
