#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssg/intmatrix.hpp"
#include "ssg/nucleus.hpp"
#include "ssg/system.hpp"

namespace ssg {

struct NotACycle : Error {
  using Error::Error;
};

// Finitely generated abelian group Z^k / (columns of the presentation).
struct FGAbelianGroup {
  IntMatrix presentation;
  int free_rank = 0;
  IntVec torsion;  // d1 | d2 | ..., all > 1
  std::string format() const;
};
FGAbelianGroup abelian_group(const IntMatrix& presentation);

enum class ColimitKind { FreeZ, ZOneOver, TorsionOnly, Presented };

struct ColimitDescriptor {
  ColimitKind kind = ColimitKind::Presented;
  int rational_rank = 0;
  IntVec eventual_torsion;
  std::optional<Int> endo_det;  // on the eventual free part
  Int d = 0;                    // ZOneOver: the signed multiplier
  FGAbelianGroup level;         // the group at a single level
  std::string format() const;   // "Z^2", "Z[1/2]", "(Z/2)^3", "0", ...
};

// Class of a level-tagged vector in the colimit. Free coordinates for FreeZ,
// one rational for ZOneOver, residues for TorsionOnly.
struct ColimitClass {
  std::vector<mpq_class> coords;
  bool is_zero() const;
  std::string format() const;
};

// Direct limit of Z^k / Im(P) under the endomorphism T (which must preserve Im P).
class Colimit {
 public:
  Colimit(const IntMatrix& P, const IntMatrix& T);
  const ColimitDescriptor& descriptor() const { return desc_; }
  // class of v placed at the given level; throws for Presented results
  ColimitClass class_of(const IntVec& v, int level) const;
  // action of T on colimit coordinates (FreeZ: integer matrix; TorsionOnly: residues)
  IntMatrix endo_on_classes() const;
  // flip the orientation of a free generator
  void flip(int i);

 private:
  ColimitDescriptor desc_;
  int k_ = 0;
  Smith s_;
  std::vector<int> tors_, free_;
  IntMatrix TG_;  // T in Smith coordinates
  // free part
  int J_ = 0;
  IntMatrix M_, MJ_, Lb_, ML_, MLinv_;
  std::vector<int> sign_;
  // torsion part
  int Jt_ = 0, nil_ = 0;
  IntVec tmod_;
  IntMatrix H_, U2_, TE_;
  IntVec e_;
  std::vector<int> eidx_;
  long order_ = 1;
  IntVec torsion_coords(const IntVec& y) const;
};

// Chain complex data on the nucleus of an edge-shift system.
struct ChainData {
  std::vector<AtomId> basis0;               // vertex idempotents
  std::vector<AtomId> basis1;               // nucleus elements
  std::vector<std::vector<AtomId>> basis2;  // ordered pairs
  IntMatrix patterns1;  // rows: realized germ patterns, columns: basis1
  IntMatrix R1;         // relation lattice, as columns
  IntMatrix B1;         // basis0 x basis1, raises the level by b1_shift
  int b1_shift = 0;
  IntMatrix B2;  // basis1 x basis2, raises the level by b2_shift
  int b2_shift = 0;
  IntMatrix S0, S1, S2;
};

ChainData chain_data(Universe& u, const Nucleus& nuc);

// Kernel of the germ-pattern evaluation matrix, i.e. linear relations between indicators.
IntMatrix relation_module(Universe& u, const std::vector<AtomId>& elements, IntMatrix* patterns = nullptr);
IntMatrix shift_matrix(Universe& u, const Nucleus& nuc, int n);
IntMatrix boundary_matrix(Universe& u, const Nucleus& nuc, int n, int* shift = nullptr);

// Everything needed for H0/H1 of a loaded system. Markov systems are recoded
// to their edge shift first.
class HomologyEngine {
 public:
  explicit HomologyEngine(System& sys, const NucleusOptions& opt = {});

  Universe& universe() { return *eu_; }
  const Nucleus& nucleus() const { return nuc_; }
  const ChainData& chains() const { return cd_; }
  // map an element of the original system into the edge universe
  AtomId to_edges(AtomId a);

  const Colimit& h0(long m = 0);
  const Colimit& h1(long m = 0);

  // vector of e at level `level` in nucleus coordinates
  IntVec push(AtomId e, int& level);
  // class of [e] in H1 (integer coefficients); NotACycle if e is not a cycle
  ColimitClass h1_class(AtomId e_edges);
  // class of an idempotent cylinder indicator in H0
  ColimitClass h0_class_of_unit();

 private:
  System* sys_;
  std::unique_ptr<Universe> owned_;
  Universe* eu_;
  Nucleus nuc_;
  ChainData cd_;
  std::map<long, std::unique_ptr<Colimit>> h0_, h1_;
  std::map<long, IntMatrix> kbasis_;  // cycles, by modulus
  IntMatrix cycles(long m);
  void orient(Colimit& c, long m);
};

struct Quadratic {  // (a + b sqrt(D)), exact
  mpq_class a, b;
  Int D = 0;
  std::string format() const;
};

struct DimensionGroup {
  ColimitDescriptor h0;
  ColimitClass unit;  // class of [1]
  IntMatrix sigma0;
  bool primitive = false;
  Quadratic lambda;              // Perron eigenvalue of sigma0
  std::vector<Quadratic> state;  // measure of each vertex idempotent, when available
  bool approximate = false;      // state given as rationals at a deep level

  // measure of the cylinder of a path (empty path: the whole space)
  Quadratic measure(const Shift& s, const Word& w) const;
  std::string report(const std::vector<std::string>& vertex_names) const;
};
DimensionGroup dimension_group(HomologyEngine& h);

}  // namespace ssg
