#pragma once
// Mixed Hodge structures: a finitely generated lattice, an increasing weight
// filtration over Q on the free part, and a decreasing Hodge filtration over
// K.  Filtrations are stored at their jump levels only.

#include <map>

#include "modhodge/fggroup.hpp"
#include "modhodge/report.hpp"
#include "modhodge/subspace.hpp"

namespace modhodge {

struct MHS {
  FgGroup lattice;
  // basis marker for Tate twists: the lattice embeds into H_C as tau^scale * Id
  int tate_scale = 0;
  std::map<int, Subspace> weight;  // W_m = value at largest key <= m, zero below
  std::map<int, Subspace> hodge;   // F^p = value at smallest key >= p, zero above
  bool polarizable = false;

  size_t ambient() const { return lattice.free_rank; }
  Subspace weight_at(int m) const;
  Subspace hodge_at(int p) const;
  void normalize();  // drop non-jump keys; keeps semantics identical
  bool operator==(const MHS& o) const;
  bool operator!=(const MHS& o) const { return !(*this == o); }

  // weight/hodge key range of interest: [lo-1, hi+1] over both maps
  std::pair<int, int> weight_range() const;
  std::pair<int, int> hodge_range() const;

  static MHS tate(int m);      // Z(m): pure type (-m,-m), weight -2m, scale m
  static MHS zero();
};

Report validate_mhs(const MHS& h);
MHS mhs_dual(const MHS& h);
MHS mhs_twist(const MHS& h, int m);
MHS mhs_free_part(const MHS& h);

// h^{p,q} from graded dimensions; degraded=true when lambda symbols forced
// the numeric route (no conjugation cross-check)
std::map<std::pair<int, int>, int> hodge_numbers(const MHS& h, bool* degraded = nullptr);
bool is_mhs1(const MHS& h);

struct MHSMap {
  MHS src, dst;
  GroupHom fz;

  KMatrix f_k() const { return fz.free_block().to_k(); }
};

Report validate_mhs_map(const MHSMap& f);

struct MhsKerCoker {
  MHS kernel, cokernel, image;
  KMatrix kernel_incl;  // src ambient x ker ambient, integral columns
  KMatrix coker_proj;   // coker ambient x dst ambient, integral rows
  KMatrix image_incl;   // dst ambient x im ambient, integral columns
};

MhsKerCoker mhs_ker_coker(const MHSMap& f);
bool mhs_is_strict(const MHSMap& f);

}  // namespace modhodge
