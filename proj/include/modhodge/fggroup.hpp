#pragma once
// Finitely generated abelian groups as free rank plus invariant factors, and
// homomorphisms as integer matrices on the chosen generators (free ones
// first, then one generator per factor).

#include <vector>

#include "modhodge/zlinalg.hpp"

namespace modhodge {

struct FgGroup {
  size_t free_rank = 0;
  std::vector<Int> factors;  // each >= 2, factors[i] | factors[i+1]

  static FgGroup free(size_t rank) { return FgGroup{rank, {}}; }
  size_t gens() const { return free_rank + factors.size(); }
  bool is_free() const { return factors.empty(); }
  bool operator==(const FgGroup& o) const {
    return free_rank == o.free_rank && factors == o.factors;
  }
  bool operator!=(const FgGroup& o) const { return !(*this == o); }
  // relation lattice inside Z^gens: d_i * e_{free_rank + i}
  ZMatrix relations() const;
};

struct GroupHom {
  FgGroup src, dst;
  ZMatrix m;  // dst.gens() x src.gens()

  static GroupHom identity(const FgGroup& g);
  bool valid() const;  // torsion relations map into dst relations
  GroupHom compose(const GroupHom& inner) const;
  // top-left free block: the induced map on free parts
  ZMatrix free_block() const;
};

struct GroupCalc {
  FgGroup kernel, cokernel, image;
};

GroupCalc group_calc(const GroupHom& f);
FgGroup free_part(const FgGroup& g);
FgGroup z_dual(const FgGroup& g);
FgGroup group_from_invariants(size_t free_rank, std::vector<Int> ds);

// cokernel presentation with projection: Z^n -> coker as integer matrix on
// generators of (Z^n)/(span cols); also the group itself
struct CokerPres {
  FgGroup group;
  ZMatrix proj;  // group.gens() x n
};
CokerPres cokernel_presentation(size_t n, const ZMatrix& image_cols);

// Z^g / (span of relation columns) in invariant-factor form, with the
// generator change both ways: to_normal sends a vector to the coordinates of
// its class, from_normal picks a representative per generator, and
// to_normal * from_normal is the identity on generators.
struct NormalizedGroup {
  FgGroup group;
  ZMatrix to_normal;    // group.gens() x g
  ZMatrix from_normal;  // g x group.gens()
};
NormalizedGroup normalize_presentation(size_t g, const ZMatrix& relations);

}  // namespace modhodge
