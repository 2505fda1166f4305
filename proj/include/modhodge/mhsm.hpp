#pragma once
// Mixed Hodge structures with modulus: levels are H_C + add^k + inf^k in
// that block order, tau^k = Id + tau_add + tau_inf, and the filtration F^k
// is a subspace per level with stable tails (full below fmin, zero above
// fmax).  Validation checks the four defining conditions plus the symmetric
// reformulations, each folded into its clause id.

#include <array>
#include <map>

#include "modhodge/mhs.hpp"

namespace modhodge {

struct VecSeq {
  std::map<int, int> dims;        // only nonzero entries
  std::map<int, KMatrix> tr;      // tr[k]: V^k -> V^{k-1}

  int dim(int k) const {
    auto it = dims.find(k);
    return it == dims.end() ? 0 : it->second;
  }
  KMatrix tmat(int k) const {  // defaults to the zero matrix of fitting shape
    auto it = tr.find(k);
    if (it != tr.end()) return it->second;
    return KMatrix(static_cast<size_t>(dim(k - 1)), static_cast<size_t>(dim(k)));
  }
  std::pair<int, int> window() const {  // [lo, hi]; {0, -1} when empty
    if (dims.empty()) return {0, -1};
    return {dims.begin()->first, dims.rbegin()->first};
  }
  int total_dim() const {
    int t = 0;
    for (auto& [k, d] : dims) t += d;
    return t;
  }
  bool operator==(const VecSeq& o) const;
  VecSeq dual_reflected() const;  // k -> (V^{1-k})^dual with transposed maps
  VecSeq shifted(int m) const;    // k -> V^{k+m}
};

struct MHSMObject {
  MHS mhs;
  VecSeq add, inf;
  std::map<int, Subspace> filt;  // explicit levels fmin < k < fmax
  int fmin = 0, fmax = 1;        // F^k full for k <= fmin, zero for k >= fmax

  size_t dim_c() const { return mhs.ambient(); }
  size_t ambient(int k) const {
    return dim_c() + static_cast<size_t>(add.dim(k)) + static_cast<size_t>(inf.dim(k));
  }
  KMatrix tau_level(int k) const {
    return KMatrix::block_diag({KMatrix::identity(dim_c()), add.tmat(k), inf.tmat(k)});
  }
  Subspace filt_at(int k) const;
  // block projections / inclusions at level k
  KMatrix proj_c(int k) const;
  KMatrix incl_c(int k) const;
  KMatrix incl_add(int k) const;   // add^k -> level
  KMatrix incl_cadd(int k) const;  // H_C + add^k -> level
  KMatrix proj_drop_add(int k) const;  // level -> H_C + inf^k
  KMatrix proj_inf(int k) const;
  std::pair<int, int> level_range() const;  // every level with data, widened by 1
  bool operator==(const MHSMObject& o) const;
  bool operator!=(const MHSMObject& o) const { return !(*this == o); }

  static MHSMObject from_mhs(const MHS& h);  // add = inf = 0, F^k = F^k H_C
};

Report validate_mhsm(const MHSMObject& x);

// unique map H^k/F^k -> H_C/F^k H_C, computed along both routes of the
// defining diagram (through the inf side and through the add side)
KMatrix induced_map_hf(const MHSMObject& x, int k);

struct MHSMMorphism {
  MHSMObject src, dst;
  GroupHom fz;
  std::map<int, KMatrix> fadd, finf;

  KMatrix fc() const { return fz.free_block().to_k(); }
  KMatrix fadd_at(int k) const;
  KMatrix finf_at(int k) const;
  KMatrix level_matrix(int k) const {
    return KMatrix::block_diag({fc(), fadd_at(k), finf_at(k)});
  }
  static MHSMMorphism identity(const MHSMObject& x);
  static MHSMMorphism zero(const MHSMObject& x, const MHSMObject& y);
  MHSMMorphism compose(const MHSMMorphism& inner) const;
  bool equal_maps(const MHSMMorphism& o) const;  // same matrices over range
};

Report validate_mhsm_morphism(const MHSMMorphism& f);
bool mhsm_is_strict(const MHSMMorphism& f);

// functor tower
MHSMObject pi_inf(const MHSMObject& x);
MHSMObject pi_add(const MHSMObject& x);
MHSMObject i_add(const MHSMObject& x);  // pre: inf = 0
MHSMObject i_inf(const MHSMObject& x);  // pre: add = 0
MHSMObject j_add(const VecSeq& v);
MHSMObject j_inf(const VecSeq& v);
VecSeq mu_add(const MHSMObject& x);  // pre: x in MHSM_add
VecSeq mu_inf(const MHSMObject& x);  // pre: x in MHSM_inf
MHS pi0_inf(const MHSMObject& x);    // pre: x in MHSM_add
MHS pi0_add(const MHSMObject& x);    // pre: x in MHSM_inf
MHSMObject i0_add(const MHS& h);
MHSMObject i0_inf(const MHS& h);

// morphism-level functors and the adjunction (co)units
MHSMMorphism pi_inf_mor(const MHSMMorphism& f);
MHSMMorphism pi_add_mor(const MHSMMorphism& f);
MHSMMorphism unit_pi_inf(const MHSMObject& x);     // x -> i_inf pi_inf x
MHSMMorphism counit_pi_add(const MHSMObject& x);   // i_add pi_add x -> x
MHSMMorphism counit_pi_inf(const MHSMObject& y);   // pi_inf i_inf y -> y (identity)
MHSMMorphism unit_pi_add(const MHSMObject& y);     // y -> pi_add i_add y (identity)
bool adjunction_triangles(const MHSMObject& x);

struct ShortExact {
  MHSMMorphism incl, proj;
};
// the four functorial sequences of the three-step filtration
std::array<ShortExact, 4> three_step(const MHSMObject& x);

struct MhsmKerCoker {
  MHSMObject kernel, cokernel, image, coimage;
  MHSMMorphism kernel_incl;    // kernel -> src
  MHSMMorphism coker_proj;     // dst -> cokernel
  MHSMMorphism coim_proj;      // src -> coimage
  MHSMMorphism image_incl;     // image -> dst
  MHSMMorphism coim_to_im;     // the canonical map, must be an isomorphism
};
MhsmKerCoker mhsm_ker_coker(const MHSMMorphism& f);

MHSMObject mhsm_dual(const MHSMObject& x);
MHSMObject mhsm_twist(const MHSMObject& x, int m);
MHSMObject mhsm_free_part(const MHSMObject& x);
// canonical evaluation morphism free_part(x) -> (x^dual)^dual; in the chosen
// presentations the double dual is literally the free part
MHSMMorphism evaluation_morphism(const MHSMObject& x);

struct RValue {
  FgGroup lattice;
  std::map<int, int> add_dims, inf_dims;
  int total_dim = 0;
  bool operator==(const RValue& o) const {
    return lattice == o.lattice && add_dims == o.add_dims && inf_dims == o.inf_dims;
  }
};
RValue functor_r(const MHSMObject& x);
bool r_dual_compatible(const MHSMObject& x);  // R(x^dual) vs R(x)^dual
bool sequence_exact(const std::vector<MHSMMorphism>& seq);
bool is_invertible(const MHSMMorphism& f);

}  // namespace modhodge
