#pragma once
// Level-zero modulus structures in three presentations: the pair-of-spaces
// form (KatoRussellObject), the group-theoretic form (LaumonMotive), and the
// tower form used away from level zero (EHSObject / FHSObject).  Converters
// between the presentations and the canonical round-trip isomorphisms.

#include "modhodge/mhsm.hpp"

namespace modhodge {

// x carries addition/infinity data only at level 0 and a free level-one
// mixed structure (weights in [-2,0], Hodge types in the unit square).
bool is_mhsm1(const MHSMObject& x);

// Pair (H_Q, H_V) with compatible weight chains, a splitting of ker(b)
// into its weight pieces, and a Hodge subspace on H_V.
struct KatoRussellObject {
  FgGroup lattice;  // free
  int tate_scale = 0;
  size_t dim_v = 0;
  Subspace wm1_q, wm2_q;  // weight chain on K^rank, W_0 = everything
  Subspace wm1_v, wm2_v;  // weight chain on K^dim_v
  Subspace f0_v;          // Hodge subspace of K^dim_v
  KMatrix a;              // dim_v x rank
  KMatrix b;              // rank x dim_v, with b a = id
  Subspace split_add, split_inf;  // ker(b) = split_add (+) split_inf
  bool gr_polarizable = true;

  bool operator==(const KatoRussellObject& o) const;
};

Report validate_kr(const KatoRussellObject& k);

// Both directions are mutually inverse on the nose when the splitting is in
// block coordinates (which mhsm1_to_kr always produces); a foreign splitting
// is normalized by kr_to_mhsm1 and the round trip lands on the normal form.
KatoRussellObject mhsm1_to_kr(const MHSMObject& x);  // pre: is_mhsm1
MHSMObject kr_to_mhsm1(const KatoRussellObject& k);

// Group-theoretic form: a formal group quotient [F -> G] with F of rank r
// plus an s-dimensional infinitesimal part, and G presented by its Lie
// algebra together with the additive subalgebra and the period lattice.
struct LaumonMotive {
  size_t r = 0;         // rank of the etale part of F
  size_t s = 0;         // dimension of the infinitesimal part of F
  size_t lieg_dim = 0;  // dim Lie(G)
  Subspace lieg_add;    // additive part of Lie(G)
  KMatrix lambda;       // period matrix of the semiabelian quotient
  KMatrix lambda_w2;    // periods of the torus part, columns in col-span of lambda
  KMatrix lifts;        // images of the etale generators of F in Lie(G)
  KMatrix lie_u_inf;    // images of the infinitesimal generators in Lie(G)

  bool operator==(const LaumonMotive& o) const;
};

LaumonMotive mhsm1_to_laumon(const MHSMObject& x);  // pre: is_mhsm1, free lattice
MHSMObject laumon_to_mhsm1(const LaumonMotive& l);

// Round trip through the group form: x -> motive -> back, with the
// witnessing isomorphism back -> x.
struct LaumonRoundTrip {
  LaumonMotive motive;
  MHSMObject back;
  MHSMMorphism iso;  // back -> x, invertible
};
LaumonRoundTrip laumon_round_trip(const MHSMObject& x);

// Dual twisted back into level one; an involution up to free part.
MHSMObject cartier_dual(const MHSMObject& x);

// Tower form: spaces V^k with transitions tau^k : V^k -> V^{k-1} and
// comparison maps v^k : V^k -> H_C/F^k, stable (V^k = H_C, v = id) at and
// above k_stab.  v is stored in the non-pivot coordinates of F^k.
struct EHSObject {
  MHS h;
  int k_stab = 0;
  std::map<int, size_t> dims;   // dim V^k for k < k_stab; zero entries omitted
  std::map<int, KMatrix> tr;    // tau^k, zero entries omitted
  std::map<int, KMatrix> v;     // v^k for k < k_stab with V^k != 0

  size_t dim_v(int k) const;
  size_t dim_q(int k) const;    // dim H_C/F^k
  KMatrix tau_v(int k) const;   // identity above k_stab, zero default below
  KMatrix v_at(int k) const;    // identity at and above k_stab
  std::pair<int, int> window() const;  // [lowest nonzero level, k_stab]

  bool operator==(const EHSObject& o) const;
};

Report validate_ehs(const EHSObject& e);

// pre: x valid with no infinity part.  Mutually inverse on the nose.
EHSObject ehs_from_mhsm(const MHSMObject& x);
MHSMObject mhsm_from_ehs(const EHSObject& e);

// Tower form with a window [1, n] and an extra space U mapping into V^n.
struct FHSObject {
  EHSObject e;  // V^k = 0 for k <= 0, k_stab <= n + 1
  int n = 1;
  size_t u_dim = 0;
  KMatrix u;  // dim V^n x u_dim

  bool operator==(const FHSObject& o) const;
};

Report validate_fhs(const FHSObject& f);

// Membership in the window subcategory: Hodge types in [0, n]^2, addition
// part inside [1, n], infinity part only at level n.
bool is_mhsm_box(const MHSMObject& x, int n);

// pre: x valid and is_mhsm_box(x, n).  Mutually inverse on the nose.
FHSObject fhs_from_mhsm(const MHSMObject& x, int n);
MHSMObject mhsm_from_fhs(const FHSObject& f);

// Whether f lies in the image of the tower embedding: v^n u = 0.
bool sigma_condition(const FHSObject& f);
// Same condition read off directly: the infinity part dies in H^n_inf/F^n_inf.
bool mhsm_sigma_condition(const MHSMObject& x, int n);

}  // namespace modhodge
