#pragma once
// Geometric backend on the projective line over Q.  Two disjoint effective
// divisors Y (zeros, "additive" side) and Z (poles, "infinitesimal" side)
// determine a family of two-term complexes between line bundles; their
// two-chart Cech hypercohomology carries a canonical splitting into a
// finite lattice part, jets along Y, and pole jets along Z.  From that data
// the module assembles mixed Hodge structures with modulus, symbolic period
// matrices, the duality pairing, the Jacobian Laumon motive, and the
// functoriality under rational self-maps of the line.

#include <memory>
#include <optional>
#include <vector>

#include "modhodge/laumon.hpp"
#include "modhodge/mhsm.hpp"
#include "modhodge/qpoly.hpp"

namespace modhodge {

// effective divisor with rational support, sorted by coordinate
struct P1Divisor {
  std::vector<std::pair<Rat, int>> pts;  // distinct coordinates, mult >= 1

  static P1Divisor of(std::vector<std::pair<Rat, int>> pts);  // sorts, merges, checks
  int degree() const;
  size_t npoints() const { return pts.size(); }
  int mult_at(const Rat& p) const;
  P1Divisor reduced() const;
  std::vector<Rat> support() const;
  bool disjoint_from(const P1Divisor& o) const;
  bool operator==(const P1Divisor& o) const { return pts == o.pts; }
};

struct CurveTriple {
  P1Divisor y, z;  // disjoint supports

  CurveTriple swapped() const { return CurveTriple{z, y}; }
  bool operator==(const CurveTriple& o) const { return y == o.y && z == o.z; }
};

Report validate_triple(const CurveTriple& t);

// divisor as given on input, possibly touching the point at infinity
struct RawDivisor {
  std::vector<std::pair<Rat, int>> finite;
  int at_infinity = 0;
};

// when either divisor touches infinity, x -> 1/(x - c) with c one past the
// largest finite coordinate moves every point into the affine chart
struct Normalized {
  CurveTriple triple;
  bool moved = false;
  Rat pivot;  // the c above, meaningful when moved
};
Normalized normalize_triple(const RawDivisor& y, const RawDivisor& z);

// O(D) (x) (Omega^1)^phi with D a signed rational divisor; sections are
// stored as h with  section = h * prod (t - p)^(-d_p) * dt^phi
struct BundleSpec {
  std::vector<std::pair<Rat, int>> div;  // sorted, distinct, nonzero mults
  int phi = 0;

  static BundleSpec make(std::vector<std::pair<Rat, int>> div, int phi);
  BundleSpec twisted(const P1Divisor& d, int sign) const;
  int degree() const;
  int chart1_top() const { return degree() - 2 * phi; }
  bool operator==(const BundleSpec& o) const { return div == o.div && phi == o.phi; }
};

// level-k interpolation of the de Rham complex of (Y, Z): level <= 0 keeps
// only reduced conditions along Y and full poles along Z, level >= 2 the
// other way around, level 1 is the balanced middle
struct ComplexShape {
  BundleSpec l0, l1;
};
ComplexShape omega_complex(const CurveTriple& t, int k);

// exponent lists of the standard monomial bases of H^0 / H^1 of O(n)
struct LineCohomology {
  std::vector<int> h0, h1;
};
LineCohomology line_bundle_cohomology(int n);

// Truncated Cech model of [L0 -> L1] over the cover {t finite}, {1/t finite}:
// C^0 = L0(U0) + L0(U1), C^1 = L0(U01) + L1(U0) + L1(U1), C^2 = L1(U01).
// Chart-0 slots hold polynomial degrees [0, m], chart-1 slots [-m, top],
// the overlap [-m, m]; degree 1 uses m1 = m0 + max(deg r, 1).  In the h
// picture the differential is dh = r h' + rs h.  The constructor checks the
// truncated Euler characteristic against deg L0 - deg L1 + 2, which certifies
// that no window clipped a live degree.
struct CechModel {
  BundleSpec l0, l1;
  int m0 = 0, m1 = 0;
  QPoly r, rs;
  QMat d0, d1;

  CechModel(const ComplexShape& shape, int m0);

  struct Slot {
    Window w;
    size_t off;
  };
  Slot s0_chart0() const, s0_chart1() const;
  Slot s1_overlap() const, s1_chart0() const, s1_chart1() const;
  Slot s2_overlap() const;
  size_t c0_dim() const, c1_dim() const, c2_dim() const;

  static Laurent take(const QVec& v, Slot s);
  static void put(QVec& v, Slot s, const Laurent& l);  // throws on window escape
};

// degree-wise multiplication by the divisor-difference polynomials; the
// constructor derives the multipliers from the shapes and refuses
// non-effective differences or window escapes
struct CechMap {
  QPoly g0, g1;
  QMat on0, on1, on2;

  CechMap(const CechModel& src, const CechModel& dst);
};

struct CechCohomology {
  size_t dim[3] = {0, 0, 0};
  QMat basis[3];  // cocycle representatives as columns
  QMat bnd1;      // independent columns of im d0
  QMat bnd2;      // independent columns of im d1
};
CechCohomology cech_cohomology(const CechModel& m);

// coefficients of one truncated Cech cochain, one Laurent block per chart
struct LaurentBlock {
  int lo = 0;
  QVec c;
};
struct CechClass {
  LaurentBlock chart0, chart1, overlap;
};
struct HyperResult {
  size_t dim = 0;
  std::vector<CechClass> basis;
};
HyperResult hypercohomology(const CurveTriple& t, int k, int n, int window = -1);

// the four reduced-modulus inclusions must be isomorphisms on every H^n,
// and the dimensions must not move when the truncation grows
Report quasi_iso_check(const CurveTriple& t, int window = -1);

struct JetLabel {
  Rat p;
  int order;
  bool operator==(const JetLabel& o) const { return p == o.p && order == o.order; }
};

// relative periods of the form  num dt / prod_(p,m) (t - p)^m  against the
// homology basis of the pair: a primitive-difference plus residue logs along
// the path from the base Y-point to each later one, then tau times the
// residue at each nonbase Z-point.  Log terms are emitted one point at a
// time, log(y - p) - log(y0 - p), so that both sides of the duality pairing
// land on the same symbols.
std::vector<Scalar> periods_of_form(const QPoly& num, const P1Divisor& poles,
                                    const CurveTriple& t);
struct ModulusSpaces {
  std::vector<JetLabel> add_basis, inf_basis;
};
ModulusSpaces modulus_spaces(const CurveTriple& t, int n, int k);

// canonical section/retraction pairs on H^n: (a, b) against the reduced-Z
// complex, (a2, b2) against the reduced-Y complex; b*a = 1 and b2*a2 = 1
struct Splittings {
  QMat a, b, a2, b2;
  size_t dim = 0, dim_rz = 0, dim_ry = 0;
};
Splittings splittings(const CurveTriple& t, int n, int k, int window = -1);

// safe default truncation and the environment-tunable stability margin
int default_window(const CurveTriple& t);
int trunc_margin();

// the full level-(1,1) machine: decomposition of H^1 into the lattice part,
// jets along Y and pole jets along Z, together with periods and the
// resulting mixed structure
struct CurveSystem {
  CurveTriple t;
  int window = 0;
  size_t nh = 0, na = 0, ni = 0;
  std::vector<JetLabel> add_basis, inf_basis;
  std::shared_ptr<const CechModel> model;  // the (1,1) model the columns live in
  QMat phi_c, phi_add, phi_inf;            // cocycle columns in C^1
  QMat bnd;                                // independent boundary columns
  KMatrix periods;                         // nh x nh, unipotent over tau block
  MHSMObject h1;
};
CurveSystem build_curve_system(const CurveTriple& t, int window = -1);

KMatrix period_matrix(const CurveTriple& t);
MHSMObject build_mhsm(const CurveTriple& t, int n);

struct PairingResult {
  QMat p;  // rows over H^n(Y, Z) at level k, columns over H^{2-n}(Z, Y) at 2-k
  size_t dim_left = 0, dim_right = 0;
};
PairingResult duality_pairing(const CurveTriple& t, int n, int k, int window = -1);

struct DualityCertificate {
  Report report;
  MHSMMorphism iso;   // twist(build_mhsm(swap t, 2-n), 1) -> dual(build_mhsm(t, n))
  KMatrix b_lattice;  // integral unimodular Betti pairing matrix
};
DualityCertificate duality_check(const CurveTriple& t, int n);

// annihilator dimension identity and pairing perfectness at one level
Report annihilator_check(const CurveTriple& t, int k, int window = -1);

LaumonMotive jacobian(const CurveTriple& t);
Report lm_compare(const CurveTriple& t);
Report jacobian_cartier_check(const CurveTriple& t);

MHSMMorphism dual_morphism(const MHSMMorphism& f);
MHSMMorphism twist_morphism(const MHSMMorphism& f, int m);
std::optional<MHSMMorphism> invert_morphism(const MHSMMorphism& f);

// rational self-map of the line, f = p/q in lowest terms, q monic-free form
struct RationalMap {
  QPoly p, q;

  static RationalMap of(QPoly p, QPoly q);  // cancels common factors; q != 0
  int degree() const;
  Rat eval(const Rat& x) const;  // pre: q(x) != 0
};

// contravariant transport along f: the morphism goes from the structure of
// the target triple to that of the source triple; admissibility failures are
// reported with the violated inequality named, and no morphism is produced
struct PullbackResult {
  Report report;
  std::optional<MHSMMorphism> map;
};
PullbackResult pullback(const RationalMap& f, const CurveTriple& source,
                        const CurveTriple& target, int n);
PullbackResult pushforward(const RationalMap& f, const CurveTriple& source,
                           const CurveTriple& target, int n);

}  // namespace modhodge
