// Geometric lane: divisors, truncated Cech models, hypercohomology counts,
// explicit periods, the (1,1) system with its mixed structure, duality,
// Laumon comparison, and transport along self-maps of the line.  Dimension
// oracles are the point-count census; period oracles are written out from
// log symbols by hand before the engine is asked.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <utility>
#include <vector>

#include "modhodge/curve.hpp"

using namespace modhodge;

namespace {

P1Divisor dv(std::vector<std::pair<Rat, int>> pts) { return P1Divisor::of(std::move(pts)); }

CurveTriple triple(std::vector<std::pair<Rat, int>> y, std::vector<std::pair<Rat, int>> z) {
  return CurveTriple{dv(std::move(y)), dv(std::move(z))};
}

Scalar logr(const Rat& r) { return Scalar::log_rational(r); }

// log(a - p) - log(b - p), the per-point symbol the engine emits
Scalar log_gap(const Rat& a, const Rat& b, const Rat& p) { return logr(a - p) - logr(b - p); }

size_t ap_of(const CurveTriple& t) { return t.y.npoints() > 0 ? t.y.npoints() - 1 : 0; }
size_t bp_of(const CurveTriple& t) { return t.z.npoints() > 0 ? t.z.npoints() - 1 : 0; }
size_t lattice_census(const CurveTriple& t) { return ap_of(t) + bp_of(t); }
size_t middle_census(const CurveTriple& t) {
  return lattice_census(t) +
         static_cast<size_t>(t.y.degree() - static_cast<int>(t.y.npoints())) +
         static_cast<size_t>(t.z.degree() - static_cast<int>(t.z.npoints()));
}

const CurveTriple t_yy = triple({{0, 1}, {1, 1}}, {});
const CurveTriple t_zz = triple({}, {{0, 1}, {1, 1}});
const CurveTriple t_11 = triple({{0, 1}, {1, 1}}, {{2, 1}, {3, 1}});
const CurveTriple t_mult = triple({{0, 2}, {1, 1}}, {{2, 1}, {3, 2}});
const CurveTriple t_deep = triple({{0, 3}}, {{1, 1}, {2, 2}});

}  // namespace

TEST_CASE("divisors merge, sort and validate") {
  P1Divisor d = dv({{1, 2}, {0, 1}, {1, 1}});
  CHECK(d.pts == std::vector<std::pair<Rat, int>>{{0, 1}, {1, 3}});
  CHECK(d.degree() == 4);
  CHECK(d.npoints() == 2);
  CHECK(d.mult_at(1) == 3);
  CHECK(d.mult_at(5) == 0);
  CHECK(d.reduced().pts == std::vector<std::pair<Rat, int>>{{0, 1}, {1, 1}});
  CHECK(dv({{2, 1}, {2, 0}}).pts == std::vector<std::pair<Rat, int>>{{2, 1}});
  CHECK_THROWS_AS(dv({{2, -1}}), std::invalid_argument);

  CHECK(validate_triple(t_mult).ok());
  CHECK_FALSE(validate_triple(CurveTriple{dv({{0, 1}}), dv({{0, 1}})}).ok());
  CHECK_THROWS_AS(build_curve_system(CurveTriple{dv({{0, 1}}), dv({{0, 1}})}),
                  std::invalid_argument);
}

TEST_CASE("line bundle cohomology of O(n)") {
  for (int n = -5; n <= 5; ++n) {
    LineCohomology c = line_bundle_cohomology(n);
    CHECK(c.h0.size() == static_cast<size_t>(std::max(n + 1, 0)));
    CHECK(c.h1.size() == static_cast<size_t>(std::max(-n - 1, 0)));
    CHECK(static_cast<int>(c.h0.size()) - static_cast<int>(c.h1.size()) == n + 1);
  }
}

TEST_CASE("interpolated shapes cancel against the swapped complement") {
  for (const CurveTriple& t : {t_11, t_mult, t_deep}) {
    for (int k = -1; k <= 3; ++k) {
      ComplexShape a = omega_complex(t, k);
      ComplexShape b = omega_complex(t.swapped(), 2 - k);
      std::map<Rat, int> sum0, sum1;
      for (auto& [p, m] : a.l0.div) sum0[p] += m;
      for (auto& [p, m] : b.l1.div) sum0[p] += m;
      for (auto& [p, m] : a.l1.div) sum1[p] += m;
      for (auto& [p, m] : b.l0.div) sum1[p] += m;
      for (auto& [p, m] : sum0) CHECK(m == 0);
      for (auto& [p, m] : sum1) CHECK(m == 0);
      CHECK(a.l0.phi + b.l1.phi == 1);
      CHECK(a.l1.phi + b.l0.phi == 1);
    }
  }
}

TEST_CASE("truncated models keep the Euler characteristic") {
  for (const CurveTriple& t : {t_11, t_mult, t_deep}) {
    ComplexShape sh = omega_complex(t, 1);
    CechModel m(sh, default_window(t));
    int chi = static_cast<int>(m.c0_dim()) - static_cast<int>(m.c1_dim()) +
              static_cast<int>(m.c2_dim());
    CHECK(chi == sh.l0.degree() - sh.l1.degree() + 2);

    CechCohomology coh = cech_cohomology(m);
    CHECK(coh.dim[0] == 0);
    CHECK(coh.dim[1] == middle_census(t));
    CHECK(coh.dim[2] == 0);
    CHECK(qrank(coh.bnd1) == coh.bnd1.cols());
  }
}

TEST_CASE("hypercohomology census across the levels") {
  for (const CurveTriple& t : {t_11, t_mult, t_deep}) {
    for (int k : {0, 1, 2}) {
      size_t want = k == 1 ? middle_census(t) : lattice_census(t);
      CHECK(hypercohomology(t, k, 0).dim == 0);
      CHECK(hypercohomology(t, k, 1).dim == want);
      CHECK(hypercohomology(t, k, 2).dim == 0);
    }
  }
  CHECK(hypercohomology(t_yy, 1, 1).dim == middle_census(t_yy));
  CHECK(hypercohomology(t_zz, 1, 1).dim == middle_census(t_zz));
  CHECK_THROWS_AS(hypercohomology(t_11, 1, 1, 3), std::invalid_argument);
}

TEST_CASE("reduced-modulus inclusions are quasi-isomorphisms") {
  for (const CurveTriple& t : {t_yy, t_zz, t_11, t_mult, t_deep}) {
    Report r = quasi_iso_check(t);
    INFO(r.str());
    CHECK(r.ok());
  }
}

TEST_CASE("jet labels of the modulus spaces") {
  ModulusSpaces ms = modulus_spaces(t_mult, 1, 1);
  CHECK(ms.add_basis == std::vector<JetLabel>{{0, 1}});
  CHECK(ms.inf_basis == std::vector<JetLabel>{{3, 2}});

  ModulusSpaces md = modulus_spaces(t_deep, 1, 1);
  CHECK(md.add_basis == std::vector<JetLabel>{{0, 1}, {0, 2}});
  CHECK(md.inf_basis == std::vector<JetLabel>{{2, 2}});

  ModulusSpaces mr = modulus_spaces(t_11, 1, 1);
  CHECK(mr.add_basis.empty());
  CHECK(mr.inf_basis.empty());
}

TEST_CASE("splittings retract their sections") {
  for (const CurveTriple& t : {t_11, t_mult, t_deep}) {
    CurveTriple rz{t.y, t.z.reduced()}, ry{t.y.reduced(), t.z};
    for (int k : {0, 1, 2}) {
      Splittings s = splittings(t, 1, k);
      CHECK(s.dim == (k == 1 ? middle_census(t) : lattice_census(t)));
      CHECK(s.dim_rz == (k == 1 ? middle_census(rz) : lattice_census(rz)));
      CHECK(s.dim_ry == (k == 1 ? middle_census(ry) : lattice_census(ry)));
      CHECK(s.b * s.a == QMat::identity(s.dim_rz));
      CHECK(s.b2 * s.a2 == QMat::identity(s.dim_ry));
    }
  }
}

TEST_CASE("periods of explicit forms against hand oracles") {
  // polynomial form (2t + 3) dt between 0 and 1
  QPoly num = QPoly::monomial(1, 2) + QPoly::monomial(0, 3);
  auto per = periods_of_form(num, P1Divisor{}, t_11);
  REQUIRE(per.size() == 2);
  CHECK(per[0] == Scalar(4));
  CHECK(per[1] == Scalar());

  // dt / (t - 2)^2: pure primitive, no residue
  per = periods_of_form(QPoly::monomial(0, 1), dv({{2, 2}}), t_11);
  CHECK(per[0] == Scalar(Rat(1, 2)));
  CHECK(per[1] == Scalar());

  // dt/(t-2) - dt/(t-3) = -dt / ((t-2)(t-3)): residues 1 and -1
  per = periods_of_form(QPoly::monomial(0, -1), dv({{2, 1}, {3, 1}}), t_11);
  CHECK(per[0] == log_gap(1, 0, 2) - log_gap(1, 0, 3));
  CHECK(per[1] == -Scalar::tau());
}

TEST_CASE("period matrices of the smallest triples") {
  KMatrix pyy = period_matrix(t_yy);
  REQUIRE(pyy.rows() == 1);
  CHECK(pyy.at(0, 0) == Scalar(1));

  KMatrix pzz = period_matrix(t_zz);
  REQUIRE(pzz.rows() == 1);
  CHECK(pzz.at(0, 0) == Scalar::tau());

  // lattice part (1, tau) with the off-diagonal log of the cross gaps
  Scalar lam = log_gap(1, 0, 3) - log_gap(1, 0, 2);
  for (const CurveTriple& t : {t_11, t_mult}) {
    KMatrix p = period_matrix(t);
    REQUIRE(p.rows() == 2);
    CHECK(p.at(0, 0) == Scalar(1));
    CHECK(p.at(1, 0) == Scalar());
    CHECK(p.at(1, 1) == Scalar::tau());
    CHECK(p.at(0, 1) == lam);
  }
}

TEST_CASE("curve system invariants") {
  for (const CurveTriple& t : {t_yy, t_zz, t_11, t_mult, t_deep}) {
    CurveSystem sys = build_curve_system(t);
    size_t ap = ap_of(t), bp = bp_of(t);
    CHECK(sys.nh == ap + bp);
    CHECK(sys.na == static_cast<size_t>(t.y.degree()) - t.y.npoints());
    CHECK(sys.ni == static_cast<size_t>(t.z.degree()) - t.z.npoints());
    CHECK(sys.phi_c.cols() == sys.nh);
    CHECK(sys.phi_add.cols() == sys.na);
    CHECK(sys.phi_inf.cols() == sys.ni);

    for (size_t i = 0; i < ap; ++i)
      for (size_t j = 0; j < sys.nh; ++j)
        if (j < ap) CHECK(sys.periods.at(i, j) == (i == j ? Scalar(1) : Scalar()));
    for (size_t i = ap; i < sys.nh; ++i)
      for (size_t j = 0; j < sys.nh; ++j)
        CHECK(sys.periods.at(i, j) ==
              (i == j ? Scalar::tau() : Scalar()));

    INFO(validate_mhsm(sys.h1).str());
    CHECK(validate_mhs(sys.h1.mhs).ok());
    CHECK(validate_mhsm(sys.h1).ok());
    CHECK(sys.h1.mhs.weight_at(0).dim() == ap);
    CHECK(sys.h1.mhs.weight_at(-1).dim() == 0);
    CHECK(sys.h1.mhs.weight_at(2).dim() == sys.nh);
    CHECK(sys.h1.mhs.hodge_at(1).dim() == bp);
    CHECK(sys.h1.mhs.hodge_at(0).dim() == sys.nh);
    CHECK(sys.h1.mhs.hodge_at(2).dim() == 0);
    size_t f1 = t.z.degree() > 0 ? static_cast<size_t>(t.z.degree()) - 1 : 0;
    CHECK(sys.h1.filt_at(1).dim() == f1);
    CHECK(static_cast<size_t>(sys.h1.add.dim(1)) == sys.na);
    CHECK(static_cast<size_t>(sys.h1.inf.dim(1)) == sys.ni);
  }
  CHECK_THROWS_AS(build_curve_system(t_11, 2), std::invalid_argument);
}

TEST_CASE("edge cohomology carries the Tate structures") {
  CHECK(build_mhsm(t_yy, 0).mhs.ambient() == 0);
  CHECK(build_mhsm(t_zz, 0).mhs == MHS::tate(0));
  CHECK(build_mhsm(t_yy, 2).mhs == MHS::tate(-1));
  CHECK(build_mhsm(t_zz, 2).mhs.ambient() == 0);
  CHECK_THROWS_AS(build_mhsm(t_11, 3), std::invalid_argument);
}

TEST_CASE("raw trace pairing is perfect blockwise") {
  for (const CurveTriple& t : {t_11, t_mult}) {
    for (int k : {0, 1, 2}) {
      PairingResult pr = duality_pairing(t, 1, k);
      CHECK(pr.dim_left == (k == 1 ? middle_census(t) : lattice_census(t)));
      CHECK(pr.dim_left == pr.dim_right);
      CHECK(pr.p.rows() == pr.dim_left);
      CHECK(qrank(pr.p) == pr.dim_left);
    }
  }
}

TEST_CASE("duality certificates at the middle level") {
  for (const CurveTriple& t : {t_11, t_mult, t_deep}) {
    DualityCertificate d = duality_check(t, 1);
    INFO(d.report.str());
    CHECK(d.report.ok());
    CHECK(d.b_lattice.rows() == lattice_census(t));
    CHECK(is_invertible(d.iso));
  }
}

TEST_CASE("duality certificates at the edges") {
  for (auto& [t, n] : std::vector<std::pair<CurveTriple, int>>{
           {t_zz, 0}, {t_11, 0}, {t_yy, 2}, {t_mult, 2}}) {
    DualityCertificate d = duality_check(t, n);
    INFO(d.report.str());
    CHECK(d.report.ok());
  }
}

TEST_CASE("annihilator identity at every level") {
  for (const CurveTriple& t : {t_11, t_mult, t_deep}) {
    for (int k : {0, 1, 2}) {
      Report r = annihilator_check(t, k);
      INFO(r.str());
      CHECK(r.ok());
    }
  }
}

TEST_CASE("jacobian matches the point census") {
  LaumonMotive j = jacobian(t_mult);
  CHECK(j.r == 1);
  CHECK(j.s == 1);
  CHECK(j.lieg_dim == 2);
  CHECK(j.lieg_add.dim() == 1);
  CHECK(j.lambda_w2.cols() == 1);
  for (const CurveTriple& t : {t_11, t_mult, t_deep}) {
    Report r = lm_compare(t);
    INFO(r.str());
    CHECK(r.ok());
    Report c = jacobian_cartier_check(t);
    INFO(c.str());
    CHECK(c.ok());
  }
}

TEST_CASE("pullback along the identity is the identity") {
  RationalMap id = RationalMap::of(QPoly::monomial(1, 1), QPoly::monomial(0, 1));
  CHECK(id.degree() == 1);
  PullbackResult r = pullback(id, t_mult, t_mult, 1);
  INFO(r.report.str());
  CHECK(r.report.ok());
  REQUIRE(r.map.has_value());
  CHECK(r.map->equal_maps(MHSMMorphism::identity(build_mhsm(t_mult, 1))));
}

TEST_CASE("pullback along the squaring map") {
  RationalMap sq = RationalMap::of(QPoly::monomial(2, 1), QPoly::monomial(0, 1));
  CurveTriple src = triple({{-1, 1}, {0, 2}, {1, 1}}, {{-2, 1}, {2, 1}});
  CurveTriple tgt = triple({{0, 1}, {1, 1}}, {{4, 1}});
  PullbackResult r = pullback(sq, src, tgt, 1);
  INFO(r.report.str());
  CHECK(r.report.ok());
  REQUIRE(r.map.has_value());

  // source base point -1, so pulling w |-> w^2 sends the single relative
  // cycle to (0^2 - 1, 1^2 - 1) = (-1, 0) in the two relative coordinates
  ZMatrix want(3, 1);
  want.at(0, 0) = Int(-1);
  want.at(1, 0) = Int(0);
  want.at(2, 0) = Int(0);
  CHECK(r.map->fz.m == want);

  // transfer back: push o pull multiplies the target structure by deg f
  PullbackResult p = pushforward(sq, src, tgt, 1);
  INFO(p.report.str());
  CHECK(p.report.ok());
  REQUIRE(p.map.has_value());
  MHSMMorphism comp = p.map->compose(*r.map);
  CHECK(comp.level_matrix(1) == KMatrix::identity(1).scale(Scalar(2)));
}

TEST_CASE("inadmissible maps are refused with the inequality named") {
  RationalMap sq = RationalMap::of(QPoly::monomial(2, 1), QPoly::monomial(0, 1));
  auto fails = [](const PullbackResult& r, const std::string& id) {
    INFO(r.report.str());
    CHECK_FALSE(r.map.has_value());
    for (auto& f : r.report.failed_ids())
      if (f == id) return true;
    return false;
  };

  // 3 squares to 9, outside the target relative locus
  CHECK(fails(pullback(sq, triple({{3, 1}}, {{-2, 1}, {2, 1}}),
                       triple({{1, 1}}, {{4, 1}}), 1),
              "relative-cover"));
  // fibre over 9 is {-3, 3}, not inside the source poles
  CHECK(fails(pullback(sq, triple({{-1, 1}, {1, 1}}, {{-2, 1}, {2, 1}}),
                       triple({{1, 1}}, {{9, 1}}), 1),
              "pole-preimage"));
  // double pole upstairs needs depth 2, source only has depth 1
  CHECK(fails(pullback(sq, triple({{-1, 1}, {1, 1}}, {{-2, 1}, {2, 1}}),
                       triple({{1, 1}}, {{4, 2}}), 1),
              "pole-depth"));
  // constant maps carry no structure
  RationalMap c5 = RationalMap::of(QPoly::monomial(0, 5), QPoly::monomial(0, 1));
  CHECK(fails(pullback(c5, t_11, t_11, 1), "nonconstant"));
  // the fibre over 0 under 1/t sits at infinity
  RationalMap inv = RationalMap::of(QPoly::monomial(0, 1), QPoly::monomial(1, 1));
  CHECK(fails(pullback(inv, triple({{1, 1}}, {{-1, 1}}), triple({{1, 1}}, {{0, 1}}), 1),
              "pole-preimage"));
}

TEST_CASE("morphism calculus roundtrips") {
  MHSMObject h = build_mhsm(t_mult, 1);
  MHSMMorphism id = MHSMMorphism::identity(h);
  CHECK(dual_morphism(id).equal_maps(MHSMMorphism::identity(mhsm_dual(h))));
  auto inv = invert_morphism(id);
  REQUIRE(inv.has_value());
  CHECK(inv->equal_maps(id));
  MHSMMorphism back = twist_morphism(twist_morphism(id, 1), -1);
  CHECK(back.src == h);
  CHECK(back.equal_maps(id));
}

TEST_CASE("inputs touching infinity are moved into the chart") {
  Normalized n = normalize_triple(RawDivisor{{{0, 1}}, 1}, RawDivisor{{{1, 1}}, 0});
  CHECK(n.moved);
  CHECK(n.pivot == Rat(2));
  CHECK(n.triple == triple({{Rat(-1, 2), 1}, {0, 1}}, {{-1, 1}}));

  Normalized flat = normalize_triple(RawDivisor{{{0, 2}}, 0}, RawDivisor{{{1, 1}}, 0});
  CHECK_FALSE(flat.moved);
  CHECK(flat.triple == triple({{0, 2}}, {{1, 1}}));
}
