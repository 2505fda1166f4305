#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modhodge/fixtures.hpp"
#include "modhodge/laumon.hpp"

using namespace modhodge;

namespace {

MHSMObject tate_object(int m) { return MHSMObject::from_mhs(MHS::tate(m)); }

// the enrichment every bare structure carries: V^k = H_C/F^k with v = id
EHSObject trivial_enrichment(const MHS& h) {
  EHSObject e;
  e.h = h;
  auto hr = h.hodge_range();
  e.k_stab = hr.second;
  for (int k = hr.first; k < e.k_stab; ++k) {
    size_t dq = h.ambient() - h.hodge_at(k).dim();
    if (dq == 0) continue;
    e.dims[k] = dq;
    e.v[k] = KMatrix::identity(dq);
  }
  for (int k = hr.first + 1; k <= e.k_stab; ++k) {
    KMatrix t = quotient(h.hodge_at(k - 1)).proj * quotient(h.hodge_at(k)).sect;
    if (t.rows() > 0 && t.cols() > 0 && !t.is_zero()) e.tr[k] = t;
  }
  return e;
}

}  // namespace

TEST_CASE("level-one membership") {
  CHECK(is_mhsm1(tate_object(0)));
  CHECK(is_mhsm1(tate_object(1)));
  CHECK_FALSE(is_mhsm1(tate_object(-1)));

  std::mt19937_64 rng(31);
  for (int it = 0; it < 8; ++it) {
    MHSMObject x = random_mhsm1(rng);
    CHECK(validate_mhsm(x).ok());
    CHECK(is_mhsm1(x));
  }
}

TEST_CASE("pair form round trips on the nose") {
  std::mt19937_64 rng(32);
  for (int it = 0; it < 10; ++it) {
    MHSMObject x = random_mhsm1(rng);
    KatoRussellObject k = mhsm1_to_kr(x);
    CHECK(validate_kr(k).ok());
    MHSMObject back = kr_to_mhsm1(k);
    CHECK(back == x);
    CHECK(mhsm1_to_kr(back) == k);
  }

  // the whole space of Z(0) is pure lattice, everything else trivial
  KatoRussellObject k0 = mhsm1_to_kr(tate_object(0));
  CHECK(k0.dim_v == 1);
  CHECK(k0.wm1_v.dim() == 0);
  CHECK(k0.f0_v == Subspace::full(1));
  CHECK(k0.split_add.dim() == 0);
  CHECK(k0.split_inf.dim() == 0);

  // an additive line sits in the bottom weight with no Hodge part
  VecSeq line;
  line.dims[0] = 1;
  KatoRussellObject ka = mhsm1_to_kr(j_add(line));
  CHECK(ka.dim_v == 1);
  CHECK(ka.wm2_v == Subspace::full(1));
  CHECK(ka.f0_v.dim() == 0);
  CHECK(validate_kr(ka).ok());
}

TEST_CASE("pair form validation pins the axioms") {
  std::mt19937_64 rng(33);
  MHSMObject x = random_mhsm1(rng);
  while (x.add.dim(0) == 0 || x.inf.dim(0) == 0) x = random_mhsm1(rng);
  KatoRussellObject k = mhsm1_to_kr(x);
  CHECK(validate_kr(k).ok());

  KatoRussellObject bad = k;
  bad.b.at(0, 0) = bad.b.at(0, 0) + Scalar(1);
  CHECK(validate_kr(bad).failed_ids().count("ba") == 1);

  bad = k;
  bad.split_inf = bad.split_add;
  CHECK_FALSE(validate_kr(bad).ok());

  bad = k;
  bad.f0_v = bad.f0_v.sum(bad.wm2_v);
  CHECK(validate_kr(bad).failed_ids().count("w2-hodge") == 1);
}

TEST_CASE("group form of the Tate objects") {
  LaumonMotive m0 = mhsm1_to_laumon(tate_object(0));
  CHECK(m0.r == 1);
  CHECK(m0.s == 0);
  CHECK(m0.lieg_dim == 0);
  CHECK(m0.lambda.cols() == 0);

  LaumonMotive m1 = mhsm1_to_laumon(tate_object(1));
  CHECK(m1.r == 0);
  CHECK(m1.s == 0);
  CHECK(m1.lieg_dim == 1);
  CHECK(m1.lambda.rows() == 1);
  CHECK(m1.lambda.cols() == 1);
  CHECK(m1.lambda.at(0, 0) == Scalar::tau());
  CHECK(m1.lambda_w2 == KMatrix::identity(1));
  CHECK(m1.lieg_add.dim() == 0);

  // hand-built presentations of [Z -> 0] and [0 -> G_m]
  LaumonMotive trivial;
  trivial.r = 1;
  trivial.lieg_add = Subspace::zero(0);
  trivial.lifts = KMatrix(0, 1);
  CHECK(laumon_to_mhsm1(trivial) == tate_object(0));

  LaumonMotive gm;
  gm.lieg_dim = 1;
  gm.lieg_add = Subspace::zero(1);
  gm.lambda = KMatrix(1, 1);
  gm.lambda.at(0, 0) = Scalar::tau();
  gm.lambda_w2 = KMatrix::identity(1);
  gm.lifts = KMatrix(1, 0);
  gm.lie_u_inf = KMatrix(1, 0);
  MHS t1 = MHS::tate(1);
  t1.tate_scale = 0;  // the reconstruction fixes the plain lattice marker
  CHECK(laumon_to_mhsm1(gm) == MHSMObject::from_mhs(t1));
}

TEST_CASE("group form round trip carries an explicit isomorphism") {
  std::mt19937_64 rng(34);
  for (int it = 0; it < 20; ++it) {
    MHSMObject x = random_mhsm1(rng);
    LaumonRoundTrip rt = laumon_round_trip(x);
    CHECK(validate_mhsm(rt.back).ok());
    CHECK(is_mhsm1(rt.back));
    Report rep = validate_mhsm_morphism(rt.iso);
    CHECK(rep.ok());
    CHECK(is_invertible(rt.iso));

    // dimension bookkeeping of the presentation, recomputed directly
    size_t n = x.mhs.ambient();
    size_t na = static_cast<size_t>(x.add.dim(0)), ni = static_cast<size_t>(x.inf.dim(0));
    size_t amb = n + na + ni;
    CHECK(rt.motive.lambda.cols() == x.mhs.weight_at(-1).dim());
    CHECK(rt.motive.r + rt.motive.lambda.cols() == n);
    CHECK(rt.motive.s == ni);
    KMatrix units(amb, na);
    for (size_t j = 0; j < na; ++j) units.at(n + j, j) = Scalar(1);
    Subspace m = image(x.incl_c(0), x.mhs.weight_at(-1)).sum(Subspace::from_cols(amb, units));
    CHECK(rt.motive.lieg_dim ==
          x.mhs.weight_at(-1).dim() + na - x.filt_at(0).intersect(m).dim());
  }
}

TEST_CASE("cartier duality swaps the two vector parts") {
  CHECK(cartier_dual(tate_object(0)) == tate_object(1));
  CHECK(cartier_dual(tate_object(1)) == tate_object(0));

  std::mt19937_64 rng(35);
  for (int it = 0; it < 8; ++it) {
    MHSMObject x = random_mhsm1(rng);
    MHSMObject cd = cartier_dual(x);
    CHECK(validate_mhsm(cd).ok());
    CHECK(cd.add.dim(0) == x.inf.dim(0));
    CHECK(cd.inf.dim(0) == x.add.dim(0));
    CHECK(cartier_dual(cd) == x);  // free fixtures: the free part is x itself
  }
}

TEST_CASE("tower form round trips on the nose") {
  std::mt19937_64 rng(36);
  for (int it = 0; it < 6; ++it) {
    MHSMObject xa = pi_add(random_mhsm1(rng));
    EHSObject e = ehs_from_mhsm(xa);
    CHECK(validate_ehs(e).ok());
    MHSMObject back = mhsm_from_ehs(e);
    CHECK(back == xa);
    CHECK(ehs_from_mhsm(back) == e);
  }
  for (int it = 0; it < 6; ++it) {
    MHSMObject xa = pi_add(random_tate_fixture(rng, false).valid);
    EHSObject e = ehs_from_mhsm(xa);
    CHECK(validate_ehs(e).ok());
    MHSMObject back = mhsm_from_ehs(e);
    CHECK(back == xa);
    CHECK(ehs_from_mhsm(back) == e);
  }

  // the trivial enrichment reconstructs the bare structure
  MHS h = random_tate_fixture(rng, false).valid.mhs;
  EHSObject e = trivial_enrichment(h);
  CHECK(validate_ehs(e).ok());
  CHECK(mhsm_from_ehs(e) == MHSMObject::from_mhs(h));
  CHECK(ehs_from_mhsm(MHSMObject::from_mhs(h)) == e);
}

TEST_CASE("window form round trips and the sigma condition") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 6; ++it) {
    for (bool sigma : {true, false}) {
      MHSMObject x = random_box1_fixture(rng, sigma);
      CHECK(validate_mhsm(x).ok());
      CHECK(is_mhsm_box(x, 1));
      FHSObject f = fhs_from_mhsm(x, 1);
      CHECK(validate_fhs(f).ok());
      MHSMObject back = mhsm_from_fhs(f);
      CHECK(back == x);
      CHECK(fhs_from_mhsm(back, 1) == f);

      // both routes to the image condition agree
      CHECK(sigma_condition(f) == sigma);
      CHECK(mhsm_sigma_condition(x, 1) == sigma);
    }
  }

  // zero u always satisfies the image condition
  MHS t;
  t.lattice = FgGroup::free(1);
  t.weight.emplace(2, Subspace::full(1));
  t.hodge.emplace(0, Subspace::full(1));
  t.hodge.emplace(1, Subspace::full(1));
  t.polarizable = true;
  t.normalize();
  FHSObject f;
  f.e = trivial_enrichment(t);
  f.n = 1;
  f.u_dim = 1;
  f.u = KMatrix(f.e.dim_v(1), 1);
  CHECK(validate_fhs(f).ok());
  CHECK(sigma_condition(f));
  MHSMObject x = mhsm_from_fhs(f);
  CHECK(validate_mhsm(x).ok());
  CHECK(x.inf.dim(1) == 1);
  CHECK(mhsm_sigma_condition(x, 1));
  CHECK(fhs_from_mhsm(x, 1) == f);
}
