#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modhodge/mhs.hpp"

using namespace modhodge;

namespace {

// direct sum with diagonal filtrations
MHS direct_sum(const std::vector<MHS>& parts) {
  MHS h;
  size_t n = 0;
  for (auto& p : parts) n += p.ambient();
  h.lattice = FgGroup::free(n);
  h.polarizable = true;
  int wlo = 0, whi = 0, flo = 0, fhi = 0;
  for (auto& p : parts) {
    auto [a, b] = p.weight_range();
    auto [c, d] = p.hodge_range();
    wlo = std::min(wlo, a), whi = std::max(whi, b);
    flo = std::min(flo, c), fhi = std::max(fhi, d);
  }
  for (int m = wlo; m <= whi; ++m) {
    KMatrix cols(n, 0);
    size_t off = 0;
    for (auto& p : parts) {
      KMatrix b = p.weight_at(m).basis();
      KMatrix lift(n, b.cols());
      for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) lift.at(off + i, j) = b.at(i, j);
      cols = cols.hstack(lift);
      off += p.ambient();
    }
    h.weight.emplace(m, Subspace::from_cols(n, cols));
  }
  for (int p = flo; p <= fhi; ++p) {
    KMatrix cols(n, 0);
    size_t off = 0;
    for (auto& q : parts) {
      KMatrix b = q.hodge_at(p).basis();
      KMatrix lift(n, b.cols());
      for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) lift.at(off + i, j) = b.at(i, j);
      cols = cols.hstack(lift);
      off += q.ambient();
    }
    h.hodge.emplace(p, Subspace::from_cols(n, cols));
  }
  h.normalize();
  return h;
}

}  // namespace

TEST_CASE("validate: Tate objects") {
  CHECK(validate_mhs(MHS::tate(0)).ok());
  CHECK(validate_mhs(MHS::tate(-1)).ok());
  CHECK(validate_mhs(MHS::tate(3)).ok());

  // Z(0) but with F^1 = everything: no symmetric non-negative h table exists
  MHS bad = MHS::tate(0);
  bad.hodge.clear();
  bad.hodge.emplace(1, Subspace::full(1));
  Report r = validate_mhs(bad);
  CHECK_FALSE(r.ok());
  CHECK(r.failed_ids().count("opposed-numeric") == 1);
}

TEST_CASE("validate: weight filtration shape") {
  MHS h = MHS::tate(0);
  h.weight.clear();
  h.weight.emplace(0, Subspace::zero(1));  // never reaches the full space
  Report r = validate_mhs(h);
  CHECK_FALSE(r.ok());
  CHECK(r.failed_ids().count("weight-exhaustive") == 1);

  MHS g = MHS::tate(0);
  g.weight.emplace(-5, Subspace::full(1));  // decreasing jump: not monotone
  g.weight.emplace(-4, Subspace::zero(1));
  CHECK_FALSE(validate_mhs(g).ok());
}

TEST_CASE("dual") {
  CHECK(mhs_dual(MHS::tate(0)) == MHS::tate(0));
  CHECK(mhs_dual(MHS::tate(-1)) == MHS::tate(1));
  CHECK(mhs_dual(MHS::tate(2)) == MHS::tate(-2));

  // torsion is killed: oracle is z_dual on the lattice
  MHS mixed = MHS::tate(0);
  mixed.lattice = FgGroup{1, {Int(5)}};
  MHS d = mhs_dual(mixed);
  CHECK(d.lattice == z_dual(mixed.lattice));
  CHECK(d.lattice == FgGroup::free(1));
  CHECK(d == MHS::tate(0));

  // involution up to free part
  MHS h = direct_sum({MHS::tate(0), MHS::tate(-1), MHS::tate(1)});
  h.lattice = FgGroup{3, {Int(4)}};
  CHECK(mhs_dual(mhs_dual(h)) == mhs_free_part(h));
  CHECK(validate_mhs(mhs_dual(h)).ok());
}

TEST_CASE("twist") {
  CHECK(mhs_twist(MHS::tate(0), 1) == MHS::tate(1));
  CHECK(mhs_twist(MHS::tate(1), -1) == MHS::tate(0));
  MHS h = direct_sum({MHS::tate(0), MHS::tate(-1)});
  CHECK(mhs_twist(mhs_twist(h, 2), -2) == h);

  // h^{p,q}(twist m) = h^{p+m,q+m}
  auto base = hodge_numbers(h);
  auto tw = hodge_numbers(mhs_twist(h, 1));
  for (auto& [pq, v] : tw) CHECK(base.at({pq.first + 1, pq.second + 1}) == v);

  // dual/twist compatibility
  CHECK(mhs_twist(mhs_dual(h), 3) == mhs_dual(mhs_twist(h, -3)));
}

TEST_CASE("hodge numbers and MHS_1 membership") {
  auto t0 = hodge_numbers(MHS::tate(0));
  CHECK(t0.size() == 1);
  CHECK(t0.at({0, 0}) == 1);
  CHECK(is_mhs1(MHS::tate(0)));

  auto tm1 = hodge_numbers(MHS::tate(-1));
  CHECK(tm1.at({1, 1}) == 1);
  CHECK_FALSE(is_mhs1(MHS::tate(-1)));

  CHECK(is_mhs1(MHS::tate(1)));
  CHECK(is_mhs1(direct_sum({MHS::tate(0), MHS::tate(1)})));

  MHS unpol = MHS::tate(0);
  unpol.polarizable = false;
  CHECK_FALSE(is_mhs1(unpol));

  MHS torsion = MHS::tate(0);
  torsion.lattice = FgGroup{1, {Int(2)}};
  CHECK_FALSE(is_mhs1(torsion));

  // mixed type (0,0) + (-1,-1): the level-one shape of a twisted curve H^1
  MHS curveish = direct_sum({MHS::tate(0), MHS::tate(1)});
  auto table = hodge_numbers(curveish);
  CHECK(table.at({0, 0}) == 1);
  CHECK(table.at({-1, -1}) == 1);
  CHECK(is_mhs1(curveish));
}

TEST_CASE("morphisms: identity and times-two") {
  MHS z = MHS::tate(0);
  MHSMap idm{z, z, GroupHom::identity(z.lattice)};
  CHECK(validate_mhs_map(idm).ok());
  MhsKerCoker kc = mhs_ker_coker(idm);
  CHECK(kc.kernel.ambient() == 0);
  CHECK(kc.kernel.lattice == FgGroup::free(0));
  CHECK(kc.cokernel.lattice == FgGroup::free(0));
  CHECK(kc.image == z);
  CHECK(mhs_is_strict(idm));

  MHSMap two{z, z, GroupHom{z.lattice, z.lattice, ZMatrix(1, 1)}};
  two.fz.m.at(0, 0) = 2;
  MhsKerCoker kc2 = mhs_ker_coker(two);
  CHECK(kc2.kernel.lattice == FgGroup::free(0));
  CHECK(kc2.cokernel.lattice == group_from_invariants(0, {2}));
  CHECK(kc2.cokernel.ambient() == 0);  // zero-dimensional filtration data
  CHECK(mhs_is_strict(two));
}

TEST_CASE("morphisms: extension quotient is strict") {
  // extension of Z(-1) by Z(0): W_0 = e1, W_2 = all, F^0 = all, F^1 = (tau, 1)
  MHS e;
  e.lattice = FgGroup::free(2);
  e.polarizable = true;
  e.weight.emplace(0, Subspace::from_cols(2, KMatrix::from_rows({{Scalar(1)}, {Scalar(0)}})));
  e.weight.emplace(2, Subspace::full(2));
  e.hodge.emplace(0, Subspace::full(2));
  e.hodge.emplace(
      1, Subspace::from_cols(2, KMatrix::from_rows({{Scalar::tau()}, {Scalar(1)}})));
  REQUIRE(validate_mhs(e).ok());

  MHS q = MHS::tate(-1);
  GroupHom proj{e.lattice, q.lattice, ZMatrix(1, 2)};
  proj.m.at(0, 1) = 1;
  MHSMap f{e, q, proj};
  REQUIRE(validate_mhs_map(f).ok());
  CHECK(mhs_is_strict(f));
  MhsKerCoker kc = mhs_ker_coker(f);
  CHECK(kc.kernel == MHS::tate(0));
  CHECK(kc.image == q);
  CHECK(kc.cokernel.ambient() == 0);
  CHECK(kc.kernel.lattice.free_rank + kc.image.lattice.free_rank == 2);
}

TEST_CASE("invalid morphism rejected") {
  MHSMap f{MHS::tate(0), MHS::tate(-1), GroupHom::identity(FgGroup::free(1))};
  Report r = validate_mhs_map(f);
  CHECK_FALSE(r.ok());
  CHECK(r.failed_ids().count("weight-preserved") == 1);
  CHECK_THROWS_AS((void)mhs_ker_coker(f), std::invalid_argument);
}

TEST_CASE("validation is degradation-aware with lambda entries") {
  // extension with a lambda coefficient in F^1: numerically fine, full check
  // impossible without conjugating the symbol
  MHS h;
  h.lattice = FgGroup::free(2);
  h.polarizable = true;
  h.weight.emplace(0, Subspace::from_cols(2, KMatrix::from_rows({{Scalar(1)}, {Scalar(0)}})));
  h.weight.emplace(2, Subspace::full(2));
  h.hodge.emplace(0, Subspace::full(2));
  h.hodge.emplace(1, Subspace::from_cols(2, KMatrix::from_rows(
                         {{Scalar::log_rational(Rat(7, 2))}, {Scalar(1)}})));
  Report r = validate_mhs(h);
  CHECK(r.ok());
  bool noted = false;
  for (auto& n : r.notes) noted = noted || n.find("numerically") != std::string::npos;
  CHECK(noted);
}
