// The eleven criteria.  Each one draws its own generator from the shared
// seed so criteria can run alone and still see the same data; failures stop
// at the first offending check and carry its description.

#include "modhodge/suite.hpp"

#include <array>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "modhodge/fixtures.hpp"
#include "modhodge/laumon.hpp"
#include "modhodge/mhsm.hpp"

namespace modhodge {

namespace {

struct Tally {
  size_t checked = 0;
  bool ok = true;
  std::string first;

  void req(bool pass, const std::string& what) {
    ++checked;
    if (!pass && ok) {
      ok = false;
      first = what;
    }
  }
  void req(const Report& r, const std::string& what) {
    std::string ids;
    if (!r.ok())
      for (auto& id : r.failed_ids()) ids += (ids.empty() ? "" : ",") + id;
    req(r.ok(), what + (ids.empty() ? "" : " [" + ids + "]"));
  }
  void finish(SuiteCase& c) const {
    c.ok = ok;
    c.detail = ok ? std::to_string(checked) + " checks" : first;
  }
};

// a deterministic assortment across all three generators
std::vector<MHSMObject> assorted_fixtures(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<MHSMObject> out;
  for (int i = 0; i < 10; ++i) out.push_back(random_tate_fixture(rng, i % 2 == 1).valid);
  for (int i = 0; i < 6; ++i) out.push_back(random_mhsm1(rng));
  for (int i = 0; i < 4; ++i) out.push_back(random_box1_fixture(rng, i % 2 == 0));
  out.push_back(MHSMObject::from_mhs(MHS::tate(0)));
  out.push_back(MHSMObject::from_mhs(MHS::tate(1)));
  return out;
}

std::vector<MHSMObject> level_one_fixtures(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  std::vector<MHSMObject> out;
  for (int i = 0; i < 20; ++i) out.push_back(random_mhsm1(rng));
  return out;
}

SuiteCase c_axioms(std::uint64_t seed) {
  SuiteCase c{1, "axiom mutations"};
  Tally t;
  std::mt19937_64 rng(seed);
  const std::array<std::string, 4> ids{"a", "b", "c", "d"};
  for (int i = 0; i < 200 && t.ok; ++i) {
    TateFixture fx = random_tate_fixture(rng, i % 2 == 1);
    t.req(validate_mhsm(fx.valid), "fixture " + std::to_string(i));
    for (size_t m = 0; m < 4; ++m) {
      Report r = validate_mhsm(fx.broken[m]);
      t.req(!r.ok() && r.failed_ids() == std::set<std::string>{ids[m]},
            "fixture " + std::to_string(i) + " mutation " + ids[m] +
                " tripped [" + [&] {
                  std::string s;
                  for (auto& id : r.failed_ids()) s += (s.empty() ? "" : ",") + id;
                  return s;
                }() + "]");
    }
  }
  t.finish(c);
  return c;
}

SuiteCase c_abelian(std::uint64_t seed) {
  SuiteCase c{2, "abelian calculus"};
  Tally t;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < 20 && t.ok; ++s) {
    MHSMObject x = random_tate_fixture(rng, s % 4 == 1).valid;
    MHSMObject y = random_tate_fixture(rng, s % 4 == 2).valid;
    for (MHSMMorphism& f : sample_morphisms(rng, x, y, 5)) {
      std::string tag = "pair " + std::to_string(s);
      t.req(validate_mhsm_morphism(f), tag + " morphism");
      t.req(mhsm_is_strict(f), tag + " strictness");
      MhsmKerCoker kc = mhsm_ker_coker(f);
      t.req(validate_mhsm(kc.kernel), tag + " kernel");
      t.req(validate_mhsm(kc.cokernel), tag + " cokernel");
      t.req(validate_mhsm(kc.image), tag + " image");
      t.req(validate_mhsm(kc.coimage), tag + " coimage");
      t.req(validate_mhsm_morphism(kc.coim_to_im), tag + " coim-to-im");
      t.req(is_invertible(kc.coim_to_im), tag + " coim-to-im invertible");
    }
  }
  t.finish(c);
  return c;
}

SuiteCase c_double_dual(std::uint64_t seed) {
  SuiteCase c{3, "double dual"};
  Tally t;
  int i = 0;
  for (const MHSMObject& x : assorted_fixtures(seed)) {
    std::string tag = "fixture " + std::to_string(i++);
    MHSMMorphism ev = evaluation_morphism(x);
    t.req(ev.src == mhsm_free_part(x) && ev.dst == mhsm_dual(mhsm_dual(x)),
          tag + " evaluation endpoints");
    t.req(validate_mhsm_morphism(ev), tag + " evaluation");
    t.req(is_invertible(ev), tag + " evaluation invertible");
    t.req(r_dual_compatible(x), tag + " R commutes with duals");
  }
  t.finish(c);
  return c;
}

SuiteCase c_adjunction(std::uint64_t seed) {
  SuiteCase c{4, "adjunction triangles"};
  Tally t;
  int i = 0;
  for (const MHSMObject& x : assorted_fixtures(seed))
    t.req(adjunction_triangles(x), "fixture " + std::to_string(i++));
  t.finish(c);
  return c;
}

SuiteCase c_round_trips(std::uint64_t seed) {
  SuiteCase c{5, "level-one round trips"};
  Tally t;
  int i = 0;
  for (const MHSMObject& x : level_one_fixtures(seed)) {
    std::string tag = "fixture " + std::to_string(i++);
    KatoRussellObject k = mhsm1_to_kr(x);
    t.req(validate_kr(k), tag + " pair form");
    t.req(kr_to_mhsm1(k) == x, tag + " pair round trip");

    LaumonRoundTrip rt = laumon_round_trip(x);
    t.req(validate_mhsm(rt.back), tag + " group-form return");
    t.req(validate_mhsm_morphism(rt.iso), tag + " group-form iso");
    t.req(is_invertible(rt.iso) && rt.iso.src == rt.back && rt.iso.dst == x,
          tag + " group-form iso invertible");

    MHSMObject xa = pi_add(x);
    EHSObject e = ehs_from_mhsm(xa);
    t.req(validate_ehs(e), tag + " tower form");
    t.req(mhsm_from_ehs(e) == xa, tag + " tower round trip");
  }
  std::mt19937_64 rng(seed + 2);
  for (int j = 0; j < 6; ++j) {
    for (bool sigma : {true, false}) {
      MHSMObject x = random_box1_fixture(rng, sigma);
      std::string tag = "window fixture " + std::to_string(j);
      FHSObject f = fhs_from_mhsm(x, 1);
      t.req(validate_fhs(f), tag + " window form");
      t.req(mhsm_from_fhs(f) == x, tag + " window round trip");
      t.req(sigma_condition(f) == sigma && mhsm_sigma_condition(x, 1) == sigma,
            tag + " image condition");
    }
  }
  t.finish(c);
  return c;
}

SuiteCase c_cartier(std::uint64_t seed) {
  SuiteCase c{6, "cartier involution"};
  Tally t;
  int i = 0;
  for (const MHSMObject& x : level_one_fixtures(seed)) {
    std::string tag = "fixture " + std::to_string(i++);
    MHSMObject cd = cartier_dual(x);
    t.req(validate_mhsm(cd), tag + " dual validates");
    t.req(cartier_dual(cd) == mhsm_free_part(x), tag + " involution");
  }
  t.req(cartier_dual(MHSMObject::from_mhs(MHS::tate(0))) ==
            MHSMObject::from_mhs(MHS::tate(1)),
        "unit swap");
  t.finish(c);
  return c;
}

SuiteCase c_curve_census(std::uint64_t) {
  SuiteCase c{7, "curve census"};
  Tally t;
  Normalized n = normalize_triple(RawDivisor{{{0, 2}, {1, 1}}, 0}, RawDivisor{{}, 3});
  CurveSystem a = build_curve_system(n.triple);
  t.req(a.nh + a.na + a.ni == 4, "total dimension 4");
  t.req(a.nh == 1, "lattice rank 1");
  t.req(a.na == 1, "addition part 1");
  t.req(a.ni == 2, "infinity part 2");
  t.req(a.h1.filt_at(1).dim() == 2, "filtration dimension 2");

  CurveSystem b = build_curve_system(
      CurveTriple{P1Divisor::of({{0, 1}, {1, 1}}), P1Divisor::of({{2, 1}, {3, 1}})});
  t.req(b.nh == 2, "reduced lattice rank 2");
  t.req(b.h1.mhs.hodge_at(1).dim() == 1, "reduced F1 dimension 1");
  t.req(b.na == 0 && b.ni == 0, "reduced jets vanish");
  t.finish(c);
  return c;
}

SuiteCase c_quasi_iso(std::uint64_t seed) {
  SuiteCase c{8, "quasi-isomorphisms"};
  Tally t;
  int i = 0;
  for (const CurveTriple& tr : suite_triples(seed))
    t.req(quasi_iso_check(tr), "triple " + std::to_string(i++));
  t.finish(c);
  return c;
}

SuiteCase c_duality(std::uint64_t seed) {
  SuiteCase c{9, "curve duality"};
  Tally t;
  int i = 0;
  for (const CurveTriple& tr : suite_triples(seed)) {
    std::string tag = "triple " + std::to_string(i++);
    for (int n = 0; n <= 2; ++n)
      t.req(duality_check(tr, n).report, tag + " degree " + std::to_string(n));
    for (int k = 0; k <= 2; ++k)
      t.req(annihilator_check(tr, k), tag + " level " + std::to_string(k));
  }
  t.finish(c);
  return c;
}

SuiteCase c_jacobian(std::uint64_t seed) {
  SuiteCase c{10, "jacobian comparison"};
  Tally t;
  int i = 0;
  for (const CurveTriple& tr : suite_triples(seed)) {
    std::string tag = "triple " + std::to_string(i++);
    t.req(lm_compare(tr), tag + " census");
    t.req(jacobian_cartier_check(tr), tag + " cartier");
  }
  t.finish(c);
  return c;
}

SuiteCase c_vanishing(std::uint64_t seed) {
  SuiteCase c{11, "vanishing ranges"};
  Tally t;
  int i = 0;
  for (const CurveTriple& tr : suite_triples(seed)) {
    std::string tag = "triple " + std::to_string(i++);
    for (int n = 0; n <= 2; ++n)
      for (int k = -1; k <= 3; ++k) {
        if (n == 1 && k == 1) continue;
        ModulusSpaces ms = modulus_spaces(tr, n, k);
        t.req(ms.add_basis.empty() && ms.inf_basis.empty(),
              tag + " (" + std::to_string(n) + "," + std::to_string(k) + ")");
      }
  }
  t.finish(c);
  return c;
}

}  // namespace

std::vector<CurveTriple> suite_triples(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::array<Rat, 8> palette{Rat(-2), Rat(-1), Rat(-1, 2), Rat(0),
                                   Rat(1, 2), Rat(1),  Rat(2),    Rat(3)};
  std::uniform_int_distribution<int> npts(0, 3), mult(1, 4), coord(0, 7);
  std::vector<CurveTriple> out;
  while (out.size() < 10) {
    std::set<int> used;
    auto draw = [&](int n) {
      std::vector<std::pair<Rat, int>> pts;
      while (static_cast<int>(pts.size()) < n) {
        int c = coord(rng);
        if (used.insert(c).second) pts.emplace_back(palette[c], mult(rng));
      }
      return P1Divisor::of(std::move(pts));
    };
    P1Divisor y = draw(npts(rng)), z = draw(npts(rng));
    if (y.npoints() + z.npoints() == 0) continue;
    if (y.degree() + z.degree() > 16) continue;
    out.push_back(CurveTriple{y, z});
  }
  return out;
}

SuiteCase run_criterion(int number, std::uint64_t seed) {
  using Fn = SuiteCase (*)(std::uint64_t);
  static constexpr std::array<Fn, 11> fns{
      c_axioms,   c_abelian,    c_double_dual, c_adjunction, c_round_trips, c_cartier,
      c_curve_census, c_quasi_iso, c_duality,     c_jacobian,   c_vanishing};
  if (number < 1 || number > 11) throw std::invalid_argument("criterion number out of range");
  try {
    return fns[static_cast<size_t>(number - 1)](seed);
  } catch (const std::exception& e) {
    SuiteCase c = SuiteCase{number, "criterion " + std::to_string(number)};
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
    return c;
  }
}

SuiteResult run_suite(std::uint64_t seed) {
  SuiteResult out;
  for (int n = 1; n <= 11; ++n) out.cases.push_back(run_criterion(n, seed));
  return out;
}

std::string SuiteResult::str() const {
  std::ostringstream os;
  for (auto& c : cases)
    os << "criterion " << c.number << " [" << (c.ok ? "pass" : "FAIL") << "] " << c.name
       << " - " << c.detail << "\n";
  return os.str();
}

}  // namespace modhodge
