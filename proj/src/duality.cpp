// Serre-style duality between the level-k structure of (Y, Z) and the
// level-(2-k) structure of the swapped pair (Z, Y).  The cup product of two
// Cech 1-cochains lands on the overlap annulus, where the t^-1 coefficient
// is the trace; the shapes at complementary levels are arranged so that the
// bundle factors cancel and stored products are honest products.  Rescaling
// the lattice-block pairing by the period matrices on both sides yields an
// integral unimodular matrix, which together with tau-normalised jet blocks
// assembles the duality isomorphism.  The same trace underlies the
// annihilator identity for global forms and the Cartier self-duality of the
// Jacobian lane.

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "modhodge/curve.hpp"

namespace modhodge {

namespace {

int pick_window(const CurveTriple& t, int window) {
  int w = window < 0 ? default_window(t) : window;
  if (w < default_window(t)) throw std::invalid_argument("truncation below the safe bound");
  return w;
}

Laurent lprod(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (auto& [da, ca] : a)
    for (auto& [db, cb] : b) out[da + db] += ca * cb;
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// the slot-by-slot products below are honest exactly when the paired bundle
// factors cancel into a bare 1-form
void check_cancel(const BundleSpec& a, const BundleSpec& b) {
  std::map<Rat, int> sum;
  for (auto& [p, d] : a.div) sum[p] += d;
  for (auto& [p, d] : b.div) sum[p] += d;
  for (auto& [p, d] : sum)
    if (d != 0) throw std::logic_error("pairing factors do not cancel");
  if (a.phi + b.phi != 1) throw std::logic_error("pairing factors do not cancel");
}

Rat trace11(const CechModel& ma, const QVec& x, const CechModel& mb, const QVec& y) {
  Laurent pos = lprod(CechModel::take(x, ma.s1_overlap()), CechModel::take(y, mb.s1_chart1()));
  Laurent neg = lprod(CechModel::take(x, ma.s1_chart0()), CechModel::take(y, mb.s1_overlap()));
  return laurent_coeff(pos, -1) - laurent_coeff(neg, -1);
}

QMat pair_block(const CechModel& ma, const QMat& xs, const CechModel& mb, const QMat& ys) {
  QMat p(xs.cols(), ys.cols());
  for (size_t i = 0; i < xs.cols(); ++i) {
    QVec x = xs.col_vec(i);
    for (size_t j = 0; j < ys.cols(); ++j) p.at(i, j) = trace11(ma, x, mb, ys.col_vec(j));
  }
  return p;
}

// classes of the global 1-forms of the model: identical monomial in both
// chart slots, empty overlap
QMat form_cols(const CechModel& m) {
  int top = m.l1.chart1_top();
  QMat f(m.c1_dim(), top < 0 ? 0 : static_cast<size_t>(top) + 1);
  for (int i = 0; i <= top; ++i) {
    QVec v(m.c1_dim());
    Laurent mono{{i, Rat(1)}};
    CechModel::put(v, m.s1_chart0(), mono);
    CechModel::put(v, m.s1_chart1(), mono);
    for (size_t r = 0; r < v.size(); ++r) f.at(r, static_cast<size_t>(i)) = v[r];
  }
  assert((m.d1 * f).is_zero());
  return f;
}

size_t span_above_boundaries(const CechCohomology& c, const QMat& cols) {
  return qrank(c.bnd1.hstack(cols)) - qrank(c.bnd1);
}

P1Divisor excess(const P1Divisor& d) {
  std::vector<std::pair<Rat, int>> pts;
  for (auto& [p, m] : d.pts)
    if (m > 1) pts.emplace_back(p, m - 1);
  return P1Divisor::of(pts);
}

Rat free_point(const CurveTriple& t) {
  Rat best(0);
  for (auto& [p, m] : t.y.pts)
    if (p >= best) best = p + 1;
  for (auto& [p, m] : t.z.pts)
    if (p >= best) best = p + 1;
  return best;
}

QPoly poly_of(const Laurent& l) {
  QPoly p;
  for (auto& [d, c] : l) {
    assert(d >= 0);
    p = p + QPoly::monomial(static_cast<size_t>(d), c);
  }
  return p;
}

std::string dim2(size_t a, size_t b) { return std::to_string(a) + " vs " + std::to_string(b); }

}  // namespace

PairingResult duality_pairing(const CurveTriple& t, int n, int k, int window) {
  if (n < 0 || n > 2) throw std::invalid_argument("pairing degree out of range");
  CurveTriple sw = t.swapped();
  CechModel ml(omega_complex(t, k), pick_window(t, window));
  CechModel mr(omega_complex(sw, 2 - k), pick_window(sw, window));
  check_cancel(ml.l0, mr.l1);
  check_cancel(ml.l1, mr.l0);
  CechCohomology cl = cech_cohomology(ml), cr = cech_cohomology(mr);
  PairingResult out;
  out.dim_left = cl.dim[n];
  out.dim_right = cr.dim[2 - n];
  out.p = QMat(out.dim_left, out.dim_right);
  for (size_t i = 0; i < out.dim_left; ++i)
    for (size_t j = 0; j < out.dim_right; ++j) {
      if (n == 1) {
        out.p.at(i, j) = trace11(ml, cl.basis[1].col_vec(i), mr, cr.basis[1].col_vec(j));
      } else if (n == 0) {
        Laurent pr = lprod(CechModel::take(cl.basis[0].col_vec(i), ml.s0_chart0()),
                           CechModel::take(cr.basis[2].col_vec(j), mr.s2_overlap()));
        out.p.at(i, j) = laurent_coeff(pr, -1);
      } else {
        Laurent pr = lprod(CechModel::take(cl.basis[2].col_vec(i), ml.s2_overlap()),
                           CechModel::take(cr.basis[0].col_vec(j), mr.s0_chart1()));
        out.p.at(i, j) = laurent_coeff(pr, -1);
      }
    }
  return out;
}

Report annihilator_check(const CurveTriple& t, int k, int window) {
  CurveTriple sw = t.swapped();
  CechModel ml(omega_complex(t, k), pick_window(t, window));
  CechModel mr(omega_complex(sw, 2 - k), pick_window(sw, window));
  check_cancel(ml.l0, mr.l1);
  check_cancel(ml.l1, mr.l0);
  CechCohomology cl = cech_cohomology(ml), cr = cech_cohomology(mr);
  QMat fl = form_cols(ml), fr = form_cols(mr);
  size_t dl = span_above_boundaries(cl, fl), dr = span_above_boundaries(cr, fr);

  Report rep;
  rep.add("dims", cl.dim[1] == cr.dim[1] && dl + dr == cl.dim[1],
          "form spans " + std::to_string(dl) + "+" + std::to_string(dr) + " against " +
              std::to_string(cl.dim[1]),
          k);
  QMat p = pair_block(ml, cl.basis[1], mr, cr.basis[1]);
  rep.add("pairing", p.rows() == p.cols() && qinverse(p).has_value(),
          "cohomology pairing " + dim2(p.rows(), p.cols()), k);
  rep.add("annihilator", pair_block(ml, fl, mr, fr).is_zero(),
          "forms against complementary forms", k);
  return rep;
}

DualityCertificate duality_check(const CurveTriple& t, int n) {
  if (n < 0 || n > 2) throw std::invalid_argument("duality degree out of range");
  CurveTriple sw = t.swapped();
  DualityCertificate cert;
  Report& rep = cert.report;

  if (n == 1) {
    CurveSystem s1 = build_curve_system(t);
    CurveSystem s2 = build_curve_system(sw);
    const CechModel& m1 = *s1.model;
    const CechModel& m2 = *s2.model;
    check_cancel(m1.l0, m2.l1);
    check_cancel(m1.l1, m2.l0);

    bool off = pair_block(m1, s1.phi_c, m2, s2.phi_add).is_zero() &&
               pair_block(m1, s1.phi_c, m2, s2.phi_inf).is_zero() &&
               pair_block(m1, s1.phi_add, m2, s2.phi_c).is_zero() &&
               pair_block(m1, s1.phi_inf, m2, s2.phi_c).is_zero() &&
               pair_block(m1, s1.phi_add, m2, s2.phi_add).is_zero() &&
               pair_block(m1, s1.phi_inf, m2, s2.phi_inf).is_zero();
    rep.add("blocks", off, "families pair only across the duality diagonal");

    QMat pcc = pair_block(m1, s1.phi_c, m2, s2.phi_c);
    auto p1i = inverse(s1.periods);
    auto p2i = inverse(s2.periods);
    assert(p1i && p2i);
    KMatrix bk = (p1i->transpose() * to_kmatrix(pcc) * *p2i).scale(Scalar::tau());
    cert.b_lattice = bk;
    auto bz = ZMatrix::from_k(bk);
    auto bki = inverse(bk);
    bool unimod = bz.has_value() && bki.has_value() && ZMatrix::from_k(*bki).has_value();
    rep.add("lattice", unimod, "integral pairing matrix with integral inverse");

    MHSMObject src = mhsm_twist(build_mhsm(sw, 1), 1);
    MHSMObject dst = mhsm_dual(build_mhsm(t, 1));
    MHSMMorphism f;
    f.src = src;
    f.dst = dst;
    f.fz = GroupHom{src.mhs.lattice, dst.mhs.lattice,
                    bz ? *bz : ZMatrix(s1.nh, s2.nh)};
    if (s1.ni > 0)
      f.fadd[0] = to_kmatrix(pair_block(m1, s1.phi_inf, m2, s2.phi_add)).scale(Scalar::tau());
    if (s1.na > 0)
      f.finf[0] = to_kmatrix(pair_block(m1, s1.phi_add, m2, s2.phi_inf)).scale(Scalar::tau());
    rep.merge(validate_mhsm_morphism(f), "morphism-");
    rep.add("invertible", is_invertible(f), "duality map inverts levelwise");
    cert.iso = f;
    return cert;
  }

  // outer degrees: at most one class on each side, normalised by the value
  // of the constant section and by the fundamental-cycle period
  bool live = n == 0 ? t.y.pts.empty() : t.z.pts.empty();
  MHSMObject src = mhsm_twist(build_mhsm(sw, 2 - n), 1);
  MHSMObject dst = mhsm_dual(build_mhsm(t, n));
  if (!live) {
    rep.add("dims", src.mhs.ambient() == 0 && dst.mhs.ambient() == 0, "both sides vanish");
    MHSMMorphism f = MHSMMorphism::zero(src, dst);
    rep.merge(validate_mhsm_morphism(f), "morphism-");
    rep.add("invertible", is_invertible(f), "zero map between zero objects");
    cert.iso = f;
    cert.b_lattice = KMatrix(0, 0);
    return cert;
  }

  CechModel ml(omega_complex(t, n == 0 ? 0 : 2), pick_window(t, -1));
  CechModel mr(omega_complex(sw, 2 - n), pick_window(sw, -1));
  check_cancel(ml.l0, mr.l1);
  check_cancel(ml.l1, mr.l0);
  CechCohomology cl = cech_cohomology(ml), cr = cech_cohomology(mr);
  size_t dleft = n == 0 ? cl.dim[0] : cl.dim[2];
  size_t dright = n == 0 ? cr.dim[2] : cr.dim[0];
  rep.add("dims", dleft == 1 && dright == 1, dim2(dleft, dright));

  Rat c, v, res;
  Rat pt = free_point(t);
  if (n == 0) {
    QVec x = cl.basis[0].col_vec(0), xi = cr.basis[2].col_vec(0);
    QPoly gz = QPoly::from_roots(excess(t.z).pts);
    c = laurent_coeff(
        lprod(CechModel::take(x, ml.s0_chart0()), CechModel::take(xi, mr.s2_overlap())), -1);
    v = poly_of(CechModel::take(x, ml.s0_chart0())).eval(pt) / gz.eval(pt);
    res = laurent_coeff(lprod(CechModel::take(xi, mr.s2_overlap()), laurent_of_poly(gz)), -1);
  } else {
    QVec xi = cl.basis[2].col_vec(0), x = cr.basis[0].col_vec(0);
    QPoly gy = QPoly::from_roots(excess(t.y).pts);
    c = laurent_coeff(
        lprod(CechModel::take(xi, ml.s2_overlap()), CechModel::take(x, mr.s0_chart1())), -1);
    v = poly_of(CechModel::take(x, mr.s0_chart0())).eval(pt) / gy.eval(pt);
    res = laurent_coeff(lprod(CechModel::take(xi, ml.s2_overlap()), laurent_of_poly(gy)), -1);
  }
  rep.add("pairing", c != 0 && v != 0 && res != 0, "trace against the constant class");

  KMatrix bk(1, 1);
  Rat b = (c != 0 && v != 0 && res != 0) ? c / (v * res) : Rat(0);
  bk.at(0, 0) = Scalar(b);
  cert.b_lattice = bk;
  auto bz = ZMatrix::from_k(bk);
  rep.add("lattice", bz.has_value() && (b == 1 || b == -1),
          "normalised outer pairing " + b.get_str());

  MHSMMorphism f;
  f.src = src;
  f.dst = dst;
  f.fz = GroupHom{src.mhs.lattice, dst.mhs.lattice, bz ? *bz : ZMatrix(1, 1)};
  rep.merge(validate_mhsm_morphism(f), "morphism-");
  rep.add("invertible", is_invertible(f), "duality map inverts levelwise");
  cert.iso = f;
  return cert;
}

LaumonMotive jacobian(const CurveTriple& t) {
  return mhsm1_to_laumon(mhsm_twist(build_mhsm(t, 1), 1));
}

Report lm_compare(const CurveTriple& t) {
  LaumonMotive l = jacobian(t);
  size_t a = t.y.npoints(), b = t.z.npoints();
  size_t dy = static_cast<size_t>(t.y.degree()), dz = static_cast<size_t>(t.z.degree());
  Report rep;
  rep.add("etale-rank", l.r == (b > 0 ? b - 1 : 0), dim2(l.r, b > 0 ? b - 1 : 0));
  rep.add("inf-rank", l.s == dz - b, dim2(l.s, dz - b));
  rep.add("lie-dim", l.lieg_dim == (dy > 0 ? dy - 1 : 0), dim2(l.lieg_dim, dy > 0 ? dy - 1 : 0));
  rep.add("lie-add", l.lieg_add.dim() == dy - a, dim2(l.lieg_add.dim(), dy - a));
  rep.add("torus-rank", l.lambda_w2.cols() == (a > 0 ? a - 1 : 0),
          dim2(l.lambda_w2.cols(), a > 0 ? a - 1 : 0));
  return rep;
}

Report jacobian_cartier_check(const CurveTriple& t) {
  Report rep;
  MHSMObject h = build_mhsm(t, 1);
  rep.add("cartier-involution", cartier_dual(mhsm_twist(h, 1)) == mhsm_dual(h),
          "group-form dual equals the structure-form dual");
  rep.merge(duality_check(t, 1).report, "pairing-");
  return rep;
}

MHSMMorphism dual_morphism(const MHSMMorphism& f) {
  MHSMMorphism g;
  g.src = mhsm_dual(f.dst);
  g.dst = mhsm_dual(f.src);
  g.fz = GroupHom{g.src.mhs.lattice, g.dst.mhs.lattice, f.fz.m.transpose()};
  for (auto& [k, m] : f.finf) g.fadd[1 - k] = m.transpose();
  for (auto& [k, m] : f.fadd) g.finf[1 - k] = m.transpose();
  return g;
}

MHSMMorphism twist_morphism(const MHSMMorphism& f, int m) {
  MHSMMorphism g;
  g.src = mhsm_twist(f.src, m);
  g.dst = mhsm_twist(f.dst, m);
  g.fz = f.fz;
  for (auto& [k, b] : f.fadd) g.fadd[k - m] = b;
  for (auto& [k, b] : f.finf) g.finf[k - m] = b;
  return g;
}

std::optional<MHSMMorphism> invert_morphism(const MHSMMorphism& f) {
  auto fci = inverse(f.fc());
  if (!fci) return std::nullopt;
  auto zi = ZMatrix::from_k(*fci);
  if (!zi) return std::nullopt;
  MHSMMorphism g;
  g.src = f.dst;
  g.dst = f.src;
  g.fz = GroupHom{f.dst.mhs.lattice, f.src.mhs.lattice, *zi};
  auto invert_levels = [](const VecSeq& a, const VecSeq& b,
                          const std::function<KMatrix(int)>& at,
                          std::map<int, KMatrix>& out) {
    std::set<int> keys;
    for (auto& kv : a.dims) keys.insert(kv.first);
    for (auto& kv : b.dims) keys.insert(kv.first);
    for (int k : keys) {
      if (a.dim(k) != b.dim(k)) return false;
      if (a.dim(k) == 0) continue;
      auto inv = inverse(at(k));
      if (!inv) return false;
      out[k] = *inv;
    }
    return true;
  };
  if (!invert_levels(f.src.add, f.dst.add, [&](int k) { return f.fadd_at(k); }, g.fadd))
    return std::nullopt;
  if (!invert_levels(f.src.inf, f.dst.inf, [&](int k) { return f.finf_at(k); }, g.finf))
    return std::nullopt;
  return g;
}

}  // namespace modhodge
