#include "modhodge/laumon.hpp"

#include <stdexcept>

namespace modhodge {

namespace {

Scalar tau_pow(int s) {
  Scalar t(1);
  for (int i = 0; i < (s >= 0 ? s : -s); ++i) t = t * Scalar::tau();
  return s >= 0 ? t : Scalar(1) / t;
}

// integral generators for the column span, denominators cleared per column
ZMatrix clear_denominators(const KMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (size_t j = 0; j < m.cols(); ++j) {
    Int l(1);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (!m.at(i, j).is_rational())
        throw std::logic_error("clear_denominators: non-rational entry");
      l = lcm(l, m.at(i, j).to_rational().get_den());
    }
    for (size_t i = 0; i < m.rows(); ++i) {
      Rat e = m.at(i, j).to_rational() * l;
      z.at(i, j) = e.get_num();
    }
  }
  return z;
}

// basis of (Q-span of w) intersected with Z^ambient
ZMatrix saturated_basis(const Subspace& w) {
  if (w.dim() == 0) return ZMatrix(w.ambient(), 0);
  return saturate(clear_denominators(w.basis()));
}

KMatrix unit_cols(size_t rows, size_t first, size_t count) {
  KMatrix m(rows, count);
  for (size_t j = 0; j < count; ++j) m.at(first + j, j) = Scalar(1);
  return m;
}

struct LaumonForward {
  LaumonMotive motive;
  ZMatrix y, bw;     // completion of the weight lattice and its basis
  KMatrix phi_add;   // classes of the additive units in Lie G
};

// Shared by mhsm1_to_laumon and laumon_round_trip: the class map onto
// Lie G = (W_-1 H_C + add) / (F^0 cap (W_-1 H_C + add)) and the images of
// the lattice, the etale lifts, the additive and the infinitesimal units.
// Every class is computed twice, through two different lift choices, and
// the results must agree.
LaumonForward laumon_forward(const MHSMObject& x) {
  if (!is_mhsm1(x)) throw std::invalid_argument("laumon: not a level-one object");
  if (!x.mhs.lattice.is_free()) throw std::invalid_argument("laumon: lattice has torsion");

  const size_t n = x.mhs.ambient();
  const size_t na = x.add.dim(0), ni = x.inf.dim(0);
  const size_t amb = n + na + ni;
  const KMatrix ic = x.incl_c(0);
  const Scalar sc = tau_pow(x.mhs.tate_scale);

  Subspace addblk = Subspace::from_cols(amb, unit_cols(amb, n, na));
  Subspace m = image(ic, x.mhs.weight_at(-1)).sum(addblk);
  const KMatrix bm = m.basis();
  Subspace f0 = x.filt_at(0);
  Subspace fm = f0.intersect(m);
  auto fm_in_m = solve(bm, fm.basis());
  if (!fm_in_m) throw std::logic_error("laumon: intersection escapes its ambient");
  QuotientPres qp = quotient(Subspace::from_cols(m.dim(), *fm_in_m));

  ZMatrix bw = saturated_basis(x.mhs.weight_at(-1));
  ZMatrix bw2 = saturated_basis(x.mhs.weight_at(-2));
  const size_t rw = bw.cols();

  // complete the saturated basis to a basis of the full lattice
  Snf sw = smith_normal_form(bw);
  for (size_t i = 0; i < sw.rank; ++i)
    if (sw.d.at(i, i) != 1) throw std::logic_error("laumon: weight lattice not saturated");
  ZMatrix y = sw.uinv.submatrix(0, rw, n, n - rw);

  const KMatrix g = f0.basis().hstack(bm);
  // class of columns already inside m
  auto direct = [&](const KMatrix& cols) {
    auto c = solve(bm, cols);
    if (!c) throw std::logic_error("laumon: vector outside the weight piece");
    return qp.proj * *c;
  };
  // class after subtracting a filtration lift, optionally perturbed by a
  // second representative of F^0 cap m
  auto resolved = [&](const KMatrix& cols, bool perturb) {
    auto s = solve(g, cols);
    if (!s) throw std::logic_error("laumon: filtration misses the quotient");
    KMatrix mpart = s->submatrix(f0.dim(), 0, bm.cols(), s->cols());
    KMatrix cls = qp.proj * mpart;
    if (!perturb || fm.dim() == 0) return cls;
    KMatrix ones(fm.dim(), cols.cols());
    for (size_t i = 0; i < ones.rows(); ++i)
      for (size_t j = 0; j < ones.cols(); ++j) ones.at(i, j) = Scalar(1);
    KMatrix shift =
        cols - f0.basis() * s->submatrix(0, 0, f0.dim(), s->cols()) - fm.basis() * ones;
    return direct(shift);
  };
  auto both = [&](const KMatrix& cols, bool in_m) {
    KMatrix first = in_m ? direct(cols) : resolved(cols, false);
    KMatrix second = resolved(cols, true);
    if (!(first == second)) throw std::logic_error("laumon: class depends on the lift choice");
    return first;
  };

  LaumonForward out;
  out.bw = bw;
  out.y = y;
  out.phi_add = both(unit_cols(amb, n, na), true);

  LaumonMotive& mo = out.motive;
  mo.r = n - rw;
  mo.s = ni;
  mo.lieg_dim = m.dim() - fm.dim();
  mo.lieg_add = Subspace::from_cols(mo.lieg_dim, out.phi_add);
  mo.lambda = both((ic * bw.to_k()).scale(sc), true);
  auto w2 = zsolve(bw, bw2);
  if (!w2) throw std::logic_error("laumon: inner weight lattice escapes the outer one");
  mo.lambda_w2 = w2->to_k();
  mo.lifts = both((ic * y.to_k()).scale(sc), false);
  mo.lie_u_inf = both(unit_cols(amb, n + na, ni), false);
  return out;
}

// hodge filtration read back from the level-zero filtration: F^0 is the
// H_C-projection of F^0 cap (H_C + add), F^-1 everything
void hodge_from_level0(MHSMObject& x) {
  const size_t n = x.mhs.ambient();
  Subspace cad = Subspace::from_cols(x.ambient(0), x.incl_cadd(0));
  Subspace f0c = image(x.proj_c(0), x.filt_at(0).intersect(cad));
  x.mhs.hodge = {{-1, Subspace::full(n)}, {0, f0c}};
}

}  // namespace

bool is_mhsm1(const MHSMObject& x) {
  if (!is_mhs1(x.mhs)) return false;
  for (const auto& [k, d] : x.add.dims)
    if (d != 0 && k != 0) return false;
  for (const auto& [k, d] : x.inf.dims)
    if (d != 0 && k != 0) return false;
  return true;
}

bool KatoRussellObject::operator==(const KatoRussellObject& o) const {
  return lattice == o.lattice && tate_scale == o.tate_scale && dim_v == o.dim_v &&
         wm1_q == o.wm1_q && wm2_q == o.wm2_q && wm1_v == o.wm1_v && wm2_v == o.wm2_v &&
         f0_v == o.f0_v && a == o.a && b == o.b && split_add == o.split_add &&
         split_inf == o.split_inf && gr_polarizable == o.gr_polarizable;
}

Report validate_kr(const KatoRussellObject& k) {
  Report r;
  const size_t n = k.lattice.free_rank;
  const size_t dv = k.dim_v;
  bool shape = k.lattice.is_free() && k.a.rows() == dv && k.a.cols() == n &&
               k.b.rows() == n && k.b.cols() == dv && k.wm1_q.ambient() == n &&
               k.wm2_q.ambient() == n && k.wm1_v.ambient() == dv && k.wm2_v.ambient() == dv &&
               k.f0_v.ambient() == dv && k.split_add.ambient() == dv &&
               k.split_inf.ambient() == dv;
  r.add("shape", shape);
  if (!shape) return r;

  r.add("ba", k.b * k.a == KMatrix::identity(n));
  r.add("weight-q", k.wm1_q.contains(k.wm2_q));
  r.add("weight-v", k.wm1_v.contains(k.wm2_v));
  r.add("a-weight", k.wm1_v.contains(image(k.a, k.wm1_q)) && k.wm2_v.contains(image(k.a, k.wm2_q)));
  r.add("b-weight", k.wm1_q.contains(image(k.b, k.wm1_v)) && k.wm2_q.contains(image(k.b, k.wm2_v)));

  // a is an isomorphism on the middle weight quotient
  bool gr_onto = image(k.a, k.wm1_q).sum(k.wm2_v) == k.wm1_v;
  bool gr_into = preimage(k.a, k.wm2_v).intersect(k.wm1_q) == k.wm2_q;
  bool gr_dims = k.wm1_q.dim() - k.wm2_q.dim() == k.wm1_v.dim() - k.wm2_v.dim();
  r.add("gr-minus1", gr_onto && gr_into && gr_dims);

  Subspace kerb = Subspace::from_cols(dv, kernel_basis(k.b));
  r.add("split-add", k.split_add == kerb.intersect(k.wm2_v));
  r.add("split-inf", k.split_inf.intersect(k.wm1_v).dim() == 0);
  r.add("split-direct", k.split_add.intersect(k.split_inf).dim() == 0 &&
                            k.split_add.sum(k.split_inf) == kerb);

  r.add("gr0-hodge", k.f0_v.sum(k.wm1_v) == Subspace::full(dv));
  r.add("w2-hodge", k.f0_v.intersect(k.wm2_v).dim() == 0);
  return r;
}

KatoRussellObject mhsm1_to_kr(const MHSMObject& x) {
  if (!is_mhsm1(x)) throw std::invalid_argument("kr: not a level-one object");
  const size_t n = x.mhs.ambient();
  const size_t na = x.add.dim(0), ni = x.inf.dim(0);
  const size_t amb = n + na + ni;

  KatoRussellObject k;
  k.lattice = x.mhs.lattice;
  k.tate_scale = x.mhs.tate_scale;
  k.dim_v = amb;
  k.wm1_q = x.mhs.weight_at(-1);
  k.wm2_q = x.mhs.weight_at(-2);
  k.a = x.incl_c(0);
  k.b = x.proj_c(0);
  k.split_add = Subspace::from_cols(amb, unit_cols(amb, n, na));
  k.split_inf = Subspace::from_cols(amb, unit_cols(amb, n + na, ni));
  k.wm1_v = image(k.a, k.wm1_q).sum(k.split_add);
  k.wm2_v = image(k.a, k.wm2_q).sum(k.split_add);
  k.f0_v = x.filt_at(0);
  k.gr_polarizable = x.mhs.polarizable;
  return k;
}

MHSMObject kr_to_mhsm1(const KatoRussellObject& k) {
  const size_t n = k.lattice.free_rank;
  const size_t na = k.split_add.dim(), ni = k.split_inf.dim();
  if (n + na + ni != k.dim_v)
    throw std::invalid_argument("kr: splitting does not complement the lattice part");
  KMatrix phi = k.a.hstack(k.split_add.basis()).hstack(k.split_inf.basis());
  auto phi_inv = inverse(phi);
  if (!phi_inv) throw std::invalid_argument("kr: a and the splitting do not span");

  MHSMObject x;
  x.mhs.lattice = k.lattice;
  x.mhs.tate_scale = k.tate_scale;
  x.mhs.weight = {{-2, k.wm2_q}, {-1, k.wm1_q}, {0, Subspace::full(n)}};
  x.mhs.polarizable = k.gr_polarizable;
  if (na) x.add.dims[0] = na;
  if (ni) x.inf.dims[0] = ni;
  x.fmin = -1;
  x.fmax = 1;
  x.filt[0] = Subspace::from_cols(k.dim_v, *phi_inv * k.f0_v.basis());
  hodge_from_level0(x);
  x.mhs.normalize();

  Report rep = validate_mhsm(x);
  if (!rep.ok() || !is_mhsm1(x))
    throw std::invalid_argument("kr: data does not assemble to a level-one object\n" + rep.str());
  return x;
}

bool LaumonMotive::operator==(const LaumonMotive& o) const {
  return r == o.r && s == o.s && lieg_dim == o.lieg_dim && lieg_add == o.lieg_add &&
         lambda == o.lambda && lambda_w2 == o.lambda_w2 && lifts == o.lifts &&
         lie_u_inf == o.lie_u_inf;
}

LaumonMotive mhsm1_to_laumon(const MHSMObject& x) { return laumon_forward(x).motive; }

MHSMObject laumon_to_mhsm1(const LaumonMotive& l) {
  const size_t rw = l.lambda.cols();
  const size_t n = l.r + rw;
  const size_t na = l.lieg_add.dim(), ni = l.s;
  const size_t lieg = l.lieg_dim;
  if (l.lambda.rows() != lieg || l.lifts.rows() != lieg || l.lifts.cols() != l.r ||
      l.lie_u_inf.rows() != lieg || l.lie_u_inf.cols() != ni ||
      l.lieg_add.ambient() != lieg || l.lambda_w2.rows() != rw)
    throw std::invalid_argument("laumon: inconsistent presentation sizes");
  if (!ZMatrix::from_k(l.lambda_w2))
    throw std::invalid_argument("laumon: torus marking is not integral");

  // fiber product basis: etale generators first, then the period lattice
  KMatrix to_g = l.lifts.hstack(l.lambda).hstack(l.lieg_add.basis()).hstack(l.lie_u_inf);

  MHSMObject x;
  x.mhs.lattice = FgGroup::free(n);
  x.mhs.tate_scale = 0;
  x.mhs.polarizable = true;
  KMatrix w2cols(n, l.lambda_w2.cols());
  for (size_t i = 0; i < rw; ++i)
    for (size_t j = 0; j < l.lambda_w2.cols(); ++j) w2cols.at(l.r + i, j) = l.lambda_w2.at(i, j);
  x.mhs.weight = {{-2, Subspace::from_cols(n, w2cols)},
                  {-1, Subspace::from_cols(n, unit_cols(n, l.r, rw))},
                  {0, Subspace::full(n)}};
  if (na) x.add.dims[0] = na;
  if (ni) x.inf.dims[0] = ni;
  x.fmin = -1;
  x.fmax = 1;
  x.filt[0] = Subspace::from_cols(n + na + ni, kernel_basis(to_g));
  hodge_from_level0(x);
  x.mhs.normalize();

  Report rep = validate_mhsm(x);
  if (!rep.ok() || !is_mhsm1(x))
    throw std::invalid_argument("laumon: presentation does not reconstruct\n" + rep.str());
  return x;
}

LaumonRoundTrip laumon_round_trip(const MHSMObject& x) {
  LaumonForward f = laumon_forward(x);

  LaumonRoundTrip rt;
  rt.motive = f.motive;
  rt.back = laumon_to_mhsm1(f.motive);

  const Scalar down = tau_pow(-x.mhs.tate_scale);
  MHSMMorphism& iso = rt.iso;
  iso.src = rt.back;
  iso.dst = x;
  iso.fz = GroupHom{rt.back.mhs.lattice, x.mhs.lattice, f.y.hstack(f.bw)};
  const size_t na = x.add.dim(0), ni = x.inf.dim(0);
  if (na) {
    auto fa = solve(f.phi_add, f.motive.lieg_add.basis());
    if (!fa) throw std::logic_error("laumon: additive part does not match its classes");
    iso.fadd[0] = fa->scale(down);
  }
  if (ni) iso.finf[0] = KMatrix::identity(ni).scale(down);
  return rt;
}

MHSMObject cartier_dual(const MHSMObject& x) {
  if (!is_mhsm1(x)) throw std::invalid_argument("cartier: not a level-one object");
  MHSMObject d = mhsm_twist(mhsm_dual(x), 1);
  if (!is_mhsm1(d)) throw std::logic_error("cartier: dual left the level-one category");
  return d;
}

}  // namespace modhodge
