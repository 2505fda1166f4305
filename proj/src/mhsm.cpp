#include "modhodge/mhsm.hpp"

#include <set>
#include <stdexcept>

namespace modhodge {

namespace {

KMatrix block_embed(size_t total, size_t offset, size_t n) {
  KMatrix m(total, n);
  for (size_t i = 0; i < n; ++i) m.at(offset + i, i) = Scalar(1);
  return m;
}

}  // namespace

bool VecSeq::operator==(const VecSeq& o) const {
  if (dims != o.dims) return false;
  auto [lo, hi] = window();
  auto [olo, ohi] = o.window();
  for (int k = std::min(lo, olo); k <= std::max(hi, ohi) + 1; ++k)
    if (!(tmat(k) == o.tmat(k))) return false;
  return true;
}

VecSeq VecSeq::dual_reflected() const {
  VecSeq d;
  for (auto& [k, n] : dims) d.dims[1 - k] = n;
  for (auto& [k, n] : d.dims) {
    (void)n;
    KMatrix t = tmat(2 - k).transpose();  // ((V^{2-k} -> V^{1-k}))^T
    if (!t.is_zero()) d.tr[k] = t;
  }
  return d;
}

VecSeq VecSeq::shifted(int m) const {
  VecSeq s;
  for (auto& [k, n] : dims) s.dims[k - m] = n;
  for (auto& [k, t] : tr) s.tr[k - m] = t;
  return s;
}

Subspace MHSMObject::filt_at(int k) const {
  if (k <= fmin) return Subspace::full(ambient(k));
  if (k >= fmax) return Subspace::zero(ambient(k));
  auto it = filt.find(k);
  if (it != filt.end()) return it->second;
  return Subspace::zero(ambient(k));
}

KMatrix MHSMObject::proj_c(int k) const {
  return block_embed(ambient(k), 0, dim_c()).transpose();
}
KMatrix MHSMObject::incl_c(int k) const { return block_embed(ambient(k), 0, dim_c()); }
KMatrix MHSMObject::incl_add(int k) const {
  return block_embed(ambient(k), dim_c(), static_cast<size_t>(add.dim(k)));
}
KMatrix MHSMObject::incl_cadd(int k) const {
  return block_embed(ambient(k), 0, dim_c() + static_cast<size_t>(add.dim(k)));
}
KMatrix MHSMObject::proj_drop_add(int k) const {
  size_t nc = dim_c(), na = static_cast<size_t>(add.dim(k)), ni = static_cast<size_t>(inf.dim(k));
  KMatrix m(nc + ni, nc + na + ni);
  for (size_t i = 0; i < nc; ++i) m.at(i, i) = Scalar(1);
  for (size_t i = 0; i < ni; ++i) m.at(nc + i, nc + na + i) = Scalar(1);
  return m;
}
KMatrix MHSMObject::proj_inf(int k) const {
  size_t nc = dim_c(), na = static_cast<size_t>(add.dim(k)), ni = static_cast<size_t>(inf.dim(k));
  return block_embed(nc + na + ni, nc + na, ni).transpose();
}

std::pair<int, int> MHSMObject::level_range() const {
  int lo = fmin, hi = fmax;
  if (!add.dims.empty()) {
    lo = std::min(lo, add.window().first - 1);
    hi = std::max(hi, add.window().second + 1);
  }
  if (!inf.dims.empty()) {
    lo = std::min(lo, inf.window().first - 1);
    hi = std::max(hi, inf.window().second + 1);
  }
  if (!mhs.hodge.empty()) {
    lo = std::min(lo, mhs.hodge_range().first);
    hi = std::max(hi, mhs.hodge_range().second);
  }
  return {lo, hi};
}

bool MHSMObject::operator==(const MHSMObject& o) const {
  if (!(mhs == o.mhs) || !(add == o.add) || !(inf == o.inf)) return false;
  auto [alo, ahi] = level_range();
  auto [blo, bhi] = o.level_range();
  for (int k = std::min(alo, blo); k <= std::max(ahi, bhi); ++k)
    if (!(filt_at(k) == o.filt_at(k))) return false;
  return true;
}

MHSMObject MHSMObject::from_mhs(const MHS& h) {
  MHSMObject x;
  x.mhs = h;
  if (h.hodge.empty()) {
    x.fmin = 0;
    x.fmax = 1;
    return x;
  }
  x.fmin = h.hodge.begin()->first;
  x.fmax = h.hodge.rbegin()->first + 1;
  for (int k = x.fmin + 1; k < x.fmax; ++k) x.filt.emplace(k, h.hodge_at(k));
  return x;
}

Report validate_mhsm(const MHSMObject& x) {
  Report rep;
  rep.merge(validate_mhs(x.mhs), "mhs-");

  bool shape = x.fmin < x.fmax;
  for (auto& [k, d] : x.add.dims) shape = shape && d > 0;
  for (auto& [k, d] : x.inf.dims) shape = shape && d > 0;
  for (auto& [k, t] : x.add.tr)
    shape = shape && t.rows() == static_cast<size_t>(x.add.dim(k - 1)) &&
            t.cols() == static_cast<size_t>(x.add.dim(k));
  for (auto& [k, t] : x.inf.tr)
    shape = shape && t.rows() == static_cast<size_t>(x.inf.dim(k - 1)) &&
            t.cols() == static_cast<size_t>(x.inf.dim(k));
  for (auto& [k, s] : x.filt)
    shape = shape && k > x.fmin && k < x.fmax && s.ambient() == x.ambient(k);
  rep.add("shape", shape);
  if (!shape) return rep;

  auto [lo, hi] = x.level_range();
  for (int k = lo; k <= hi; ++k) {
    size_t amb = x.ambient(k);
    Subspace f = x.filt_at(k);
    rep.add("a", x.filt_at(k - 1).contains(image(x.tau_level(k), f)), "", k);
    Subspace cadd = Subspace::from_cols(amb, x.incl_cadd(k));
    rep.add("b", image(x.proj_c(k), f.intersect(cadd)) == x.mhs.hodge_at(k), "", k);
    rep.add("c", f.sum(cadd) == Subspace::full(amb), "", k);
    rep.add("c", image(x.proj_inf(k), f) == Subspace::full(static_cast<size_t>(x.inf.dim(k))),
            "inf-projection route", k);
    Subspace addsub = Subspace::from_cols(amb, x.incl_add(k));
    rep.add("d", f.intersect(addsub).dim() == 0, "", k);
    rep.add("d", f.sum(addsub).dim() == f.dim() + addsub.dim(), "rank route", k);
  }
  return rep;
}

KMatrix induced_map_hf(const MHSMObject& x, int k) {
  size_t nc = x.dim_c();
  size_t na = static_cast<size_t>(x.add.dim(k)), ni = static_cast<size_t>(x.inf.dim(k));
  Subspace f = x.filt_at(k);
  QuotientPres qx = quotient(f);
  QuotientPres qc = quotient(x.mhs.hodge_at(k));

  // through the inf side: H_C/F -> H_inf/F_inf is inverted
  KMatrix drop = x.proj_drop_add(k);
  QuotientPres qi = quotient(image(drop, f));
  KMatrix m2 = qi.proj * drop * qx.sect;
  KMatrix m1 = qi.proj * block_embed(nc + ni, 0, nc) * qc.sect;
  auto m1inv = inverse(m1);
  if (!m1inv) throw std::logic_error("induced_map_hf: inf route not invertible");
  KMatrix route_a = *m1inv * m2;

  // through the add side: H_add/F_add -> H/F is inverted
  KMatrix ica = x.incl_cadd(k);
  QuotientPres qa = quotient(preimage(ica, f));
  KMatrix m3 = qx.proj * ica * qa.sect;
  auto m3inv = inverse(m3);
  if (!m3inv) throw std::logic_error("induced_map_hf: add route not invertible");
  KMatrix m4 = qc.proj * block_embed(nc + na, 0, nc).transpose() * qa.sect;
  KMatrix route_b = m4 * *m3inv;

  if (!(route_a == route_b)) throw std::logic_error("induced_map_hf: routes disagree");
  return route_a;
}

KMatrix MHSMMorphism::fadd_at(int k) const {
  auto it = fadd.find(k);
  if (it != fadd.end()) return it->second;
  return KMatrix(static_cast<size_t>(dst.add.dim(k)), static_cast<size_t>(src.add.dim(k)));
}

KMatrix MHSMMorphism::finf_at(int k) const {
  auto it = finf.find(k);
  if (it != finf.end()) return it->second;
  return KMatrix(static_cast<size_t>(dst.inf.dim(k)), static_cast<size_t>(src.inf.dim(k)));
}

namespace {

MHSMMorphism make_identity(const MHSMObject& src, const MHSMObject& dst) {
  MHSMMorphism m;
  m.src = src;
  m.dst = dst;
  m.fz = GroupHom{src.mhs.lattice, dst.mhs.lattice,
                  ZMatrix::identity(src.mhs.lattice.gens())};
  for (auto& [k, n] : src.add.dims) m.fadd.emplace(k, KMatrix::identity(n));
  for (auto& [k, n] : src.inf.dims) m.finf.emplace(k, KMatrix::identity(n));
  return m;
}

}  // namespace

MHSMMorphism MHSMMorphism::identity(const MHSMObject& x) { return make_identity(x, x); }

MHSMMorphism MHSMMorphism::zero(const MHSMObject& x, const MHSMObject& y) {
  MHSMMorphism m;
  m.src = x;
  m.dst = y;
  m.fz = GroupHom{x.mhs.lattice, y.mhs.lattice,
                  ZMatrix(y.mhs.lattice.gens(), x.mhs.lattice.gens())};
  return m;
}

MHSMMorphism MHSMMorphism::compose(const MHSMMorphism& inner) const {
  if (!(inner.dst == src)) throw std::invalid_argument("compose: objects mismatch");
  MHSMMorphism g;
  g.src = inner.src;
  g.dst = dst;
  g.fz = fz.compose(inner.fz);
  for (auto& [k, n] : inner.src.add.dims) {
    (void)n;
    if (dst.add.dim(k) > 0) g.fadd.emplace(k, fadd_at(k) * inner.fadd_at(k));
  }
  for (auto& [k, n] : inner.src.inf.dims) {
    (void)n;
    if (dst.inf.dim(k) > 0) g.finf.emplace(k, finf_at(k) * inner.finf_at(k));
  }
  return g;
}

bool MHSMMorphism::equal_maps(const MHSMMorphism& o) const {
  if (!(fz.m == o.fz.m)) return false;
  for (auto& [k, n] : src.add.dims) {
    (void)n;
    if (!(fadd_at(k) == o.fadd_at(k))) return false;
  }
  for (auto& [k, n] : src.inf.dims) {
    (void)n;
    if (!(finf_at(k) == o.finf_at(k))) return false;
  }
  return true;
}

Report validate_mhsm_morphism(const MHSMMorphism& f) {
  Report rep;
  rep.merge(validate_mhs_map(MHSMap{f.src.mhs, f.dst.mhs, f.fz}), "mhs-");
  bool shape = true;
  for (auto& [k, m] : f.fadd)
    shape = shape && m.rows() == static_cast<size_t>(f.dst.add.dim(k)) &&
            m.cols() == static_cast<size_t>(f.src.add.dim(k));
  for (auto& [k, m] : f.finf)
    shape = shape && m.rows() == static_cast<size_t>(f.dst.inf.dim(k)) &&
            m.cols() == static_cast<size_t>(f.src.inf.dim(k));
  rep.add("shape", shape);
  if (!shape) return rep;

  auto commutes = [](const VecSeq& a, const VecSeq& b,
                     const std::function<KMatrix(int)>& at) {
    std::set<int> ks;
    for (auto& [k, n] : a.dims) {
      (void)n;
      ks.insert(k);
      ks.insert(k + 1);
    }
    for (auto& [k, n] : b.dims) {
      (void)n;
      ks.insert(k);
      ks.insert(k + 1);
    }
    for (int k : ks)
      if (!(at(k - 1) * a.tmat(k) == b.tmat(k) * at(k))) return false;
    return true;
  };
  rep.add("add-transitions", commutes(f.src.add, f.dst.add,
                                      [&](int k) { return f.fadd_at(k); }));
  rep.add("inf-transitions", commutes(f.src.inf, f.dst.inf,
                                      [&](int k) { return f.finf_at(k); }));

  auto [alo, ahi] = f.src.level_range();
  auto [blo, bhi] = f.dst.level_range();
  bool ok = true;
  std::string detail;
  for (int k = std::min(alo, blo); k <= std::max(ahi, bhi); ++k)
    if (!f.dst.filt_at(k).contains(image(f.level_matrix(k), f.src.filt_at(k)))) {
      ok = false;
      detail = "level " + std::to_string(k);
    }
  rep.add("filtration", ok, detail);
  return rep;
}

bool mhsm_is_strict(const MHSMMorphism& f) {
  auto [alo, ahi] = f.src.level_range();
  auto [blo, bhi] = f.dst.level_range();
  for (int k = std::min(alo, blo); k <= std::max(ahi, bhi); ++k) {
    KMatrix m = f.level_matrix(k);
    Subspace im = image(m, Subspace::full(m.cols()));
    if (image(m, f.src.filt_at(k)) != f.dst.filt_at(k).intersect(im)) return false;
  }
  return true;
}

MHSMObject pi_inf(const MHSMObject& x) {
  MHSMObject y;
  y.mhs = x.mhs;
  y.inf = x.inf;
  y.fmin = x.fmin;
  y.fmax = x.fmax;
  for (int k = x.fmin + 1; k < x.fmax; ++k) {
    Subspace s = image(x.proj_drop_add(k), x.filt_at(k));
    if (s.dim() != x.filt_at(k).dim())
      throw std::logic_error("pi_inf: filtration meets the additive part");
    y.filt.emplace(k, s);
  }
  return y;
}

MHSMObject pi_add(const MHSMObject& x) {
  MHSMObject y;
  y.mhs = x.mhs;
  y.add = x.add;
  y.fmin = x.fmin;
  y.fmax = x.fmax;
  for (int k = x.fmin + 1; k < x.fmax; ++k) {
    Subspace s = preimage(x.incl_cadd(k), x.filt_at(k));
    size_t amb = x.dim_c() + static_cast<size_t>(x.add.dim(k));
    if (amb - s.dim() != x.ambient(k) - x.filt_at(k).dim())
      throw std::logic_error("pi_add: filtration codimension not preserved");
    y.filt.emplace(k, s);
  }
  return y;
}

MHSMObject i_add(const MHSMObject& x) {
  if (!x.inf.dims.empty()) throw std::invalid_argument("i_add: inf part nonzero");
  return x;
}

MHSMObject i_inf(const MHSMObject& x) {
  if (!x.add.dims.empty()) throw std::invalid_argument("i_inf: add part nonzero");
  return x;
}

MHSMObject j_add(const VecSeq& v) {
  MHSMObject x;
  x.mhs = MHS::zero();
  x.add = v;
  x.fmin = v.window().first - 1;
  x.fmax = v.window().first;
  return x;
}

MHSMObject j_inf(const VecSeq& v) {
  MHSMObject x;
  x.mhs = MHS::zero();
  x.inf = v;
  x.fmin = v.window().second;
  x.fmax = v.window().second + 1;
  return x;
}

VecSeq mu_add(const MHSMObject& x) {
  if (!x.inf.dims.empty()) throw std::invalid_argument("mu_add: inf part nonzero");
  return x.add;
}

VecSeq mu_inf(const MHSMObject& x) {
  if (!x.add.dims.empty()) throw std::invalid_argument("mu_inf: add part nonzero");
  return x.inf;
}

MHS pi0_inf(const MHSMObject& x) {
  if (!x.inf.dims.empty()) throw std::invalid_argument("pi0_inf: inf part nonzero");
  auto [lo, hi] = x.level_range();
  for (int k = lo; k <= hi; ++k)
    if (!(image(x.proj_c(k), x.filt_at(k)) == x.mhs.hodge_at(k)))
      throw std::logic_error("pi0_inf: induced filtration disagrees with the stored one");
  return x.mhs;
}

MHS pi0_add(const MHSMObject& x) {
  if (!x.add.dims.empty()) throw std::invalid_argument("pi0_add: add part nonzero");
  auto [lo, hi] = x.level_range();
  for (int k = lo; k <= hi; ++k)
    if (!(preimage(x.incl_c(k), x.filt_at(k)) == x.mhs.hodge_at(k)))
      throw std::logic_error("pi0_add: induced filtration disagrees with the stored one");
  return x.mhs;
}

MHSMObject i0_add(const MHS& h) { return MHSMObject::from_mhs(h); }
MHSMObject i0_inf(const MHS& h) { return MHSMObject::from_mhs(h); }

MHSMMorphism pi_inf_mor(const MHSMMorphism& f) {
  MHSMMorphism g;
  g.src = pi_inf(f.src);
  g.dst = pi_inf(f.dst);
  g.fz = f.fz;
  g.finf = f.finf;
  return g;
}

MHSMMorphism pi_add_mor(const MHSMMorphism& f) {
  MHSMMorphism g;
  g.src = pi_add(f.src);
  g.dst = pi_add(f.dst);
  g.fz = f.fz;
  g.fadd = f.fadd;
  return g;
}

MHSMMorphism unit_pi_inf(const MHSMObject& x) {
  MHSMMorphism u;
  u.src = x;
  u.dst = i_inf(pi_inf(x));
  u.fz = GroupHom::identity(x.mhs.lattice);
  for (auto& [k, n] : x.inf.dims) u.finf.emplace(k, KMatrix::identity(n));
  return u;
}

MHSMMorphism counit_pi_add(const MHSMObject& x) {
  MHSMMorphism c;
  c.src = i_add(pi_add(x));
  c.dst = x;
  c.fz = GroupHom::identity(x.mhs.lattice);
  for (auto& [k, n] : x.add.dims) c.fadd.emplace(k, KMatrix::identity(n));
  return c;
}

MHSMMorphism counit_pi_inf(const MHSMObject& y) { return make_identity(pi_inf(i_inf(y)), y); }

MHSMMorphism unit_pi_add(const MHSMObject& y) { return make_identity(y, pi_add(i_add(y))); }

bool adjunction_triangles(const MHSMObject& x) {
  // pi_inf left adjoint of i_inf
  MHSMObject px = pi_inf(x);
  MHSMMorphism t1 = counit_pi_inf(px).compose(pi_inf_mor(unit_pi_inf(x)));
  if (!t1.equal_maps(MHSMMorphism::identity(px))) return false;
  MHSMObject ix = i_inf(px);
  MHSMMorphism t2 = counit_pi_inf(px).compose(unit_pi_inf(ix));
  if (!t2.equal_maps(MHSMMorphism::identity(ix))) return false;
  // pi_add right adjoint of i_add
  MHSMObject ax = pi_add(x);
  MHSMMorphism s1 = pi_add_mor(counit_pi_add(x)).compose(unit_pi_add(ax));
  if (!s1.equal_maps(MHSMMorphism::identity(ax))) return false;
  MHSMObject ia = i_add(ax);
  MHSMMorphism s2 = counit_pi_add(ia).compose(unit_pi_add(ax));
  if (!s2.equal_maps(MHSMMorphism::identity(ia))) return false;
  return true;
}

std::array<ShortExact, 4> three_step(const MHSMObject& x) {
  MHSMObject big_add = i_add(pi_add(x));    // same lattice, add part, no inf
  MHSMObject big_inf = i_inf(pi_inf(x));
  MHSMObject pure_add = j_add(x.add);
  MHSMObject pure_inf = j_inf(x.inf);
  MHSMObject mid = MHSMObject::from_mhs(x.mhs);
  size_t gz = x.mhs.lattice.gens();

  auto zero_from = [&](const MHSMObject& a, const MHSMObject& b) {
    return MHSMMorphism::zero(a, b);
  };
  std::array<ShortExact, 4> out;

  // 0 -> big_add -> x -> pure_inf -> 0
  out[0].incl = counit_pi_add(x);
  out[0].proj = zero_from(x, pure_inf);
  out[0].proj.fz = GroupHom{x.mhs.lattice, FgGroup::free(0), ZMatrix(0, gz)};
  for (auto& [k, n] : x.inf.dims) out[0].proj.finf.emplace(k, KMatrix::identity(n));

  // 0 -> pure_add -> x -> big_inf -> 0
  out[1].incl = zero_from(pure_add, x);
  out[1].incl.fz = GroupHom{FgGroup::free(0), x.mhs.lattice, ZMatrix(gz, 0)};
  for (auto& [k, n] : x.add.dims) out[1].incl.fadd.emplace(k, KMatrix::identity(n));
  out[1].proj = unit_pi_inf(x);

  // 0 -> pure_add -> big_add -> mid -> 0
  out[2].incl = zero_from(pure_add, big_add);
  out[2].incl.fz = GroupHom{FgGroup::free(0), x.mhs.lattice, ZMatrix(gz, 0)};
  for (auto& [k, n] : x.add.dims) out[2].incl.fadd.emplace(k, KMatrix::identity(n));
  out[2].proj = zero_from(big_add, mid);
  out[2].proj.fz = GroupHom::identity(x.mhs.lattice);

  // 0 -> mid -> big_inf -> pure_inf -> 0
  out[3].incl = zero_from(mid, big_inf);
  out[3].incl.fz = GroupHom::identity(x.mhs.lattice);
  out[3].proj = zero_from(big_inf, pure_inf);
  out[3].proj.fz = GroupHom{x.mhs.lattice, FgGroup::free(0), ZMatrix(0, gz)};
  for (auto& [k, n] : x.inf.dims) out[3].proj.finf.emplace(k, KMatrix::identity(n));

  return out;
}

namespace {

// weight/hodge data pulled back along an integral column basis
Subspace restrict_to(const KMatrix& basis, const Subspace& span_sub, const Subspace& s) {
  Subspace cut = s.intersect(span_sub);
  auto coords = solve(basis, cut.basis());
  if (!coords) throw std::logic_error("restrict_to: intersection left the span");
  return Subspace::from_cols(basis.cols(), *coords);
}

}  // namespace

MhsmKerCoker mhsm_ker_coker(const MHSMMorphism& f) {
  if (!validate_mhsm_morphism(f).ok()) throw std::invalid_argument("invalid morphism");
  MhsmKerCoker out;
  const MHSMObject& X = f.src;
  const MHSMObject& Y = f.dst;
  size_t gs = X.mhs.lattice.gens(), gd = Y.mhs.lattice.gens();
  size_t ns = X.mhs.lattice.free_rank, nd = Y.mhs.lattice.free_rank;
  ZMatrix rs = X.mhs.lattice.relations(), rd = Y.mhs.lattice.relations();

  // --- kernel: preimage lattice of span(rd), presented modulo span(rs)
  ZMatrix pre = zkernel(f.fz.m.hstack(-rd));
  ZMatrix kb = lattice_basis(pre.submatrix(0, 0, gs, pre.cols()));
  ZMatrix krel_pre = zkernel(kb.hstack(-rs));
  ZMatrix krel = lattice_basis(krel_pre.submatrix(0, 0, kb.cols(), krel_pre.cols()));
  NormalizedGroup ngk = normalize_presentation(kb.cols(), krel);
  ZMatrix mincl = kb * ngk.from_normal;
  KMatrix kfree = mincl.submatrix(0, 0, ns, ngk.group.free_rank).to_k();
  Subspace kspan = Subspace::from_cols(ns, kfree);

  out.kernel.mhs.lattice = ngk.group;
  out.kernel.mhs.tate_scale = X.mhs.tate_scale;
  out.kernel.mhs.polarizable = X.mhs.polarizable;
  {
    auto [wlo, whi] = X.mhs.weight_range();
    for (int m = wlo; m <= whi; ++m)
      out.kernel.mhs.weight.emplace(m, restrict_to(kfree, kspan, X.mhs.weight_at(m)));
    auto [flo, fhi] = X.mhs.hodge_range();
    for (int p = flo; p <= fhi; ++p)
      out.kernel.mhs.hodge.emplace(p, restrict_to(kfree, kspan, X.mhs.hodge_at(p)));
    out.kernel.mhs.normalize();
  }
  std::map<int, KMatrix> kadd, kinf;
  for (auto& [k, n] : X.add.dims) {
    (void)n;
    KMatrix b = kernel_basis(f.fadd_at(k));
    if (b.cols() > 0) {
      kadd.emplace(k, b);
      out.kernel.add.dims[k] = static_cast<int>(b.cols());
    }
  }
  for (auto& [k, n] : X.inf.dims) {
    (void)n;
    KMatrix b = kernel_basis(f.finf_at(k));
    if (b.cols() > 0) {
      kinf.emplace(k, b);
      out.kernel.inf.dims[k] = static_cast<int>(b.cols());
    }
  }
  auto induced_sub = [](const std::map<int, KMatrix>& bases, const VecSeq& amb, VecSeq& dst) {
    for (auto& [k, b] : bases) {
      auto prev = bases.find(k - 1);
      if (prev == bases.end()) continue;
      auto t = solve(prev->second, amb.tmat(k) * b);
      if (!t) throw std::logic_error("kernel transition left the kernel");
      if (!t->is_zero()) dst.tr[k] = *t;
    }
  };
  induced_sub(kadd, X.add, out.kernel.add);
  induced_sub(kinf, X.inf, out.kernel.inf);
  out.kernel.fmin = X.fmin;
  out.kernel.fmax = X.fmax;
  for (int k = X.fmin + 1; k < X.fmax; ++k) {
    KMatrix b = KMatrix::block_diag(
        {kfree, kadd.count(k) ? kadd.at(k) : KMatrix(static_cast<size_t>(X.add.dim(k)), 0),
         kinf.count(k) ? kinf.at(k) : KMatrix(static_cast<size_t>(X.inf.dim(k)), 0)});
    out.kernel.filt.emplace(k, preimage(b, X.filt_at(k)));
  }
  out.kernel_incl.src = out.kernel;
  out.kernel_incl.dst = X;
  out.kernel_incl.fz = GroupHom{ngk.group, X.mhs.lattice, mincl};
  out.kernel_incl.fadd = kadd;
  out.kernel_incl.finf = kinf;

  // --- cokernel: target presented modulo image and relations
  NormalizedGroup ngc = normalize_presentation(gd, f.fz.m.hstack(rd));
  KMatrix cproj = ngc.to_normal.submatrix(0, 0, ngc.group.free_rank, nd).to_k();
  out.cokernel.mhs.lattice = ngc.group;
  out.cokernel.mhs.tate_scale = Y.mhs.tate_scale;
  out.cokernel.mhs.polarizable = Y.mhs.polarizable;
  {
    auto [wlo, whi] = Y.mhs.weight_range();
    for (int m = wlo; m <= whi; ++m)
      out.cokernel.mhs.weight.emplace(m, image(cproj, Y.mhs.weight_at(m)));
    auto [flo, fhi] = Y.mhs.hodge_range();
    for (int p = flo; p <= fhi; ++p)
      out.cokernel.mhs.hodge.emplace(p, image(cproj, Y.mhs.hodge_at(p)));
    out.cokernel.mhs.normalize();
  }
  std::map<int, QuotientPres> qadd, qinf;
  for (auto& [k, n] : Y.add.dims) {
    QuotientPres q = quotient(image(f.fadd_at(k), Subspace::full(static_cast<size_t>(X.add.dim(k)))));
    if (q.proj.rows() > 0) {
      qadd.emplace(k, q);
      out.cokernel.add.dims[k] = static_cast<int>(q.proj.rows());
    }
    (void)n;
  }
  for (auto& [k, n] : Y.inf.dims) {
    QuotientPres q = quotient(image(f.finf_at(k), Subspace::full(static_cast<size_t>(X.inf.dim(k)))));
    if (q.proj.rows() > 0) {
      qinf.emplace(k, q);
      out.cokernel.inf.dims[k] = static_cast<int>(q.proj.rows());
    }
    (void)n;
  }
  auto induced_quot = [](const std::map<int, QuotientPres>& qs, const VecSeq& amb, VecSeq& dst) {
    for (auto& [k, q] : qs) {
      auto prev = qs.find(k - 1);
      if (prev == qs.end()) continue;
      KMatrix t = prev->second.proj * amb.tmat(k) * q.sect;
      if (!t.is_zero()) dst.tr[k] = t;
    }
  };
  induced_quot(qadd, Y.add, out.cokernel.add);
  induced_quot(qinf, Y.inf, out.cokernel.inf);
  out.cokernel.fmin = Y.fmin;
  out.cokernel.fmax = Y.fmax;
  auto level_proj = [&](int k) {
    return KMatrix::block_diag(
        {cproj, qadd.count(k) ? qadd.at(k).proj : KMatrix(0, static_cast<size_t>(Y.add.dim(k))),
         qinf.count(k) ? qinf.at(k).proj : KMatrix(0, static_cast<size_t>(Y.inf.dim(k)))});
  };
  for (int k = Y.fmin + 1; k < Y.fmax; ++k)
    out.cokernel.filt.emplace(k, image(level_proj(k), Y.filt_at(k)));
  out.coker_proj.src = Y;
  out.coker_proj.dst = out.cokernel;
  out.coker_proj.fz = GroupHom{Y.mhs.lattice, ngc.group, ngc.to_normal};
  for (auto& [k, q] : qadd) out.coker_proj.fadd.emplace(k, q.proj);
  for (auto& [k, q] : qinf) out.coker_proj.finf.emplace(k, q.proj);

  // --- coimage: source presented modulo the kernel
  NormalizedGroup ngq = normalize_presentation(gs, kb);
  KMatrix qproj = ngq.to_normal.submatrix(0, 0, ngq.group.free_rank, ns).to_k();
  out.coimage.mhs.lattice = ngq.group;
  out.coimage.mhs.tate_scale = X.mhs.tate_scale;
  out.coimage.mhs.polarizable = X.mhs.polarizable;
  {
    auto [wlo, whi] = X.mhs.weight_range();
    for (int m = wlo; m <= whi; ++m)
      out.coimage.mhs.weight.emplace(m, image(qproj, X.mhs.weight_at(m)));
    auto [flo, fhi] = X.mhs.hodge_range();
    for (int p = flo; p <= fhi; ++p)
      out.coimage.mhs.hodge.emplace(p, image(qproj, X.mhs.hodge_at(p)));
    out.coimage.mhs.normalize();
  }
  std::map<int, QuotientPres> cadd, cinf;
  for (auto& [k, b] : kadd) {
    QuotientPres q = quotient(Subspace::from_cols(static_cast<size_t>(X.add.dim(k)), b));
    if (q.proj.rows() > 0) {
      cadd.emplace(k, q);
      out.coimage.add.dims[k] = static_cast<int>(q.proj.rows());
    }
  }
  for (auto& [k, n] : X.add.dims)
    if (!kadd.count(k)) {
      cadd.emplace(k, quotient(Subspace::zero(static_cast<size_t>(n))));
      out.coimage.add.dims[k] = n;
    }
  for (auto& [k, b] : kinf) {
    QuotientPres q = quotient(Subspace::from_cols(static_cast<size_t>(X.inf.dim(k)), b));
    if (q.proj.rows() > 0) {
      cinf.emplace(k, q);
      out.coimage.inf.dims[k] = static_cast<int>(q.proj.rows());
    }
  }
  for (auto& [k, n] : X.inf.dims)
    if (!kinf.count(k)) {
      cinf.emplace(k, quotient(Subspace::zero(static_cast<size_t>(n))));
      out.coimage.inf.dims[k] = n;
    }
  induced_quot(cadd, X.add, out.coimage.add);
  induced_quot(cinf, X.inf, out.coimage.inf);
  out.coimage.fmin = X.fmin;
  out.coimage.fmax = X.fmax;
  auto coim_proj_level = [&](int k) {
    return KMatrix::block_diag(
        {qproj, cadd.count(k) ? cadd.at(k).proj : KMatrix(0, static_cast<size_t>(X.add.dim(k))),
         cinf.count(k) ? cinf.at(k).proj : KMatrix(0, static_cast<size_t>(X.inf.dim(k)))});
  };
  for (int k = X.fmin + 1; k < X.fmax; ++k)
    out.coimage.filt.emplace(k, image(coim_proj_level(k), X.filt_at(k)));
  out.coim_proj.src = X;
  out.coim_proj.dst = out.coimage;
  out.coim_proj.fz = GroupHom{X.mhs.lattice, ngq.group, ngq.to_normal};
  for (auto& [k, q] : cadd) out.coim_proj.fadd.emplace(k, q.proj);
  for (auto& [k, q] : cinf) out.coim_proj.finf.emplace(k, q.proj);

  // --- image: pushforward of the coimage presentation; its group must agree
  // with the independently computed image invariants
  GroupCalc gc = group_calc(f.fz);
  if (!(gc.image == ngq.group))
    throw std::logic_error("image group disagrees between the two routes");
  ZMatrix membed = f.fz.m * ngq.from_normal;
  KMatrix ifree = membed.submatrix(0, 0, nd, ngq.group.free_rank).to_k();
  Subspace ispan = Subspace::from_cols(nd, ifree);
  out.image.mhs.lattice = ngq.group;
  out.image.mhs.tate_scale = Y.mhs.tate_scale;
  out.image.mhs.polarizable = Y.mhs.polarizable;
  {
    auto [wlo, whi] = Y.mhs.weight_range();
    for (int m = wlo; m <= whi; ++m)
      out.image.mhs.weight.emplace(m, restrict_to(ifree, ispan, Y.mhs.weight_at(m)));
    auto [flo, fhi] = Y.mhs.hodge_range();
    for (int p = flo; p <= fhi; ++p)
      out.image.mhs.hodge.emplace(p, restrict_to(ifree, ispan, Y.mhs.hodge_at(p)));
    out.image.mhs.normalize();
  }
  std::map<int, KMatrix> iadd, iinf;
  for (auto& [k, n] : out.coimage.add.dims) {
    KMatrix b = image(f.fadd_at(k), Subspace::full(static_cast<size_t>(X.add.dim(k)))).basis();
    if (static_cast<int>(b.cols()) != n)
      throw std::logic_error("image add dimension disagrees with the coimage");
    iadd.emplace(k, b);
    out.image.add.dims[k] = n;
  }
  for (auto& [k, n] : out.coimage.inf.dims) {
    KMatrix b = image(f.finf_at(k), Subspace::full(static_cast<size_t>(X.inf.dim(k)))).basis();
    if (static_cast<int>(b.cols()) != n)
      throw std::logic_error("image inf dimension disagrees with the coimage");
    iinf.emplace(k, b);
    out.image.inf.dims[k] = n;
  }
  auto induced_sub2 = [](const std::map<int, KMatrix>& bases, const VecSeq& amb, VecSeq& dst) {
    for (auto& [k, b] : bases) {
      auto prev = bases.find(k - 1);
      if (prev == bases.end()) continue;
      auto t = solve(prev->second, amb.tmat(k) * b);
      if (!t) throw std::logic_error("image transition left the image");
      if (!t->is_zero()) dst.tr[k] = *t;
    }
  };
  induced_sub2(iadd, Y.add, out.image.add);
  induced_sub2(iinf, Y.inf, out.image.inf);
  out.image.fmin = Y.fmin;
  out.image.fmax = Y.fmax;
  for (int k = Y.fmin + 1; k < Y.fmax; ++k) {
    KMatrix b = KMatrix::block_diag(
        {ifree, iadd.count(k) ? iadd.at(k) : KMatrix(static_cast<size_t>(Y.add.dim(k)), 0),
         iinf.count(k) ? iinf.at(k) : KMatrix(static_cast<size_t>(Y.inf.dim(k)), 0)});
    out.image.filt.emplace(k, preimage(b, Y.filt_at(k)));
  }
  out.image_incl.src = out.image;
  out.image_incl.dst = Y;
  out.image_incl.fz = GroupHom{ngq.group, Y.mhs.lattice, membed};
  out.image_incl.fadd = iadd;
  out.image_incl.finf = iinf;

  // --- the canonical map; on lattices both sides share one presentation
  out.coim_to_im.src = out.coimage;
  out.coim_to_im.dst = out.image;
  out.coim_to_im.fz = GroupHom::identity(ngq.group);
  for (auto& [k, b] : iadd) {
    auto t = solve(b, f.fadd_at(k) * cadd.at(k).sect);
    if (!t) throw std::logic_error("canonical map fell outside the image basis");
    out.coim_to_im.fadd.emplace(k, *t);
  }
  for (auto& [k, b] : iinf) {
    auto t = solve(b, f.finf_at(k) * cinf.at(k).sect);
    if (!t) throw std::logic_error("canonical map fell outside the image basis");
    out.coim_to_im.finf.emplace(k, *t);
  }
  return out;
}

MHSMObject mhsm_dual(const MHSMObject& x) {
  MHSMObject d;
  d.mhs = mhs_dual(x.mhs);
  d.add = x.inf.dual_reflected();
  d.inf = x.add.dual_reflected();
  d.fmin = 1 - x.fmax;
  d.fmax = 1 - x.fmin;
  size_t nc = x.dim_c();
  for (int k = d.fmin + 1; k < d.fmax; ++k) {
    int j = 1 - k;
    size_t na = static_cast<size_t>(x.add.dim(j)), ni = static_cast<size_t>(x.inf.dim(j));
    Subspace ann = x.filt_at(j).annihilator();
    // functionals keep the (C, add, inf) coordinates of level j; the dual
    // level orders them (C, inf, add)
    KMatrix p(nc + na + ni, nc + na + ni);
    for (size_t i = 0; i < nc; ++i) p.at(i, i) = Scalar(1);
    for (size_t i = 0; i < na; ++i) p.at(nc + ni + i, nc + i) = Scalar(1);
    for (size_t i = 0; i < ni; ++i) p.at(nc + i, nc + na + i) = Scalar(1);
    d.filt.emplace(k, image(p, ann));
  }
  return d;
}

MHSMObject mhsm_twist(const MHSMObject& x, int m) {
  MHSMObject t;
  t.mhs = mhs_twist(x.mhs, m);
  t.add = x.add.shifted(m);
  t.inf = x.inf.shifted(m);
  t.fmin = x.fmin - m;
  t.fmax = x.fmax - m;
  for (auto& [k, s] : x.filt) t.filt.emplace(k - m, s);
  return t;
}

MHSMObject mhsm_free_part(const MHSMObject& x) {
  MHSMObject f = x;
  f.mhs = mhs_free_part(x.mhs);
  return f;
}

MHSMMorphism evaluation_morphism(const MHSMObject& x) {
  return make_identity(mhsm_free_part(x), mhsm_dual(mhsm_dual(x)));
}

RValue functor_r(const MHSMObject& x) {
  RValue r;
  r.lattice = x.mhs.lattice;
  r.add_dims = x.add.dims;
  r.inf_dims = x.inf.dims;
  r.total_dim = x.add.total_dim() + x.inf.total_dim();
  return r;
}

bool r_dual_compatible(const MHSMObject& x) {
  RValue rd = functor_r(mhsm_dual(x));
  RValue r = functor_r(x);
  if (!(rd.lattice == z_dual(r.lattice))) return false;
  std::map<int, int> expect_add, expect_inf;
  for (auto& [k, n] : r.inf_dims) expect_add[1 - k] = n;
  for (auto& [k, n] : r.add_dims) expect_inf[1 - k] = n;
  return rd.add_dims == expect_add && rd.inf_dims == expect_inf &&
         rd.total_dim == r.total_dim;
}

bool sequence_exact(const std::vector<MHSMMorphism>& seq) {
  for (size_t i = 0; i + 1 < seq.size(); ++i) {
    const MHSMMorphism& f = seq[i];
    const MHSMMorphism& g = seq[i + 1];
    if (!(g.src == f.dst)) return false;
    ZMatrix rmid = f.dst.mhs.lattice.relations();
    ZMatrix rdst = g.dst.mhs.lattice.relations();
    ZMatrix comp = g.fz.m * f.fz.m;
    if (!comp.is_zero() && !zsolve(rdst, comp).has_value()) return false;
    ZMatrix pre = zkernel(g.fz.m.hstack(-rdst));
    ZMatrix kgens = lattice_basis(pre.submatrix(0, 0, g.fz.m.cols(), pre.cols()));
    if (kgens.cols() > 0) {
      ZMatrix cover = f.fz.m.hstack(rmid);
      if (!zsolve(cover, kgens).has_value()) return false;
    }
    auto [lo, hi] = f.dst.level_range();
    for (int k = lo; k <= hi; ++k) {
      KMatrix fm = f.level_matrix(k), gm = g.level_matrix(k);
      Subspace im = image(fm, Subspace::full(fm.cols()));
      Subspace ker = Subspace::from_cols(gm.cols(), kernel_basis(gm));
      if (!(im == ker)) return false;
    }
  }
  return true;
}

bool is_invertible(const MHSMMorphism& f) {
  GroupCalc gc = group_calc(f.fz);
  if (gc.kernel.gens() != 0 || gc.cokernel.gens() != 0) return false;
  auto [alo, ahi] = f.src.level_range();
  auto [blo, bhi] = f.dst.level_range();
  for (int k = std::min(alo, blo); k <= std::max(ahi, bhi); ++k) {
    KMatrix m = f.level_matrix(k);
    if (m.rows() != m.cols() || (m.rows() > 0 && !inverse(m).has_value())) return false;
    if (!(image(m, f.src.filt_at(k)) == f.dst.filt_at(k))) return false;
  }
  return true;
}

}  // namespace modhodge
