#include "modhodge/laumon.hpp"

#include <stdexcept>

namespace modhodge {

namespace {

// structural map H_C -> V^k: the transition composite from the stable tail
KMatrix descend(const EHSObject& e, int k) {
  KMatrix t = KMatrix::identity(e.h.ambient());
  for (int j = e.k_stab; j > k; --j) t = e.tau_v(j) * t;
  return t;
}

}  // namespace

size_t EHSObject::dim_v(int k) const {
  if (k >= k_stab) return h.ambient();
  auto it = dims.find(k);
  return it == dims.end() ? 0 : it->second;
}

size_t EHSObject::dim_q(int k) const { return h.ambient() - h.hodge_at(k).dim(); }

KMatrix EHSObject::tau_v(int k) const {
  if (k > k_stab) return KMatrix::identity(h.ambient());
  auto it = tr.find(k);
  return it == tr.end() ? KMatrix(dim_v(k - 1), dim_v(k)) : it->second;
}

KMatrix EHSObject::v_at(int k) const {
  if (k >= k_stab) return KMatrix::identity(h.ambient());
  auto it = v.find(k);
  return it == v.end() ? KMatrix(dim_q(k), dim_v(k)) : it->second;
}

std::pair<int, int> EHSObject::window() const {
  int lo = k_stab;
  for (const auto& [k, d] : dims)
    if (d != 0 && k < lo) lo = k;
  return {lo, k_stab};
}

bool EHSObject::operator==(const EHSObject& o) const {
  if (!(h == o.h)) return false;
  int lo = std::min(window().first, o.window().first);
  int hi = std::max(k_stab, o.k_stab);
  for (int k = lo; k <= hi; ++k) {
    if (dim_v(k) != o.dim_v(k)) return false;
    if (!(v_at(k) == o.v_at(k))) return false;
    if (!(tau_v(k) == o.tau_v(k))) return false;
  }
  return true;
}

Report validate_ehs(const EHSObject& e) {
  Report r;
  r.merge(validate_mhs(e.h), "mhs-");

  bool shape = true;
  for (const auto& [k, d] : e.dims)
    if (k >= e.k_stab) shape = false;
  for (const auto& [k, m] : e.v) {
    if (k >= e.k_stab) shape = false;
    else if (m.rows() != e.dim_q(k) || m.cols() != e.dim_v(k)) shape = false;
  }
  for (const auto& [k, m] : e.tr) {
    if (k > e.k_stab) shape = false;
    else if (m.rows() != e.dim_v(k - 1) || m.cols() != e.dim_v(k)) shape = false;
  }
  r.add("shape", shape);
  r.add("stable", e.h.hodge_at(e.k_stab).dim() == 0);
  if (!shape) return r;

  // v intertwines the transitions with the quotient tower of the filtration
  auto [lo, hi] = e.window();
  for (int k = lo + 1; k <= hi; ++k) {
    QuotientPres qk = quotient(e.h.hodge_at(k));
    QuotientPres qk1 = quotient(e.h.hodge_at(k - 1));
    KMatrix lhs = e.v_at(k - 1) * e.tau_v(k);
    KMatrix rhs = qk1.proj * qk.sect * e.v_at(k);
    r.add("compat", lhs == rhs, "", k);
  }
  return r;
}

EHSObject ehs_from_mhsm(const MHSMObject& x) {
  if (x.inf.total_dim() != 0)
    throw std::invalid_argument("ehs: object carries an infinity part");

  EHSObject e;
  e.h = x.mhs;
  auto aw = x.add.window();
  e.k_stab = std::max(x.fmax, aw.second + 1);

  QuotientPres prev;
  bool have_prev = false;
  for (int k = x.fmin + 1; k <= e.k_stab; ++k) {
    QuotientPres qp = quotient(x.filt_at(k));
    size_t d = x.ambient(k) - x.filt_at(k).dim();
    if (k < e.k_stab && d != 0) {
      e.dims[k] = d;
      QuotientPres qh = quotient(e.h.hodge_at(k));
      KMatrix vk = qh.proj * x.proj_c(k) * qp.sect;
      if (!vk.is_zero()) e.v[k] = vk;
    }
    if (have_prev) {
      KMatrix tk = prev.proj * x.tau_level(k) * qp.sect;
      if (tk.rows() > 0 && tk.cols() > 0 && !tk.is_zero()) e.tr[k] = tk;
    }
    prev = qp;
    have_prev = true;
  }
  return e;
}

MHSMObject mhsm_from_ehs(const EHSObject& e) {
  const size_t n = e.h.ambient();

  MHSMObject x;
  x.mhs = e.h;
  x.fmax = e.k_stab;
  x.fmin = e.window().first - 1;

  KMatrix a_prev;
  for (int k = x.fmin + 1; k < e.k_stab; ++k) {
    KMatrix ak = kernel_basis(e.v_at(k));
    if (ak.cols() != 0) {
      x.add.dims[k] = ak.cols();
      if (k > x.fmin + 1 && a_prev.cols() != 0) {
        auto t = solve(a_prev, e.tau_v(k) * ak);
        if (!t) throw std::invalid_argument("ehs: transitions leave the additive part");
        if (!t->is_zero()) x.add.tr[k] = *t;
      }
    }
    x.filt[k] = Subspace::from_cols(n + ak.cols(), kernel_basis(descend(e, k).hstack(ak)));
    a_prev = ak;
  }

  Report rep = validate_mhsm(x);
  if (!rep.ok())
    throw std::invalid_argument("ehs: tower does not assemble\n" + rep.str());
  return x;
}

bool FHSObject::operator==(const FHSObject& o) const {
  return n == o.n && u_dim == o.u_dim && u == o.u && e == o.e;
}

Report validate_fhs(const FHSObject& f) {
  Report r;
  r.merge(validate_ehs(f.e), "ehs-");
  r.add("window", f.n >= 0 && f.e.window().first >= 1 && f.e.k_stab <= f.n + 1);
  r.add("u-shape", f.u.rows() == f.e.dim_v(f.n) && f.u.cols() == f.u_dim);
  return r;
}

bool is_mhsm_box(const MHSMObject& x, int n) {
  const size_t nc = x.mhs.ambient();
  if (x.mhs.weight_at(-1).dim() != 0) return false;
  if (!(x.mhs.weight_at(2 * n) == Subspace::full(nc))) return false;
  if (!(x.mhs.hodge_at(0) == Subspace::full(nc))) return false;
  if (x.mhs.hodge_at(n + 1).dim() != 0) return false;
  for (const auto& [k, d] : x.add.dims)
    if (d != 0 && (k < 1 || k > n)) return false;
  for (const auto& [k, d] : x.inf.dims)
    if (d != 0 && k != n) return false;
  return true;
}

FHSObject fhs_from_mhsm(const MHSMObject& x, int n) {
  if (!is_mhsm_box(x, n)) throw std::invalid_argument("fhs: object outside the level window");
  const size_t ni = x.inf.dim(n);
  MHSMObject xa = pi_add(x);

  FHSObject f;
  f.e = ehs_from_mhsm(xa);
  f.n = n;
  f.u_dim = ni;
  if (ni) {
    const KMatrix fb = x.filt_at(n).basis();
    auto w = solve(x.proj_inf(n) * fb, KMatrix::identity(ni));
    if (!w) throw std::invalid_argument("fhs: filtration misses the infinity part");
    QuotientPres qp = quotient(xa.filt_at(n));
    f.u = qp.proj * (x.incl_cadd(n).transpose() * (fb * *w));
  } else {
    f.u = KMatrix(f.e.dim_v(n), 0);
  }
  return f;
}

MHSMObject mhsm_from_fhs(const FHSObject& f) {
  MHSMObject x = mhsm_from_ehs(f.e);
  const int n = f.n;
  if (f.u_dim) {
    x.inf.dims[n] = f.u_dim;
    KMatrix ak = kernel_basis(f.e.v_at(n));
    KMatrix m = descend(f.e, n).hstack(ak).hstack(f.u.scale(Scalar(-1)));
    x.filt[n] = Subspace::from_cols(m.cols(), kernel_basis(m));
    if (x.fmax <= n) x.fmax = n + 1;
    if (x.fmin >= n) x.fmin = n - 1;
    Report rep = validate_mhsm(x);
    if (!rep.ok())
      throw std::invalid_argument("fhs: tower does not assemble\n" + rep.str());
  }
  return x;
}

bool sigma_condition(const FHSObject& f) { return (f.e.v_at(f.n) * f.u).is_zero(); }

bool mhsm_sigma_condition(const MHSMObject& x, int n) {
  const size_t ni = x.inf.dim(n);
  if (ni == 0) return true;
  KMatrix drop = x.proj_drop_add(n);
  Subspace finf = Subspace::from_cols(drop.rows(), drop * x.filt_at(n).basis());
  QuotientPres qp = quotient(finf);
  return (qp.proj * (drop * x.proj_inf(n).transpose())).is_zero();
}

}  // namespace modhodge
