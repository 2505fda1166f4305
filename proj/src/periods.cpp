// Canonical cocycle bases for the level-one hypercohomology of a modulus
// pair.  Three functionals on 1-cochains of the (Y, Z) model kill every
// coboundary: relative periods (primitive differences between Y-points plus
// residue logs, and tau times the residues at Z), jets of a local primitive
// at the Y-points, and principal parts at the Z-points.  The construction
// produces one cocycle family per functional, normalised to the identity on
// its own functional and killed by the other two; the mixed structure, the
// Hodge filtration and the period matrix are read off in those coordinates.

#include <cassert>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modhodge/curve.hpp"

namespace modhodge {

namespace {

int pick_window(const CurveTriple& t, int window) {
  int w = window < 0 ? default_window(t) : window;
  if (w < default_window(t)) throw std::invalid_argument("truncation below the safe bound");
  return w;
}

QPoly tpow(const Rat& p, int e) {
  return e == 0 ? QPoly::monomial(0, Rat(1)) : QPoly::from_roots({{p, e}});
}

Rat rpow(const Rat& x, int e) {
  Rat acc(1);
  for (int i = 0; i < (e < 0 ? -e : e); ++i) acc *= x;
  return e < 0 ? Rat(1) / acc : acc;
}

// jet of t^e at p for either sign of e; p != 0 when e < 0
std::vector<Rat> mono_jet(int e, const Rat& p, size_t n) {
  QPoly one = QPoly::monomial(0, Rat(1));
  if (e >= 0) return rational_jet(QPoly::monomial(static_cast<size_t>(e), Rat(1)), one, p, n);
  return rational_jet(one, QPoly::monomial(static_cast<size_t>(-e), Rat(1)), p, n);
}

Laurent lscale(Laurent l, const Rat& c) {
  for (auto& [d, v] : l) v *= c;
  return l;
}

Laurent lsub(const Laurent& x, const Laurent& y) { return laurent_add(x, lscale(y, Rat(-1))); }

void set_col(QMat& m, size_t j, const QVec& v) {
  for (size_t i = 0; i < m.rows(); ++i) m.at(i, j) = v[i];
}

QVec mat_apply(const QMat& m, const QVec& v) {
  QVec out(m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (v[j] != 0) out[i] += m.at(i, j) * v[j];
  return out;
}

QPoly poly_of(const Laurent& l) {
  QPoly p;
  for (auto& [d, c] : l) {
    assert(d >= 0);
    p = p + QPoly::monomial(static_cast<size_t>(d), c);
  }
  return p;
}

Scalar log_diff(const Rat& a, const Rat& b, const Rat& p) {
  return Scalar::log_rational(a - p) - Scalar::log_rational(b - p);
}

P1Divisor excess(const P1Divisor& d) {
  std::vector<std::pair<Rat, int>> pts;
  for (auto& [p, m] : d.pts)
    if (m > 1) pts.emplace_back(p, m - 1);
  return P1Divisor::of(pts);
}

// exact partial fractions of num / prod (t - p)^m, with the decomposition
// multiplied back together as a certificate
struct Fractions {
  QPoly quot;
  std::vector<std::vector<Rat>> low;  // low[i][k]: (t - p_i)^(k - m_i) coefficient
};

Fractions split_fractions(const QPoly& num, const P1Divisor& poles) {
  QPoly den = QPoly::from_roots(poles.pts);
  Fractions f;
  auto [q, rem] = QPoly::divrem(num, den);
  f.quot = q;
  QPoly rebuilt = q * den;
  for (auto& [p, m] : poles.pts) {
    std::vector<std::pair<Rat, int>> others;
    for (auto& o : poles.pts)
      if (!(o.first == p)) others.push_back(o);
    QPoly dother = QPoly::from_roots(others);
    auto c = rational_jet(rem, dother, p, static_cast<size_t>(m));
    QPoly part;
    for (int k = 0; k < m; ++k) part = part + tpow(p, k).scale(c[k]);
    rebuilt = rebuilt + part * dother;
    f.low.push_back(std::move(c));
  }
  assert(rebuilt == num);
  return f;
}

// Taylor coefficients at y of a local primitive, orders 1..m_y - 1, as rows
// over C^1; only the chart-0 slot contributes
QMat prim_jet_functional(const CechModel& a, const CurveTriple& t, size_t rows) {
  auto s = a.s1_chart0();
  QPoly zden = QPoly::from_roots(t.z.pts);
  QMat m(rows, a.c1_dim());
  for (int d = s.w.lo; d <= s.w.hi; ++d) {
    size_t col = s.off + s.w.index(d);
    size_t r = 0;
    for (auto& [p, mult] : t.y.pts) {
      if (mult > 1) {
        auto c = rational_jet(QPoly::monomial(static_cast<size_t>(d), Rat(1)), zden, p,
                              static_cast<size_t>(mult) - 1);
        for (int j = 1; j < mult; ++j)
          m.at(r + static_cast<size_t>(j) - 1, col) = c[static_cast<size_t>(j) - 1] / Rat(j);
      }
      r += static_cast<size_t>(mult) - 1;
    }
  }
  return m;
}

// coefficients on dt/(t - z)^j, orders 2..m_z, as rows over C^1
QMat pole_part_functional(const CechModel& a, const CurveTriple& t, size_t rows) {
  auto s = a.s1_chart0();
  QMat m(rows, a.c1_dim());
  for (int d = s.w.lo; d <= s.w.hi; ++d) {
    size_t col = s.off + s.w.index(d);
    size_t r = 0;
    for (auto& [p, mult] : t.z.pts) {
      if (mult > 1) {
        std::vector<std::pair<Rat, int>> others;
        for (auto& o : t.z.pts)
          if (!(o.first == p)) others.push_back(o);
        auto c = rational_jet(QPoly::monomial(static_cast<size_t>(d), Rat(1)),
                              QPoly::from_roots(others), p, static_cast<size_t>(mult) - 1);
        for (int j = 2; j <= mult; ++j)
          m.at(r + static_cast<size_t>(j) - 2, col) = c[static_cast<size_t>(mult - j)];
      }
      r += static_cast<size_t>(mult) - 1;
    }
  }
  return m;
}

QPoly lagrange_delta(const std::vector<std::pair<Rat, int>>& pts, size_t l) {
  QPoly g = QPoly::monomial(0, Rat(1));
  Rat scale(1);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i == l) continue;
    g = g * QPoly::linear(pts[i].first);
    scale *= pts[l].first - pts[i].first;
  }
  return g.scale(Rat(1) / scale);
}

// lattice normal forms in the reduced model: eta_l is the differential of
// the Lagrange delta at y_l, matched on the second chart by a Laurent
// interpolation through the nonzero Y-points; omega_j carries residue +1 at
// z_j and -1 at the base z_0
QMat normal_forms(const CechModel& ar, const CurveTriple& t) {
  auto& ys = t.y.pts;
  auto& zs = t.z.pts;
  size_t a = ys.size(), b = zs.size();
  size_t nh = (a > 0 ? a - 1 : 0) + (b > 0 ? b - 1 : 0);
  QPoly yred = QPoly::from_roots(t.y.reduced().pts);
  QPoly zred = QPoly::from_roots(t.z.reduced().pts);
  QMat nf(ar.c1_dim(), nh);
  std::vector<Rat> ynz;
  for (auto& [p, m] : ys)
    if (p != 0) ynz.push_back(p);
  for (size_t l = 1; l < a; ++l) {
    QPoly g = lagrange_delta(ys, l);
    Laurent h;
    if (!ynz.empty()) {
      QMat v(ynz.size(), ynz.size()), rhs(ynz.size(), 1);
      for (size_t r = 0; r < ynz.size(); ++r) {
        for (size_t s = 0; s < ynz.size(); ++s) v.at(r, s) = rpow(ynz[r], -static_cast<int>(s));
        rhs.at(r, 0) = g.eval(ynz[r]);
      }
      auto sol = qsolve(v, rhs);
      assert(sol);
      for (size_t s = 0; s < ynz.size(); ++s)
        if (sol->at(s, 0) != 0) h[-static_cast<int>(s)] = sol->at(s, 0);
    }
    QVec col(ar.c1_dim());
    CechModel::put(col, ar.s1_overlap(), laurent_divexact(lsub(h, laurent_of_poly(g)), yred));
    CechModel::put(col, ar.s1_chart0(), laurent_of_poly(g.derivative() * zred));
    CechModel::put(col, ar.s1_chart1(), laurent_mul(zred, laurent_derivative(h)));
    set_col(nf, l - 1, col);
  }
  size_t base = a > 0 ? a - 1 : 0;
  for (size_t j = 1; j < b; ++j) {
    Laurent hw = laurent_of_poly(zred.divexact(QPoly::linear(zs[j].first)) -
                                 zred.divexact(QPoly::linear(zs[0].first)));
    QVec col(ar.c1_dim());
    CechModel::put(col, ar.s1_chart0(), hw);
    CechModel::put(col, ar.s1_chart1(), hw);
    set_col(nf, base + j - 1, col);
  }
  assert((ar.d1 * nf).is_zero());
  return nf;
}

std::string cache_key(const CurveTriple& t, int w) {
  std::string k = std::to_string(w);
  for (auto& [p, m] : t.y.pts) k += "|" + p.get_str() + "^" + std::to_string(m);
  k += "/";
  for (auto& [p, m] : t.z.pts) k += "|" + p.get_str() + "^" + std::to_string(m);
  return k;
}

}  // namespace

std::vector<Scalar> periods_of_form(const QPoly& num, const P1Divisor& poles,
                                    const CurveTriple& t) {
  Fractions f = split_fractions(num, poles);
  auto& ys = t.y.pts;
  auto& zs = t.z.pts;
  // primitive of the log-free part, evaluated away from the poles
  auto primitive = [&](const Rat& x) {
    Rat acc(0);
    for (int d = 0; d <= f.quot.deg(); ++d) acc += f.quot.at(d) * rpow(x, d + 1) / Rat(d + 1);
    for (size_t i = 0; i < poles.pts.size(); ++i) {
      auto& [p, m] = poles.pts[i];
      for (int k = 2; k <= m; ++k)
        acc += f.low[i][static_cast<size_t>(m - k)] * rpow(x - p, 1 - k) / Rat(1 - k);
    }
    return acc;
  };
  std::vector<Scalar> out;
  for (size_t l = 1; l < ys.size(); ++l) {
    Scalar g(primitive(ys[l].first) - primitive(ys[0].first));
    for (size_t i = 0; i < poles.pts.size(); ++i) {
      auto& [p, m] = poles.pts[i];
      const Rat& res = f.low[i][static_cast<size_t>(m) - 1];
      if (res != 0) g = g + Scalar(res) * log_diff(ys[l].first, ys[0].first, p);
    }
    out.push_back(g);
  }
  for (size_t j = 1; j < zs.size(); ++j) {
    Rat res(0);
    for (size_t i = 0; i < poles.pts.size(); ++i)
      if (poles.pts[i].first == zs[j].first)
        res = f.low[i][static_cast<size_t>(poles.pts[i].second) - 1];
    out.push_back(Scalar::tau() * Scalar(res));
  }
  return out;
}

CurveSystem build_curve_system(const CurveTriple& t, int window) {
  int w = pick_window(t, window);
  static std::map<std::string, CurveSystem> cache;
  std::string key = cache_key(t, w);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (!validate_triple(t).ok()) throw std::invalid_argument("invalid modulus pair");

  auto& ys = t.y.pts;
  auto& zs = t.z.pts;
  size_t a = ys.size(), b = zs.size();
  int dy = t.y.degree(), dz = t.z.degree();
  size_t ap = a > 0 ? a - 1 : 0, bp = b > 0 ? b - 1 : 0;
  size_t nh = ap + bp;
  int s = std::max(dy - static_cast<int>(a), dz - static_cast<int>(b));

  ModulusSpaces labels = modulus_spaces(t, 1, 1);
  size_t na = labels.add_basis.size(), ni = labels.inf_basis.size();
  assert(na == static_cast<size_t>(dy) - a && ni == static_cast<size_t>(dz) - b);

  CurveTriple tred{t.y.reduced(), t.z.reduced()};
  CurveTriple tthin{t.y.reduced(), t.z};
  CechModel ar(omega_complex(tred, 1), w);
  CechModel ary(omega_complex(tthin, 1), w + 2 * s);
  auto model = std::make_shared<CechModel>(omega_complex(t, 1), w + s);
  const CechModel& am = *model;

  // full y-vanishing with y-free pole bundle: the zig-zag corner whose
  // cocycles carry both the lattice and the filtration
  P1Divisor yexc = excess(t.y), zexc = excess(t.z);
  ComplexShape oshape = omega_complex(tthin, 1);
  oshape.l0 = oshape.l0.twisted(yexc, -1);
  oshape.l1 = oshape.l1.twisted(yexc, -1);
  CechModel om(oshape, w);
  // the z-fattened receptacle used to carve out the pole-jet classes
  ComplexShape bshape = omega_complex(t, 1);
  bshape.l0 = bshape.l0.twisted(zexc, 1);
  bshape.l1 = bshape.l1.twisted(zexc, 1);
  CechModel bm(bshape, w + 2 * s);

  CechMap az(ar, ary), ze(om, ary), de(om, am);

  QMat pj = prim_jet_functional(am, t, na);
  QMat jp = pole_part_functional(am, t, ni);

  // lattice classes: push the reduced normal forms into the fat model, strip
  // the coboundary, pull through the corner
  QMat phi_c(am.c1_dim(), nh);
  if (nh > 0) {
    QMat rhs = az.on1 * normal_forms(ar, t);
    auto sol = qsolve(ze.on1.hstack(ary.d0), rhs);
    assert(sol);
    QMat wv = sol->submatrix(0, 0, om.c1_dim(), nh);
    assert((om.d1 * wv).is_zero());
    phi_c = de.on1 * wv;
    assert((am.d1 * phi_c).is_zero());
  }

  // jet classes: differentials of sections of O(-Yred) with prescribed jets
  // along Y, corrected on the second chart below the stable degree
  QMat phi_add(am.c1_dim(), na);
  if (na > 0) {
    QMat jm(na, na);
    {
      size_t r = 0;
      for (auto& [p, mult] : ys) {
        if (mult > 1) {
          std::vector<std::pair<Rat, int>> others;
          for (auto& o : ys)
            if (!(o.first == p)) others.emplace_back(o.first, 1);
          QPoly q = QPoly::from_roots(others);
          for (size_t e = 0; e < na; ++e) {
            auto c = rational_jet(QPoly::monomial(e, Rat(1)) * q, QPoly::monomial(0, Rat(1)), p,
                                  static_cast<size_t>(mult) - 1);
            for (int i = 0; i + 1 < mult; ++i) jm.at(r + static_cast<size_t>(i), e) = c[i];
          }
        }
        r += static_cast<size_t>(mult) - 1;
      }
    }
    auto l0m = qinverse(jm);
    assert(l0m);
    size_t jd = 0;
    for (auto& [p, mult] : ys)
      if (p != 0) jd += static_cast<size_t>(mult) - 1;
    int atop = ary.l0.chart1_top();
    QMat l1m(jd, na);
    if (jd > 0) {
      QMat m1(jd, jd), r0(jd, na);
      size_t r = 0;
      for (auto& [p, mult] : ys) {
        if (p == 0 || mult == 1) continue;
        for (size_t sdx = 0; sdx < jd; ++sdx) {
          auto c = mono_jet(atop - static_cast<int>(sdx), p, static_cast<size_t>(mult) - 1);
          for (int i = 0; i + 1 < mult; ++i) m1.at(r + static_cast<size_t>(i), sdx) = c[i];
        }
        for (size_t e = 0; e < na; ++e) {
          auto c = mono_jet(static_cast<int>(e), p, static_cast<size_t>(mult) - 1);
          for (int i = 0; i + 1 < mult; ++i) r0.at(r + static_cast<size_t>(i), e) = c[i];
        }
        r += static_cast<size_t>(mult) - 1;
      }
      auto sol = qsolve(m1, r0 * *l0m);
      assert(sol);
      l1m = *sol;
    }
    QPoly gyexc = QPoly::from_roots(yexc.pts);
    for (size_t kcol = 0; kcol < na; ++kcol) {
      QVec c0(ary.c0_dim());
      Laurent l0h, l1h;
      for (size_t e = 0; e < na; ++e)
        if (l0m->at(e, kcol) != 0) l0h[static_cast<int>(e)] = l0m->at(e, kcol);
      for (size_t sdx = 0; sdx < jd; ++sdx)
        if (l1m.at(sdx, kcol) != 0) l1h[atop - static_cast<int>(sdx)] = l1m.at(sdx, kcol);
      CechModel::put(c0, ary.s0_chart0(), l0h);
      CechModel::put(c0, ary.s0_chart1(), l1h);
      QVec img = mat_apply(ary.d0, c0);
      QVec out(am.c1_dim());
      CechModel::put(out, am.s1_overlap(),
                     laurent_divexact(CechModel::take(img, ary.s1_overlap()), gyexc));
      CechModel::put(out, am.s1_chart0(), CechModel::take(img, ary.s1_chart0()));
      CechModel::put(out, am.s1_chart1(), CechModel::take(img, ary.s1_chart1()));
      set_col(phi_add, kcol, out);
    }
    assert((am.d1 * phi_add).is_zero());
  }

  // pole classes: differentials of sections of O(-Y + Z - Zred) with one
  // prescribed principal part, rescaled so the leading coefficient is 1
  QMat phi_inf(am.c1_dim(), ni);
  if (ni > 0) {
    QPoly yfull = QPoly::from_roots(t.y.pts);
    QMat jm(ni, ni);
    {
      size_t r = 0;
      for (auto& [p, mult] : zs) {
        if (mult > 1) {
          std::vector<std::pair<Rat, int>> others;
          for (auto& o : zs)
            if (!(o.first == p) && o.second > 1) others.emplace_back(o.first, o.second - 1);
          QPoly dother = QPoly::from_roots(others);
          for (size_t e = 0; e < ni; ++e) {
            auto c = rational_jet(QPoly::monomial(e, Rat(1)) * yfull, dother, p,
                                  static_cast<size_t>(mult) - 1);
            for (int i = 0; i + 1 < mult; ++i) jm.at(r + static_cast<size_t>(i), e) = c[i];
          }
        }
        r += static_cast<size_t>(mult) - 1;
      }
    }
    auto inv = qinverse(jm);
    assert(inv);
    QMat u0(ni, ni);
    {
      size_t col = 0, rowbase = 0;
      for (auto& [p, mult] : zs) {
        for (int j = 2; j <= mult; ++j) {
          size_t row = rowbase + static_cast<size_t>(mult - j);
          for (size_t e = 0; e < ni; ++e) u0.at(e, col) = inv->at(e, row);
          ++col;
        }
        rowbase += static_cast<size_t>(mult) - 1;
      }
    }
    size_t jdz = 0;
    for (auto& [p, mult] : zs)
      if (p != 0) jdz += static_cast<size_t>(mult) - 1;
    int btop = bm.l0.chart1_top();
    QMat u1(jdz, ni);
    if (jdz > 0) {
      QMat m1(jdz, jdz), r0(jdz, ni);
      size_t rr = 0;
      for (auto& [p, mult] : zs) {
        if (p == 0 || mult == 1) continue;
        for (size_t sdx = 0; sdx < jdz; ++sdx) {
          auto c = mono_jet(btop - static_cast<int>(sdx), p, static_cast<size_t>(mult) - 1);
          for (int i = 0; i + 1 < mult; ++i) m1.at(rr + static_cast<size_t>(i), sdx) = c[i];
        }
        for (size_t e = 0; e < ni; ++e) {
          auto c = mono_jet(static_cast<int>(e), p, static_cast<size_t>(mult) - 1);
          for (int i = 0; i + 1 < mult; ++i) r0.at(rr + static_cast<size_t>(i), e) = c[i];
        }
        rr += static_cast<size_t>(mult) - 1;
      }
      auto sol = qsolve(m1, r0 * u0);
      assert(sol);
      u1 = *sol;
    }
    QPoly gzexc = QPoly::from_roots(zexc.pts);
    size_t col = 0;
    for (auto& [p, mult] : zs) {
      for (int j = 2; j <= mult; ++j) {
        QVec c0(bm.c0_dim());
        Laurent u0h, u1h;
        for (size_t e = 0; e < ni; ++e)
          if (u0.at(e, col) != 0) u0h[static_cast<int>(e)] = u0.at(e, col);
        for (size_t sdx = 0; sdx < jdz; ++sdx)
          if (u1.at(sdx, col) != 0) u1h[btop - static_cast<int>(sdx)] = u1.at(sdx, col);
        CechModel::put(c0, bm.s0_chart0(), u0h);
        CechModel::put(c0, bm.s0_chart1(), u1h);
        QVec img = mat_apply(bm.d0, c0);
        QVec out(am.c1_dim());
        Rat sc = Rat(-1) / Rat(j - 1);
        CechModel::put(out, am.s1_overlap(),
                       lscale(laurent_divexact(CechModel::take(img, bm.s1_overlap()), gzexc), sc));
        CechModel::put(out, am.s1_chart0(),
                       lscale(laurent_divexact(CechModel::take(img, bm.s1_chart0()), gzexc), sc));
        CechModel::put(out, am.s1_chart1(),
                       lscale(laurent_divexact(CechModel::take(img, bm.s1_chart1()), gzexc), sc));
        set_col(phi_inf, col, out);
        ++col;
      }
    }
    assert((am.d1 * phi_inf).is_zero());
  }

  // strip the pole parts off the lattice classes, then certify the whole
  // functional-by-family table
  if (nh > 0 && ni > 0) phi_c = phi_c - phi_inf * (jp * phi_c);
  assert(pj * phi_add == QMat::identity(na));
  assert(jp * phi_inf == QMat::identity(ni));
  assert((pj * phi_c).is_zero() && (pj * phi_inf).is_zero());
  assert((jp * phi_c).is_zero() && (jp * phi_add).is_zero());

  CechCohomology coh = cech_cohomology(am);
  assert(coh.dim[1] == nh + na + ni);
  QMat basis_all = phi_c.hstack(phi_add).hstack(phi_inf).hstack(coh.bnd1);
  assert(qrank(basis_all) == nh + na + ni + coh.bnd1.cols());

  KMatrix periods(nh, nh);
  for (size_t i = 0; i < ap; ++i) periods.at(i, i) = Scalar(1);
  for (size_t j = 0; j < bp; ++j) {
    periods.at(ap + j, ap + j) = Scalar::tau();
    for (size_t l = 0; l < ap; ++l)
      periods.at(l, ap + j) = log_diff(ys[l + 1].first, ys[0].first, zs[j + 1].first) -
                              log_diff(ys[l + 1].first, ys[0].first, zs[0].first);
  }
  // dual route: the period functionals evaluated on the actual chart-0 forms
  // must reproduce the matrix entry by entry, and kill the jet families
  auto engine = [&](const QMat& cols, size_t j) {
    return periods_of_form(poly_of(CechModel::take(cols.col_vec(j), am.s1_chart0())), t.z, t);
  };
  for (size_t j = 0; j < nh; ++j) {
    auto per = engine(phi_c, j);
    for (size_t i = 0; i < nh; ++i) assert(per[i] == periods.at(i, j));
  }
  for (size_t j = 0; j < na; ++j)
    for (auto& v : engine(phi_add, j)) assert(v == Scalar());
  for (size_t j = 0; j < ni; ++j)
    for (auto& v : engine(phi_inf, j)) assert(v == Scalar());

  // the filtration level: global forms with poles along Z, coordinatised
  // against the certified basis
  size_t nf1 = dz >= 1 ? static_cast<size_t>(dz) - 1 : 0;
  QMat forms(am.c1_dim(), nf1);
  for (size_t i = 0; i < nf1; ++i) {
    QVec v(am.c1_dim());
    Laurent mono{{static_cast<int>(i), Rat(1)}};
    CechModel::put(v, am.s1_chart0(), mono);
    CechModel::put(v, am.s1_chart1(), mono);
    set_col(forms, i, v);
  }
  assert((am.d1 * forms).is_zero());
  KMatrix fcols(nh + na + ni, nf1);
  if (nf1 > 0) {
    auto sol = qsolve(basis_all, forms);
    assert(sol);
    KMatrix top = periods * to_kmatrix(sol->submatrix(0, 0, nh, nf1));
    KMatrix mid = to_kmatrix(sol->submatrix(nh, 0, na, nf1));
    KMatrix bot = to_kmatrix(sol->submatrix(nh + na, 0, ni, nf1));
    fcols = top.vstack(mid).vstack(bot);
  }
  Subspace filt1 = Subspace::from_cols(nh + na + ni, fcols);
  assert(filt1.dim() == nf1);

  MHSMObject h1;
  h1.mhs.lattice = FgGroup::free(nh);
  h1.mhs.tate_scale = 0;
  h1.mhs.polarizable = true;
  KMatrix wcols(nh, ap);
  for (size_t i = 0; i < ap; ++i) wcols.at(i, i) = Scalar(1);
  h1.mhs.weight.emplace(0, Subspace::from_cols(nh, wcols));
  h1.mhs.weight.emplace(2, Subspace::full(nh));
  KMatrix hcols(nh, bp);
  for (size_t i = 0; i < nh; ++i)
    for (size_t j = 0; j < bp; ++j) hcols.at(i, j) = periods.at(i, ap + j);
  h1.mhs.hodge.emplace(0, Subspace::full(nh));
  h1.mhs.hodge.emplace(1, Subspace::from_cols(nh, hcols));
  h1.mhs.normalize();
  if (na > 0) h1.add.dims[1] = static_cast<int>(na);
  if (ni > 0) h1.inf.dims[1] = static_cast<int>(ni);
  h1.fmin = 0;
  h1.fmax = 2;
  h1.filt.emplace(1, filt1);
  assert(validate_mhs(h1.mhs).ok());
  assert(validate_mhsm(h1).ok());

  CurveSystem sys;
  sys.t = t;
  sys.window = w;
  sys.nh = nh;
  sys.na = na;
  sys.ni = ni;
  sys.add_basis = labels.add_basis;
  sys.inf_basis = labels.inf_basis;
  sys.model = model;
  sys.phi_c = phi_c;
  sys.phi_add = phi_add;
  sys.phi_inf = phi_inf;
  sys.bnd = coh.bnd1;
  sys.periods = periods;
  sys.h1 = h1;
  cache.emplace(std::move(key), sys);
  return sys;
}

KMatrix period_matrix(const CurveTriple& t) { return build_curve_system(t).periods; }

MHSMObject build_mhsm(const CurveTriple& t, int n) {
  if (n == 1) return build_curve_system(t).h1;
  if (n == 0) return MHSMObject::from_mhs(t.y.pts.empty() ? MHS::tate(0) : MHS::zero());
  if (n == 2) return MHSMObject::from_mhs(t.z.pts.empty() ? MHS::tate(-1) : MHS::zero());
  throw std::invalid_argument("cohomology level out of range");
}

}  // namespace modhodge
