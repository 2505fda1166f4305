// Functoriality along a rational self-map f = p/q of the line.  A map of
// modulus pairs must carry the source relative points into the target ones
// at least as deep as their multiplicities demand, and its pole preimages
// must stay inside the source pole divisor, shallow enough for pulled
// 1-forms to keep legal pole depth; the three inequalities are checked and
// named before anything is built.  On the lattice the map is the Betti
// matrix, recovered as source periods of pulled basis classes against the
// target period matrix; on jets and pole parts it is composition with f in
// truncated local coordinates.  Pushforward is conjugate to the pullback on
// swapped pairs through the duality isomorphisms.

#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modhodge/curve.hpp"

namespace modhodge {

namespace {

QPoly qgcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = QPoly::divrem(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

QPoly qpow(const QPoly& b, int e) {
  QPoly r = QPoly::monomial(0, Rat(1));
  for (int i = 0; i < e; ++i) r = r * b;
  return r;
}

Scalar log_diff(const Rat& a, const Rat& b, const Rat& p) {
  return Scalar::log_rational(a - p) - Scalar::log_rational(b - p);
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

}  // namespace

RationalMap RationalMap::of(QPoly p, QPoly q) {
  if (q.is_zero()) throw std::invalid_argument("rational map with zero denominator");
  QPoly g = qgcd(p, q);
  if (g.deg() > 0) {
    p = p.divexact(g);
    q = q.divexact(g);
  }
  Rat lq = q.lead();
  return RationalMap{p.scale(Rat(1) / lq), q.scale(Rat(1) / lq)};
}

int RationalMap::degree() const { return std::max(p.deg(), q.deg()); }

Rat RationalMap::eval(const Rat& x) const {
  Rat qv = q.eval(x);
  if (qv == 0) throw std::invalid_argument("rational map evaluated at a pole");
  return p.eval(x) / qv;
}

PullbackResult pullback(const RationalMap& f0, const CurveTriple& source,
                        const CurveTriple& target, int n) {
  if (n < 0 || n > 2) throw std::invalid_argument("pullback degree out of range");
  RationalMap f = RationalMap::of(f0.p, f0.q);
  PullbackResult out;
  Report& rep = out.report;

  rep.add("nonconstant", f.degree() >= 1, "deg " + std::to_string(f.degree()));

  // every relative point must land on a relative point, with ramification
  // times target depth covering the source depth
  bool cover = true;
  std::string cdet;
  for (auto& [y, m] : source.y.pts) {
    bool ok = f.q.eval(y) != 0;
    if (ok) {
      Rat yp = f.eval(y);
      int mt = target.y.mult_at(yp);
      ok = mt > 0 && (f.p - f.q.scale(yp)).ord_at(y) * mt >= m;
    }
    if (!ok) {
      cover = false;
      cdet = "uncovered at " + y.get_str();
    }
  }
  rep.add("relative-cover", cover, cdet);

  // pole preimages stay affine and inside the source pole support
  bool preim = true, depth = true;
  std::string pdet, ddet;
  for (auto& [z, m] : source.z.pts) {
    (void)m;
    if (f.q.eval(z) == 0) {
      preim = false;
      pdet = "infinity over " + z.get_str();
    }
  }
  for (auto& [zp, mp] : target.z.pts) {
    QPoly num = f.p - f.q.scale(zp);
    if (num.deg() != f.degree()) {
      preim = false;
      pdet = "infinity in the fibre over " + zp.get_str();
      continue;
    }
    QPoly rem = num;
    for (auto& [z, m] : source.z.pts) {
      int e = num.ord_at(z);
      if (e == 0) continue;
      rem = rem.divexact(QPoly::from_roots({{z, e}}));
      if (e * (mp - 1) + 1 > m) {
        depth = false;
        ddet = "depth " + std::to_string(e * (mp - 1) + 1) + " over " + z.get_str() +
               " exceeds " + std::to_string(m);
      }
    }
    if (rem.deg() > 0) {
      preim = false;
      pdet = "fibre over " + zp.get_str() + " escapes the pole support";
    }
  }
  rep.add("pole-preimage", preim, pdet);
  rep.add("pole-depth", depth, ddet);
  if (!rep.ok()) return out;

  MHSMObject tgt = build_mhsm(target, n), src = build_mhsm(source, n);
  if (n != 1) {
    if (tgt.mhs.ambient() == 0 || src.mhs.ambient() == 0) {
      out.map = MHSMMorphism::zero(tgt, src);
      return out;
    }
    MHSMMorphism m;
    m.src = tgt;
    m.dst = src;
    ZMatrix one(1, 1);
    one.at(0, 0) = n == 0 ? Int(1) : Int(f.degree());
    m.fz = GroupHom{tgt.mhs.lattice, src.mhs.lattice, one};
    rep.merge(validate_mhsm_morphism(m), "morphism-");
    out.map = m;
    return out;
  }

  CurveSystem ss = build_curve_system(source);
  CurveSystem ts = build_curve_system(target);
  auto& sy = source.y.pts;
  auto& sz = source.z.pts;
  auto& ty = target.y.pts;
  auto& tz = target.z.pts;
  size_t sa = sy.size(), sb = sz.size(), ta = ty.size(), tb = tz.size();
  size_t sap = sa > 0 ? sa - 1 : 0;

  // source periods of the pulled target lattice basis
  KMatrix mm(ss.nh, ts.nh);
  for (size_t i = 1; i < ta; ++i) {
    QPoly g = lagrange_delta(ty, i);
    for (size_t l = 1; l < sa; ++l)
      mm.at(l - 1, i - 1) = Scalar(g.eval(f.eval(sy[l].first)) - g.eval(f.eval(sy[0].first)));
  }
  size_t tbase = ta > 0 ? ta - 1 : 0;
  for (size_t j = 1; j < tb; ++j) {
    QPoly nj = f.p - f.q.scale(tz[j].first), n0 = f.p - f.q.scale(tz[0].first);
    for (size_t zi = 0; zi < sb; ++zi) {
      const Rat& z = sz[zi].first;
      int d = nj.ord_at(z) - n0.ord_at(z);
      if (d == 0) continue;
      Scalar ds{static_cast<long>(d)};
      for (size_t l = 1; l < sa; ++l)
        mm.at(l - 1, tbase + j - 1) =
            mm.at(l - 1, tbase + j - 1) + ds * log_diff(sy[l].first, sy[0].first, z);
      if (zi > 0)
        mm.at(sap + zi - 1, tbase + j - 1) = Scalar::tau() * ds;
    }
  }
  auto tpi = inverse(ts.periods);
  assert(tpi);
  KMatrix fzk = mm * *tpi;
  auto bz = ZMatrix::from_k(fzk);
  rep.add("lattice-integral", bz.has_value(), "Betti matrix over the integers");
  if (!bz) return out;

  MHSMMorphism m;
  m.src = tgt;
  m.dst = src;
  m.fz = GroupHom{tgt.mhs.lattice, src.mhs.lattice, *bz};

  if (ss.na + ts.na > 0) {
    KMatrix fa(ss.na, ts.na);
    size_t col = 0;
    for (auto& [yp, mt] : ty) {
      for (int jp = 1; jp < mt; ++jp) {
        QPoly num = qpow(f.p - f.q.scale(yp), jp), den = qpow(f.q, jp);
        size_t row = 0;
        for (auto& [y, msrc] : sy) {
          if (msrc > 1 && f.eval(y) == yp) {
            auto c = rational_jet(num, den, y, static_cast<size_t>(msrc));
            for (int j = 1; j < msrc; ++j)
              fa.at(row + static_cast<size_t>(j) - 1, col) = Scalar(c[static_cast<size_t>(j)]);
          }
          row += static_cast<size_t>(msrc) - 1;
        }
        ++col;
      }
    }
    m.fadd[1] = fa;
  }

  if (ss.ni + ts.ni > 0) {
    KMatrix fi(ss.ni, ts.ni);
    QPoly fpn = f.p.derivative() * f.q - f.p * f.q.derivative();
    size_t col = 0;
    for (auto& [zp, mt] : tz) {
      for (int jp = 2; jp <= mt; ++jp) {
        QPoly num = fpn * qpow(f.q, jp - 2), pw = qpow(f.p - f.q.scale(zp), jp);
        size_t row = 0;
        for (auto& [z, msrc] : sz) {
          int e = (f.p - f.q.scale(zp)).ord_at(z);
          if (msrc > 1 && e > 0) {
            QPoly u = pw.divexact(QPoly::from_roots({{z, e * jp}}));
            auto c = rational_jet(num, u, z, static_cast<size_t>(e * jp) - 1);
            for (int j = 2; j <= msrc && j <= e * jp; ++j)
              fi.at(row + static_cast<size_t>(j) - 2, col) = Scalar(c[static_cast<size_t>(e * jp - j)]);
          }
          row += static_cast<size_t>(msrc) - 1;
        }
        ++col;
      }
    }
    m.finf[1] = fi;
  }

  rep.merge(validate_mhsm_morphism(m), "morphism-");
  out.map = m;
  return out;
}

PullbackResult pushforward(const RationalMap& f, const CurveTriple& source,
                           const CurveTriple& target, int n) {
  PullbackResult q = pullback(f, source.swapped(), target.swapped(), 2 - n);
  PullbackResult out;
  out.report = q.report;
  if (!q.map) return out;
  DualityCertificate cs = duality_check(source.swapped(), 2 - n);
  DualityCertificate ct = duality_check(target.swapped(), 2 - n);
  out.report.merge(cs.report, "source-duality-");
  out.report.merge(ct.report, "target-duality-");
  auto cti = invert_morphism(ct.iso);
  out.report.add("dualisable", cti.has_value(), "target duality inverts");
  if (!cti) return out;
  MHSMMorphism m = cti->compose(dual_morphism(*q.map).compose(cs.iso));
  out.map = twist_morphism(m, -1);
  return out;
}

}  // namespace modhodge
