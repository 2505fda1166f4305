#include "modhodge/curve.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace modhodge {

P1Divisor P1Divisor::of(std::vector<std::pair<Rat, int>> pts) {
  std::map<Rat, int> acc;
  for (auto& [p, m] : pts) acc[p] += m;
  P1Divisor d;
  for (auto& [p, m] : acc) {
    if (m < 0) throw std::invalid_argument("divisor multiplicity negative");
    if (m > 0) d.pts.emplace_back(p, m);
  }
  return d;
}

int P1Divisor::degree() const {
  int s = 0;
  for (auto& [p, m] : pts) s += m;
  return s;
}

int P1Divisor::mult_at(const Rat& p) const {
  for (auto& [q, m] : pts)
    if (q == p) return m;
  return 0;
}

P1Divisor P1Divisor::reduced() const {
  P1Divisor d;
  for (auto& [p, m] : pts) d.pts.emplace_back(p, 1);
  return d;
}

std::vector<Rat> P1Divisor::support() const {
  std::vector<Rat> s;
  for (auto& [p, m] : pts) s.push_back(p);
  return s;
}

bool P1Divisor::disjoint_from(const P1Divisor& o) const {
  for (auto& [p, m] : pts)
    if (o.mult_at(p) > 0) return false;
  return true;
}

Report validate_triple(const CurveTriple& t) {
  Report rep;
  bool sorted = true;
  for (auto* d : {&t.y, &t.z})
    for (size_t i = 0; i + 1 < d->pts.size(); ++i)
      if (!(d->pts[i].first < d->pts[i + 1].first)) sorted = false;
  bool mults = true;
  for (auto* d : {&t.y, &t.z})
    for (auto& [p, m] : d->pts)
      if (m < 1) mults = false;
  rep.add("divisors", sorted && mults);
  rep.add("disjoint", t.y.disjoint_from(t.z));
  return rep;
}

Normalized normalize_triple(const RawDivisor& y, const RawDivisor& z) {
  Normalized out;
  if (y.at_infinity < 0 || z.at_infinity < 0)
    throw std::invalid_argument("negative multiplicity at infinity");
  if (y.at_infinity == 0 && z.at_infinity == 0) {
    out.triple = CurveTriple{P1Divisor::of(y.finite), P1Divisor::of(z.finite)};
    return out;
  }
  Rat top(0);
  bool seen = false;
  for (auto* d : {&y, &z})
    for (auto& [p, m] : d->finite) {
      if (!seen || p > top) top = p;
      seen = true;
    }
  out.moved = true;
  out.pivot = top + 1;
  auto move = [&](const RawDivisor& d) {
    std::vector<std::pair<Rat, int>> pts;
    for (auto& [p, m] : d.finite) pts.emplace_back(Rat(1) / (p - out.pivot), m);
    if (d.at_infinity > 0) pts.emplace_back(Rat(0), d.at_infinity);
    return P1Divisor::of(pts);
  };
  out.triple = CurveTriple{move(y), move(z)};
  return out;
}

namespace {

using SignedDiv = std::vector<std::pair<Rat, int>>;

SignedDiv combine(const SignedDiv& a, const SignedDiv& b, int bsign) {
  std::map<Rat, int> acc;
  for (auto& [p, m] : a) acc[p] += m;
  for (auto& [p, m] : b) acc[p] += bsign * m;
  SignedDiv out;
  for (auto& [p, m] : acc)
    if (m != 0) out.emplace_back(p, m);
  return out;
}

SignedDiv scaled(const P1Divisor& d, int sign) {
  SignedDiv out;
  for (auto& [p, m] : d.pts) out.emplace_back(p, sign * m);
  return out;
}

// multiplier of the inclusion O(src) into O(dst); refuses non-effective gaps
QPoly incl_multiplier(const BundleSpec& s, const BundleSpec& d) {
  if (s.phi != d.phi) throw std::logic_error("inclusion across twist degrees");
  SignedDiv diff = combine(d.div, s.div, -1);
  for (auto& [p, m] : diff)
    if (m < 0) throw std::logic_error("inclusion multiplier not effective");
  return QPoly::from_roots(diff);
}

Laurent mono(int d) { return Laurent{{d, Rat(1)}}; }

}  // namespace

BundleSpec BundleSpec::make(std::vector<std::pair<Rat, int>> div, int phi) {
  BundleSpec b;
  b.div = combine(div, {}, 1);
  b.phi = phi;
  return b;
}

BundleSpec BundleSpec::twisted(const P1Divisor& d, int sign) const {
  return make(combine(div, scaled(d, sign), 1), phi);
}

int BundleSpec::degree() const {
  int s = 0;
  for (auto& [p, m] : div) s += m;
  return s;
}

ComplexShape omega_complex(const CurveTriple& t, int k) {
  P1Divisor yr = t.y.reduced(), zr = t.z.reduced();
  ComplexShape s;
  if (k <= 0) {
    s.l0 = BundleSpec::make(combine(combine(scaled(yr, -1), scaled(t.z, 1), 1), scaled(zr, -1), 1), 0);
    s.l1 = BundleSpec::make(scaled(t.z, 1), 1);
  } else if (k == 1) {
    s.l0 = BundleSpec::make(scaled(t.y, -1), 0);
    s.l1 = BundleSpec::make(scaled(t.z, 1), 1);
  } else {
    s.l0 = BundleSpec::make(scaled(t.y, -1), 0);
    s.l1 = BundleSpec::make(combine(combine(scaled(yr, 1), scaled(t.y, -1), 1), scaled(zr, 1), 1), 1);
  }
  return s;
}

LineCohomology line_bundle_cohomology(int n) {
  int m = std::abs(n) + 2;
  Window w0{0, m}, w1{-m, n}, ol{-m, m};
  QMat d0(ol.dim(), w0.dim() + w1.dim());
  for (int d = w0.lo; d <= w0.hi; ++d) d0.at(ol.index(d), w0.index(d)) = -1;
  for (int d = w1.lo; d <= w1.hi; ++d) d0.at(ol.index(d), w0.dim() + w1.index(d)) = 1;
  LineCohomology out;
  QMat ker = qkernel(d0);
  for (size_t c = 0; c < ker.cols(); ++c) {
    int deg = -1;
    size_t hits = 0;
    for (size_t i = 0; i < w0.dim(); ++i)
      if (ker.at(i, c) != 0) {
        deg = w0.lo + static_cast<int>(i);
        ++hits;
      }
    if (hits != 1) throw std::logic_error("section basis not monomial");
    out.h0.push_back(deg);
  }
  for (size_t i : qextend(d0, QMat::identity(ol.dim())))
    out.h1.push_back(ol.lo + static_cast<int>(i));
  return out;
}

CechModel::Slot CechModel::s0_chart0() const { return {Window{0, m0}, 0}; }
CechModel::Slot CechModel::s0_chart1() const {
  return {Window{-m0, l0.chart1_top()}, s0_chart0().w.dim()};
}
CechModel::Slot CechModel::s1_overlap() const { return {Window{-m0, m0}, 0}; }
CechModel::Slot CechModel::s1_chart0() const {
  return {Window{0, m1}, s1_overlap().w.dim()};
}
CechModel::Slot CechModel::s1_chart1() const {
  Slot c0 = s1_chart0();
  return {Window{-m1, l1.chart1_top()}, c0.off + c0.w.dim()};
}
CechModel::Slot CechModel::s2_overlap() const { return {Window{-m1, m1}, 0}; }

size_t CechModel::c0_dim() const {
  Slot s = s0_chart1();
  return s.off + s.w.dim();
}
size_t CechModel::c1_dim() const {
  Slot s = s1_chart1();
  return s.off + s.w.dim();
}
size_t CechModel::c2_dim() const { return s2_overlap().w.dim(); }

Laurent CechModel::take(const QVec& v, Slot s) {
  QVec part(v.begin() + static_cast<long>(s.off),
            v.begin() + static_cast<long>(s.off + s.w.dim()));
  return laurent_of(part, s.w);
}

void CechModel::put(QVec& v, Slot s, const Laurent& l) {
  QVec part = vec_of(l, s.w);
  for (size_t i = 0; i < part.size(); ++i) v[s.off + i] = part[i];
}

namespace {

// column block of a degree-wise map between slots; any coefficient produced
// outside the target window must vanish identically
void fill_block(QMat& m, const CechModel::Slot& dst, const CechModel::Slot& src,
                const std::function<Laurent(int)>& img, int sign) {
  for (int d = src.w.lo; d <= src.w.hi; ++d) {
    for (auto& [deg, c] : img(d)) {
      if (c == 0) continue;
      if (!dst.w.contains(deg)) throw std::logic_error("cech block escapes window");
      Rat& slot = m.at(dst.off + dst.w.index(deg), src.off + src.w.index(d));
      slot += sign > 0 ? c : -c;
    }
  }
}

}  // namespace

CechModel::CechModel(const ComplexShape& shape, int m0_) : l0(shape.l0), l1(shape.l1), m0(m0_) {
  if (l0.phi != 0 || l1.phi != 1)
    throw std::invalid_argument("cech model wants [O(D0) -> Omega^1 O(D1)]");
  std::map<Rat, int> e0, e1;
  for (auto& [p, m] : l0.div) e0[p] = m;
  for (auto& [p, m] : l1.div) e1[p] = m;
  std::set<Rat> pts;
  for (auto& [p, m] : e0) pts.insert(p);
  for (auto& [p, m] : e1) pts.insert(p);
  SignedDiv rroots;
  for (auto& p : pts) {
    int a = e0.count(p) ? e0[p] : 0;
    int b = e1.count(p) ? e1[p] : 0;
    if (b - a < 0) throw std::logic_error("differential badly twisted");
    if (a != 0 && b - a < 1) throw std::logic_error("missing log slot at modulus point");
    if (b - a > 0) rroots.emplace_back(p, b - a);
  }
  r = QPoly::from_roots(rroots);
  rs = QPoly();
  for (auto& p : pts) {
    int a = e0.count(p) ? e0[p] : 0;
    if (a == 0) continue;
    rs = rs + r.divexact(QPoly::linear(p)).scale(Rat(-a));
  }
  m1 = m0 + std::max(r.deg(), 1);

  auto diff = [this](int d) {
    return laurent_add(laurent_mul(r, laurent_derivative(mono(d))),
                       laurent_mul(rs, mono(d)));
  };
  auto embed = [](int d) { return mono(d); };

  d0 = QMat(c1_dim(), c0_dim());
  fill_block(d0, s1_overlap(), s0_chart1(), embed, +1);
  fill_block(d0, s1_overlap(), s0_chart0(), embed, -1);
  fill_block(d0, s1_chart0(), s0_chart0(), diff, +1);
  fill_block(d0, s1_chart1(), s0_chart1(), diff, +1);

  d1 = QMat(c2_dim(), c1_dim());
  fill_block(d1, s2_overlap(), s1_chart1(), embed, +1);
  fill_block(d1, s2_overlap(), s1_chart0(), embed, -1);
  fill_block(d1, s2_overlap(), s1_overlap(), diff, -1);

  if (!(d1 * d0).is_zero()) throw std::logic_error("cech differential does not square to zero");
  long chi = static_cast<long>(c0_dim()) - static_cast<long>(c1_dim()) +
             static_cast<long>(c2_dim());
  if (chi != static_cast<long>(l0.degree() + 1) - static_cast<long>(l1.degree() - 1))
    throw std::logic_error("truncation clipped a live degree");
}

CechMap::CechMap(const CechModel& src, const CechModel& dst) {
  g0 = incl_multiplier(src.l0, dst.l0);
  g1 = incl_multiplier(src.l1, dst.l1);
  if (!(dst.r * g0 == g1 * src.r) ||
      !(dst.r * g0.derivative() + dst.rs * g0 == g1 * src.rs))
    throw std::logic_error("multiplication is not a chain map here");
  auto by = [](QPoly g) {
    return [g = std::move(g)](int d) { return laurent_mul(g, mono(d)); };
  };
  on0 = QMat(dst.c0_dim(), src.c0_dim());
  fill_block(on0, dst.s0_chart0(), src.s0_chart0(), by(g0), +1);
  fill_block(on0, dst.s0_chart1(), src.s0_chart1(), by(g0), +1);
  on1 = QMat(dst.c1_dim(), src.c1_dim());
  fill_block(on1, dst.s1_overlap(), src.s1_overlap(), by(g0), +1);
  fill_block(on1, dst.s1_chart0(), src.s1_chart0(), by(g1), +1);
  fill_block(on1, dst.s1_chart1(), src.s1_chart1(), by(g1), +1);
  on2 = QMat(dst.c2_dim(), src.c2_dim());
  fill_block(on2, dst.s2_overlap(), src.s2_overlap(), by(g1), +1);
}

CechCohomology cech_cohomology(const CechModel& m) {
  CechCohomology c;
  c.basis[0] = qkernel(m.d0);
  c.dim[0] = c.basis[0].cols();
  c.bnd1 = m.d0.select_cols(qextend(QMat(m.c1_dim(), 0), m.d0));
  QMat z1 = qkernel(m.d1);
  c.basis[1] = z1.select_cols(qextend(c.bnd1, z1));
  c.dim[1] = c.basis[1].cols();
  c.bnd2 = m.d1.select_cols(qextend(QMat(m.c2_dim(), 0), m.d1));
  c.basis[2] = QMat::identity(m.c2_dim()).select_cols(qextend(c.bnd2, QMat::identity(m.c2_dim())));
  c.dim[2] = c.basis[2].cols();
  return c;
}

int default_window(const CurveTriple& t) { return t.y.degree() + t.z.degree() + 2; }

int trunc_margin() {
  const char* e = std::getenv("MODHODGE_TRUNC_MARGIN");
  if (!e || !*e) return 2;
  int v = std::atoi(e);
  return v > 0 ? v : 2;
}

namespace {

int pick_window(const CurveTriple& t, int window) {
  int w = window < 0 ? default_window(t) : window;
  if (w < default_window(t)) throw std::invalid_argument("truncation below the safe bound");
  return w;
}

LaurentBlock block_of(const QVec& v, CechModel::Slot s) {
  LaurentBlock b;
  b.lo = s.w.lo;
  b.c.assign(v.begin() + static_cast<long>(s.off),
             v.begin() + static_cast<long>(s.off + s.w.dim()));
  return b;
}

}  // namespace

HyperResult hypercohomology(const CurveTriple& t, int k, int n, int window) {
  if (n < 0 || n > 2) throw std::invalid_argument("hypercohomology degree out of range");
  CechModel m(omega_complex(t, k), pick_window(t, window));
  CechCohomology c = cech_cohomology(m);
  HyperResult out;
  out.dim = c.dim[n];
  for (size_t j = 0; j < c.dim[n]; ++j) {
    QVec v = c.basis[n].col_vec(j);
    CechClass cl;
    if (n == 0) {
      cl.chart0 = block_of(v, m.s0_chart0());
      cl.chart1 = block_of(v, m.s0_chart1());
    } else if (n == 1) {
      cl.overlap = block_of(v, m.s1_overlap());
      cl.chart0 = block_of(v, m.s1_chart0());
      cl.chart1 = block_of(v, m.s1_chart1());
    } else {
      cl.overlap = block_of(v, m.s2_overlap());
    }
    out.basis.push_back(std::move(cl));
  }
  return out;
}

namespace {

// full-modulus complex with both divisors at the requested depth
ComplexShape corner_shape(const P1Divisor& y, const P1Divisor& z) {
  P1Divisor yr = y.reduced(), zr = z.reduced();
  ComplexShape s;
  s.l0 = BundleSpec::make(
      combine(combine(scaled(y, -1), scaled(z, 1), 1), scaled(zr, -1), 1), 0);
  s.l1 = BundleSpec::make(
      combine(combine(scaled(yr, 1), scaled(y, -1), 1), scaled(z, 1), 1), 1);
  return s;
}

const QMat& map_level(const CechMap& f, int n) {
  return n == 0 ? f.on0 : n == 1 ? f.on1 : f.on2;
}

const QMat* bnd_level(const CechCohomology& c, int n) {
  return n == 1 ? &c.bnd1 : n == 2 ? &c.bnd2 : nullptr;
}

// classes of `vectors` in the chosen basis, reducing modulo boundaries
QMat coords_in(const CechCohomology& c, int n, const QMat& vectors) {
  const QMat* b = bnd_level(c, n);
  QMat sys = b ? c.basis[n].hstack(*b) : c.basis[n];
  auto sol = qsolve(sys, vectors);
  if (!sol) throw std::logic_error("class escapes the computed basis");
  return sol->submatrix(0, 0, c.dim[n], vectors.cols());
}

bool iso_on_h(const CechMap& f, const CechModel&, const CechCohomology& cs,
              const CechCohomology& cd, int n) {
  if (cs.dim[n] != cd.dim[n]) return false;
  const QMat img = map_level(f, n) * cs.basis[n];
  const QMat* b = bnd_level(cd, n);
  size_t base = b ? b->cols() : 0;
  QMat sys = b ? b->hstack(img) : img;
  return qrank(sys) == base + cs.dim[n];
}

}  // namespace

Report quasi_iso_check(const CurveTriple& t, int window) {
  int w = pick_window(t, window);
  int s = std::max(t.y.degree() - static_cast<int>(t.y.npoints()),
                   t.z.degree() - static_cast<int>(t.z.npoints()));
  P1Divisor yr = t.y.reduced(), zr = t.z.reduced();

  Report rep;
  auto run = [&](int base) {
    CechModel fyz(corner_shape(t.y, t.z), base + s);
    CechModel fyzr(corner_shape(t.y, zr), base);
    CechModel fyrz(corner_shape(yr, t.z), base + 2 * s);
    CechModel fyrzr(corner_shape(yr, zr), base + s);
    CechCohomology cyz = cech_cohomology(fyz), cyzr = cech_cohomology(fyzr),
                   cyrz = cech_cohomology(fyrz), cyrzr = cech_cohomology(fyrzr);
    struct Edge {
      const char* id;
      const CechModel *s, *d;
      const CechCohomology *cs, *cd;
    } edges[] = {
        {"z-side-full", &fyzr, &fyz, &cyzr, &cyz},
        {"z-side-red", &fyrzr, &fyrz, &cyrzr, &cyrz},
        {"y-side-full", &fyz, &fyrz, &cyz, &cyrz},
        {"y-side-red", &fyzr, &fyrzr, &cyzr, &cyrzr},
    };
    std::vector<size_t> dims;
    for (auto& e : edges) {
      CechMap f(*e.s, *e.d);
      for (int n = 0; n < 3; ++n)
        rep.add(e.id, iso_on_h(f, *e.d, *e.cs, *e.cd, n),
                base == w ? "" : "stability rerun", n);
    }
    for (auto* c : {&cyz, &cyzr, &cyrz, &cyrzr})
      for (int n = 0; n < 3; ++n) dims.push_back(c->dim[n]);
    return dims;
  };
  auto d1 = run(w);
  auto d2 = run(w + trunc_margin());
  rep.add("stable", d1 == d2, "dimensions unchanged under wider truncation");
  return rep;
}

ModulusSpaces modulus_spaces(const CurveTriple& t, int n, int k) {
  if (n < 0 || n > 2) throw std::invalid_argument("modulus_spaces degree out of range");
  ModulusSpaces out;
  for (auto& [y, m] : t.y.pts) {
    size_t q0 = k >= 1 ? static_cast<size_t>(m - 1) : 0;  // jet orders 1..m-1
    size_t q1 = k >= 2 ? static_cast<size_t>(m - 1) : 0;  // form jet orders 0..m-2
    QMat d(q1, q0);
    for (size_t j = 1; j <= std::min(q0, q1); ++j) d.at(j - 1, j - 1) = Rat(static_cast<long>(j));
    if (n == 1) {
      QMat ker = qkernel(d);
      for (size_t c = 0; c < ker.cols(); ++c)
        for (size_t i = 0; i < ker.rows(); ++i)
          if (ker.at(i, c) != 0) out.add_basis.push_back({y, static_cast<int>(i) + 1});
    } else if (n == 2) {
      for (size_t i : qextend(d, QMat::identity(q1)))
        out.add_basis.push_back({y, static_cast<int>(i)});
    }
  }
  for (auto& [z, m] : t.z.pts) {
    size_t q0 = k <= 0 ? static_cast<size_t>(m - 1) : 0;  // pole orders 1..m-1
    size_t q1 = k <= 1 ? static_cast<size_t>(m - 1) : 0;  // pole form orders 2..m
    QMat d(q1, q0);
    for (size_t j = 1; j <= std::min(q0, q1); ++j)
      d.at(j - 1, j - 1) = Rat(-static_cast<long>(j));
    if (n == 0) {
      QMat ker = qkernel(d);
      for (size_t c = 0; c < ker.cols(); ++c)
        for (size_t i = 0; i < ker.rows(); ++i)
          if (ker.at(i, c) != 0) out.inf_basis.push_back({z, static_cast<int>(i) + 1});
    } else if (n == 1) {
      for (size_t i : qextend(d, QMat::identity(q1)))
        out.inf_basis.push_back({z, static_cast<int>(i) + 2});
    }
  }
  return out;
}

Splittings splittings(const CurveTriple& t, int n, int k, int window) {
  if (n < 0 || n > 2) throw std::invalid_argument("splittings degree out of range");
  int w = pick_window(t, window);
  int s = std::max(t.y.degree() - static_cast<int>(t.y.npoints()),
                   t.z.degree() - static_cast<int>(t.z.npoints()));
  P1Divisor yr = t.y.reduced(), zr = t.z.reduced();
  P1Divisor ydiff = P1Divisor::of(combine(scaled(t.y, 1), scaled(yr, -1), 1));
  P1Divisor zdiff = P1Divisor::of(combine(scaled(t.z, 1), scaled(zr, -1), 1));

  ComplexShape sa = omega_complex(t, k);
  ComplexShape srz = omega_complex(CurveTriple{t.y, zr}, k);
  ComplexShape sry = omega_complex(CurveTriple{yr, t.z}, k);
  ComplexShape sb2{srz.l0.twisted(zdiff, +1), srz.l1.twisted(zdiff, +1)};
  ComplexShape so2{sry.l0.twisted(ydiff, -1), sry.l1.twisted(ydiff, -1)};

  CechModel a(sa, w + s), arz(srz, w), ary(sry, w + 2 * s), b2(sb2, w + 2 * s), o2(so2, w);
  CechCohomology ca = cech_cohomology(a), carz = cech_cohomology(arz),
                 cary = cech_cohomology(ary), cb2 = cech_cohomology(b2);

  CechMap alpha(arz, a), beta(a, b2), ba(arz, b2), zeta(o2, ary), delta(o2, a), up(a, ary);

  Splittings out;
  out.dim = ca.dim[n];
  out.dim_rz = carz.dim[n];
  out.dim_ry = cary.dim[n];

  out.a = coords_in(ca, n, map_level(alpha, n) * carz.basis[n]);
  {
    QMat m1 = coords_in(cb2, n, map_level(ba, n) * carz.basis[n]);
    auto inv = qinverse(m1);
    if (!inv) throw std::logic_error("twist comparison not invertible");
    out.b = *inv * coords_in(cb2, n, map_level(beta, n) * ca.basis[n]);
  }
  {
    // cochain-level section through the untwisted middle complex
    const QMat& zn = map_level(zeta, n);
    QMat sys = zn;
    if (n >= 1) sys = zn.hstack(n == 1 ? ary.d0 : ary.d1);
    auto sol = qsolve(sys, cary.basis[n]);
    if (!sol) throw std::logic_error("section solve failed");
    QMat wpart = sol->submatrix(0, 0, zn.cols(), cary.dim[n]);
    out.a2 = coords_in(ca, n, map_level(delta, n) * wpart);
  }
  out.b2 = coords_in(cary, n, map_level(up, n) * ca.basis[n]);

  auto is_id = [](const QMat& m) {
    return m.rows() == m.cols() && m == QMat::identity(m.rows());
  };
  if (!is_id(out.b * out.a) || !is_id(out.b2 * out.a2))
    throw std::logic_error("splitting retraction failed");
  return out;
}

}  // namespace modhodge
