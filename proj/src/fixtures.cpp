#include "modhodge/fixtures.hpp"

#include <set>
#include <stdexcept>

namespace modhodge {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

KMatrix random_kmatrix(std::mt19937_64& rng, size_t r, size_t c) {
  KMatrix m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(pick(rng, -2, 2));
  return m;
}

KMatrix left_inverse(const KMatrix& b) {
  auto x = solve(b.transpose(), KMatrix::identity(b.cols()));
  if (!x) throw std::logic_error("left_inverse: not full column rank");
  return x->transpose();
}

// unimodular change of basis with small entries
ZMatrix random_unimodular(std::mt19937_64& rng, size_t n) {
  ZMatrix t = ZMatrix::identity(n);
  for (int ops = pick(rng, 4, 8); ops > 0; --ops) {
    size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    Int s(pick(rng, -2, 2));
    for (size_t k = 0; k < n; ++k) t.at(i, k) += s * t.at(j, k);
  }
  return t;
}

}  // namespace

TateFixture random_tate_fixture(std::mt19937_64& rng, bool with_torsion) {
  int wa = pick(rng, 1, 2), wb = pick(rng, 1, 2), wc = pick(rng, 0, 1);
  size_t n = static_cast<size_t>(wa + wb + wc);
  KMatrix tk = random_unimodular(rng, n).to_k();

  // columns of t: wc of weight -2, then wa of weight 0, then wb of weight 2
  MHS h;
  h.lattice = with_torsion
                  ? group_from_invariants(n, pick(rng, 0, 1) ? std::vector<Int>{2}
                                                             : std::vector<Int>{2, 4})
                  : FgGroup::free(n);
  h.tate_scale = 0;
  h.polarizable = true;
  if (wc > 0)
    h.weight.emplace(-2, Subspace::from_cols(n, tk.submatrix(0, 0, n, static_cast<size_t>(wc))));
  h.weight.emplace(0, Subspace::from_cols(n, tk.submatrix(0, 0, n, static_cast<size_t>(wc + wa))));
  h.weight.emplace(2, Subspace::full(n));
  h.hodge.emplace(-1, Subspace::full(n));
  h.hodge.emplace(0, Subspace::from_cols(
                         n, tk.submatrix(0, static_cast<size_t>(wc), n, static_cast<size_t>(wa + wb))));
  h.hodge.emplace(1, Subspace::from_cols(
                         n, tk.submatrix(0, static_cast<size_t>(wc + wa), n, static_cast<size_t>(wb))));
  h.normalize();

  size_t na0 = static_cast<size_t>(pick(rng, 1, 2));
  size_t na1 = static_cast<size_t>(pick(rng, 0, 2));
  size_t ni1 = static_cast<size_t>(pick(rng, 1, 2));
  MHSMObject obj;
  obj.mhs = h;
  obj.add.dims[0] = static_cast<int>(na0);
  if (na1 > 0) {
    obj.add.dims[1] = static_cast<int>(na1);
    KMatrix tr = random_kmatrix(rng, na0, na1);
    if (!tr.is_zero()) obj.add.tr[1] = tr;
  }
  obj.inf.dims[1] = static_cast<int>(ni1);
  obj.fmin = -1;
  obj.fmax = 2;

  // graph over the Hodge filtration: A0 restricted to F^1 must equal tau A1
  KMatrix b0 = h.hodge_at(0).basis(), b1 = h.hodge_at(1).basis();
  size_t f0 = b0.cols(), f1 = b1.cols();
  KMatrix c1 = *solve(b0, b1);
  KMatrix a1 = random_kmatrix(rng, na1, f1);
  KMatrix m = obj.add.tmat(1) * a1;
  KMatrix pt = *solve(c1.transpose(), m.transpose());
  KMatrix kc = kernel_basis(c1.transpose());
  KMatrix a0 = (pt + kc * random_kmatrix(rng, kc.cols(), na0)).transpose();

  // inf graph at level 1: columns must flow into the level-0 graph
  KMatrix annt = h.hodge_at(0).annihilator().basis().transpose();
  KMatrix l0 = left_inverse(b0);
  KMatrix top = annt.hstack(KMatrix(annt.rows(), na1));
  KMatrix bot = (a0 * l0).scale(Scalar(-1)).hstack(obj.add.tmat(1));
  KMatrix ks = kernel_basis(top.vstack(bot));
  KMatrix bc1(n, ni1), ba1(na1, ni1);
  for (size_t j = 0; j < ni1; ++j) {
    KMatrix z = ks * random_kmatrix(rng, ks.cols(), 1);
    for (size_t i = 0; i < n; ++i) bc1.at(i, j) = z.at(i, 0);
    for (size_t i = 0; i < na1; ++i) ba1.at(i, j) = z.at(n + i, 0);
  }

  size_t amb0 = n + na0, amb1 = n + na1 + ni1;
  KMatrix cols0 = b0.vstack(a0);
  KMatrix fcols = b1.vstack(a1).vstack(KMatrix(ni1, f1));
  KMatrix icols = bc1.vstack(ba1).vstack(KMatrix::identity(ni1));
  obj.filt.emplace(0, Subspace::from_cols(amb0, cols0));
  obj.filt.emplace(1, Subspace::from_cols(amb1, fcols.hstack(icols)));

  TateFixture out;
  out.valid = obj;

  // (a): perturb the level-0 graph on the image of F^1, so the level-1
  // transport falls outside; everything below level 0 is unconstrained
  size_t istar = 0;
  for (size_t i = 0; i < f0; ++i)
    for (size_t j = 0; j < f1; ++j)
      if (!c1.at(i, j).is_zero()) {
        istar = i;
        j = f1;
        i = f0;
      }
  KMatrix a0b = a0;
  size_t rstar = rng() % na0;
  a0b.at(rstar, istar) = a0b.at(rstar, istar) + Scalar(1);
  out.broken[0] = obj;
  out.broken[0].filt.at(0) = Subspace::from_cols(amb0, b0.vstack(a0b));

  // (b): forget one Hodge-graph generator at the top level
  out.broken[1] = obj;
  out.broken[1].filt.at(1) =
      Subspace::from_cols(amb1, fcols.submatrix(0, 0, amb1, f1 - 1).hstack(icols));

  // (c): forget one inf-graph generator at the top level
  out.broken[2] = obj;
  out.broken[2].filt.at(1) =
      Subspace::from_cols(amb1, fcols.hstack(icols.submatrix(0, 0, amb1, ni1 - 1)));

  // (d): slip a bare additive vector into level 0
  KMatrix extra(amb0, 1);
  extra.at(n, 0) = Scalar(1);
  out.broken[3] = obj;
  out.broken[3].filt.at(0) = Subspace::from_cols(amb0, cols0.hstack(extra));

  return out;
}

namespace {

// level filtration as a graph over the given Hodge basis plus a covering
// block for the infinity coordinates
Subspace graph_filtration(std::mt19937_64& rng, const KMatrix& fb, size_t na, size_t ni,
                          const KMatrix& inf_c_part) {
  size_t n = fb.rows(), f = fb.cols();
  KMatrix top = fb.vstack(random_kmatrix(rng, na, f)).vstack(KMatrix(ni, f));
  KMatrix cover =
      inf_c_part.vstack(random_kmatrix(rng, na, ni)).vstack(KMatrix::identity(ni));
  return Subspace::from_cols(n + na + ni, top.hstack(cover));
}

}  // namespace

MHSMObject random_mhsm1(std::mt19937_64& rng) {
  int w2 = pick(rng, 0, 1), p = pick(rng, 0, 1), w0 = pick(rng, 1, 2);
  int w1 = 2 * p;
  size_t n = static_cast<size_t>(w2 + w1 + w0);
  KMatrix tk = random_unimodular(rng, n).to_k();

  // columns of t: w2 of weight -2, then a middle pair, then w0 of weight 0
  MHS h;
  h.lattice = FgGroup::free(n);
  h.tate_scale = pick(rng, -1, 1);
  h.polarizable = true;
  if (w2 > 0)
    h.weight.emplace(-2, Subspace::from_cols(n, tk.submatrix(0, 0, n, static_cast<size_t>(w2))));
  h.weight.emplace(-1,
                   Subspace::from_cols(n, tk.submatrix(0, 0, n, static_cast<size_t>(w2 + w1))));
  h.weight.emplace(0, Subspace::full(n));

  // F^0: the weight-zero lifts mixed downward, plus one complex line per
  // middle pair so that F and its conjugate split the middle piece
  KMatrix f0c(n, static_cast<size_t>(w0 + p));
  for (int j = 0; j < w0; ++j) {
    for (size_t i = 0; i < n; ++i) f0c.at(i, static_cast<size_t>(j)) = tk.at(i, static_cast<size_t>(w2 + w1 + j));
    for (int m = 0; m < w1; ++m) {
      Scalar c(pick(rng, -1, 1));
      for (size_t i = 0; i < n; ++i)
        f0c.at(i, static_cast<size_t>(j)) =
            f0c.at(i, static_cast<size_t>(j)) + c * tk.at(i, static_cast<size_t>(w2 + m));
    }
  }
  for (int j = 0; j < p; ++j) {
    size_t col = static_cast<size_t>(w0 + j);
    Scalar c(pick(rng, -1, 1));
    for (size_t i = 0; i < n; ++i) {
      f0c.at(i, col) = tk.at(i, static_cast<size_t>(w2 + 2 * j)) +
                       Scalar::tau() * tk.at(i, static_cast<size_t>(w2 + 2 * j + 1));
      if (w2 > 0) f0c.at(i, col) = f0c.at(i, col) + c * tk.at(i, 0);
    }
  }
  h.hodge.emplace(-1, Subspace::full(n));
  h.hodge.emplace(0, Subspace::from_cols(n, f0c));
  h.normalize();

  size_t na = static_cast<size_t>(pick(rng, 0, 2)), ni = static_cast<size_t>(pick(rng, 0, 2));
  MHSMObject x;
  x.mhs = h;
  if (na) x.add.dims[0] = static_cast<int>(na);
  if (ni) x.inf.dims[0] = static_cast<int>(ni);
  x.fmin = -1;
  x.fmax = 1;
  x.filt[0] =
      graph_filtration(rng, h.hodge_at(0).basis(), na, ni, random_kmatrix(rng, n, ni));
  return x;
}

MHSMObject random_box1_fixture(std::mt19937_64& rng, bool sigma_zero) {
  int wa = pick(rng, 1, 2), wb = pick(rng, 1, 2);
  size_t n = static_cast<size_t>(wa + wb);
  KMatrix tk = random_unimodular(rng, n).to_k();

  MHS h;
  h.lattice = FgGroup::free(n);
  h.tate_scale = 0;
  h.polarizable = true;
  h.weight.emplace(0, Subspace::from_cols(n, tk.submatrix(0, 0, n, static_cast<size_t>(wa))));
  h.weight.emplace(2, Subspace::full(n));
  h.hodge.emplace(0, Subspace::full(n));
  h.hodge.emplace(1, Subspace::from_cols(
                         n, tk.submatrix(0, static_cast<size_t>(wa), n, static_cast<size_t>(wb))));
  h.normalize();

  size_t na = static_cast<size_t>(pick(rng, 1, 2)), ni = static_cast<size_t>(pick(rng, 1, 2));
  MHSMObject x;
  x.mhs = h;
  x.add.dims[1] = static_cast<int>(na);
  x.inf.dims[1] = static_cast<int>(ni);
  x.fmin = 0;
  x.fmax = 2;

  // covering block inside F^1 keeps the infinity classes zero in the
  // drop-add quotient; pushing one column out of F^1 breaks that
  KMatrix f1b = h.hodge_at(1).basis();
  KMatrix cc = f1b * random_kmatrix(rng, f1b.cols(), ni);
  if (!sigma_zero)
    for (size_t i = 0; i < n; ++i) cc.at(i, 0) = cc.at(i, 0) + tk.at(i, 0);
  x.filt[1] = graph_filtration(rng, f1b, na, ni, cc);
  return x;
}

namespace {

struct UnknownBlock {
  size_t r = 0, c = 0, offset = 0;
};

struct Term {
  int block;
  KMatrix p, q;  // contributes p * X_block * q
};

void append_equation(std::vector<std::vector<Scalar>>& rows, size_t total,
                     const std::vector<UnknownBlock>& blocks, const std::vector<Term>& terms,
                     size_t er, size_t ec) {
  for (size_t i = 0; i < er; ++i)
    for (size_t j = 0; j < ec; ++j) {
      std::vector<Scalar> row(total);
      bool nonzero = false;
      for (const Term& t : terms) {
        const UnknownBlock& b = blocks[static_cast<size_t>(t.block)];
        for (size_t r = 0; r < b.r; ++r) {
          const Scalar& pir = t.p.at(i, r);
          if (pir.is_zero()) continue;
          for (size_t c = 0; c < b.c; ++c) {
            Scalar v = pir * t.q.at(c, j);
            if (v.is_zero()) continue;
            size_t idx = b.offset + r * b.c + c;
            row[idx] = row[idx] + v;
            nonzero = true;
          }
        }
      }
      if (nonzero) rows.push_back(std::move(row));
    }
}

}  // namespace

std::vector<MHSMMorphism> sample_morphisms(std::mt19937_64& rng, const MHSMObject& x,
                                           const MHSMObject& y, size_t count) {
  size_t ns = x.mhs.lattice.free_rank, nd = y.mhs.lattice.free_rank;
  std::vector<UnknownBlock> blocks;
  std::map<std::pair<int, int>, int> bidx;  // (kind, level): 0 lattice, 1 add, 2 inf
  size_t total = 0;
  auto add_block = [&](int kind, int level, size_t r, size_t c) {
    if (r == 0 || c == 0) return;
    bidx[{kind, level}] = static_cast<int>(blocks.size());
    blocks.push_back({r, c, total});
    total += r * c;
  };
  add_block(0, 0, nd, ns);
  for (auto& [k, d] : x.add.dims) add_block(1, k, static_cast<size_t>(y.add.dim(k)), static_cast<size_t>(d));
  for (auto& [k, d] : x.inf.dims) add_block(2, k, static_cast<size_t>(y.inf.dim(k)), static_cast<size_t>(d));
  auto block_of = [&](int kind, int level) {
    auto it = bidx.find({kind, level});
    return it == bidx.end() ? -1 : it->second;
  };

  std::vector<std::vector<Scalar>> rows;
  auto transitions = [&](int kind, const VecSeq& sa, const VecSeq& sb) {
    std::set<int> ks;
    for (auto& [k, d] : sa.dims) {
      (void)d;
      ks.insert(k);
      ks.insert(k + 1);
    }
    for (auto& [k, d] : sb.dims) {
      (void)d;
      ks.insert(k);
      ks.insert(k + 1);
    }
    for (int k : ks) {
      size_t er = static_cast<size_t>(sb.dim(k - 1)), ec = static_cast<size_t>(sa.dim(k));
      if (er == 0 || ec == 0) continue;
      std::vector<Term> terms;
      int bl = block_of(kind, k - 1);
      if (bl >= 0) terms.push_back({bl, KMatrix::identity(er), sa.tmat(k)});
      int br = block_of(kind, k);
      if (br >= 0) terms.push_back({br, sb.tmat(k).scale(Scalar(-1)), KMatrix::identity(ec)});
      if (!terms.empty()) append_equation(rows, total, blocks, terms, er, ec);
    }
  };
  transitions(1, x.add, y.add);
  transitions(2, x.inf, y.inf);

  int bz = block_of(0, 0);
  auto preserve = [&](const Subspace& sx, const Subspace& sy) {
    if (bz < 0) return;
    KMatrix ann = sy.annihilator().basis().transpose();
    KMatrix bas = sx.basis();
    if (ann.rows() == 0 || bas.cols() == 0) return;
    append_equation(rows, total, blocks, {{bz, ann, bas}}, ann.rows(), bas.cols());
  };
  {
    auto [alo, ahi] = x.mhs.weight_range();
    auto [blo, bhi] = y.mhs.weight_range();
    for (int m = std::min(alo, blo); m <= std::max(ahi, bhi); ++m)
      preserve(x.mhs.weight_at(m), y.mhs.weight_at(m));
    auto [clo, chi] = x.mhs.hodge_range();
    auto [dlo, dhi] = y.mhs.hodge_range();
    for (int p = std::min(clo, dlo); p <= std::max(chi, dhi); ++p)
      preserve(x.mhs.hodge_at(p), y.mhs.hodge_at(p));
  }
  {
    auto [alo, ahi] = x.level_range();
    auto [blo, bhi] = y.level_range();
    for (int k = std::min(alo, blo); k <= std::max(ahi, bhi); ++k) {
      KMatrix ann = y.filt_at(k).annihilator().basis().transpose();
      KMatrix bas = x.filt_at(k).basis();
      if (ann.rows() == 0 || bas.cols() == 0) continue;
      std::vector<Term> terms;
      if (bz >= 0) terms.push_back({bz, ann * y.incl_c(k), x.proj_c(k) * bas});
      int ba = block_of(1, k);
      if (ba >= 0)
        terms.push_back({ba, ann * y.incl_add(k), x.incl_add(k).transpose() * bas});
      int bi = block_of(2, k);
      if (bi >= 0)
        terms.push_back({bi, ann * y.proj_inf(k).transpose(), x.proj_inf(k) * bas});
      if (!terms.empty()) append_equation(rows, total, blocks, terms, ann.rows(), bas.cols());
    }
  }

  KMatrix sys(rows.size(), total);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < total; ++j) sys.at(i, j) = rows[i][j];
  KMatrix kb = kernel_basis(sys);

  std::vector<MHSMMorphism> out;
  for (size_t it = 0; it < count; ++it) {
    KMatrix z(total, 1);
    if (kb.cols() > 0) z = kb * random_kmatrix(rng, kb.cols(), 1);
    MHSMMorphism f;
    f.src = x;
    f.dst = y;
    ZMatrix zm(y.mhs.lattice.gens(), x.mhs.lattice.gens());
    bool usable = true;
    if (bz >= 0) {
      const UnknownBlock& b = blocks[static_cast<size_t>(bz)];
      Int den(1);
      for (size_t idx = 0; idx < b.r * b.c && usable; ++idx) {
        const Scalar& s = z.at(b.offset + idx, 0);
        if (!s.is_rational())
          usable = false;
        else
          den = lcm(den, Int(s.to_rational().get_den()));
      }
      if (!usable) continue;
      if (den != 1) z = z.scale(Scalar(den));
      for (size_t r = 0; r < b.r; ++r)
        for (size_t c = 0; c < b.c; ++c)
          zm.at(r, c) = z.at(b.offset + r * b.c + c, 0).to_rational().get_num();
    }
    f.fz = GroupHom{x.mhs.lattice, y.mhs.lattice, zm};
    for (auto& [key, bi] : bidx) {
      if (key.first == 0) continue;
      const UnknownBlock& b = blocks[static_cast<size_t>(bi)];
      KMatrix bm(b.r, b.c);
      for (size_t r = 0; r < b.r; ++r)
        for (size_t c = 0; c < b.c; ++c) bm.at(r, c) = z.at(b.offset + r * b.c + c, 0);
      if (key.first == 1)
        f.fadd.emplace(key.second, bm);
      else
        f.finf.emplace(key.second, bm);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::optional<MHSMMorphism> find_isomorphism(std::mt19937_64& rng, const MHSMObject& x,
                                             const MHSMObject& y, size_t tries) {
  for (auto& f : sample_morphisms(rng, x, y, tries))
    if (validate_mhsm_morphism(f).ok() && is_invertible(f)) return f;
  return std::nullopt;
}

MHSMObject direct_sum(const MHSMObject& x, const MHSMObject& y) {
  if (!x.mhs.lattice.is_free() || !y.mhs.lattice.is_free())
    throw std::invalid_argument("direct_sum: free lattices only");
  if (x.mhs.tate_scale != y.mhs.tate_scale)
    throw std::invalid_argument("direct_sum: tate scales differ");
  size_t n1 = x.dim_c(), n2 = y.dim_c();
  MHSMObject s;
  s.mhs.lattice = FgGroup::free(n1 + n2);
  s.mhs.tate_scale = x.mhs.tate_scale;
  s.mhs.polarizable = x.mhs.polarizable && y.mhs.polarizable;
  KMatrix e1(n1 + n2, n1), e2(n1 + n2, n2);
  for (size_t i = 0; i < n1; ++i) e1.at(i, i) = Scalar(1);
  for (size_t i = 0; i < n2; ++i) e2.at(n1 + i, i) = Scalar(1);
  {
    auto [alo, ahi] = x.mhs.weight_range();
    auto [blo, bhi] = y.mhs.weight_range();
    for (int m = std::min(alo, blo); m <= std::max(ahi, bhi); ++m)
      s.mhs.weight.emplace(m, image(e1, x.mhs.weight_at(m)).sum(image(e2, y.mhs.weight_at(m))));
    auto [clo, chi] = x.mhs.hodge_range();
    auto [dlo, dhi] = y.mhs.hodge_range();
    for (int p = std::min(clo, dlo); p <= std::max(chi, dhi); ++p)
      s.mhs.hodge.emplace(p, image(e1, x.mhs.hodge_at(p)).sum(image(e2, y.mhs.hodge_at(p))));
    s.mhs.normalize();
  }
  auto merge_seq = [](const VecSeq& a, const VecSeq& b, VecSeq& dst) {
    std::set<int> ks;
    for (auto& [k, d] : a.dims) {
      (void)d;
      ks.insert(k);
    }
    for (auto& [k, d] : b.dims) {
      (void)d;
      ks.insert(k);
    }
    for (int k : ks) dst.dims[k] = a.dim(k) + b.dim(k);
    for (int k : ks) {
      KMatrix t = KMatrix::block_diag({a.tmat(k), b.tmat(k)});
      if (!t.is_zero()) dst.tr[k] = t;
    }
  };
  merge_seq(x.add, y.add, s.add);
  merge_seq(x.inf, y.inf, s.inf);
  auto embed_level = [&](int k, bool first) {
    size_t nax = static_cast<size_t>(x.add.dim(k)), nay = static_cast<size_t>(y.add.dim(k));
    size_t nix = static_cast<size_t>(x.inf.dim(k)), niy = static_cast<size_t>(y.inf.dim(k));
    size_t amb = n1 + n2 + nax + nay + nix + niy;
    size_t nc = first ? n1 : n2, na = first ? nax : nay, ni = first ? nix : niy;
    KMatrix e(amb, nc + na + ni);
    size_t coff = first ? 0 : n1;
    size_t aoff = n1 + n2 + (first ? 0 : nax);
    size_t ioff = n1 + n2 + nax + nay + (first ? 0 : nix);
    for (size_t i = 0; i < nc; ++i) e.at(coff + i, i) = Scalar(1);
    for (size_t i = 0; i < na; ++i) e.at(aoff + i, nc + i) = Scalar(1);
    for (size_t i = 0; i < ni; ++i) e.at(ioff + i, nc + na + i) = Scalar(1);
    return e;
  };
  s.fmin = std::min(x.fmin, y.fmin);
  s.fmax = std::max(x.fmax, y.fmax);
  for (int k = s.fmin + 1; k < s.fmax; ++k)
    s.filt.emplace(k, image(embed_level(k, true), x.filt_at(k))
                          .sum(image(embed_level(k, false), y.filt_at(k))));
  return s;
}

namespace {

// level embedding of a summand into the direct sum, as block matrices
struct SumBlocks {
  MHSMObject sum;
  const MHSMObject *x, *y;

  KMatrix lattice_block(bool first) const {
    size_t n1 = x->dim_c(), n2 = y->dim_c();
    KMatrix m(n1 + n2, first ? n1 : n2);
    size_t off = first ? 0 : n1;
    for (size_t i = 0; i < m.cols(); ++i) m.at(off + i, i) = Scalar(1);
    return m;
  }
  KMatrix add_block(int k, bool first) const {
    size_t dx = static_cast<size_t>(x->add.dim(k)), dy = static_cast<size_t>(y->add.dim(k));
    KMatrix m(dx + dy, first ? dx : dy);
    size_t off = first ? 0 : dx;
    for (size_t i = 0; i < m.cols(); ++i) m.at(off + i, i) = Scalar(1);
    return m;
  }
  KMatrix inf_block(int k, bool first) const {
    size_t dx = static_cast<size_t>(x->inf.dim(k)), dy = static_cast<size_t>(y->inf.dim(k));
    KMatrix m(dx + dy, first ? dx : dy);
    size_t off = first ? 0 : dx;
    for (size_t i = 0; i < m.cols(); ++i) m.at(off + i, i) = Scalar(1);
    return m;
  }
};

}  // namespace

MHSMMorphism summand_inclusion(const MHSMObject& x, const MHSMObject& y, int which) {
  SumBlocks sb{direct_sum(x, y), &x, &y};
  bool first = which == 0;
  const MHSMObject& src = first ? x : y;
  MHSMMorphism f;
  f.src = src;
  f.dst = sb.sum;
  f.fz = GroupHom{src.mhs.lattice, sb.sum.mhs.lattice,
                  *ZMatrix::from_k(sb.lattice_block(first))};
  for (auto& [k, d] : src.add.dims) {
    (void)d;
    f.fadd.emplace(k, sb.add_block(k, first));
  }
  for (auto& [k, d] : src.inf.dims) {
    (void)d;
    f.finf.emplace(k, sb.inf_block(k, first));
  }
  return f;
}

MHSMMorphism summand_projection(const MHSMObject& x, const MHSMObject& y, int which) {
  SumBlocks sb{direct_sum(x, y), &x, &y};
  bool first = which == 0;
  const MHSMObject& dst = first ? x : y;
  MHSMMorphism f;
  f.src = sb.sum;
  f.dst = dst;
  f.fz = GroupHom{sb.sum.mhs.lattice, dst.mhs.lattice,
                  *ZMatrix::from_k(sb.lattice_block(first).transpose())};
  for (auto& [k, d] : dst.add.dims) {
    (void)d;
    f.fadd.emplace(k, sb.add_block(k, first).transpose());
  }
  for (auto& [k, d] : dst.inf.dims) {
    (void)d;
    f.finf.emplace(k, sb.inf_block(k, first).transpose());
  }
  return f;
}

}  // namespace modhodge
