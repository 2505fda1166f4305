#include "modhodge/fggroup.hpp"

#include <stdexcept>

namespace modhodge {

ZMatrix FgGroup::relations() const {
  ZMatrix r(gens(), factors.size());
  for (size_t j = 0; j < factors.size(); ++j) r.at(free_rank + j, j) = factors[j];
  return r;
}

GroupHom GroupHom::identity(const FgGroup& g) {
  return GroupHom{g, g, ZMatrix::identity(g.gens())};
}

bool GroupHom::valid() const {
  if (m.rows() != dst.gens() || m.cols() != src.gens()) return false;
  for (size_t j = 0; j < src.factors.size(); ++j) {
    const Int& d = src.factors[j];
    size_t col = src.free_rank + j;
    for (size_t i = 0; i < dst.gens(); ++i) {
      Int v = d * m.at(i, col);
      if (i < dst.free_rank) {
        if (v != 0) return false;
      } else if (v % dst.factors[i - dst.free_rank] != 0) {
        return false;
      }
    }
  }
  return true;
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
  if (!(inner.dst == src)) throw std::invalid_argument("compose: middle group mismatch");
  return GroupHom{inner.src, dst, m * inner.m};
}

ZMatrix GroupHom::free_block() const {
  return m.submatrix(0, 0, dst.free_rank, src.free_rank);
}

FgGroup free_part(const FgGroup& g) { return FgGroup::free(g.free_rank); }

FgGroup z_dual(const FgGroup& g) { return FgGroup::free(g.free_rank); }

FgGroup group_from_invariants(size_t free_rank, std::vector<Int> ds) {
  size_t extra_free = 0;
  std::vector<Int> nz;
  for (auto& d : ds) {
    Int a = abs(d);
    if (a == 0)
      ++extra_free;
    else if (a > 1)
      nz.push_back(a);
  }
  ZMatrix diag(nz.size(), nz.size());
  for (size_t i = 0; i < nz.size(); ++i) diag.at(i, i) = nz[i];
  Snf s = smith_normal_form(diag);
  FgGroup g;
  g.free_rank = free_rank + extra_free;
  for (size_t i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) > 1) g.factors.push_back(s.d.at(i, i));
  return g;
}

CokerPres cokernel_presentation(size_t n, const ZMatrix& image_cols) {
  if (image_cols.rows() != n) throw std::invalid_argument("cokernel ambient mismatch");
  Snf s = smith_normal_form(image_cols);
  std::vector<size_t> torsion_rows;
  for (size_t i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) > 1) torsion_rows.push_back(i);
  CokerPres out;
  out.group.free_rank = n - s.rank;
  for (size_t i : torsion_rows) out.group.factors.push_back(s.d.at(i, i));
  out.proj = ZMatrix(out.group.gens(), n);
  // free coordinates: rows of u past the rank; torsion: rows with d_i >= 2
  for (size_t a = 0; a < out.group.free_rank; ++a)
    for (size_t j = 0; j < n; ++j) out.proj.at(a, j) = s.u.at(s.rank + a, j);
  for (size_t b = 0; b < torsion_rows.size(); ++b)
    for (size_t j = 0; j < n; ++j)
      out.proj.at(out.group.free_rank + b, j) = s.u.at(torsion_rows[b], j);
  return out;
}

NormalizedGroup normalize_presentation(size_t g, const ZMatrix& relations) {
  if (relations.rows() != g) throw std::invalid_argument("presentation ambient mismatch");
  Snf s = smith_normal_form(relations);
  std::vector<size_t> keep;  // free coordinates first, then torsion ones
  for (size_t i = s.rank; i < g; ++i) keep.push_back(i);
  NormalizedGroup out;
  out.group.free_rank = g - s.rank;
  for (size_t i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) > 1) {
      out.group.factors.push_back(s.d.at(i, i));
      keep.push_back(i);
    }
  size_t ng = out.group.gens();
  out.to_normal = ZMatrix(ng, g);
  out.from_normal = ZMatrix(g, ng);
  for (size_t a = 0; a < ng; ++a)
    for (size_t j = 0; j < g; ++j) {
      out.to_normal.at(a, j) = s.u.at(keep[a], j);
      out.from_normal.at(j, a) = s.uinv.at(j, keep[a]);
    }
  return out;
}

GroupCalc group_calc(const GroupHom& f) {
  if (!f.valid()) throw std::invalid_argument("group_calc: invalid hom");
  ZMatrix rs = f.src.relations(), rd = f.dst.relations();
  ZMatrix mr = f.m.hstack(rd);
  GroupCalc out;
  out.cokernel = cokernel_presentation(f.dst.gens(), mr).group;
  // kernel of Z^gs/Rs -> Z^gd/Rd is K/span(Rs) with K = preimage of span(Rd)
  ZMatrix big = f.m.hstack(-rd);
  ZMatrix k = zkernel(big);
  ZMatrix kgens = k.submatrix(0, 0, f.src.gens(), k.cols());
  ZMatrix kb = lattice_basis(kgens);
  size_t kfree = 0;
  auto kfac = lattice_quotient_invariants(kb, rs, &kfree);
  out.kernel = group_from_invariants(kfree, kfac);
  // image = span([m | Rd]) / span(Rd)
  ZMatrix lb = lattice_basis(mr);
  size_t ifree = 0;
  auto ifac = lattice_quotient_invariants(lb, rd, &ifree);
  out.image = group_from_invariants(ifree, ifac);
  return out;
}

}  // namespace modhodge
