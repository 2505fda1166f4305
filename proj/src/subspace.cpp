#include "modhodge/subspace.hpp"

#include <stdexcept>

namespace modhodge {

Subspace Subspace::zero(size_t ambient) {
  Subspace s;
  s.amb_ = ambient;
  s.basis_ = KMatrix(ambient, 0);
  return s;
}

Subspace Subspace::full(size_t ambient) {
  Subspace s;
  s.amb_ = ambient;
  s.basis_ = KMatrix::identity(ambient);
  return s;
}

Subspace Subspace::from_cols(size_t ambient, const KMatrix& cols) {
  if (cols.rows() != ambient) throw std::invalid_argument("subspace ambient mismatch");
  Rref r = rref(cols.transpose());
  Subspace s;
  s.amb_ = ambient;
  s.basis_ = r.R.submatrix(0, 0, r.rank(), cols.rows()).transpose();
  return s;
}

bool Subspace::contains(const KMatrix& vec) const {
  if (vec.rows() != amb_ || vec.cols() != 1) throw std::invalid_argument("vector shape");
  return solve(basis_, vec).has_value();
}

bool Subspace::contains(const Subspace& s) const {
  if (s.amb_ != amb_) throw std::invalid_argument("ambient mismatch");
  if (s.dim() > dim()) return false;
  return solve(basis_, s.basis_).has_value();
}

Subspace Subspace::sum(const Subspace& o) const {
  if (amb_ != o.amb_) throw std::invalid_argument("ambient mismatch");
  return from_cols(amb_, basis_.hstack(o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (amb_ != o.amb_) throw std::invalid_argument("ambient mismatch");
  if (dim() == 0 || o.dim() == 0) return zero(amb_);
  // ker [A | -B]: the A-part coordinates hit the intersection
  KMatrix k = kernel_basis(basis_.hstack(-o.basis_));
  KMatrix acoords = k.submatrix(0, 0, dim(), k.cols());
  return from_cols(amb_, basis_ * acoords);
}

Subspace Subspace::annihilator() const {
  // functionals phi with phi(b) = 0 for all basis columns b
  return from_cols(amb_, kernel_basis(basis_.transpose()));
}

Subspace Subspace::conj() const {
  return from_cols(amb_, basis_.conj());
}

std::optional<KMatrix> Subspace::coords_of(const KMatrix& vec) const {
  return solve(basis_, vec);
}

Subspace preimage(const KMatrix& f, const Subspace& s) {
  if (f.rows() != s.ambient()) throw std::invalid_argument("preimage shape mismatch");
  Subspace ann = s.annihilator();
  if (ann.dim() == 0) return Subspace::full(f.cols());
  return Subspace::from_cols(f.cols(), kernel_basis(ann.basis().transpose() * f));
}

Subspace image(const KMatrix& f, const Subspace& s) {
  if (f.cols() != s.ambient()) throw std::invalid_argument("image shape mismatch");
  return Subspace::from_cols(f.rows(), f * s.basis());
}

QuotientPres quotient(const Subspace& s) {
  Rref r = rref(s.basis().transpose());
  std::vector<size_t> nonpivot;
  size_t pi = 0;
  for (size_t j = 0; j < s.ambient(); ++j) {
    if (pi < r.pivots.size() && r.pivots[pi] == j)
      ++pi;
    else
      nonpivot.push_back(j);
  }
  size_t q = nonpivot.size();
  QuotientPres out;
  out.proj = KMatrix(q, s.ambient());
  out.sect = KMatrix(s.ambient(), q);
  for (size_t a = 0; a < q; ++a) {
    out.proj.at(a, nonpivot[a]) = Scalar(1);
    // subtract the S-combination that clears the pivot coordinates
    for (size_t i = 0; i < r.pivots.size(); ++i)
      out.proj.at(a, r.pivots[i]) = -r.R.at(i, nonpivot[a]);
    out.sect.at(nonpivot[a], a) = Scalar(1);
  }
  return out;
}

}  // namespace modhodge
