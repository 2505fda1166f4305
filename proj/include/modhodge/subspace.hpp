#pragma once
// Subspaces of K^n in reduced column echelon form, so equality of subspaces
// is equality of representations.  Quotients are presented in the non-pivot
// coordinates of the subspace, which keeps them canonical too.

#include "modhodge/matrix.hpp"

namespace modhodge {

class Subspace {
 public:
  Subspace() : amb_(0) {}
  static Subspace zero(size_t ambient);
  static Subspace full(size_t ambient);
  // span of the columns; canonicalizes
  static Subspace from_cols(size_t ambient, const KMatrix& cols);

  size_t ambient() const { return amb_; }
  size_t dim() const { return basis_.cols(); }
  const KMatrix& basis() const { return basis_; }  // ambient x dim, RCEF

  bool contains(const KMatrix& vec) const;  // vec: ambient x 1
  bool contains(const Subspace& s) const;
  bool operator==(const Subspace& o) const { return amb_ == o.amb_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  // functionals vanishing on the space, as a subspace of the dual K^n
  Subspace annihilator() const;
  bool is_rational() const { return basis_.is_rational(); }
  Subspace conj() const;  // pre: basis conjugatable

  std::optional<KMatrix> coords_of(const KMatrix& vec) const;  // basis * x = vec

 private:
  size_t amb_;
  KMatrix basis_;
};

Subspace preimage(const KMatrix& f, const Subspace& s);  // {x : f x in s}
Subspace image(const KMatrix& f, const Subspace& s);

// Presentation of K^amb / S by the non-pivot coordinates of S:
// proj * sect = identity, ker(proj) = S.
struct QuotientPres {
  KMatrix proj;  // q x amb
  KMatrix sect;  // amb x q
};
QuotientPres quotient(const Subspace& s);

}  // namespace modhodge
