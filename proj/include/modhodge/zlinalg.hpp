#pragma once
// Integer matrices with Smith normal form and the lattice utilities built on
// it: integral kernels and solves, saturation, and quotient invariants.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "modhodge/matrix.hpp"

namespace modhodge {

class ZMatrix {
 public:
  ZMatrix() : r_(0), c_(0) {}
  ZMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), d_(rows * cols) {}
  static ZMatrix identity(size_t n);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Int& at(size_t i, size_t j) { return d_[i * c_ + j]; }
  const Int& at(size_t i, size_t j) const { return d_[i * c_ + j]; }

  ZMatrix operator*(const ZMatrix& o) const;
  ZMatrix operator-() const;
  bool operator==(const ZMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
  bool is_zero() const;

  ZMatrix transpose() const;
  ZMatrix hstack(const ZMatrix& o) const;
  ZMatrix vstack(const ZMatrix& o) const;
  ZMatrix submatrix(size_t i0, size_t j0, size_t nrows, size_t ncols) const;

  KMatrix to_k() const;
  static std::optional<ZMatrix> from_k(const KMatrix& m);  // fails on non-integers

 private:
  size_t r_, c_;
  std::vector<Int> d_;
};

struct Snf {
  ZMatrix u, uinv;  // row transform and its inverse, u * m * v = d
  ZMatrix v, vinv;
  ZMatrix d;     // diagonal, d_i >= 0, d_i | d_{i+1}
  size_t rank;   // number of nonzero diagonal entries
};

Snf smith_normal_form(const ZMatrix& m);

Int zdet(const ZMatrix& m);                                   // pre: square
ZMatrix zkernel(const ZMatrix& m);                            // saturated basis, cols
std::optional<ZMatrix> zsolve(const ZMatrix& m, const ZMatrix& b);
// basis (cols) of the smallest saturated sublattice containing the columns
ZMatrix saturate(const ZMatrix& gens);
// basis (cols) of the lattice generated by the columns
ZMatrix lattice_basis(const ZMatrix& gens);
// invariant factors of (span gens_l) / (span gens_r); pre: span r inside span l
std::vector<Int> lattice_quotient_invariants(const ZMatrix& l, const ZMatrix& r,
                                             size_t* free_rank_out);

}  // namespace modhodge
