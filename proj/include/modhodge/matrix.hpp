#pragma once
// Dense matrices over K with exact reduced row echelon form.  Sizes stay at
// desk scale, so O(n^3) exact arithmetic is the right trade.

#include <functional>
#include <optional>
#include <vector>

#include "modhodge/scalar.hpp"

namespace modhodge {

class KMatrix {
 public:
  KMatrix() : r_(0), c_(0) {}
  KMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), d_(rows * cols) {}

  static KMatrix identity(size_t n);
  static KMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Scalar& at(size_t i, size_t j) { return d_[i * c_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return d_[i * c_ + j]; }

  KMatrix operator*(const KMatrix& o) const;
  KMatrix operator+(const KMatrix& o) const;
  KMatrix operator-(const KMatrix& o) const;
  KMatrix operator-() const;
  KMatrix scale(const Scalar& s) const;
  bool operator==(const KMatrix& o) const;
  bool is_zero() const;

  KMatrix transpose() const;
  KMatrix hstack(const KMatrix& o) const;  // pre: same rows
  KMatrix vstack(const KMatrix& o) const;  // pre: same cols
  KMatrix submatrix(size_t i0, size_t j0, size_t nrows, size_t ncols) const;
  KMatrix col(size_t j) const;
  KMatrix select_cols(const std::vector<size_t>& idx) const;
  KMatrix select_rows(const std::vector<size_t>& idx) const;

  bool is_rational() const;
  bool is_conjugatable() const;
  KMatrix conj() const;

  static KMatrix block_diag(const std::vector<KMatrix>& blocks);

 private:
  size_t r_, c_;
  std::vector<Scalar> d_;
};

struct Rref {
  KMatrix R;
  std::vector<size_t> pivots;  // pivot column per nonzero row
  size_t rank() const { return pivots.size(); }
};

Rref rref(const KMatrix& m);
size_t rank(const KMatrix& m);

// particular solution of A X = B with free variables set to zero
std::optional<KMatrix> solve(const KMatrix& a, const KMatrix& b);
// columns form the canonical kernel basis (one per non-pivot column)
KMatrix kernel_basis(const KMatrix& a);
std::optional<KMatrix> inverse(const KMatrix& a);

}  // namespace modhodge
