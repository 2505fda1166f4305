#pragma once
// Dense rational polynomials, Laurent windows, local jets, and plain exact
// linear algebra over Q.  The Cech plumbing for the curve backend lives
// entirely over Q; results are lifted into K only at the very end, so the
// symbolic scalar field never enters the hot loops.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "modhodge/matrix.hpp"

namespace modhodge {

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(const Rat& c);
  static QPoly monomial(size_t d, const Rat& c);
  static QPoly linear(const Rat& root);  // t - root
  // prod (t - p)^m over the list; multiplicities >= 0
  static QPoly from_roots(const std::vector<std::pair<Rat, int>>& roots);

  bool is_zero() const { return c_.empty(); }
  int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 when zero
  Rat at(int d) const;
  const Rat& lead() const;  // pre: nonzero
  const std::vector<Rat>& coeffs() const { return c_; }

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly scale(const Rat& s) const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }

  QPoly derivative() const;
  Rat eval(const Rat& x) const;
  int ord_at(const Rat& p) const;  // vanishing order at p; pre: nonzero
  static std::pair<QPoly, QPoly> divrem(const QPoly& n, const QPoly& d);
  QPoly divexact(const QPoly& d) const;  // pre: remainder vanishes
  std::vector<Rat> jet(const Rat& p, size_t n) const;  // Taylor around p

 private:
  std::vector<Rat> c_;  // c_[i] on t^i, no trailing zero
  void trim();
};

std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, size_t n);
std::vector<Rat> series_inv(const std::vector<Rat>& a, size_t n);  // pre: a[0] != 0
// jet of num/den around p; pre: den(p) != 0
std::vector<Rat> rational_jet(const QPoly& num, const QPoly& den, const Rat& p, size_t n);

// contiguous range of Laurent degrees; empty when hi < lo
struct Window {
  int lo = 0, hi = -1;
  size_t dim() const { return hi < lo ? 0 : static_cast<size_t>(hi - lo + 1); }
  bool contains(int d) const { return lo <= d && d <= hi; }
  size_t index(int d) const { return static_cast<size_t>(d - lo); }
  bool operator==(const Window& o) const { return lo == o.lo && hi == o.hi; }
};

using QVec = std::vector<Rat>;
using Laurent = std::map<int, Rat>;  // degree -> coefficient, no zero entries

Laurent laurent_of(const QVec& v, Window w);
// coefficients outside w must vanish; throws otherwise
QVec vec_of(const Laurent& l, Window w);
Laurent laurent_add(Laurent a, const Laurent& b);
Laurent laurent_mul(const QPoly& g, const Laurent& h);
Laurent laurent_derivative(const Laurent& h);
Laurent laurent_divexact(const Laurent& h, const QPoly& g);  // pre: g != 0, divides
Rat laurent_coeff(const Laurent& l, int d);
Laurent laurent_of_poly(const QPoly& p);

class QMat {
 public:
  QMat() : r_(0), c_(0) {}
  QMat(size_t rows, size_t cols) : r_(rows), c_(cols), d_(rows * cols) {}
  static QMat identity(size_t n);
  static QMat from_cols(size_t rows, const std::vector<QVec>& cols);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Rat& at(size_t i, size_t j) { return d_[i * c_ + j]; }
  const Rat& at(size_t i, size_t j) const { return d_[i * c_ + j]; }

  QMat operator*(const QMat& o) const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  bool operator==(const QMat& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
  bool is_zero() const;
  QMat transpose() const;
  QMat hstack(const QMat& o) const;
  QMat vstack(const QMat& o) const;
  QMat submatrix(size_t i0, size_t j0, size_t nrows, size_t ncols) const;
  QVec col_vec(size_t j) const;
  QMat select_cols(const std::vector<size_t>& idx) const;

 private:
  size_t r_, c_;
  std::vector<Rat> d_;
};

size_t qrank(const QMat& m);
QMat qkernel(const QMat& m);  // canonical kernel basis, columns
// particular solutions of A X = B, all columns at once, free variables zero
std::optional<QMat> qsolve(const QMat& a, const QMat& b);
std::optional<QMat> qinverse(const QMat& a);
// indices of columns of `extra` that extend the column space of `base`
std::vector<size_t> qextend(const QMat& base, const QMat& extra);

KMatrix to_kmatrix(const QMat& m);
QMat to_qmat(const KMatrix& m);  // pre: every entry rational

}  // namespace modhodge
