#include "modhodge/matrix.hpp"

#include <stdexcept>

namespace modhodge {

KMatrix KMatrix::identity(size_t n) {
  KMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

KMatrix KMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  size_t r = rows.size(), c = r ? rows[0].size() : 0;
  KMatrix m(r, c);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
    for (size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

KMatrix KMatrix::operator*(const KMatrix& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
  KMatrix m(r_, o.c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.c_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) m.at(i, j) = m.at(i, j) + a * b;
      }
    }
  return m;
}

KMatrix KMatrix::operator+(const KMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix sum shape mismatch");
  KMatrix m(r_, c_);
  for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = d_[i] + o.d_[i];
  return m;
}

KMatrix KMatrix::operator-(const KMatrix& o) const { return *this + (-o); }

KMatrix KMatrix::operator-() const {
  KMatrix m(*this);
  for (auto& x : m.d_) x = -x;
  return m;
}

KMatrix KMatrix::scale(const Scalar& s) const {
  KMatrix m(*this);
  for (auto& x : m.d_) x = x * s;
  return m;
}

bool KMatrix::operator==(const KMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) return false;
  for (size_t i = 0; i < d_.size(); ++i)
    if (!(d_[i] == o.d_[i])) return false;
  return true;
}

bool KMatrix::is_zero() const {
  for (auto& x : d_)
    if (!x.is_zero()) return false;
  return true;
}

KMatrix KMatrix::transpose() const {
  KMatrix m(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

KMatrix KMatrix::hstack(const KMatrix& o) const {
  if (r_ != o.r_) throw std::invalid_argument("hstack row mismatch");
  KMatrix m(r_, c_ + o.c_);
  for (size_t i = 0; i < r_; ++i) {
    for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
    for (size_t j = 0; j < o.c_; ++j) m.at(i, c_ + j) = o.at(i, j);
  }
  return m;
}

KMatrix KMatrix::vstack(const KMatrix& o) const {
  if (c_ != o.c_) throw std::invalid_argument("vstack col mismatch");
  KMatrix m(r_ + o.r_, c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
  for (size_t i = 0; i < o.r_; ++i)
    for (size_t j = 0; j < c_; ++j) m.at(r_ + i, j) = o.at(i, j);
  return m;
}

KMatrix KMatrix::submatrix(size_t i0, size_t j0, size_t nrows, size_t ncols) const {
  KMatrix m(nrows, ncols);
  for (size_t i = 0; i < nrows; ++i)
    for (size_t j = 0; j < ncols; ++j) m.at(i, j) = at(i0 + i, j0 + j);
  return m;
}

KMatrix KMatrix::col(size_t j) const { return submatrix(0, j, r_, 1); }

KMatrix KMatrix::select_cols(const std::vector<size_t>& idx) const {
  KMatrix m(r_, idx.size());
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) m.at(i, j) = at(i, idx[j]);
  return m;
}

KMatrix KMatrix::select_rows(const std::vector<size_t>& idx) const {
  KMatrix m(idx.size(), c_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(idx[i], j);
  return m;
}

bool KMatrix::is_rational() const {
  for (auto& x : d_)
    if (!x.is_rational()) return false;
  return true;
}

bool KMatrix::is_conjugatable() const {
  for (auto& x : d_)
    if (x.has_lambda()) return false;
  return true;
}

KMatrix KMatrix::conj() const {
  KMatrix m(*this);
  for (auto& x : m.d_) x = x.conj();
  return m;
}

KMatrix KMatrix::block_diag(const std::vector<KMatrix>& blocks) {
  size_t r = 0, c = 0;
  for (auto& b : blocks) r += b.rows(), c += b.cols();
  KMatrix m(r, c);
  size_t i0 = 0, j0 = 0;
  for (auto& b : blocks) {
    for (size_t i = 0; i < b.rows(); ++i)
      for (size_t j = 0; j < b.cols(); ++j) m.at(i0 + i, j0 + j) = b.at(i, j);
    i0 += b.rows(), j0 += b.cols();
  }
  return m;
}

Rref rref(const KMatrix& m) {
  Rref out;
  out.R = m;
  KMatrix& a = out.R;
  size_t row = 0;
  for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    size_t piv = row;
    while (piv < a.rows() && a.at(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
    Scalar inv = a.at(row, col).inverse();
    for (size_t j = col; j < a.cols(); ++j) a.at(row, j) = a.at(row, j) * inv;
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a.at(i, col).is_zero()) continue;
      Scalar f = a.at(i, col);
      for (size_t j = col; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - f * a.at(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

size_t rank(const KMatrix& m) { return rref(m).rank(); }

std::optional<KMatrix> solve(const KMatrix& a, const KMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  Rref r = rref(a.hstack(b));
  for (size_t p : r.pivots)
    if (p >= a.cols()) return std::nullopt;  // inconsistent
  KMatrix x(a.cols(), b.cols());
  for (size_t i = 0; i < r.pivots.size(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) x.at(r.pivots[i], j) = r.R.at(i, a.cols() + j);
  return x;
}

KMatrix kernel_basis(const KMatrix& a) {
  Rref r = rref(a);
  std::vector<size_t> free_cols;
  size_t pi = 0;
  for (size_t j = 0; j < a.cols(); ++j) {
    if (pi < r.pivots.size() && r.pivots[pi] == j)
      ++pi;
    else
      free_cols.push_back(j);
  }
  KMatrix k(a.cols(), free_cols.size());
  for (size_t fj = 0; fj < free_cols.size(); ++fj) {
    size_t j = free_cols[fj];
    k.at(j, fj) = Scalar(1);
    for (size_t i = 0; i < r.pivots.size(); ++i) k.at(r.pivots[i], fj) = -r.R.at(i, j);
  }
  return k;
}

std::optional<KMatrix> inverse(const KMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  Rref r = rref(a.hstack(KMatrix::identity(a.rows())));
  if (r.rank() != a.rows()) return std::nullopt;
  for (size_t p : r.pivots)
    if (p >= a.cols()) return std::nullopt;
  return r.R.submatrix(0, a.cols(), a.rows(), a.cols());
}

}  // namespace modhodge
