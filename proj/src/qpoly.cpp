#include "modhodge/qpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace modhodge {

QPoly::QPoly(const Rat& c) {
  if (c != 0) c_.push_back(c);
}

QPoly QPoly::monomial(size_t d, const Rat& c) {
  QPoly p;
  if (c == 0) return p;
  p.c_.assign(d + 1, Rat(0));
  p.c_[d] = c;
  return p;
}

QPoly QPoly::linear(const Rat& root) {
  QPoly p;
  p.c_ = {-root, Rat(1)};
  return p;
}

QPoly QPoly::from_roots(const std::vector<std::pair<Rat, int>>& roots) {
  QPoly p(Rat(1));
  for (auto& [r, m] : roots) {
    if (m < 0) throw std::invalid_argument("from_roots: negative multiplicity");
    for (int i = 0; i < m; ++i) p = p * linear(r);
  }
  return p;
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat QPoly::at(int d) const {
  if (d < 0 || d >= static_cast<int>(c_.size())) return Rat(0);
  return c_[static_cast<size_t>(d)];
}

const Rat& QPoly::lead() const {
  if (c_.empty()) throw std::logic_error("lead of zero polynomial");
  return c_.back();
}

QPoly QPoly::operator+(const QPoly& o) const {
  QPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (i < c_.size()) r.c_[i] += c_[i];
    if (i < o.c_.size()) r.c_[i] += o.c_[i];
  }
  r.trim();
  return r;
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + o.scale(Rat(-1)); }

QPoly QPoly::operator*(const QPoly& o) const {
  QPoly r;
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.trim();
  return r;
}

QPoly QPoly::scale(const Rat& s) const {
  QPoly r;
  if (s == 0) return r;
  r.c_ = c_;
  for (auto& c : r.c_) c *= s;
  return r;
}

QPoly QPoly::derivative() const {
  QPoly r;
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rat(static_cast<long>(i));
  r.trim();
  return r;
}

Rat QPoly::eval(const Rat& x) const {
  Rat v(0);
  for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
  return v;
}

int QPoly::ord_at(const Rat& p) const {
  if (is_zero()) throw std::logic_error("ord_at of zero polynomial");
  QPoly q = *this;
  int ord = 0;
  while (q.eval(p) == 0) {
    q = q.divexact(linear(p));
    ++ord;
  }
  return ord;
}

std::pair<QPoly, QPoly> QPoly::divrem(const QPoly& n, const QPoly& d) {
  if (d.is_zero()) throw std::invalid_argument("divrem by zero");
  QPoly q, r = n;
  while (!r.is_zero() && r.deg() >= d.deg()) {
    size_t shift = static_cast<size_t>(r.deg() - d.deg());
    Rat f = r.lead() / d.lead();
    q = q + monomial(shift, f);
    r = r - d * monomial(shift, f);
  }
  return {q, r};
}

QPoly QPoly::divexact(const QPoly& d) const {
  auto [q, r] = divrem(*this, d);
  if (!r.is_zero()) throw std::logic_error("divexact: nonzero remainder");
  return q;
}

std::vector<Rat> QPoly::jet(const Rat& p, size_t n) const {
  // repeated synthetic division by (t - p); remainders are the Taylor coefficients
  std::vector<Rat> work(c_.begin(), c_.end());
  std::vector<Rat> out(n, Rat(0));
  for (size_t k = 0; k < n && !work.empty(); ++k) {
    std::vector<Rat> quot(work.size() - 1);
    Rat carry(0);
    for (size_t i = work.size(); i-- > 0;) {
      Rat cur = work[i] + carry * p;
      if (i == 0) {
        out[k] = cur;
      } else {
        quot[i - 1] = cur;
        carry = cur;
      }
    }
    work = std::move(quot);
  }
  return out;
}

std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, size_t n) {
  std::vector<Rat> r(n, Rat(0));
  for (size_t i = 0; i < a.size() && i < n; ++i)
    for (size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<Rat> series_inv(const std::vector<Rat>& a, size_t n) {
  if (a.empty() || a[0] == 0) throw std::logic_error("series_inv: unit term vanishes");
  std::vector<Rat> r(n, Rat(0));
  if (n == 0) return r;
  r[0] = Rat(1) / a[0];
  for (size_t k = 1; k < n; ++k) {
    Rat acc(0);
    for (size_t j = 1; j <= k; ++j)
      if (j < a.size()) acc += a[j] * r[k - j];
    r[k] = -acc / a[0];
  }
  return r;
}

std::vector<Rat> rational_jet(const QPoly& num, const QPoly& den, const Rat& p, size_t n) {
  return series_mul(num.jet(p, n), series_inv(den.jet(p, n), n), n);
}

Laurent laurent_of(const QVec& v, Window w) {
  if (v.size() != w.dim()) throw std::logic_error("laurent_of: size mismatch");
  Laurent l;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) l.emplace(w.lo + static_cast<int>(i), v[i]);
  return l;
}

QVec vec_of(const Laurent& l, Window w) {
  QVec v(w.dim(), Rat(0));
  for (auto& [d, c] : l) {
    if (c == 0) continue;
    if (!w.contains(d)) throw std::logic_error("vec_of: coefficient escapes window");
    v[w.index(d)] = c;
  }
  return v;
}

Laurent laurent_add(Laurent a, const Laurent& b) {
  for (auto& [d, c] : b) {
    Rat& slot = a[d];
    slot += c;
  }
  for (auto it = a.begin(); it != a.end();)
    it = it->second == 0 ? a.erase(it) : std::next(it);
  return a;
}

Laurent laurent_mul(const QPoly& g, const Laurent& h) {
  Laurent r;
  for (auto& [d, c] : h)
    for (int i = 0; i <= g.deg(); ++i) {
      if (g.at(i) == 0) continue;
      Rat& slot = r[d + i];
      slot += g.at(i) * c;
    }
  for (auto it = r.begin(); it != r.end();)
    it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

Laurent laurent_derivative(const Laurent& h) {
  Laurent r;
  for (auto& [d, c] : h)
    if (d != 0) r.emplace(d - 1, c * Rat(d));
  return r;
}

Laurent laurent_divexact(const Laurent& h, const QPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("laurent_divexact by zero");
  if (h.empty()) return {};
  int s = g.ord_at(Rat(0));
  QPoly gt = g;
  for (int i = 0; i < s; ++i) gt = gt.divexact(QPoly::linear(Rat(0)));
  int lo = h.begin()->first;
  int hi = h.rbegin()->first;
  QPoly num;
  {
    QVec cs(static_cast<size_t>(hi - lo + 1), Rat(0));
    for (auto& [d, c] : h) cs[static_cast<size_t>(d - lo)] = c;
    for (size_t i = cs.size(); i-- > 0;)
      if (cs[i] != 0) {
        num = num + QPoly::monomial(i, cs[i]);
      }
  }
  QPoly q = num.divexact(gt);
  Laurent r;
  for (int i = 0; i <= q.deg(); ++i)
    if (q.at(i) != 0) r.emplace(i + lo - s, q.at(i));
  return r;
}

Rat laurent_coeff(const Laurent& l, int d) {
  auto it = l.find(d);
  return it == l.end() ? Rat(0) : it->second;
}

Laurent laurent_of_poly(const QPoly& p) {
  Laurent l;
  for (int i = 0; i <= p.deg(); ++i)
    if (p.at(i) != 0) l.emplace(i, p.at(i));
  return l;
}

QMat QMat::identity(size_t n) {
  QMat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::from_cols(size_t rows, const std::vector<QVec>& cols) {
  QMat m(rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::logic_error("from_cols: ragged column");
    for (size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

QMat QMat::operator*(const QMat& o) const {
  if (c_ != o.r_) throw std::logic_error("QMat product shape mismatch");
  QMat r(r_, o.c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      const Rat& v = at(i, k);
      if (v == 0) continue;
      for (size_t j = 0; j < o.c_; ++j) {
        const Rat& w = o.at(k, j);
        if (w != 0) r.at(i, j) += v * w;
      }
    }
  return r;
}

QMat QMat::operator+(const QMat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("QMat sum shape mismatch");
  QMat r = *this;
  for (size_t i = 0; i < d_.size(); ++i) r.d_[i] += o.d_[i];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("QMat diff shape mismatch");
  QMat r = *this;
  for (size_t i = 0; i < d_.size(); ++i) r.d_[i] -= o.d_[i];
  return r;
}

bool QMat::is_zero() const {
  for (auto& v : d_)
    if (v != 0) return false;
  return true;
}

QMat QMat::transpose() const {
  QMat r(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) r.at(j, i) = at(i, j);
  return r;
}

QMat QMat::hstack(const QMat& o) const {
  if (r_ != o.r_) throw std::logic_error("hstack row mismatch");
  QMat r(r_, c_ + o.c_);
  for (size_t i = 0; i < r_; ++i) {
    for (size_t j = 0; j < c_; ++j) r.at(i, j) = at(i, j);
    for (size_t j = 0; j < o.c_; ++j) r.at(i, c_ + j) = o.at(i, j);
  }
  return r;
}

QMat QMat::vstack(const QMat& o) const {
  if (c_ != o.c_) throw std::logic_error("vstack column mismatch");
  QMat r(r_ + o.r_, c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) r.at(i, j) = at(i, j);
  for (size_t i = 0; i < o.r_; ++i)
    for (size_t j = 0; j < c_; ++j) r.at(r_ + i, j) = o.at(i, j);
  return r;
}

QMat QMat::submatrix(size_t i0, size_t j0, size_t nrows, size_t ncols) const {
  if (i0 + nrows > r_ || j0 + ncols > c_) throw std::logic_error("submatrix out of range");
  QMat r(nrows, ncols);
  for (size_t i = 0; i < nrows; ++i)
    for (size_t j = 0; j < ncols; ++j) r.at(i, j) = at(i0 + i, j0 + j);
  return r;
}

QVec QMat::col_vec(size_t j) const {
  QVec v(r_);
  for (size_t i = 0; i < r_; ++i) v[i] = at(i, j);
  return v;
}

QMat QMat::select_cols(const std::vector<size_t>& idx) const {
  QMat r(r_, idx.size());
  for (size_t j = 0; j < idx.size(); ++j)
    for (size_t i = 0; i < r_; ++i) r.at(i, j) = at(i, idx[j]);
  return r;
}

namespace {

struct Ech {
  QMat m;
  std::vector<size_t> pivots;  // pivot column of row i
};

// Gauss-Jordan with smallest-entry pivoting; fully reduced on exit
Ech echelon(QMat a) {
  Ech e{std::move(a), {}};
  QMat& m = e.m;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t sel = m.rows();
    size_t best = 0;
    for (size_t i = row; i < m.rows(); ++i) {
      const Rat& v = m.at(i, col);
      if (v == 0) continue;
      size_t sz = mpz_size(v.get_num().get_mpz_t()) + mpz_size(v.get_den().get_mpz_t());
      if (sel == m.rows() || sz < best) {
        sel = i;
        best = sz;
      }
    }
    if (sel == m.rows()) continue;
    if (sel != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(sel, j));
    Rat inv = Rat(1) / m.at(row, col);
    for (size_t j = col; j < m.cols(); ++j)
      if (m.at(row, j) != 0) m.at(row, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      Rat f = m.at(i, col);
      if (f == 0) continue;
      for (size_t j = col; j < m.cols(); ++j)
        if (m.at(row, j) != 0) m.at(i, j) -= f * m.at(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

}  // namespace

size_t qrank(const QMat& m) { return echelon(m).pivots.size(); }

QMat qkernel(const QMat& m) {
  Ech e = echelon(m);
  std::vector<size_t> free;
  {
    size_t p = 0;
    for (size_t j = 0; j < m.cols(); ++j) {
      if (p < e.pivots.size() && e.pivots[p] == j) {
        ++p;
      } else {
        free.push_back(j);
      }
    }
  }
  QMat k(m.cols(), free.size());
  for (size_t f = 0; f < free.size(); ++f) {
    k.at(free[f], f) = 1;
    for (size_t i = 0; i < e.pivots.size(); ++i) k.at(e.pivots[i], f) = -e.m.at(i, free[f]);
  }
  return k;
}

std::optional<QMat> qsolve(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows()) throw std::logic_error("qsolve shape mismatch");
  Ech e = echelon(a.hstack(b));
  for (size_t p : e.pivots)
    if (p >= a.cols()) return std::nullopt;
  QMat x(a.cols(), b.cols());
  for (size_t i = 0; i < e.pivots.size(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) x.at(e.pivots[i], j) = e.m.at(i, a.cols() + j);
  return x;
}

std::optional<QMat> qinverse(const QMat& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  Ech e = echelon(a.hstack(QMat::identity(a.rows())));
  if (e.pivots.size() != a.rows()) return std::nullopt;
  for (size_t p : e.pivots)
    if (p >= a.cols()) return std::nullopt;
  return e.m.submatrix(0, a.cols(), a.rows(), a.cols());
}

std::vector<size_t> qextend(const QMat& base, const QMat& extra) {
  if (base.cols() > 0 && base.rows() != extra.rows())
    throw std::logic_error("qextend shape mismatch");
  Ech e = echelon(base.cols() > 0 ? base.hstack(extra) : extra);
  std::vector<size_t> out;
  for (size_t p : e.pivots)
    if (p >= base.cols()) out.push_back(p - base.cols());
  return out;
}

KMatrix to_kmatrix(const QMat& m) {
  KMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) r.at(i, j) = Scalar(m.at(i, j));
  return r;
}

QMat to_qmat(const KMatrix& m) {
  QMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!m.at(i, j).is_rational()) throw std::logic_error("to_qmat: symbolic entry");
      r.at(i, j) = m.at(i, j).to_rational();
    }
  return r;
}

}  // namespace modhodge
