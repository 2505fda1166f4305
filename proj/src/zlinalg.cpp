#include "modhodge/zlinalg.hpp"

#include <stdexcept>

namespace modhodge {

ZMatrix ZMatrix::identity(size_t n) {
  ZMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZMatrix ZMatrix::operator*(const ZMatrix& o) const {
  if (c_ != o.r_) throw std::invalid_argument("zmatrix product shape mismatch");
  ZMatrix m(r_, o.c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (size_t j = 0; j < o.c_; ++j) m.at(i, j) += a * o.at(k, j);
    }
  return m;
}

ZMatrix ZMatrix::operator-() const {
  ZMatrix m(*this);
  for (auto& x : m.d_) x = -x;
  return m;
}

bool ZMatrix::is_zero() const {
  for (auto& x : d_)
    if (x != 0) return false;
  return true;
}

ZMatrix ZMatrix::transpose() const {
  ZMatrix m(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

ZMatrix ZMatrix::hstack(const ZMatrix& o) const {
  if (r_ != o.r_) throw std::invalid_argument("hstack row mismatch");
  ZMatrix m(r_, c_ + o.c_);
  for (size_t i = 0; i < r_; ++i) {
    for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
    for (size_t j = 0; j < o.c_; ++j) m.at(i, c_ + j) = o.at(i, j);
  }
  return m;
}

ZMatrix ZMatrix::vstack(const ZMatrix& o) const {
  if (c_ != o.c_) throw std::invalid_argument("vstack col mismatch");
  ZMatrix m(r_ + o.r_, c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
  for (size_t i = 0; i < o.r_; ++i)
    for (size_t j = 0; j < c_; ++j) m.at(r_ + i, j) = o.at(i, j);
  return m;
}

ZMatrix ZMatrix::submatrix(size_t i0, size_t j0, size_t nrows, size_t ncols) const {
  ZMatrix m(nrows, ncols);
  for (size_t i = 0; i < nrows; ++i)
    for (size_t j = 0; j < ncols; ++j) m.at(i, j) = at(i0 + i, j0 + j);
  return m;
}

KMatrix ZMatrix::to_k() const {
  KMatrix m(r_, c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) m.at(i, j) = Scalar(at(i, j));
  return m;
}

std::optional<ZMatrix> ZMatrix::from_k(const KMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      const Scalar& s = m.at(i, j);
      if (!s.is_rational()) return std::nullopt;
      Rat r = s.to_rational();
      if (r.get_den() != 1) return std::nullopt;
      z.at(i, j) = r.get_num();
    }
  return z;
}

namespace {

struct SnfWork {
  ZMatrix a, u, uinv, v, vinv;

  void row_swap(size_t i, size_t j) {
    if (i == j) return;
    for (size_t k = 0; k < a.cols(); ++k) std::swap(a.at(i, k), a.at(j, k));
    for (size_t k = 0; k < u.cols(); ++k) std::swap(u.at(i, k), u.at(j, k));
    for (size_t k = 0; k < uinv.rows(); ++k) std::swap(uinv.at(k, i), uinv.at(k, j));
  }
  void col_swap(size_t i, size_t j) {
    if (i == j) return;
    for (size_t k = 0; k < a.rows(); ++k) std::swap(a.at(k, i), a.at(k, j));
    for (size_t k = 0; k < v.rows(); ++k) std::swap(v.at(k, i), v.at(k, j));
    for (size_t k = 0; k < vinv.cols(); ++k) std::swap(vinv.at(i, k), vinv.at(j, k));
  }
  // row i -= q * row j; uinv gets the inverse column operation
  void row_sub(size_t i, size_t j, const Int& q) {
    if (q == 0) return;
    for (size_t k = 0; k < a.cols(); ++k) a.at(i, k) -= q * a.at(j, k);
    for (size_t k = 0; k < u.cols(); ++k) u.at(i, k) -= q * u.at(j, k);
    for (size_t k = 0; k < uinv.rows(); ++k) uinv.at(k, j) += q * uinv.at(k, i);
  }
  void col_sub(size_t i, size_t j, const Int& q) {
    if (q == 0) return;
    for (size_t k = 0; k < a.rows(); ++k) a.at(k, i) -= q * a.at(k, j);
    for (size_t k = 0; k < v.rows(); ++k) v.at(k, i) -= q * v.at(k, j);
    for (size_t k = 0; k < vinv.cols(); ++k) vinv.at(j, k) += q * vinv.at(i, k);
  }
  void row_negate(size_t i) {
    for (size_t k = 0; k < a.cols(); ++k) a.at(i, k) = -a.at(i, k);
    for (size_t k = 0; k < u.cols(); ++k) u.at(i, k) = -u.at(i, k);
    for (size_t k = 0; k < uinv.rows(); ++k) uinv.at(k, i) = -uinv.at(k, i);
  }
};

Int floordiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

Snf smith_normal_form(const ZMatrix& m) {
  SnfWork w;
  w.a = m;
  w.u = ZMatrix::identity(m.rows());
  w.uinv = ZMatrix::identity(m.rows());
  w.v = ZMatrix::identity(m.cols());
  w.vinv = ZMatrix::identity(m.cols());
  size_t n = std::min(m.rows(), m.cols());
  size_t t = 0;
  for (; t < n; ++t) {
    // find a nonzero pivot in the remaining block, smallest absolute value
    size_t pi = t, pj = t;
    bool found = false;
    Int best = 0;
    for (size_t i = t; i < m.rows(); ++i)
      for (size_t j = t; j < m.cols(); ++j) {
        const Int& x = w.a.at(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (!found || ax < best) {
          best = ax;
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    for (;;) {
      bool clean = true;
      for (size_t i = t + 1; i < m.rows(); ++i) {
        Int q = floordiv(w.a.at(i, t), w.a.at(t, t));
        w.row_sub(i, t, q);
        if (w.a.at(i, t) != 0) {
          w.row_swap(t, i);  // strictly smaller remainder becomes the pivot
          clean = false;
        }
      }
      for (size_t j = t + 1; j < m.cols(); ++j) {
        Int q = floordiv(w.a.at(t, j), w.a.at(t, t));
        w.col_sub(j, t, q);
        if (w.a.at(t, j) != 0) {
          w.col_swap(t, j);
          clean = false;
        }
      }
      if (clean) break;
    }
    if (w.a.at(t, t) < 0) w.row_negate(t);
  }
  // enforce the divisibility chain by folding d_{t+1} into d_t via gcd
  for (size_t i = 0; i + 1 < t;) {
    Int &di = w.a.at(i, i), &dj = w.a.at(i + 1, i + 1);
    if (dj % di == 0) {
      ++i;
      continue;
    }
    // col_{i} += col_{i+1}; then re-clear the 2x2 block
    w.col_sub(i, i + 1, Int(-1));
    for (;;) {
      bool clean = true;
      if (w.a.at(i + 1, i) != 0) {
        Int q = floordiv(w.a.at(i + 1, i), w.a.at(i, i));
        w.row_sub(i + 1, i, q);
        if (w.a.at(i + 1, i) != 0) {
          w.row_swap(i, i + 1);
          clean = false;
        }
      }
      if (w.a.at(i, i + 1) != 0) {
        Int q = floordiv(w.a.at(i, i + 1), w.a.at(i, i));
        w.col_sub(i + 1, i, q);
        if (w.a.at(i, i + 1) != 0) {
          w.col_swap(i, i + 1);
          clean = false;
        }
      }
      if (clean) break;
    }
    if (w.a.at(i, i) < 0) w.row_negate(i);
    if (w.a.at(i + 1, i + 1) < 0) w.row_negate(i + 1);
    if (i > 0) --i;  // the new d_i may break the chain one step back
  }
  Snf out;
  out.u = std::move(w.u);
  out.uinv = std::move(w.uinv);
  out.v = std::move(w.v);
  out.vinv = std::move(w.vinv);
  out.d = std::move(w.a);
  out.rank = t;
  return out;
}

Int zdet(const ZMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("zdet: square required");
  // Bareiss fraction-free elimination
  size_t n = m.rows();
  if (n == 0) return 1;
  ZMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

ZMatrix zkernel(const ZMatrix& m) {
  Snf s = smith_normal_form(m);
  // m = uinv d vinv; m x = 0 iff the first `rank` coords of vinv x vanish
  ZMatrix k(m.cols(), m.cols() - s.rank);
  for (size_t j = 0; j < k.cols(); ++j)
    for (size_t i = 0; i < m.cols(); ++i) k.at(i, j) = s.v.at(i, s.rank + j);
  return k;
}

std::optional<ZMatrix> zsolve(const ZMatrix& m, const ZMatrix& b) {
  if (m.rows() != b.rows()) throw std::invalid_argument("zsolve shape mismatch");
  Snf s = smith_normal_form(m);
  ZMatrix ub = s.u * b;
  ZMatrix y(m.cols(), b.cols());
  for (size_t j = 0; j < b.cols(); ++j) {
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i < s.rank) {
        const Int& d = s.d.at(i, i);
        if (ub.at(i, j) % d != 0) return std::nullopt;
        if (i < m.cols()) y.at(i, j) = ub.at(i, j) / d;
      } else if (ub.at(i, j) != 0) {
        return std::nullopt;
      }
    }
  }
  return s.v * y;
}

ZMatrix saturate(const ZMatrix& gens) {
  Snf s = smith_normal_form(gens);
  // column span tensor Q meets Z^n in the span of the first rank columns of uinv
  return s.uinv.submatrix(0, 0, gens.rows(), s.rank);
}

ZMatrix lattice_basis(const ZMatrix& gens) {
  Snf s = smith_normal_form(gens);
  ZMatrix b(gens.rows(), s.rank);
  for (size_t j = 0; j < s.rank; ++j)
    for (size_t i = 0; i < gens.rows(); ++i) b.at(i, j) = s.uinv.at(i, j) * s.d.at(j, j);
  return b;
}

std::vector<Int> lattice_quotient_invariants(const ZMatrix& l, const ZMatrix& r,
                                             size_t* free_rank_out) {
  auto x = zsolve(l, r);
  if (!x) throw std::invalid_argument("lattice quotient: r not inside l");
  Snf s = smith_normal_form(*x);
  std::vector<Int> factors;
  for (size_t i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) > 1) factors.push_back(s.d.at(i, i));
  if (free_rank_out) *free_rank_out = l.cols() - s.rank;
  return factors;
}

}  // namespace modhodge
