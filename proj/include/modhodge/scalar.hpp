#pragma once
// Exact scalar field K = Q(tau, l1, l2, ...).
// tau stands for 2*pi*i, the li are formal logarithms of interned positive
// rationals.  A Scalar is a reduced fraction of integer multivariate
// polynomials; canonical form makes equality structural.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace modhodge {

using Int = mpz_class;
using Rat = mpq_class;

struct ConjugationUnavailable : std::runtime_error {
  ConjugationUnavailable() : std::runtime_error("conjugation undefined on lambda symbols") {}
};

// Variable 0 is tau, variable i >= 1 is lambda_i.  Trailing zero exponents
// are trimmed so the representation is unique.
struct Monomial {
  std::vector<uint32_t> e;

  void trim();
  bool is_one() const { return e.empty(); }
  uint32_t exp(size_t v) const { return v < e.size() ? e[v] : 0; }
  uint64_t total_degree() const;
  bool divides(const Monomial& m) const;
  Monomial mul(const Monomial& m) const;
  Monomial div(const Monomial& m) const;  // pre: m.divides(*this)
  // graded order, then lex; total over monomials
  static int cmp(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial& o) const { return e == o.e; }
};

// Sparse integer polynomial; terms sorted descending, no zero coefficients.
class Poly {
 public:
  struct Term {
    Monomial m;
    Int c;
  };

  Poly() = default;
  static Poly constant(const Int& c);
  static Poly variable(size_t v, uint32_t exp = 1);

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  Int constant_value() const;  // pre: is_constant
  const std::vector<Term>& terms() const { return t_; }
  const Term& leading() const { return t_.front(); }  // pre: !is_zero
  size_t max_var() const;                             // 0 when constant in tau only sense; see impl
  bool has_var_geq(size_t v) const;
  uint32_t degree_in(size_t v) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const;

  Poly mul_int(const Int& c) const;
  Int content() const;  // gcd of coefficients, >= 0
  Poly divexact_int(const Int& c) const;
  static Poly divexact(const Poly& a, const Poly& b);  // pre: b | a
  static Poly gcd(const Poly& a, const Poly& b);       // leading coefficient > 0

  Poly substitute_negate(size_t v) const;  // x_v -> -x_v
  bool uses_var(size_t v) const;
  bool has_lambda() const { return has_var_geq(1); }

  std::complex<double> numeric() const;
  std::string str() const;

  // sorted-descending term list; merges duplicates, drops zeros
  static Poly from_terms(std::vector<Term> ts);

 private:
  std::vector<Term> t_;
};

// Registry of lambda symbols: one per positive reduced rational != 1.
// Append-only; indices are 1-based and stable for the process lifetime.
class SymbolRegistry {
 public:
  static SymbolRegistry& instance();
  int intern(const Rat& positive_value);  // pre: value > 0, != 1
  Rat value(int index) const;
  double shadow(int index) const;  // ln(value)
  int count() const;

 private:
  mutable std::mutex mu_;
  std::vector<Rat> vals_;
  std::vector<double> shadows_;
  std::map<Rat, int> index_;
};

class Scalar {
 public:
  Scalar() : num_(), den_(Poly::constant(1)) {}
  Scalar(long v) : Scalar(Int(v)) {}
  Scalar(const Int& v) : num_(Poly::constant(v)), den_(Poly::constant(1)) {}
  Scalar(const Rat& v);
  static Scalar tau();
  static Scalar lambda(int index);  // pre: 1 <= index <= registry count
  // log of a nonzero rational: log r = lambda_r (r>0), log(-r) = lambda_r + tau/2
  static Scalar log_rational(const Rat& r);
  static Scalar from_fraction(Poly num, Poly den);  // canonicalizes; pre: den != 0

  bool is_zero() const { return num_.is_zero(); }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  Rat to_rational() const;  // pre: is_rational
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // pre: o != 0
  Scalar operator-() const;
  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;  // pre: nonzero
  Scalar conj() const;     // tau -> -tau; throws ConjugationUnavailable on lambda
  bool has_lambda() const { return num_.has_lambda() || den_.has_lambda(); }

  std::complex<double> numeric() const;
  std::string str() const;
  static Scalar parse(const std::string& text);

 private:
  Poly num_, den_;  // canonical: gcd 1, joint content 1, lc(den) > 0; 0 is 0/1
};

inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }

}  // namespace modhodge
