#include "modhodge/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace modhodge {

void Monomial::trim() {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

uint64_t Monomial::total_degree() const {
  uint64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool Monomial::divides(const Monomial& m) const {
  if (e.size() > m.e.size()) return false;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] > m.e[i]) return false;
  return true;
}

Monomial Monomial::mul(const Monomial& m) const {
  Monomial r;
  r.e.resize(std::max(e.size(), m.e.size()), 0);
  for (size_t i = 0; i < e.size(); ++i) r.e[i] += e[i];
  for (size_t i = 0; i < m.e.size(); ++i) r.e[i] += m.e[i];
  return r;
}

Monomial Monomial::div(const Monomial& m) const {
  Monomial r;
  r.e.resize(e.size(), 0);
  for (size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] - m.exp(i);
  r.trim();
  return r;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
  uint64_t da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  size_t n = std::max(a.e.size(), b.e.size());
  for (size_t i = 0; i < n; ++i) {
    uint32_t xa = a.exp(i), xb = b.exp(i);
    if (xa != xb) return xa < xb ? -1 : 1;
  }
  return 0;
}

Poly Poly::constant(const Int& c) {
  Poly p;
  if (c != 0) p.t_.push_back({Monomial{}, c});
  return p;
}

Poly Poly::variable(size_t v, uint32_t exp) {
  if (exp == 0) return constant(1);
  Poly p;
  Monomial m;
  m.e.assign(v + 1, 0);
  m.e[v] = exp;
  p.t_.push_back({std::move(m), Int(1)});
  return p;
}

Int Poly::constant_value() const { return t_.empty() ? Int(0) : t_[0].c; }

size_t Poly::max_var() const {
  size_t mv = 0;
  for (auto& t : t_) mv = std::max(mv, t.m.e.size());
  return mv;  // 0 means constant; otherwise 1 + highest variable index
}

bool Poly::has_var_geq(size_t v) const {
  for (auto& t : t_)
    for (size_t i = v; i < t.m.e.size(); ++i)
      if (t.m.e[i] > 0) return true;
  return false;
}

uint32_t Poly::degree_in(size_t v) const {
  uint32_t d = 0;
  for (auto& t : t_) d = std::max(d, t.m.exp(v));
  return d;
}

Poly Poly::from_terms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(),
            [](const Term& a, const Term& b) { return Monomial::cmp(a.m, b.m) > 0; });
  Poly p;
  for (auto& t : ts) {
    if (t.c == 0) continue;
    if (!p.t_.empty() && p.t_.back().m == t.m)
      p.t_.back().c += t.c;
    else
      p.t_.push_back(std::move(t));
    if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
  }
  // merging may zero interior terms only when input had duplicates; re-filter
  std::vector<Term> keep;
  keep.reserve(p.t_.size());
  for (auto& t : p.t_)
    if (t.c != 0) keep.push_back(std::move(t));
  p.t_ = std::move(keep);
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Term> merged;
  merged.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && Monomial::cmp(t_[i].m, o.t_[j].m) > 0)) {
      merged.push_back(t_[i++]);
    } else if (i == t_.size() || Monomial::cmp(t_[i].m, o.t_[j].m) < 0) {
      merged.push_back(o.t_[j++]);
    } else {
      Int c = t_[i].c + o.t_[j].c;
      if (c != 0) merged.push_back({t_[i].m, c});
      ++i, ++j;
    }
  }
  Poly p;
  p.t_ = std::move(merged);
  return p;
}

Poly Poly::operator-() const {
  Poly p(*this);
  for (auto& t : p.t_) t.c = -t.c;
  return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Term> ts;
  ts.reserve(t_.size() * o.t_.size());
  for (auto& a : t_)
    for (auto& b : o.t_) ts.push_back({a.m.mul(b.m), a.c * b.c});
  return from_terms(std::move(ts));
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
  return true;
}

Poly Poly::mul_int(const Int& c) const {
  if (c == 0) return {};
  Poly p(*this);
  for (auto& t : p.t_) t.c *= c;
  return p;
}

Int Poly::content() const {
  Int g = 0;
  for (auto& t : t_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::divexact_int(const Int& c) const {
  Poly p(*this);
  for (auto& t : p.t_) {
    Int q;
    mpz_divexact(q.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
    t.c = q;
  }
  return p;
}

Poly Poly::divexact(const Poly& a, const Poly& b) {
  if (a.is_zero()) return {};
  if (b.is_constant()) return a.divexact_int(b.constant_value());
  Poly rem = a;
  std::vector<Term> q;
  while (!rem.is_zero()) {
    const Term& la = rem.leading();
    const Term& lb = b.leading();
    if (!lb.m.divides(la.m)) throw std::logic_error("divexact: not divisible (monomial)");
    Int c;
    if (la.c % lb.c != 0) throw std::logic_error("divexact: not divisible (coefficient)");
    mpz_divexact(c.get_mpz_t(), la.c.get_mpz_t(), lb.c.get_mpz_t());
    Term t{la.m.div(lb.m), c};
    q.push_back(t);
    Poly tp;
    tp.t_.push_back(t);
    rem = rem - tp * b;
  }
  return from_terms(std::move(q));
}

namespace {

// univariate view in variable v: coefficient polys by v-degree
std::vector<Poly> coeffs_in(const Poly& p, size_t v) {
  std::vector<std::vector<Poly::Term>> buckets(p.degree_in(v) + 1);
  for (auto& t : p.terms()) {
    uint32_t d = t.m.exp(v);
    Monomial m = t.m;
    if (v < m.e.size()) m.e[v] = 0;
    m.trim();
    buckets[d].push_back({std::move(m), t.c});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(std::move(b)));
  return out;
}

Poly assemble_in(const std::vector<Poly>& cs, size_t v) {
  std::vector<Poly::Term> ts;
  for (size_t d = 0; d < cs.size(); ++d)
    for (auto& t : cs[d].terms()) {
      Monomial m = t.m;
      if (d > 0) {
        if (m.e.size() <= v) m.e.resize(v + 1, 0);
        m.e[v] += static_cast<uint32_t>(d);
      }
      ts.push_back({std::move(m), t.c});
    }
  return Poly::from_terms(std::move(ts));
}

Poly content_in(const Poly& p, size_t v) {
  Poly g;
  for (auto& c : coeffs_in(p, v)) g = Poly::gcd(g, c);
  return g;
}

// pseudo-remainder of a by b in variable v
Poly prem(Poly a, const Poly& b, size_t v) {
  uint32_t db = b.degree_in(v);
  auto bc = coeffs_in(b, v);
  const Poly& lb = bc[db];
  while (!a.is_zero() && a.degree_in(v) >= db) {
    uint32_t da = a.degree_in(v);
    auto ac = coeffs_in(a, v);
    Poly shift = ac[da] * Poly::variable(v, da - db);
    a = a * lb - shift * b;
  }
  return a;
}

Poly positive_lc(Poly p) {
  if (!p.is_zero() && p.leading().c < 0) return -p;
  return p;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return positive_lc(b);
  if (b.is_zero()) return positive_lc(a);
  if (a.is_constant() || b.is_constant()) {
    Int g;
    Int ca = a.content(), cb = b.content();
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return constant(g);
  }
  size_t v = std::max(a.max_var(), b.max_var()) - 1;  // highest variable present
  if (a.degree_in(v) == 0 || b.degree_in(v) == 0) {
    // v absent from one side: gcd divides that side's content in v
    const Poly& flat = a.degree_in(v) == 0 ? a : b;
    const Poly& other = a.degree_in(v) == 0 ? b : a;
    return gcd(flat, content_in(other, v));
  }
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly g = gcd(ca, cb);
  Poly A = divexact(a, ca), B = divexact(b, cb);
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  while (!B.is_zero()) {
    Poly r = prem(A, B, v);
    A = B;
    if (r.is_zero()) {
      B = {};
    } else {
      B = divexact(r, content_in(r, v));
    }
  }
  // A is the primitive gcd in v up to sign
  A = divexact(A, content_in(A, v));
  return positive_lc(g * A);
}

Poly Poly::substitute_negate(size_t v) const {
  Poly p(*this);
  // sign flip on odd exponents keeps sortedness: monomials unchanged
  for (auto& t : p.t_)
    if (t.m.exp(v) % 2 == 1) t.c = -t.c;
  return p;
}

bool Poly::uses_var(size_t v) const {
  for (auto& t : t_)
    if (t.m.exp(v) > 0) return true;
  return false;
}

std::complex<double> Poly::numeric() const {
  std::complex<double> acc = 0.0;
  const std::complex<double> tau(0.0, 2.0 * std::numbers::pi);
  auto& reg = SymbolRegistry::instance();
  for (auto& t : t_) {
    std::complex<double> term = t.c.get_d();
    for (uint32_t k = 0; k < t.m.exp(0); ++k) term *= tau;
    for (size_t v = 1; v < t.m.e.size(); ++v)
      for (uint32_t k = 0; k < t.m.e[v]; ++k) term *= reg.shadow(static_cast<int>(v));
    acc += term;
  }
  return acc;
}

namespace {
std::string var_name(size_t v) {
  if (v == 0) return "tau";
  return "l" + std::to_string(v);
}
}  // namespace

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : t_) {
    Int c = t.c;
    if (first) {
      if (c < 0) os << "-", c = -c;
    } else {
      os << (c < 0 ? "-" : "+");
      if (c < 0) c = -c;
    }
    first = false;
    bool printed = false;
    if (c != 1 || t.m.is_one()) {
      os << c.get_str();
      printed = true;
    }
    for (size_t v = 0; v < t.m.e.size(); ++v) {
      if (t.m.e[v] == 0) continue;
      if (printed) os << "*";
      os << var_name(v);
      if (t.m.e[v] > 1) os << "^" << t.m.e[v];
      printed = true;
    }
  }
  return os.str();
}

SymbolRegistry& SymbolRegistry::instance() {
  static SymbolRegistry reg;
  return reg;
}

int SymbolRegistry::intern(const Rat& r) {
  if (r <= 0 || r == 1) throw std::invalid_argument("lambda argument must be positive and != 1");
  Rat c(r);
  c.canonicalize();
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find(c);
  if (it != index_.end()) return it->second;
  vals_.push_back(c);
  shadows_.push_back(std::log(c.get_d()));
  int idx = static_cast<int>(vals_.size());
  index_.emplace(c, idx);
  return idx;
}

Rat SymbolRegistry::value(int index) const {
  std::lock_guard<std::mutex> lock(mu_);
  return vals_.at(static_cast<size_t>(index - 1));
}

double SymbolRegistry::shadow(int index) const {
  std::lock_guard<std::mutex> lock(mu_);
  return shadows_.at(static_cast<size_t>(index - 1));
}

int SymbolRegistry::count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<int>(vals_.size());
}

Scalar::Scalar(const Rat& v) {
  Rat c(v);
  c.canonicalize();
  num_ = Poly::constant(Int(c.get_num()));
  den_ = Poly::constant(Int(c.get_den()));
}

Scalar Scalar::tau() { return from_fraction(Poly::variable(0), Poly::constant(1)); }

Scalar Scalar::lambda(int index) {
  if (index < 1 || index > SymbolRegistry::instance().count())
    throw std::out_of_range("lambda index not interned");
  return from_fraction(Poly::variable(static_cast<size_t>(index)), Poly::constant(1));
}

Scalar Scalar::log_rational(const Rat& r) {
  if (r == 0) throw std::invalid_argument("log of zero");
  Rat a = r > 0 ? r : Rat(-r);
  a.canonicalize();
  Scalar base;
  if (a != 1) base = lambda(SymbolRegistry::instance().intern(a));
  if (r < 0) base = base + tau() / Scalar(2);  // log(-x) = log x + pi*i
  return base;
}

Scalar Scalar::from_fraction(Poly num, Poly den) {
  if (den.is_zero()) throw std::invalid_argument("zero denominator");
  Scalar s;
  if (num.is_zero()) {
    s.num_ = Poly();
    s.den_ = Poly::constant(1);
    return s;
  }
  if (!num.is_constant() || !den.is_constant()) {
    Poly g = Poly::gcd(num, den);
    if (!(g.is_constant() && g.constant_value() == 1)) {
      num = Poly::divexact(num, g);
      den = Poly::divexact(den, g);
    }
  }
  Int cn = num.content(), cd = den.content(), c;
  mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (c != 1) {
    num = num.divexact_int(c);
    den = den.divexact_int(c);
  }
  if (den.leading().c < 0) {
    num = -num;
    den = -den;
  }
  s.num_ = std::move(num);
  s.den_ = std::move(den);
  return s;
}

Rat Scalar::to_rational() const {
  if (!is_rational()) throw std::logic_error("scalar is not rational");
  Rat r(num_.constant_value(), den_.is_zero() ? Int(1) : den_.constant_value());
  r.canonicalize();
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_rational() && o.is_rational()) return Scalar(to_rational() + o.to_rational());
  if (den_ == o.den_) return from_fraction(num_ + o.num_, den_);
  return from_fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  if (is_rational() && o.is_rational()) return Scalar(to_rational() * o.to_rational());
  return from_fraction(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar s(*this);
  s.num_ = -s.num_;
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return from_fraction(den_, num_);
}

Scalar Scalar::conj() const {
  if (has_lambda()) throw ConjugationUnavailable();
  return from_fraction(num_.substitute_negate(0), den_.substitute_negate(0));
}

std::complex<double> Scalar::numeric() const { return num_.numeric() / den_.numeric(); }

std::string Scalar::str() const {
  if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
  std::string n = num_.terms().size() > 1 ? "(" + num_.str() + ")" : num_.str();
  std::string d = den_.str();
  // denominator needs parens unless it round-trips as a single factor
  bool simple = false;
  if (den_.terms().size() == 1) {
    const auto& t = den_.leading();
    int nvars = 0;
    for (auto e : t.m.e)
      if (e > 0) ++nvars;
    simple = (nvars == 0) || (nvars == 1 && t.c == 1);
  }
  if (!simple) d = "(" + d + ")";
  return n + "/" + d;
}

// recursive-descent parser for +,-,*,/,^, integers, tau, l<k>, parentheses
namespace {
struct Parser {
  const std::string& s;
  size_t i = 0;
  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("scalar parse error at offset " + std::to_string(i) + ": " + what);
  }

  Scalar expr() {
    Scalar acc = term();
    for (;;) {
      skip();
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }
  Scalar term() {
    Scalar acc = factor();
    for (;;) {
      skip();
      if (eat('*'))
        acc = acc * factor();
      else if (eat('/'))
        acc = acc / factor();
      else
        return acc;
    }
  }
  Scalar factor() {
    skip();
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    Scalar base = atom();
    skip();
    if (eat('^')) {
      skip();
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (start == i) fail("exponent expected");
      unsigned long e = std::stoul(s.substr(start, i - start));
      Scalar r(1);
      for (unsigned long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }
  Scalar atom() {
    skip();
    if (i >= s.size()) fail("unexpected end");
    if (s[i] == '(') {
      ++i;
      Scalar r = expr();
      if (!eat(')')) fail("missing )");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      return Scalar(Int(s.substr(start, i - start)));
    }
    if (s.compare(i, 3, "tau") == 0) {
      i += 3;
      return Scalar::tau();
    }
    if (s[i] == 'l') {
      ++i;
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (start == i) fail("lambda index expected");
      int idx = std::stoi(s.substr(start, i - start));
      // parsing may reference symbols not yet interned by this process; the
      // registry is extended with placeholder values only via intern, so
      // reject unknown indices outright
      return Scalar::lambda(idx);
    }
    fail("unexpected character");
  }
};
}  // namespace

Scalar Scalar::parse(const std::string& text) {
  Parser p(text);
  Scalar r = p.expr();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  return r;
}

}  // namespace modhodge
