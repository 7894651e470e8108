#include "arboreal/poly.hpp"

#include <stdexcept>

namespace arboreal {

Poly::Poly(const Field& f, std::vector<FieldElem> coeffs) : f_(f), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.field() != f_) throw std::invalid_argument("coefficient from wrong field");
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const FieldElem& c) {
  Poly r(c.field());
  if (!c.is_zero()) r.c_.push_back(c);
  return r;
}

Poly Poly::x(const Field& f) {
  Poly r(f);
  r.c_.push_back(f.zero());
  r.c_.push_back(f.one());
  return r;
}

Poly Poly::from_ints(const Field& f, std::initializer_list<int64_t> cs) {
  return from_ints(f, std::vector<int64_t>(cs));
}

Poly Poly::from_ints(const Field& f, const std::vector<int64_t>& cs) {
  Poly r(f);
  r.c_.reserve(cs.size());
  for (int64_t v : cs) r.c_.push_back(f.from_int(v));
  r.trim();
  return r;
}

Poly Poly::monomial(const FieldElem& c, int deg) {
  Poly r(c.field());
  if (c.is_zero()) return r;
  r.c_.reserve(deg + 1);
  for (int i = 0; i < deg; ++i) r.c_.push_back(c.field().zero());
  r.c_.push_back(c);
  return r;
}

FieldElem Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return f_.zero();
  return c_[i];
}

FieldElem Poly::lc() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

bool Poly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

Poly Poly::operator-() const {
  Poly r(f_);
  r.c_.reserve(c_.size());
  for (const auto& c : c_) r.c_.push_back(-c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (f_ != o.f_) throw std::invalid_argument("field mismatch");
  Poly r(f_);
  size_t n = std::max(c_.size(), o.c_.size());
  r.c_.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    FieldElem a = i < c_.size() ? c_[i] : f_.zero();
    if (i < o.c_.size()) a += o.c_[i];
    r.c_.push_back(std::move(a));
  }
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (f_ != o.f_) throw std::invalid_argument("field mismatch");
  if (is_zero() || o.is_zero()) return Poly(f_);
  Poly r(f_);
  r.c_.assign(c_.size() + o.c_.size() - 1, f_.zero());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  r.trim();
  return r;
}

Poly Poly::operator*(const FieldElem& s) const {
  if (s.field() != f_) throw std::invalid_argument("field mismatch");
  if (s.is_zero()) return Poly(f_);
  Poly r(f_);
  r.c_.reserve(c_.size());
  for (const auto& c : c_) r.c_.push_back(c * s);
  r.trim();
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (f_ != o.f_) throw std::invalid_argument("field mismatch");
  if (c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  Poly r(f_);
  r.c_.reserve(c_.size() + k);
  for (int i = 0; i < k; ++i) r.c_.push_back(f_.zero());
  for (const auto& c : c_) r.c_.push_back(c);
  return r;
}

FieldElem Poly::eval(const FieldElem& a) const {
  if (a.field() != f_) throw std::invalid_argument("field mismatch");
  FieldElem r = f_.zero();
  for (size_t i = c_.size(); i-- > 0;) r = r * a + c_[i];
  return r;
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += c_[i].to_string();
  }
  return s;
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  if (a.field() != b.field()) throw std::invalid_argument("field mismatch");
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  const Field& F = a.field();
  if (a.degree() < b.degree()) return {Poly(F), a};
  FieldElem lcinv = b.lc().inverse();
  std::vector<FieldElem> rem(a.coeffs());
  int db = b.degree();
  int dq = a.degree() - db;
  std::vector<FieldElem> quot;
  quot.reserve(dq + 1);
  for (int i = 0; i <= dq; ++i) quot.push_back(F.zero());
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i].is_zero()) continue;
    FieldElem c = rem[i] * lcinv;
    quot[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b.coeff(j);
  }
  rem.erase(rem.begin() + db, rem.end());
  return {Poly(F, std::move(quot)), Poly(F, std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

Poly divexact(const Poly& a, const Poly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw std::domain_error("divexact: division is not exact");
  return q;
}

Poly monic(const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return a * a.lc().inverse();
}

Poly gcd_poly(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly derivative(const Poly& f) {
  const Field& F = f.field();
  Poly r(F);
  if (f.degree() < 1) return r;
  std::vector<FieldElem> c;
  c.reserve(f.degree());
  for (int i = 1; i <= f.degree(); ++i) c.push_back(f.coeff(i) * F.from_int(i));
  return Poly(F, std::move(c));
}

Poly hasse_derivative(const Poly& f, int j) {
  if (j < 0) throw std::invalid_argument("hasse_derivative: j must be >= 0");
  if (j == 0) return f;
  const Field& F = f.field();
  if (f.degree() < j) return Poly(F);
  std::vector<FieldElem> c;
  c.reserve(f.degree() - j + 1);
  for (int i = j; i <= f.degree(); ++i)
    c.push_back(f.coeff(i) * F.from_integer(binomial_int(i, j)));
  return Poly(F, std::move(c));
}

Poly compose(const Poly& f, const Poly& g) {
  if (f.field() != g.field()) throw std::invalid_argument("field mismatch");
  const Field& F = f.field();
  Poly r(F);
  for (int i = f.degree(); i >= 0; --i) r = r * g + Poly::constant(f.coeff(i));
  return r;
}

Poly pow_poly(Poly base, uint64_t e) {
  Poly r = Poly::constant(base.field().one());
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

Poly pow_mod(Poly base, Integer e, const Poly& m) {
  if (e < 0) throw std::invalid_argument("pow_mod: negative exponent");
  Poly r = Poly::constant(base.field().one());
  base = base % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
    e >>= 1;
    if (e > 0) base = (base * base) % m;
  }
  return r;
}

FieldElem resultant(const Poly& f, const Poly& g) {
  if (f.field() != g.field()) throw std::invalid_argument("field mismatch");
  const Field& F = f.field();
  if (f.is_zero() && g.is_zero()) throw std::invalid_argument("resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) {
    const Poly& other = f.is_zero() ? g : f;
    // Res(0, c) = 1 for constant c, else 0
    return other.degree() == 0 ? F.one() : F.zero();
  }
  Poly a = f, b = g;
  bool negate = false;
  if (a.degree() < b.degree()) {
    if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
    std::swap(a, b);
  }
  FieldElem acc = F.one();
  // Res(a, b) = (-1)^(da*db) Res(b, a) and Res(b, a) = lc(b)^(da - dr) Res(b, r)
  while (b.degree() > 0) {
    Poly r = a % b;
    if (r.is_zero()) return F.zero();  // shared nonconstant factor
    if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
    acc = acc * b.lc().pow(a.degree() - r.degree());
    a = std::move(b);
    b = std::move(r);
  }
  FieldElem res = acc * b.lc().pow(a.degree());
  return negate ? -res : res;
}

}  // namespace arboreal
