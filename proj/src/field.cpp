#include "arboreal/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace arboreal {

/* ---- GF(p)[x] mini toolkit on raw coefficient vectors -------------------
 * Used by the canonical modulus search and by extension-field element
 * arithmetic.  Coefficients ascending, reduced mod p, no trailing zeros. */

namespace {

using Zx = std::vector<int64_t>;

int64_t addm(int64_t a, int64_t b, int64_t p) {
  int64_t s = a + b;
  return s >= p ? s - p : s;
}

int64_t subm(int64_t a, int64_t b, int64_t p) {
  int64_t s = a - b;
  return s < 0 ? s + p : s;
}

int64_t mulm(int64_t a, int64_t b, int64_t p) {
  return static_cast<int64_t>(static_cast<__int128>(a) * b % p);
}

int64_t invm(int64_t a, int64_t p) {
  // extended Euclid; a != 0 mod p
  int64_t t = 0, newt = 1, r = p, newr = a % p;
  while (newr != 0) {
    int64_t q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (r != 1) throw std::domain_error("not invertible mod p");
  return t < 0 ? t + p : t;
}

void zp_trim(Zx& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Zx zp_mul(const Zx& a, const Zx& b, int64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<__int128> acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<__int128>(a[i]) * b[j];
  Zx r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<int64_t>(acc[i] % p);
  zp_trim(r);
  return r;
}

// remainder of a by b (b nonzero); quotient discarded
Zx zp_mod(Zx a, const Zx& b, int64_t p) {
  int64_t lcinv = invm(b.back(), p);
  while (a.size() >= b.size()) {
    int64_t c = mulm(a.back(), lcinv, p);
    size_t off = a.size() - b.size();
    if (c != 0)
      for (size_t i = 0; i < b.size(); ++i) a[off + i] = subm(a[off + i], mulm(c, b[i], p), p);
    a.pop_back();
    zp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

Zx zp_gcd(Zx a, Zx b, int64_t p) {
  zp_trim(a);
  zp_trim(b);
  while (!b.empty()) {
    a = zp_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  if (!a.empty() && a.back() != 1) {
    int64_t c = invm(a.back(), p);
    for (auto& v : a) v = mulm(v, c, p);
  }
  return a;
}

Zx zp_mulmod(const Zx& a, const Zx& b, const Zx& m, int64_t p) {
  return zp_mod(zp_mul(a, b, p), m, p);
}

// base^e mod m, e >= 0
Zx zp_powmod(Zx base, Integer e, const Zx& m, int64_t p) {
  Zx r{1};
  base = zp_mod(std::move(base), m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = zp_mulmod(r, base, m, p);
    e >>= 1;
    if (e > 0) base = zp_mulmod(base, base, m, p);
  }
  return r;
}

// extended Euclid inverse of a mod m in GF(p)[x]; empty result if not coprime
Zx zp_invmod(const Zx& a, const Zx& m, int64_t p) {
  Zx r0 = m, r1 = zp_mod(a, m, p);
  Zx t0{}, t1{1};
  while (!r1.empty()) {
    // divide r0 by r1
    Zx q;
    {
      Zx rem = r0;
      int64_t lcinv = invm(r1.back(), p);
      if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
      while (rem.size() >= r1.size() && !rem.empty()) {
        int64_t c = mulm(rem.back(), lcinv, p);
        size_t off = rem.size() - r1.size();
        q[off] = c;
        if (c != 0)
          for (size_t i = 0; i < r1.size(); ++i)
            rem[off + i] = subm(rem[off + i], mulm(c, r1[i], p), p);
        rem.pop_back();
        zp_trim(rem);
        if (rem.empty()) break;
      }
      r0 = std::move(r1);
      r1 = std::move(rem);
    }
    Zx qt1 = zp_mul(q, t1, p);
    Zx nt(std::max(t0.size(), qt1.size()), 0);
    for (size_t i = 0; i < nt.size(); ++i) {
      int64_t x = i < t0.size() ? t0[i] : 0;
      int64_t y = i < qt1.size() ? qt1[i] : 0;
      nt[i] = subm(x, y, p);
    }
    zp_trim(nt);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  if (r0.size() != 1) return {};  // gcd not constant
  int64_t c = invm(r0[0], p);
  for (auto& v : t0) v = mulm(v, c, p);
  zp_trim(t0);
  return t0;
}

bool zp_is_irreducible(const Zx& m, int64_t p) {
  int k = static_cast<int>(m.size()) - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  // x^(p^k) == x mod m, and gcd(x^(p^(k/t)) - x, m) = 1 for prime t | k
  Zx x{0, 1};
  std::vector<Zx> frob(k + 1);  // frob[j] = x^(p^j) mod m
  frob[0] = zp_mod(x, m, p);
  for (int j = 1; j <= k; ++j) frob[j] = zp_powmod(frob[j - 1], p, m, p);
  Zx top = frob[k];
  Zx xr = frob[0];
  if (top != xr) return false;
  for (int t = 2; t <= k; ++t) {
    if (k % t != 0) continue;
    bool prime = true;
    for (int s = 2; s * s <= t; ++s)
      if (t % s == 0) prime = false;
    if (!prime) continue;
    Zx diff = frob[k / t];
    // diff -= x
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = subm(diff[1], 1, p);
    zp_trim(diff);
    Zx g = zp_gcd(diff, m, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::shared_ptr<const Zx> canonical_modulus(int64_t p, int k) {
  static std::map<std::pair<int64_t, int>, std::shared_ptr<const Zx>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
  }
  std::shared_ptr<const Zx> result;
  if (k == 1) {
    result = std::make_shared<const Zx>(Zx{0, 1});
  } else {
    // first monic irreducible in base-p order of the low coefficient vector
    Zx cand(k + 1, 0);
    cand[k] = 1;
    Integer total = pow_int(Integer(p), k);
    for (Integer idx = 0; idx < total; ++idx) {
      Integer v = idx;
      for (int i = 0; i < k; ++i) {
        cand[i] = mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p));
        v /= p;
      }
      if (zp_is_irreducible(cand, p)) {
        result = std::make_shared<const Zx>(cand);
        break;
      }
    }
    if (!result) throw std::logic_error("no irreducible polynomial found");  // unreachable
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.insert({{p, k}, result});
  return result;
}

}  // namespace

/* ---- primality / prime powers ------------------------------------------ */

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  for (uint64_t d = 11; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::pair<int64_t, int> prime_power_decompose(uint64_t q) {
  if (q < 2) throw std::invalid_argument("field size must be at least 2");
  uint64_t p = q;
  for (uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  int k = 0;
  uint64_t v = q;
  while (v > 1) {
    if (v % p != 0) throw std::invalid_argument("field size is not a prime power");
    v /= p;
    ++k;
  }
  return {static_cast<int64_t>(p), k};
}

/* ---- Field --------------------------------------------------------------- */

Field Field::rationals() { return Field(Kind::rationals, 0, 0, nullptr); }

Field Field::finite(int64_t p, int k) {
  if (p < 2 || !is_prime_u64(static_cast<uint64_t>(p)))
    throw std::invalid_argument("characteristic must be prime");
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  // keep p^k < 2^62 so element indices fit in uint64
  long double bits = k * std::log2l(static_cast<long double>(p));
  if (bits > 62) throw std::invalid_argument("field too large (p^k must be < 2^62)");
  return Field(Kind::finite, p, k, canonical_modulus(p, k));
}

int64_t Field::prime() const {
  if (!is_finite()) throw std::invalid_argument("prime(): field is not finite");
  return p_;
}

int Field::extension_degree() const {
  if (!is_finite()) throw std::invalid_argument("extension_degree(): field is not finite");
  return k_;
}

Integer Field::order() const {
  if (!is_finite()) throw std::invalid_argument("order(): field is not finite");
  return pow_int(Integer(p_), static_cast<unsigned long>(k_));
}

uint64_t Field::order_u64() const {
  return to_u64(order(), "field order");
}

const std::vector<int64_t>& Field::modulus() const {
  if (!is_finite()) throw std::invalid_argument("modulus(): field is not finite");
  return *mod_;
}

std::string Field::to_string() const {
  if (is_rationals()) return "Q";
  std::ostringstream os;
  os << "q=" << p_;
  if (k_ > 1) os << "^" << k_;
  return os.str();
}

FieldElem Field::zero() const { return from_int(0); }
FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(int64_t v) const {
  if (is_rationals()) return FieldElem(*this, Rational(v));
  int64_t r = v % p_;
  if (r < 0) r += p_;
  std::vector<int64_t> res(k_, 0);
  res[0] = r;
  return FieldElem(*this, std::move(res));
}

FieldElem Field::from_integer(const Integer& v) const {
  if (is_rationals()) return FieldElem(*this, Rational(v));
  int64_t r = static_cast<int64_t>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p_)));
  std::vector<int64_t> res(k_, 0);
  res[0] = r;
  return FieldElem(*this, std::move(res));
}

FieldElem Field::from_rational(const Rational& v) const {
  if (is_rationals()) {
    Rational c = v;
    c.canonicalize();
    return FieldElem(*this, std::move(c));
  }
  Rational c = v;
  c.canonicalize();
  int64_t den = static_cast<int64_t>(
      mpz_fdiv_ui(c.get_den().get_mpz_t(), static_cast<unsigned long>(p_)));
  if (den == 0) throw BadPrime("denominator divisible by p");
  int64_t num = static_cast<int64_t>(
      mpz_fdiv_ui(c.get_num().get_mpz_t(), static_cast<unsigned long>(p_)));
  std::vector<int64_t> res(k_, 0);
  res[0] = mulm(num, invm(den, p_), p_);
  return FieldElem(*this, std::move(res));
}

FieldElem Field::from_residues(std::vector<int64_t> r) const {
  if (!is_finite()) throw std::invalid_argument("from_residues(): field is not finite");
  if (static_cast<int>(r.size()) > k_)
    throw std::invalid_argument("residue vector longer than extension degree");
  r.resize(k_, 0);
  for (auto& v : r) {
    v %= p_;
    if (v < 0) v += p_;
  }
  return FieldElem(*this, std::move(r));
}

FieldElem Field::from_index(uint64_t idx) const {
  if (!is_finite()) throw std::invalid_argument("from_index(): field is not finite");
  std::vector<int64_t> r(k_, 0);
  for (int i = 0; i < k_; ++i) {
    r[i] = static_cast<int64_t>(idx % static_cast<uint64_t>(p_));
    idx /= static_cast<uint64_t>(p_);
  }
  if (idx != 0) throw std::invalid_argument("element index out of range");
  return FieldElem(*this, std::move(r));
}

/* ---- FieldElem ------------------------------------------------------------ */

void FieldElem::check_same(const FieldElem& o) const {
  if (f_ != o.f_) throw std::invalid_argument("field mismatch");
}

bool FieldElem::is_zero() const {
  if (f_.is_rationals()) return q_ == 0;
  return std::all_of(r_.begin(), r_.end(), [](int64_t v) { return v == 0; });
}

bool FieldElem::is_one() const {
  if (f_.is_rationals()) return q_ == 1;
  if (r_[0] != 1) return false;
  return std::all_of(r_.begin() + 1, r_.end(), [](int64_t v) { return v == 0; });
}

FieldElem FieldElem::operator-() const {
  if (f_.is_rationals()) return FieldElem(f_, -q_);
  int64_t p = f_.prime();
  std::vector<int64_t> r(r_.size());
  for (size_t i = 0; i < r_.size(); ++i) r[i] = r_[i] == 0 ? 0 : p - r_[i];
  return FieldElem(f_, std::move(r));
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  if (f_.is_rationals()) return FieldElem(f_, q_ + o.q_);
  int64_t p = f_.prime();
  std::vector<int64_t> r(r_.size());
  for (size_t i = 0; i < r_.size(); ++i) r[i] = addm(r_[i], o.r_[i], p);
  return FieldElem(f_, std::move(r));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  check_same(o);
  if (f_.is_rationals()) return FieldElem(f_, q_ - o.q_);
  int64_t p = f_.prime();
  std::vector<int64_t> r(r_.size());
  for (size_t i = 0; i < r_.size(); ++i) r[i] = subm(r_[i], o.r_[i], p);
  return FieldElem(f_, std::move(r));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  if (f_.is_rationals()) return FieldElem(f_, q_ * o.q_);
  int64_t p = f_.prime();
  if (f_.extension_degree() == 1)
    return FieldElem(f_, std::vector<int64_t>{mulm(r_[0], o.r_[0], p)});
  Zx prod = zp_mod(zp_mul(r_, o.r_, p), f_.modulus(), p);
  prod.resize(f_.extension_degree(), 0);
  return FieldElem(f_, std::move(prod));
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }

bool FieldElem::operator==(const FieldElem& o) const {
  check_same(o);
  if (f_.is_rationals()) return q_ == o.q_;
  return r_ == o.r_;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (f_.is_rationals()) return FieldElem(f_, 1 / q_);
  int64_t p = f_.prime();
  if (f_.extension_degree() == 1)
    return FieldElem(f_, std::vector<int64_t>{invm(r_[0], p)});
  Zx a = r_;
  zp_trim(a);
  Zx inv = zp_invmod(a, f_.modulus(), p);
  if (inv.empty()) throw std::domain_error("not invertible");  // cannot happen: modulus irreducible
  inv.resize(f_.extension_degree(), 0);
  return FieldElem(f_, std::move(inv));
}

FieldElem FieldElem::pow(const Integer& e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem base = *this, r = f_.one();
  Integer n = e;
  if (n > 0 && is_zero()) return f_.zero();
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = r * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return r;
}

FieldElem FieldElem::pth_root() const {
  if (!f_.is_finite()) throw std::invalid_argument("pth_root(): field is not finite");
  int k = f_.extension_degree();
  if (k == 1) return *this;  // Frobenius is the identity on GF(p)
  return pow(pow_int(Integer(f_.prime()), static_cast<unsigned long>(k - 1)));
}

uint64_t FieldElem::index() const {
  if (!f_.is_finite()) throw std::invalid_argument("index(): field is not finite");
  uint64_t idx = 0;
  uint64_t p = static_cast<uint64_t>(f_.prime());
  for (size_t i = r_.size(); i-- > 0;) idx = idx * p + static_cast<uint64_t>(r_[i]);
  return idx;
}

const Rational& FieldElem::rat() const {
  if (!f_.is_rationals()) throw std::invalid_argument("rat(): field is not Q");
  return q_;
}

const std::vector<int64_t>& FieldElem::residues() const {
  if (!f_.is_finite()) throw std::invalid_argument("residues(): field is not finite");
  return r_;
}

std::string FieldElem::to_string() const {
  if (f_.is_rationals()) return q_.get_str();
  if (f_.extension_degree() == 1) return std::to_string(r_[0]);
  std::string s = "[";
  for (size_t i = 0; i < r_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r_[i]);
  }
  return s + "]";
}

}  // namespace arboreal
