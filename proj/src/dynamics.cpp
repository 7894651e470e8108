#include "arboreal/dynamics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arboreal {

namespace {

void check_bits(const Poly& f, uint64_t cap_bits) {
  if (!f.field().is_rationals()) return;
  for (const auto& c : f.coeffs()) {
    const Rational& r = c.rat();
    if (bit_size(Integer(r.get_num())) > cap_bits ||
        bit_size(Integer(r.get_den())) > cap_bits)
      throw CapExceeded("coefficient bit guard exceeded while iterating over Q");
  }
}

// f(g) mod A by Horner; every intermediate stays below deg A
Poly compose_mod(const Poly& f, const Poly& g, const Poly& A) {
  const Field& F = f.field();
  Poly acc(F);
  for (int i = f.degree(); i >= 0; --i)
    acc = (acc * g) % A + Poly::constant(f.coeff(i));
  return acc;
}

/* Characteristic polynomial of multiplication by g on k[x]/(A), A monic of
 * degree m: the monic T-polynomial whose roots are g(w) over the roots w of A
 * counted with multiplicity.  Berkowitz's division-free algorithm, fine at
 * m <= 64. */
Poly charpoly_mult(const Poly& g, const Poly& A) {
  const Field& F = A.field();
  int m = A.degree();
  if (m <= 0) return Poly::constant(F.one());
  std::vector<std::vector<FieldElem>> M(m, std::vector<FieldElem>(m, F.zero()));
  Poly cur = g % A;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i <= cur.degree(); ++i) M[i][j] = cur.coeff(i);
    cur = cur.shifted(1) % A;
  }
  // descending coefficients of det(T I - M_r), grown one row/column at a time
  std::vector<FieldElem> cp{F.one()};
  for (int r = 1; r <= m; ++r) {
    std::vector<FieldElem> q;
    q.reserve(r + 1);
    q.push_back(F.one());
    q.push_back(-M[r - 1][r - 1]);
    if (r >= 2) {
      std::vector<FieldElem> w(r - 1, F.zero());
      for (int i = 0; i < r - 1; ++i) w[i] = M[i][r - 1];
      for (int step = 0; step <= r - 2; ++step) {
        FieldElem dot = F.zero();
        for (int i = 0; i < r - 1; ++i) dot += M[r - 1][i] * w[i];
        q.push_back(-dot);
        if (step < r - 2) {
          std::vector<FieldElem> nw(r - 1, F.zero());
          for (int i = 0; i < r - 1; ++i) {
            FieldElem acc = F.zero();
            for (int j = 0; j < r - 1; ++j) acc += M[i][j] * w[j];
            nw[i] = acc;
          }
          w = std::move(nw);
        }
      }
    }
    std::vector<FieldElem> ncp(r + 1, F.zero());
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j < static_cast<int>(cp.size()); ++j) {
        int qi = i - j;
        if (qi < 0 || qi >= static_cast<int>(q.size())) continue;
        ncp[i] += cp[j] * q[qi];
      }
    cp = std::move(ncp);
  }
  std::vector<FieldElem> asc(cp.rbegin(), cp.rend());
  return Poly(F, std::move(asc));
}

Poly lagrange(const Field& F, const std::vector<FieldElem>& ts,
              const std::vector<FieldElem>& ys) {
  Poly acc(F);
  int n = static_cast<int>(ts.size());
  for (int i = 0; i < n; ++i) {
    Poly basis = Poly::constant(F.one());
    FieldElem denom = F.one();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      basis = basis * (Poly::x(F) - Poly::constant(ts[j]));
      denom *= ts[i] - ts[j];
    }
    acc = acc + basis * (ys[i] / denom);
  }
  return acc;
}

// fraction-free determinant; entries are polynomials in T over a field
Poly bareiss_det(std::vector<std::vector<Poly>> m, const Field& F) {
  int n = static_cast<int>(m.size());
  if (n == 0) return Poly::constant(F.one());
  Poly prev = Poly::constant(F.one());
  bool neg = false;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return Poly(F);
      std::swap(m[k], m[piv]);
      neg = !neg;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m[i][j] = divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = Poly(F);
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  return neg ? -det : det;
}

Poly sylvester_bareiss(const Poly& A, const Poly& B0, const Poly& B1) {
  const Field& F = A.field();
  int a = A.degree();
  int b = std::max(B0.degree(), B1.degree());
  int s = a + b;
  std::vector<std::vector<Poly>> m(s, std::vector<Poly>(s, Poly(F)));
  for (int r = 0; r < b; ++r)
    for (int i = 0; i <= a; ++i) m[r][s - 1 - i - (b - 1 - r)] = Poly::constant(A.coeff(i));
  for (int r = b; r < s; ++r) {
    int sh = a - 1 - (r - b);
    for (int i = 0; i <= b; ++i)
      m[r][s - 1 - i - sh] = Poly(F, {B0.coeff(i), B1.coeff(i)});
  }
  return bareiss_det(std::move(m), F);
}

/* Res_x(A, B0 + T B1) as an exact polynomial in T.  The second argument is
 * treated with formal x-degree max(deg B0, deg B1), which is the Sylvester
 * convention; values at T = t with no leading-coefficient drop coincide with
 * the scalar resultant.  Three routes: a multiplication-operator
 * characteristic polynomial when B1 is constant, Lagrange interpolation when
 * the field has enough sample points, Bareiss elimination on the Sylvester
 * matrix otherwise. */
Poly param_resultant(const Poly& A, const Poly& B0, const Poly& B1) {
  const Field& F = A.field();
  if (A.is_zero()) throw std::invalid_argument("param_resultant: zero first argument");
  int ddeg = std::max(B0.degree(), B1.degree());
  if (ddeg < 0) return A.degree() >= 1 ? Poly(F) : Poly::constant(F.one());
  if (A.degree() == 0) return Poly::constant(A.lc().pow(ddeg));
  if (B1.is_zero()) return Poly::constant(resultant(A, B0));
  if (B1.is_constant()) {
    FieldElem b1 = B1.coeff(0);
    Poly Am = monic(A);
    Poly cp = charpoly_mult((-B0) * b1.inverse() % Am, Am);
    return cp * (A.lc().pow(ddeg) * b1.pow(A.degree()));
  }
  int npts = A.degree() + 1;
  bool interp = F.is_rationals() || Integer(npts) + 1 <= F.order();
  if (interp) {
    std::vector<FieldElem> ts, ys;
    FieldElem top0 = B0.coeff(ddeg), top1 = B1.coeff(ddeg);
    for (uint64_t i = 0; static_cast<int>(ts.size()) < npts; ++i) {
      FieldElem t = F.is_rationals() ? F.from_int(static_cast<int64_t>(i)) : F.from_index(i);
      if ((top0 + t * top1).is_zero()) continue;  // x-degree would drop at this t
      ts.push_back(t);
      ys.push_back(resultant(A, B0 + B1 * t));
    }
    return lagrange(F, ts, ys);
  }
  return sylvester_bareiss(A, B0, B1);
}

}  // namespace

/* ---- rational maps and critical data ------------------------------------ */

RationalMap RationalMap::make(Poly num, Poly den) {
  if (num.field() != den.field())
    throw std::invalid_argument("rational map: field mismatch");
  if (den.is_zero()) throw std::invalid_argument("rational map: zero denominator");
  FieldElem l = den.lc();
  if (!l.is_one()) {
    FieldElem inv = l.inverse();
    num = num * inv;
    den = den * inv;
  }
  if (!gcd_poly(num, den).is_constant())
    throw std::invalid_argument("rational map: numerator and denominator share a root");
  RationalMap m(std::move(num), std::move(den));
  if (m.degree() < 1) throw std::invalid_argument("rational map: degree must be >= 1");
  return m;
}

RationalMap RationalMap::from_poly(const Poly& f) {
  return make(f, Poly::constant(f.field().one()));
}

int RationalMap::degree() const { return std::max(num_.degree(), den_.degree()); }

CriticalData critical_data(const RationalMap& phi) {
  Poly W = derivative(phi.num()) * phi.den() - phi.num() * derivative(phi.den());
  Poly rad = W.is_zero() ? Poly(W.field()) : radical(W);
  bool has = rad.degree() >= 1;
  return CriticalData{std::move(W), std::move(rad), has};
}

CriticalData critical_data(const Poly& f) {
  Poly W = derivative(f);
  Poly rad = W.is_zero() ? Poly(W.field()) : radical(W);
  bool has = rad.degree() >= 1;
  return CriticalData{std::move(W), std::move(rad), has};
}

/* ---- iteration and the critical-orbit test ------------------------------ */

Poly iterate(const Poly& f, int n, uint64_t cap_bits) {
  if (n < 1) throw std::invalid_argument("iterate: n must be >= 1");
  check_bits(f, cap_bits);
  Poly g = f;
  for (int i = 2; i <= n; ++i) {
    g = compose(f, g);
    check_bits(g, cap_bits);
  }
  return g;
}

Poly critical_value_poly(const Poly& f, int n, uint64_t cap_bits) {
  if (f.degree() < 1) throw std::invalid_argument("critical_value_poly: constant map");
  if (n < 1) throw std::invalid_argument("critical_value_poly: n must be >= 1");
  CriticalData cd = critical_data(f);
  if (!cd.has_finite_critical_points)
    throw std::domain_error("critical_value_poly: no finite critical points");
  const Poly& A = cd.crit_radical;
  Poly g = f % A;
  check_bits(g, cap_bits);
  for (int i = 2; i <= n; ++i) {
    g = compose_mod(f, g, A);
    check_bits(g, cap_bits);
  }
  return charpoly_mult(g, A);
}

CollisionResult orbit_collision_check(const Poly& f, int N, uint64_t cap_bits) {
  if (f.degree() < 1) throw std::invalid_argument("orbit_collision_check: constant map");
  if (N < 1) throw std::invalid_argument("orbit_collision_check: N must be >= 1");
  CriticalData cd = critical_data(f);
  if (!cd.has_finite_critical_points)
    throw std::domain_error("orbit_collision_check: no finite critical points");
  const Poly& A = cd.crit_radical;
  std::vector<Poly> rs;
  Poly g = f % A;
  check_bits(g, cap_bits);
  for (int n = 1; n <= N; ++n) {
    if (n > 1) {
      g = compose_mod(f, g, A);
      check_bits(g, cap_bits);
    }
    Poly rn = charpoly_mult(g, A);
    for (int m = 1; m < n; ++m)
      if (!gcd_poly(rn, rs[m - 1]).is_constant()) return CollisionResult{false, n, m};
    if (!squarefree_test(rn)) return CollisionResult{false, n, n};
    rs.push_back(std::move(rn));
  }
  return CollisionResult{true, 0, 0};
}

/* ---- characteristic-2 triple-root test ----------------------------------- */

bool char2_cube_check(const Poly& f) {
  if (f.field().characteristic() != 2)
    throw std::invalid_argument("char2_cube_check: characteristic 2 required");
  Poly h1 = hasse_derivative(f, 1);
  Poly h2 = hasse_derivative(f, 2);
  if (h1.is_zero()) return false;  // f is a square plus a constant: all wild
  if (h2.is_zero()) return h1.is_constant();
  return !resultant(h1, h2).is_zero();
}

/* ---- decomposition search ------------------------------------------------ */

DecompositionResult is_indecomposable_Fq(const Poly& f, uint64_t budget) {
  const Field& F = f.field();
  if (!F.is_finite()) throw std::invalid_argument("decomposition search: finite field required");
  int d = f.degree();
  if (d < 2) throw std::invalid_argument("decomposition search: degree >= 2 required");
  uint64_t q = F.order_u64();
  for (int e = 2; e <= d / 2; ++e) {
    if (d % e != 0) continue;
    Integer cnt = pow_int(Integer(static_cast<long>(q)), e - 1);
    if (cnt > Integer(static_cast<unsigned long>(budget)))
      throw CapExceeded("decomposition search budget exceeded");
    uint64_t n_cand = to_u64(cnt, "decomposition candidates");
    for (uint64_t idx = 0; idx < n_cand; ++idx) {
      // inner candidate: monic of degree e with zero constant term
      std::vector<FieldElem> hc;
      hc.reserve(e + 1);
      hc.push_back(F.zero());
      uint64_t t = idx;
      for (int i = 1; i < e; ++i) {
        hc.push_back(F.from_index(t % q));
        t /= q;
      }
      hc.push_back(F.one());
      Poly h(F, std::move(hc));
      // f decomposes through h iff its base-h digits are all constant
      Poly cur = f;
      std::vector<FieldElem> gc;
      bool constant_digits = true;
      while (!cur.is_zero()) {
        auto [quot, rem] = divrem(cur, h);
        if (rem.degree() > 0) {
          constant_digits = false;
          break;
        }
        gc.push_back(rem.is_zero() ? F.zero() : rem.coeff(0));
        cur = quot;
      }
      if (constant_digits) return DecompositionResult{false, Poly(F, std::move(gc)), h};
    }
  }
  return DecompositionResult{true, Poly(F), Poly(F)};
}

/* ---- genericity report --------------------------------------------------- */

HReport is_in_H(const Poly& f, int N, uint64_t cap_bits) {
  if (f.degree() < 2) throw std::invalid_argument("is_in_H: degree >= 2 required");
  if (N < 1) throw std::invalid_argument("is_in_H: N must be >= 1");
  const Field& F = f.field();
  int64_t p = F.characteristic();
  int d = f.degree();
  HReport rep;
  Poly fp = derivative(f);

  // (1) derivative separable; in characteristic 2, a square of a separable
  if (fp.is_zero()) {
    rep.conditions[0] = {Verdict::fails, "derivative vanishes identically"};
  } else if (p != 2) {
    if (fp.is_constant() || squarefree_test(fp))
      rep.conditions[0] = {Verdict::holds, ""};
    else
      rep.conditions[0] = {Verdict::fails, "derivative has a repeated root"};
  } else {
    auto h = pth_root_poly(fp);
    if (!h)
      rep.conditions[0] = {Verdict::fails, "derivative is not a square"};
    else if (h->is_constant() || squarefree_test(*h))
      rep.conditions[0] = {Verdict::holds, ""};
    else
      rep.conditions[0] = {Verdict::fails, "square root of the derivative has a repeated root"};
  }

  // (2) critical orbits pairwise disjoint up to time N
  CriticalData cd = critical_data(f);
  if (!cd.has_finite_critical_points) {
    rep.conditions[1] = {Verdict::fails, "no finite critical points"};
  } else {
    CollisionResult cr = orbit_collision_check(f, N, cap_bits);
    if (cr.ok)
      rep.conditions[1] = {Verdict::holds, ""};
    else
      rep.conditions[1] = {Verdict::fails, "critical values collide at times (" +
                                               std::to_string(cr.n) + ", " +
                                               std::to_string(cr.m) + ")"};
  }

  // (3) characteristic 2: no fiber with a triple root
  if (p == 2)
    rep.conditions[2] = char2_cube_check(f)
                            ? ConditionReport{Verdict::holds, ""}
                            : ConditionReport{Verdict::fails,
                                              "some fiber has a root of multiplicity >= 3"};
  else
    rep.conditions[2] = {Verdict::not_applicable, ""};

  // (4) characteristic dividing the degree: indecomposable and deg f' = d - 2
  if (p != 0 && d % p == 0) {
    DecompositionResult dec = is_indecomposable_Fq(f);
    if (!dec.indecomposable)
      rep.conditions[3] = {Verdict::fails, "f = g(h(x)) with deg h = " +
                                               std::to_string(dec.inner.degree())};
    else if (fp.degree() != d - 2)
      rep.conditions[3] = {Verdict::fails, "derivative degree " +
                                               std::to_string(fp.degree()) +
                                               " instead of " + std::to_string(d - 2)};
    else
      rep.conditions[3] = {Verdict::holds, ""};
  } else {
    rep.conditions[3] = {Verdict::not_applicable, ""};
  }

  rep.overall = true;
  for (const auto& c : rep.conditions)
    if (c.verdict == Verdict::fails) rep.overall = false;
  return rep;
}

/* ---- parametric discriminants -------------------------------------------- */

DiscReport disc_param(const RationalMap& phi) {
  const Field& F = phi.field();
  const Poly& p = phi.num();
  const Poly& q = phi.den();
  Poly W = derivative(p) * q - p * derivative(q);
  if (W.is_zero())
    throw std::domain_error("disc_param: every fiber is inseparable (p' = q' = 0)");
  Poly raw = param_resultant(W, p, -q);
  DiscReport rep{monic(raw), raw.lc(), {}, false};
  Poly prod = Poly::constant(F.one());
  if (W.degree() >= 1) {
    for (const auto& [u, mult] : squarefree_decomposition(W)) {
      // drop critical points that are poles: their factors are constants
      Poly ufin = q.is_constant() ? u : divexact(u, gcd_poly(u, q));
      if (ufin.degree() < 1) continue;
      Poly v = monic(param_resultant(ufin, p, -q));
      rep.critical_product.emplace_back(v, mult);
      for (int i = 0; i < mult; ++i) prod = prod * v;
    }
  }
  rep.constant_ratio = rep.disc == prod;
  return rep;
}

IterDiscReport disc_iterate_radical(const Poly& f, int n, uint64_t cap_bits) {
  if (f.degree() < 1) throw std::invalid_argument("disc_iterate_radical: constant map");
  if (n < 1) throw std::invalid_argument("disc_iterate_radical: n must be >= 1");
  const Field& F = f.field();
  Poly fn = iterate(f, n, cap_bits);
  DiscReport dr = disc_param(RationalMap::from_poly(fn));
  Poly one = Poly::constant(F.one());
  CriticalData cd = critical_data(f);
  Poly prod = one;
  if (cd.has_finite_critical_points) {
    const Poly& A = cd.crit_radical;
    Poly g = f % A;
    check_bits(g, cap_bits);
    for (int m = 1; m <= n; ++m) {
      if (m > 1) {
        g = compose_mod(f, g, A);
        check_bits(g, cap_bits);
      }
      prod = prod * charpoly_mult(g, A);
    }
  }
  IterDiscReport rep{dr.disc.is_constant() ? one : radical(dr.disc),
                     prod.is_constant() ? one : radical(prod),
                     cd.has_finite_critical_points, false};
  rep.agrees = rep.radical_disc == rep.rn_product_radical;
  return rep;
}

/* ---- orbit primes --------------------------------------------------------- */

namespace {

int64_t mulmod_i64(int64_t a, int64_t b, int64_t p) {
  return static_cast<int64_t>(static_cast<unsigned __int128>(a) * b % p);
}

int64_t invmod_i64(int64_t a, int64_t p) {
  int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    int64_t qu = r / nr;
    t = std::exchange(nt, t - qu * nt);
    r = std::exchange(nr, r - qu * nr);
  }
  return t < 0 ? t + p : t;
}

}  // namespace

bool orbit_hits_zero_mod_p(const Poly& f, const Rational& a0, int64_t p) {
  if (!f.field().is_rationals())
    throw std::invalid_argument("orbit_hits_zero_mod_p: rational coefficients required");
  if (f.degree() < 1) throw std::invalid_argument("orbit_hits_zero_mod_p: constant map");
  if (p < 2 || !is_prime_u64(static_cast<uint64_t>(p)))
    throw BadPrime("orbit_hits_zero_mod_p: p must be prime");
  if (p > 100000000) throw CapExceeded("orbit_hits_zero_mod_p: prime too large");
  auto reduce = [p](const Rational& r) {
    Integer den(r.get_den());
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
      throw BadPrime("orbit_hits_zero_mod_p: p divides a denominator");
    Integer num(r.get_num());
    int64_t nm = static_cast<int64_t>(mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(p)));
    int64_t dm = static_cast<int64_t>(mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p)));
    return mulmod_i64(nm, invmod_i64(dm, p), p);
  };
  std::vector<int64_t> c(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) c[i] = reduce(f.coeff(i).rat());
  if (c[f.degree()] == 0)
    throw BadPrime("orbit_hits_zero_mod_p: p divides the leading coefficient");
  auto eval = [&](int64_t x) {
    int64_t acc = 0;
    for (int i = f.degree(); i >= 0; --i) acc = (mulmod_i64(acc, x, p) + c[i]) % p;
    return acc;
  };
  std::vector<bool> visited(static_cast<size_t>(p), false);
  int64_t x = eval(reduce(a0));  // the orbit starts at f(a0): n >= 1
  while (!visited[static_cast<size_t>(x)]) {
    if (x == 0) return true;
    visited[static_cast<size_t>(x)] = true;
    x = eval(x);
  }
  return false;
}

}  // namespace arboreal
