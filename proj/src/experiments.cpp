#include "arboreal/experiments.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <set>
#include <stdexcept>
#include <thread>

#include "arboreal/dynamics.hpp"
#include "arboreal/factor.hpp"
#include "arboreal/rng.hpp"
#include "arboreal/textio.hpp"
#include "arboreal/wreath.hpp"

namespace arboreal {

namespace {

/* Run fn(lo, hi) over a contiguous partition of [0, total) and return the
 * per-range results in range order.  Work items derive any randomness from
 * their own index, so the merged result is independent of the worker count. */
template <typename Result, typename Fn>
std::vector<Result> run_partitioned(uint64_t total, int workers, Fn fn) {
  int w = workers < 1 ? 1 : workers;
  if (total > 0 && static_cast<uint64_t>(w) > total) w = static_cast<int>(total);
  std::vector<std::optional<Result>> slots(w);
  if (w == 1 || total == 0) {
    slots[0] = fn(0, total);
  } else {
    std::vector<std::exception_ptr> errs(w);
    std::vector<std::thread> threads;
    threads.reserve(w);
    uint64_t chunk = total / w, extra = total % w, lo = 0;
    for (int i = 0; i < w; ++i) {
      uint64_t hi = lo + chunk + (static_cast<uint64_t>(i) < extra ? 1 : 0);
      threads.emplace_back([&slots, &errs, &fn, i, lo, hi]() {
        try {
          slots[i] = fn(lo, hi);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      });
      lo = hi;
    }
    for (auto& th : threads) th.join();
    for (int i = 0; i < w; ++i)
      if (errs[i]) std::rethrow_exception(errs[i]);
  }
  std::vector<Result> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct TallyLocal {
  std::map<CyclePattern, Integer> tallies;
  Integer skipped = 0;
  Integer extra = 0;
};

}  // namespace

/* ---- polynomial census --------------------------------------------------- */

ScanReport cheb_scan(const Field& F, const FieldElem& b, int d, int n,
                     uint64_t seed, int workers, uint64_t cap,
                     std::optional<Rational> m_bound) {
  if (!F.is_finite()) throw std::invalid_argument("cheb_scan: finite field required");
  if (b.field() != F || b.is_zero())
    throw std::invalid_argument("cheb_scan: leading coefficient must be nonzero");
  if (d < 1 || n < 1) throw std::invalid_argument("cheb_scan: d >= 1 and n >= 1 required");
  if (d == 2 && F.characteristic() == 2)
    throw std::invalid_argument("cheb_scan: quadratic scans in characteristic 2 are excluded");
  uint64_t q = F.order_u64();
  Integer qd = pow_int(Integer(static_cast<unsigned long>(q)), d);
  if (qd > Integer(static_cast<unsigned long>(cap)))
    throw CapExceeded("cheb_scan: q^d exceeds the scan cap");
  Integer dn = pow_int(Integer(d), n);
  if (dn > 64) throw CapExceeded("cheb_scan: iterate degree exceeds 64");
  PatternDistribution dist = pattern_distribution(d, n);
  uint64_t total = to_u64(qd, "cheb_scan size");
  Rng master(seed);

  auto locals = run_partitioned<TallyLocal>(total, workers, [&](uint64_t lo, uint64_t hi) {
    TallyLocal L;
    for (uint64_t idx = lo; idx < hi; ++idx) {
      std::vector<FieldElem> cs;
      cs.reserve(d + 1);
      uint64_t t = idx;
      for (int i = 0; i < d; ++i) {
        cs.push_back(F.from_index(t % q));
        t /= q;
      }
      cs.push_back(b);
      Poly f(F, std::move(cs));
      Poly fn = iterate(f, n);
      if (!squarefree_test(fn))
        L.skipped += 1;
      else
        L.tallies[cycle_pattern_of_poly(fn, master.derive(idx).next())] += 1;
      if (d >= 2 && is_in_H(f, n).overall) L.extra += 1;
    }
    return L;
  });

  ScanReport rep;
  rep.q = q;
  rep.b = b.to_string();
  rep.d = d;
  rep.n = n;
  rep.seed = seed;
  rep.non_squarefree = 0;
  rep.h_members = 0;
  std::map<CyclePattern, Integer> tallies;
  for (auto& L : locals) {
    rep.non_squarefree += L.skipped;
    rep.h_members += L.extra;
    for (auto& [pat, c] : L.tallies) tallies[pat] += c;
  }
  std::map<CyclePattern, Rational> law;
  for (const auto& [pat, r] : dist.entries) law[pat] = r;
  std::set<CyclePattern> keys;
  for (const auto& [pat, r] : law) keys.insert(pat);
  for (const auto& [pat, c] : tallies) keys.insert(pat);
  rep.m_bound = m_bound ? *m_bound : Rational(8) * Rational(dn);
  Rational qd_r(qd);
  Rational dev_bound = rep.m_bound * rep.m_bound * Rational(pow_int(Integer(static_cast<unsigned long>(q)), 2 * d - 1));
  for (const auto& pat : keys) {
    auto ti = tallies.find(pat);
    Integer cnt = ti == tallies.end() ? Integer(0) : ti->second;
    auto li = law.find(pat);
    Rational rho = li == law.end() ? Rational(0) : li->second;
    rep.rows.push_back(ScanRow{pat, cnt, rho});
    Rational diff = Rational(cnt) - qd_r * rho;
    if ((rho == 0 && cnt > 0) || diff * diff > dev_bound) rep.violations.push_back(pat);
  }
  return rep;
}

/* ---- fiber census for a fixed map ---------------------------------------- */

namespace {

FrobReport frob_core(const Poly& f, int n, bool exhaustive, uint64_t examined,
                     uint64_t seed, int workers) {
  const Field& F = f.field();
  if (!F.is_finite()) throw std::invalid_argument("frob: finite field required");
  if (f.degree() < 1 || n < 1)
    throw std::invalid_argument("frob: nonconstant f and n >= 1 required");
  if (pow_int(Integer(f.degree()), n) > 64)
    throw CapExceeded("frob: iterate degree exceeds 64");
  uint64_t q = F.order_u64();
  Poly fn = iterate(f, n);
  Rng master(seed);

  auto locals = run_partitioned<TallyLocal>(examined, workers, [&](uint64_t lo, uint64_t hi) {
    TallyLocal L;
    for (uint64_t idx = lo; idx < hi; ++idx) {
      Rng r = master.derive(idx);
      FieldElem alpha = exhaustive ? F.from_index(idx) : F.from_index(r.below(q));
      Poly g = fn - Poly::constant(alpha);
      if (!squarefree_test(g)) {
        L.skipped += 1;
        continue;
      }
      L.tallies[cycle_pattern_of_poly(g, r.next())] += 1;
    }
    return L;
  });

  FrobReport rep;
  rep.field = F.to_string();
  rep.f = format_poly(f);
  rep.n = n;
  rep.exhaustive = exhaustive;
  rep.examined = examined;
  rep.seed = seed;
  rep.skipped = 0;
  for (auto& L : locals) {
    rep.skipped += L.skipped;
    for (auto& [pat, c] : L.tallies) rep.tallies[pat] += c;
  }
  return rep;
}

}  // namespace

FrobReport frob_exhaustive(const Poly& f, int n, uint64_t seed, int workers,
                           uint64_t cap) {
  const Field& F = f.field();
  if (!F.is_finite()) throw std::invalid_argument("frob: finite field required");
  if (F.order() > Integer(static_cast<unsigned long>(cap)))
    throw CapExceeded("frob: field too large for an exhaustive pass");
  return frob_core(f, n, true, F.order_u64(), seed, workers);
}

FrobReport frob_sampled(const Poly& f, int n, uint64_t samples, uint64_t seed,
                        int workers) {
  if (samples < 1) throw std::invalid_argument("frob: at least one sample required");
  return frob_core(f, n, false, samples, seed, workers);
}

/* ---- orbit primes --------------------------------------------------------- */

OrbitDensityReport orbit_prime_density(const Poly& f, const Rational& a0,
                                       int64_t X, int workers, int64_t cap) {
  if (!f.field().is_rationals())
    throw std::invalid_argument("orbit_prime_density: rational coefficients required");
  if (f.degree() < 1)
    throw std::invalid_argument("orbit_prime_density: nonconstant polynomial required");
  if (X < 3) throw std::invalid_argument("orbit_prime_density: X >= 3 required");
  if (X > cap) throw CapExceeded("orbit_prime_density: X exceeds the sieve cap");

  std::vector<bool> comp(static_cast<size_t>(X) + 1, false);
  std::vector<int64_t> primes;
  for (int64_t i = 2; i <= X; ++i) {
    if (comp[static_cast<size_t>(i)]) continue;
    primes.push_back(i);
    for (int64_t j = i * i; j <= X; j += i) comp[static_cast<size_t>(j)] = true;
  }

  // bad primes are exactly the divisors of this product
  Integer D(1);
  for (int i = 0; i <= f.degree(); ++i) D *= Integer(f.coeff(i).rat().get_den());
  D *= Integer(a0.get_den());
  D *= abs(Integer(f.coeff(f.degree()).rat().get_num()));

  struct Local {
    Integer good = 0, div = 0;
    std::vector<int64_t> bad;
  };
  auto locals = run_partitioned<Local>(primes.size(), workers, [&](uint64_t lo, uint64_t hi) {
    Local L;
    for (uint64_t i = lo; i < hi; ++i) {
      int64_t p = primes[i];
      if (mpz_divisible_ui_p(D.get_mpz_t(), static_cast<unsigned long>(p))) {
        L.bad.push_back(p);
        continue;
      }
      L.good += 1;
      if (orbit_hits_zero_mod_p(f, a0, p)) L.div += 1;
    }
    return L;
  });

  OrbitDensityReport rep;
  rep.f = format_poly(f);
  rep.a0 = format_rational(a0);
  rep.X = X;
  rep.good_primes = 0;
  rep.dividing = 0;
  for (auto& L : locals) {
    rep.good_primes += L.good;
    rep.dividing += L.div;
    rep.bad_primes.insert(rep.bad_primes.end(), L.bad.begin(), L.bad.end());
  }
  rep.density = rep.good_primes == 0 ? Rational(0)
                                     : Rational(rep.dividing) / Rational(rep.good_primes);
  for (int m = 1; m <= kOrbitFppLadder; ++m)
    rep.fpp_ladder.push_back(fpp(f.degree(), m, FppMethod::recursive));
  return rep;
}

/* ---- characteristic-2 affine family --------------------------------------- */

Rational char2_affine_fpp(int n) {
  if (n < 1) throw std::invalid_argument("char2_affine_fpp: n >= 1 required");
  if (n > 20) throw CapExceeded("char2_affine_fpp: n exceeds the size cap");
  // v -> v' + u v on F_2[Y]/(Y^n) has a fixed point iff (1 + u) divides v'.
  // Writing 1 + u = Y^s * (unit), that happens iff the low s coefficients of
  // v' vanish: 2^(n-s) choices of v', and only v' = 0 when u = 1.
  uint64_t count = 0;
  uint64_t units = uint64_t{1} << (n - 1);
  for (uint64_t w = 0; w < units; ++w) {
    uint64_t one_plus_u = w << 1;  // u = (w << 1) | 1
    if (one_plus_u == 0) {
      count += 1;
      continue;
    }
    int s = std::countr_zero(one_plus_u);
    count += uint64_t{1} << (n - s);
  }
  return Rational(Integer(static_cast<unsigned long>(count))) /
         Rational(Integer(1) << (2 * n - 1));
}

Char2FppReport char2_fpp_ladder(int n_max) {
  if (n_max < 1) throw std::invalid_argument("char2_fpp_ladder: n >= 1 required");
  Char2FppReport rep;
  rep.n_max = n_max;
  for (int m = 1; m <= n_max; ++m) rep.fpp.push_back(char2_affine_fpp(m));
  return rep;
}

/* ---- characteristic-2 quadratic audit ------------------------------------- */

Char2QuadReport char2_quadratic_scan(int k, int n, int workers) {
  if (k < 1 || n < 1) throw std::invalid_argument("char2_quadratic_scan: k, n >= 1 required");
  if (k > 4 || n > 4) throw CapExceeded("char2_quadratic_scan: parameters exceed the scan cap");
  Field F = Field::finite(2, k);
  uint64_t q = F.order_u64();
  uint64_t nf = (q - 1) * (q - 1) * q;  // (a2, a1, a0) with a2 a1 != 0
  Rng master(0x517cc1b727220a95ull);    // fixed; the scan itself is exhaustive

  struct Local {
    std::map<CyclePattern, Integer> profiles;
    Integer skipped = 0, viol = 0;
  };
  auto locals = run_partitioned<Local>(nf, workers, [&](uint64_t lo, uint64_t hi) {
    Local L;
    for (uint64_t fi = lo; fi < hi; ++fi) {
      uint64_t t = fi;
      FieldElem a2 = F.from_index(1 + t % (q - 1));
      t /= (q - 1);
      FieldElem a1 = F.from_index(1 + t % (q - 1));
      t /= (q - 1);
      FieldElem a0 = F.from_index(t % q);
      Poly f(F, {a0, a1, a2});
      Poly fn = iterate(f, n);
      for (uint64_t ai = 0; ai < q; ++ai) {
        Poly g = fn - Poly::constant(F.from_index(ai));
        if (!squarefree_test(g)) {
          L.skipped += 1;
          continue;
        }
        CyclePattern prof = cycle_pattern_of_poly(g, master.derive(fi * q + ai).next());
        bool ok = true;
        for (const auto& [len, mult] : prof.parts())
          if ((len & (len - 1)) != 0) ok = false;
        if (!ok) L.viol += 1;
        L.profiles[prof] += 1;
      }
    }
    return L;
  });

  Char2QuadReport rep;
  rep.k = k;
  rep.n = n;
  rep.maps_scanned = nf * q;
  rep.skipped = 0;
  rep.violations = 0;
  for (auto& L : locals) {
    rep.skipped += L.skipped;
    rep.violations += L.viol;
    for (auto& [pat, c] : L.profiles) rep.profiles[pat] += c;
  }
  return rep;
}

}  // namespace arboreal
