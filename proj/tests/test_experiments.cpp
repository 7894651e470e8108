#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "arboreal/dynamics.hpp"
#include "arboreal/experiments.hpp"
#include "arboreal/field.hpp"
#include "arboreal/poly.hpp"
#include "arboreal/wreath.hpp"
#include "oracle_support.hpp"

using namespace arboreal;

namespace {

Integer scan_total(const ScanReport& r) {
  Integer total = r.non_squarefree;
  for (const ScanRow& row : r.rows) total += row.count;
  return total;
}

// carryless product modulo Y^n, masks encode polynomials over F_2
uint32_t clmul_mod(uint32_t a, uint32_t b, int n) {
  uint32_t r = 0;
  for (int i = 0; i < n; ++i)
    if ((b >> i) & 1) r ^= a << i;
  return r & ((1u << n) - 1);
}

// literal fixed-point search over every (u, v', v) triple
Rational char2_fpp_triple_enumeration(int n) {
  uint32_t size = 1u << n;
  Integer count = 0;
  for (uint32_t w = 0; w < (1u << (n - 1)); ++w) {
    uint32_t u = 1u | (w << 1);
    for (uint32_t vp = 0; vp < size; ++vp) {
      bool fixed = false;
      for (uint32_t v = 0; v < size && !fixed; ++v)
        if (v == (vp ^ clmul_mod(u, v, n))) fixed = true;
      if (fixed) count += 1;
    }
  }
  return Rational(count) / Rational(pow_int(Integer(2), static_cast<unsigned long>(2 * n - 1)));
}

}  // namespace

TEST_CASE("census over GF(3) quadratics reproduces the nine-polynomial tally") {
  Field F3 = Field::finite(3);
  ScanReport r = cheb_scan(F3, F3.one(), 2, 1, 7);
  CHECK(r.q == 3);
  CHECK(r.b == "1");
  CHECK(r.non_squarefree == 3);
  CHECK(r.h_members == 9);
  CHECK(r.m_bound == Rational(16));
  CHECK(r.violations.empty());
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].pattern == CyclePattern::parse("1^2"));
  CHECK(r.rows[0].count == 3);
  CHECK(r.rows[0].rho == Rational(1, 2));
  CHECK(r.rows[1].pattern == CyclePattern::parse("2^1"));
  CHECK(r.rows[1].count == 3);
  CHECK(scan_total(r) == 9);
}

TEST_CASE("census partition identity and support containment") {
  struct Params {
    Field F;
    int d, n;
  };
  const std::vector<Params> cases = {{Field::finite(5), 2, 2},
                                     {Field::finite(7), 3, 1},
                                     {Field::finite(3, 2), 2, 2},
                                     {Field::finite(13), 2, 3}};
  for (const auto& c : cases) {
    CAPTURE(c.F.to_string());
    CAPTURE(c.d);
    CAPTURE(c.n);
    ScanReport r = cheb_scan(c.F, c.F.one(), c.d, c.n, 11);
    CHECK(scan_total(r) == pow_int(c.F.order(), static_cast<unsigned long>(c.d)));
    PatternDistribution law = pattern_distribution(c.d, c.n);
    for (const auto& [pi, p] : law.entries) {
      bool present = std::any_of(r.rows.begin(), r.rows.end(),
                                 [&](const ScanRow& row) { return row.pattern == pi; });
      CHECK(present);  // rows cover the whole law support
    }
    for (const ScanRow& row : r.rows) {
      CHECK(row.rho == rho(law, row.pattern));
      if (row.count > 0) CHECK(row.rho > 0);  // observed patterns lie in the support
    }
    CHECK(std::is_sorted(r.rows.begin(), r.rows.end(),
                         [](const ScanRow& a, const ScanRow& b) { return a.pattern < b.pattern; }));
    CHECK(r.violations.empty());
  }
}

TEST_CASE("census reports are identical for every worker count") {
  Field F5 = Field::finite(5);
  ScanReport base = cheb_scan(F5, F5.one(), 2, 2, 99, 1);
  for (int workers : {2, 3, 8}) CHECK(cheb_scan(F5, F5.one(), 2, 2, 99, workers) == base);
}

TEST_CASE("census input validation") {
  Field F3 = Field::finite(3);
  Field F4 = Field::finite(2, 2);
  CHECK_THROWS_AS(cheb_scan(Field::rationals(), Field::rationals().one(), 2, 1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cheb_scan(F3, F3.zero(), 2, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(cheb_scan(F4, F4.one(), 2, 1, 0), std::invalid_argument);  // char 2, d = 2
  CHECK_THROWS_AS(cheb_scan(F3, F3.one(), 0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(cheb_scan(F3, F3.one(), 2, 7, 0), CapExceeded);  // 2^7 leaves > 64
  CHECK_THROWS_AS(cheb_scan(Field::finite(11), Field::finite(11).one(), 2, 1, 0, 1, 100),
                  CapExceeded);  // 121 polynomials > cap 100
}

TEST_CASE("a zero deviation bound flags every deviating row") {
  Field F5 = Field::finite(5);
  ScanReport r = cheb_scan(F5, F5.one(), 2, 1, 3, 1, kDefaultScanCap, Rational(0));
  CHECK(r.m_bound == Rational(0));
  CHECK_FALSE(r.violations.empty());
}

TEST_CASE("fiber census over GF(5) for the quadratic with critical orbit 1, 2") {
  Field F5 = Field::finite(5);
  FrobReport r = frob_exhaustive(Poly::from_ints(F5, {1, 0, 1}), 1, 0);
  CHECK(r.field == "q=5");
  CHECK(r.f == "1,0,1");
  CHECK(r.exhaustive);
  CHECK(r.examined == 5);
  CHECK(r.skipped == 1);
  REQUIRE(r.tallies.size() == 2);
  CHECK(r.tallies.at(CyclePattern::parse("1^2")) == 2);
  CHECK(r.tallies.at(CyclePattern::parse("2^1")) == 2);
}

TEST_CASE("sampled fiber census: totals, support, determinism") {
  Field F = Field::finite(101);
  Poly f = Poly::from_ints(F, {1, 0, 1});
  FrobReport r = frob_sampled(f, 2, 500, 7);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.examined == 500);
  Integer total = r.skipped;
  PatternDistribution law = pattern_distribution(2, 2);
  for (const auto& [pi, cnt] : r.tallies) {
    total += cnt;
    CHECK(rho(law, pi) > 0);
  }
  CHECK(total == 500);
  CHECK(frob_sampled(f, 2, 500, 7) == r);
  CHECK(frob_sampled(f, 2, 500, 7, 4) == r);
  CHECK_FALSE(frob_sampled(f, 2, 500, 8) == r);
}

TEST_CASE("fiber census validation and caps") {
  Field big = Field::finite(1048583);  // just past the exhaustive cap of 2^20
  CHECK_THROWS_AS(frob_exhaustive(Poly::from_ints(big, {1, 0, 1}), 1, 0), CapExceeded);
  Field F5 = Field::finite(5);
  Poly f = Poly::from_ints(F5, {1, 0, 1});
  CHECK_THROWS_AS(frob_exhaustive(f, 7, 0), CapExceeded);  // 2^7 leaves > 64
  CHECK_THROWS_AS(frob_exhaustive(Poly::from_ints(F5, {3}), 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(frob_exhaustive(Poly::from_ints(Field::rationals(), {1, 0, 1}), 1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(frob_sampled(f, 1, 0, 0), std::invalid_argument);
}

TEST_CASE("orbit prime density for the map that pins its critical orbit") {
  // x^2 - x fixes 2, so only p = 2 ever divides an orbit value
  OrbitDensityReport r = orbit_prime_density(Poly::from_ints(Field::rationals(), {0, -1, 1}),
                                             Rational(2), 10000);
  CHECK(r.good_primes == 1229);  // primes up to 10^4
  CHECK(r.dividing == 1);
  CHECK(r.density == Rational(1, 1229));
  CHECK(r.bad_primes.empty());
  REQUIRE(r.fpp_ladder.size() == 8);
  for (int m = 1; m <= 8; ++m)
    CHECK(r.fpp_ladder[m - 1] == fpp(2, m, FppMethod::recursive));
}

TEST_CASE("orbit prime density matches a direct per-prime recomputation") {
  Field Q = Field::rationals();
  Poly f = Poly::from_ints(Q, {1, 0, 1});
  const int64_t X = 1000;
  OrbitDensityReport r = orbit_prime_density(f, Rational(0), X);
  Integer good = 0, dividing = 0;
  for (int64_t p = 2; p <= X; ++p) {
    bool prime = p >= 2;
    for (int64_t d = 2; d * d <= p && prime; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    good += 1;
    if (orbit_hits_zero_mod_p(f, Rational(0), p)) dividing += 1;
  }
  CHECK(r.good_primes == good);
  CHECK(r.dividing == dividing);
  CHECK(r.density == Rational(dividing) / Rational(good));
  CHECK(orbit_prime_density(f, Rational(0), X, 4) == r);
}

TEST_CASE("orbit prime density reports the analytically forced bad primes") {
  Field Q = Field::rationals();
  Poly f = Poly::from_ints(Q, {0, 0, 1}) * Q.from_rational(Rational(5, 6)) +
           Poly::constant(Q.one());
  OrbitDensityReport r = orbit_prime_density(f, Rational(1, 7), 10000);
  CHECK(r.bad_primes == std::vector<int64_t>{2, 3, 5, 7});
  CHECK(r.good_primes == 1229 - 4);
}

TEST_CASE("orbit prime density validation") {
  Field Q = Field::rationals();
  Poly f = Poly::from_ints(Q, {1, 0, 1});
  CHECK_THROWS_AS(orbit_prime_density(f, Rational(0), 2), std::invalid_argument);
  CHECK_THROWS_AS(orbit_prime_density(f, Rational(0), 100, 1, 50), CapExceeded);
  CHECK_THROWS_AS(orbit_prime_density(Poly::from_ints(Field::finite(5), {1, 0, 1}),
                                      Rational(0), 100),
                  std::invalid_argument);
  CHECK_THROWS_AS(orbit_prime_density(Poly::from_ints(Q, {3}), Rational(0), 100),
                  std::invalid_argument);
}

TEST_CASE("affine fixed-point proportion: closed form and both oracles") {
  for (int n = 1; n <= 12; ++n) {
    CAPTURE(n);
    Rational got = char2_affine_fpp(n);
    Rational closed = Rational(1, 3) + Rational(2) / Rational(3 * pow_int(Integer(4),
                                                  static_cast<unsigned long>(n)));
    CHECK(got == closed);
    CHECK(got == oracle::char2_fpp_linear_oracle(n));
  }
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(char2_affine_fpp(n) == char2_fpp_triple_enumeration(n));
  }
  CHECK(char2_affine_fpp(1) == Rational(1, 2));
  CHECK(char2_affine_fpp(2) == Rational(3, 8));
  Rational gap = char2_affine_fpp(8) - Rational(1, 3);
  if (gap < 0) gap = -gap;
  CHECK(gap < Rational(1, 10000));
  CHECK_THROWS_AS(char2_affine_fpp(0), std::invalid_argument);
  CHECK_THROWS_AS(char2_affine_fpp(21), CapExceeded);
}

TEST_CASE("affine fixed-point ladder lists every depth") {
  Char2FppReport r = char2_fpp_ladder(12);
  CHECK(r.n_max == 12);
  REQUIRE(r.fpp.size() == 12);
  for (int n = 1; n <= 12; ++n) CHECK(r.fpp[n - 1] == char2_affine_fpp(n));
}

TEST_CASE("quadratic fiber audit over GF(2)") {
  Char2QuadReport r1 = char2_quadratic_scan(1, 1);
  CHECK(r1.maps_scanned == 4);
  CHECK(r1.skipped == 0);
  CHECK(r1.violations == 0);
  REQUIRE(r1.profiles.size() == 2);
  CHECK(r1.profiles.at(CyclePattern::parse("1^2")) == 2);
  CHECK(r1.profiles.at(CyclePattern::parse("2^1")) == 2);

  Char2QuadReport r2 = char2_quadratic_scan(1, 2);
  CHECK(r2.maps_scanned == 4);
  CHECK(r2.profiles.at(CyclePattern::parse("1^2 2^1")) == 2);
  CHECK(r2.profiles.at(CyclePattern::parse("4^1")) == 2);
  CHECK(r2.violations == 0);
}

TEST_CASE("quadratic fiber audit: totals, degrees, worker independence") {
  for (auto [k, n] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
    CAPTURE(k);
    CAPTURE(n);
    Char2QuadReport r = char2_quadratic_scan(k, n);
    uint64_t q = 1ull << k;
    CHECK(r.maps_scanned == (q - 1) * (q - 1) * q * q);
    Integer total = r.skipped;
    for (const auto& [pi, cnt] : r.profiles) {
      total += cnt;
      CHECK(pi.degree() == 1 << n);
      for (const auto& [len, mult] : pi.parts()) CHECK((len & (len - 1)) == 0);
    }
    CHECK(total == Integer(r.maps_scanned));
    CHECK(r.violations == 0);
  }
  Char2QuadReport base = char2_quadratic_scan(2, 2, 1);
  for (int workers : {2, 5}) CHECK(char2_quadratic_scan(2, 2, workers) == base);
}

TEST_CASE("quadratic fiber audit validation") {
  CHECK_THROWS_AS(char2_quadratic_scan(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(char2_quadratic_scan(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(char2_quadratic_scan(5, 1), CapExceeded);
  CHECK_THROWS_AS(char2_quadratic_scan(1, 5), CapExceeded);
}
