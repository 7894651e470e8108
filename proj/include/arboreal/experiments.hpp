#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arboreal/field.hpp"
#include "arboreal/perm.hpp"
#include "arboreal/poly.hpp"
#include "arboreal/rational.hpp"

namespace arboreal {

inline constexpr uint64_t kDefaultScanCap = 1000000;       // bound on q^d
inline constexpr uint64_t kDefaultExhaustiveCap = 1 << 20; // bound on q in exhaustive mode
inline constexpr int64_t kDefaultSieveCap = 100000000;     // bound on X
inline constexpr int kOrbitFppLadder = 8;

/* Census over all monic-up-to-b polynomials of degree d with leading
 * coefficient b: tallies of the cycle pattern of the squarefree n-th
 * iterates, compared row by row against the iterated wreath law. */
struct ScanRow {
  CyclePattern pattern;
  Integer count;
  Rational rho;
  bool operator==(const ScanRow&) const = default;
};

struct ScanReport {
  uint64_t q = 0;
  std::string b;
  int d = 0;
  int n = 0;
  uint64_t seed = 0;
  std::vector<ScanRow> rows;  // union of law support and observed patterns, sorted
  Integer non_squarefree;
  Integer h_members;  // scanned f passing the genericity test at depth n
  Rational m_bound;   // deviation threshold; a row violates when
                      // |count - q^d rho| > m_bound * q^(d - 1/2)
  std::vector<CyclePattern> violations;
  bool operator==(const ScanReport&) const = default;
};

ScanReport cheb_scan(const Field& F, const FieldElem& b, int d, int n,
                     uint64_t seed, int workers = 1,
                     uint64_t cap = kDefaultScanCap,
                     std::optional<Rational> m_bound = std::nullopt);

/* Fiber census for a fixed map: factor f^n - alpha over the coefficient
 * field, either for every alpha or for seeded uniform draws. */
struct FrobReport {
  std::string field;
  std::string f;
  int n = 0;
  bool exhaustive = true;
  uint64_t examined = 0;
  uint64_t seed = 0;
  std::map<CyclePattern, Integer> tallies;
  Integer skipped;  // alpha with a non-squarefree fiber
  bool operator==(const FrobReport&) const = default;
};

FrobReport frob_exhaustive(const Poly& f, int n, uint64_t seed, int workers = 1,
                           uint64_t cap = kDefaultExhaustiveCap);
FrobReport frob_sampled(const Poly& f, int n, uint64_t samples, uint64_t seed,
                        int workers = 1);

/* Orbit primes: classify every prime p <= X as bad (divides a coefficient
 * denominator, the denominator of a0, or the leading coefficient) or good,
 * and count the good primes with some f^k(a0) = 0 mod p. */
struct OrbitDensityReport {
  std::string f;
  std::string a0;
  int64_t X = 0;
  Integer good_primes;
  Integer dividing;
  std::vector<int64_t> bad_primes;
  Rational density;                  // dividing / good_primes, 0 when no good primes
  std::vector<Rational> fpp_ladder;  // fixed-point proportions at depths 1..8
  bool operator==(const OrbitDensityReport&) const = default;
};

OrbitDensityReport orbit_prime_density(const Poly& f, const Rational& a0,
                                       int64_t X, int workers = 1,
                                       int64_t cap = kDefaultSieveCap);

/* Proportion of maps v -> v' + u*v on F_2[Y]/(Y^n) with a fixed point:
 * exact count over the 2^(2n-1) pairs via the divisibility criterion
 * (1 + u) | v'. */
Rational char2_affine_fpp(int n);

struct Char2FppReport {
  int n_max = 0;
  std::vector<Rational> fpp;  // depths 1..n_max
  bool operator==(const Char2FppReport&) const = default;
};

Char2FppReport char2_fpp_ladder(int n_max);

/* Exhaustive factor-degree audit of quadratic fibers in characteristic 2:
 * every squarefree f^n - alpha must split into factors whose degrees are
 * powers of 2. */
struct Char2QuadReport {
  int k = 0;
  int n = 0;
  uint64_t maps_scanned = 0;  // (f, alpha) pairs examined
  Integer skipped;            // non-squarefree fibers
  Integer violations;         // squarefree fibers with a non-power-of-2 factor degree
  std::map<CyclePattern, Integer> profiles;  // factor-degree multisets of squarefree fibers
  bool operator==(const Char2QuadReport&) const = default;
};

Char2QuadReport char2_quadratic_scan(int k, int n, int workers = 1);

}  // namespace arboreal
