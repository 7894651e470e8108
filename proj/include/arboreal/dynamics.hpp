#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/factor.hpp"
#include "arboreal/poly.hpp"

namespace arboreal {

// bit bound on numerators/denominators during iteration over Q
inline constexpr uint64_t kDefaultIterBitCap = 1000000;
// candidate budget per divisor in the decomposition search
inline constexpr uint64_t kDefaultDecompCap = 1000000;

/* phi(x) = num(x)/den(x) with gcd(num, den) = 1 and max degree >= 1.  The
 * denominator is normalized monic, so den = 1 encodes a polynomial map. */
class RationalMap {
 public:
  // validates: den nonzero, coprime with num, max(deg num, deg den) >= 1
  static RationalMap make(Poly num, Poly den);
  static RationalMap from_poly(const Poly& f);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const Field& field() const { return num_.field(); }
  int degree() const;  // max(deg num, deg den)
  bool is_polynomial() const { return den_.is_constant(); }

  bool operator==(const RationalMap& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

 private:
  RationalMap(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_, den_;
};

/* Critical locus of a map.  crit = p'q - pq' (just f' for polynomials);
 * crit_radical = monic squarefree polynomial with the same finite roots, the
 * zero polynomial when crit = 0 (identically inseparable map). */
struct CriticalData {
  Poly crit;
  Poly crit_radical;
  bool has_finite_critical_points = false;  // crit_radical nonconstant
};

CriticalData critical_data(const RationalMap& phi);
CriticalData critical_data(const Poly& f);

/* n-fold composition f(f(...f(x))).  Over Q every intermediate coefficient is
 * checked against the bit cap; exceeding it throws CapExceeded. */
Poly iterate(const Poly& f, int n, uint64_t cap_bits = kDefaultIterBitCap);

/* r_n(T) = Res_x(crit_radical(x), T - f^n(x)), monic of degree
 * deg crit_radical; its roots are the n-th forward values of the distinct
 * finite critical points.  Computed as the characteristic polynomial of
 * multiplication by (f^n mod crit_radical), so the full iterate is never
 * expanded.  Throws std::domain_error when f has no finite critical point. */
Poly critical_value_poly(const Poly& f, int n, uint64_t cap_bits = kDefaultIterBitCap);

struct CollisionResult {
  bool ok = true;
  // least violation in lexicographic (n, m) order, m <= n; a non-squarefree
  // r_n (two critical points sharing an n-th value) is reported as (n, n)
  int n = 0, m = 0;
};

/* Critical-orbit collision test: ok iff every r_n (n <= N) is squarefree and
 * gcd(r_n, r_m) = 1 for all m < n <= N. */
CollisionResult orbit_collision_check(const Poly& f, int N,
                                      uint64_t cap_bits = kDefaultIterBitCap);

/* Characteristic 2 only: true iff no fiber f - c has a triple root, tested
 * via Res(H1, H2) != 0 on the first two Hasse derivatives.  Degenerate cases:
 * H1 = 0 reports false (every critical point is wild); H2 = 0 with H1
 * nonconstant reports false; H2 = 0 with H1 a nonzero constant reports true. */
bool char2_cube_check(const Poly& f);

struct DecompositionResult {
  bool indecomposable = true;
  Poly outer, inner;  // f = outer(inner(x)) when decomposable
};

/* Exhaustive decomposition search over finite fields.  Candidate inner
 * polynomials are monic of degree e with zero constant term, e running over
 * the proper divisors of deg f; a candidate h works iff the base-h expansion
 * of f has constant digits.  Prime degree returns indecomposable without
 * search; a divisor with q^(e-1) beyond the budget throws CapExceeded. */
DecompositionResult is_indecomposable_Fq(const Poly& f,
                                         uint64_t budget = kDefaultDecompCap);

enum class Verdict { holds, fails, not_applicable };

struct ConditionReport {
  Verdict verdict = Verdict::not_applicable;
  std::string witness;  // set when the condition fails
};

/* Genericity report for a degree-d polynomial f and orbit horizon N:
 *   (1) f' squarefree (char != 2), or f' the square of a squarefree
 *       polynomial (char 2);
 *   (2) no critical-orbit collisions up to time N (orbit_collision_check);
 *   (3) char 2 only: no fiber has a triple root (char2_cube_check);
 *   (4) char p | d only: f indecomposable and deg f' = d - 2.
 * overall is the conjunction of the applicable conditions. */
struct HReport {
  std::array<ConditionReport, 4> conditions;
  bool overall = false;
};

HReport is_in_H(const Poly& f, int N, uint64_t cap_bits = kDefaultIterBitCap);

/* Parametric discriminant data of the fiber family phi(x) = T.
 * disc = Res_x(p'q - pq', p - T q) as a monic polynomial in T; scale is the
 * constant making scale * disc the raw resultant.  critical_product lists
 * (v_j, m_j) where v_j(T) is the monic polynomial whose roots are the values
 * phi(a) over the non-pole critical points a of multiplicity class m_j in
 * p'q - pq'.  constant_ratio records whether disc equals the expanded
 * product up to a constant (radical equality is asserted by the tests). */
struct DiscReport {
  Poly disc;
  FieldElem scale;
  std::vector<std::pair<Poly, int>> critical_product;
  bool constant_ratio = false;
};

// throws std::domain_error when p' = q' = 0 (every fiber inseparable)
DiscReport disc_param(const RationalMap& phi);

/* Radical of the parametric discriminant of f^n(x) - T, compared against the
 * radical of r_1 ... r_n: the two have identical root sets (the critical
 * values f^m(b), m <= n), so `agrees` is expected true whenever computed. */
struct IterDiscReport {
  Poly radical_disc;
  Poly rn_product_radical;
  bool has_critical_points = false;
  bool agrees = false;
};

IterDiscReport disc_iterate_radical(const Poly& f, int n,
                                    uint64_t cap_bits = kDefaultIterBitCap);

/* True iff f^n(a0) = 0 mod p for some n >= 1 (equivalently: p divides some
 * forward iterate).  The orbit is eventually periodic in GF(p), so a visited
 * table bounds the loop.  Throws BadPrime when p divides a coefficient
 * denominator, the denominator of a0, or the leading numerator; CapExceeded
 * for p > 10^8 (the visited table would not be desk-scale). */
bool orbit_hits_zero_mod_p(const Poly& f, const Rational& a0, int64_t p);

}  // namespace arboreal
