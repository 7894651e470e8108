#pragma once
/* Splitting-field brute-force oracles shared by the unit tests and the
 * acceptance harness.  They re-derive critical-orbit collisions and triple
 * roots by explicit root extraction in an extension field, independently of
 * the resultant machinery they are checking. */

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/dynamics.hpp"
#include "arboreal/factor.hpp"
#include "arboreal/field.hpp"
#include "arboreal/poly.hpp"
#include "arboreal/rng.hpp"

namespace arboreal::oracle {

/* Embedding GF(p^k) -> GF(p^(k*L)) determined by sending the source
 * generator to a fixed root of the source modulus in the target field. */
struct FieldEmbedding {
  Field small;
  Field big;
  FieldElem gen_image;

  FieldElem map(const FieldElem& a) const {
    if (a.field() != small) throw std::logic_error("embedding: element from the wrong field");
    FieldElem acc = big.zero();
    FieldElem pw = big.one();
    for (int64_t c : a.residues()) {
      acc += big.from_int(c) * pw;
      pw *= gen_image;
    }
    return acc;
  }

  Poly lift(const Poly& f) const {
    std::vector<FieldElem> cs;
    cs.reserve(f.coeffs().size());
    for (const FieldElem& c : f.coeffs()) cs.push_back(map(c));
    return Poly(big, std::move(cs));
  }
};

inline FieldEmbedding identity_embedding(const Field& F) {
  FieldElem g = F.extension_degree() >= 2 ? F.from_residues({0, 1}) : F.zero();
  return FieldEmbedding{F, F, g};
}

inline FieldEmbedding make_embedding(const Field& F, int L) {
  if (!F.is_finite() || L < 1) throw std::logic_error("embedding: bad arguments");
  if (L == 1) return identity_embedding(F);
  int k = F.extension_degree();
  Field E = Field::finite(F.prime(), k * L);
  std::vector<FieldElem> mcs;
  for (int64_t c : F.modulus()) mcs.push_back(E.from_int(c));
  Factorization fac = factor(Poly(E, std::move(mcs)), 0);
  for (const auto& [g, e] : fac.factors)
    if (g.degree() == 1) return FieldEmbedding{F, E, -g.coeff(0)};
  throw std::logic_error("embedding: source modulus did not split in the target field");
}

struct SplitRoots {
  FieldEmbedding phi;
  std::vector<FieldElem> roots;  // all roots of the input, in the big field
};

// complete root list of a squarefree polynomial over its splitting field
inline SplitRoots split_roots(const Poly& A, uint64_t seed) {
  if (A.is_constant()) return SplitRoots{identity_embedding(A.field()), {}};
  Factorization base = factor(A, seed);
  int L = 1;
  for (const auto& [g, e] : base.factors) L = std::lcm(L, g.degree());
  FieldEmbedding phi = make_embedding(A.field(), L);
  Factorization fac = factor(phi.lift(A), seed);
  std::vector<FieldElem> roots;
  for (const auto& [g, e] : fac.factors) {
    if (g.degree() != 1) throw std::logic_error("split_roots: factor not linear after split");
    roots.push_back(-g.coeff(0));
  }
  if (static_cast<int>(roots.size()) != A.degree())
    throw std::logic_error("split_roots: root count does not match the degree");
  return SplitRoots{std::move(phi), std::move(roots)};
}

/* Collision test by direct orbit comparison: extract the critical points in
 * a splitting field, push each forward n times, compare values pairwise, and
 * report the least violation in the same (n, m) order as the library. */
inline CollisionResult collision_oracle(const Poly& f, int N, uint64_t seed) {
  CriticalData cd = critical_data(f);
  if (!cd.has_finite_critical_points)
    throw std::domain_error("collision_oracle: no finite critical points");
  SplitRoots sr = split_roots(cd.crit_radical, seed);
  Poly fE = sr.phi.lift(f);
  size_t r = sr.roots.size();
  std::vector<std::vector<FieldElem>> orbit(r);
  for (size_t i = 0; i < r; ++i) {
    FieldElem v = sr.roots[i];
    for (int n = 1; n <= N; ++n) {
      v = fE.eval(v);
      orbit[i].push_back(v);
    }
  }
  for (int n = 1; n <= N; ++n) {
    for (int m = 1; m < n; ++m)
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
          if (orbit[i][n - 1] == orbit[j][m - 1]) return CollisionResult{false, n, m};
    for (size_t i = 0; i < r; ++i)
      for (size_t j = i + 1; j < r; ++j)
        if (orbit[i][n - 1] == orbit[j][n - 1]) return CollisionResult{false, n, n};
  }
  return CollisionResult{true, 0, 0};
}

/* Triple-root test by direct multiplicity measurement: at every critical
 * point b in a splitting field, divide f - f(b) by (x - b) until it stops
 * dividing.  The identically-zero first Hasse derivative reports false by
 * definition, mirroring the library convention. */
inline bool cube_oracle(const Poly& f, uint64_t seed) {
  if (f.field().characteristic() != 2)
    throw std::invalid_argument("cube_oracle: characteristic 2 required");
  Poly h1 = hasse_derivative(f, 1);
  if (h1.is_zero()) return false;
  if (h1.is_constant()) return true;  // no finite critical points
  SplitRoots sr = split_roots(radical(h1), seed);
  Poly fE = sr.phi.lift(f);
  for (const FieldElem& b : sr.roots) {
    Poly g = fE - Poly::constant(fE.eval(b));
    Poly lin = Poly::x(sr.phi.big) - Poly::constant(b);
    int mult = 0;
    while (!g.is_zero() && (g % lin).is_zero()) {
      g = g / lin;
      ++mult;
    }
    if (mult >= 3) return false;
  }
  return true;
}

struct SuiteResult {
  int checked = 0;
  int mismatches = 0;
  int flagged = 0;  // side statistics (constant-ratio failures in the disc suite)
  std::string first_mismatch;

  void note(const std::string& what) {
    ++mismatches;
    if (first_mismatch.empty()) first_mismatch = what;
  }
};

// random polynomial with degree drawn uniformly from [mindeg, maxdeg]
inline Poly random_poly_deg(const Field& F, Rng& rng, int mindeg, int maxdeg) {
  int deg = mindeg + static_cast<int>(rng.below(static_cast<uint64_t>(maxdeg - mindeg) + 1));
  std::vector<FieldElem> cs;
  cs.reserve(deg + 1);
  for (int i = 0; i < deg; ++i) cs.push_back(F.from_index(rng.below(F.order_u64())));
  cs.push_back(F.from_index(1 + rng.below(F.order_u64() - 1)));
  return Poly(F, std::move(cs));
}

inline Poly random_poly_deg_q(Rng& rng, int mindeg, int maxdeg) {
  Field Q = Field::rationals();
  int deg = mindeg + static_cast<int>(rng.below(static_cast<uint64_t>(maxdeg - mindeg) + 1));
  std::vector<FieldElem> cs;
  for (int i = 0; i < deg; ++i) cs.push_back(Q.from_int(static_cast<int64_t>(rng.below(19)) - 9));
  int64_t lead = static_cast<int64_t>(rng.below(18)) - 9;
  if (lead >= 0) ++lead;  // skip zero
  cs.push_back(Q.from_int(lead));
  return Poly(Q, std::move(cs));
}

inline SuiteResult run_collision_oracle_suite(int instances, uint64_t seed) {
  const std::vector<Field> fields = {Field::finite(3), Field::finite(5), Field::finite(7),
                                     Field::finite(2, 3), Field::finite(3, 2)};
  SuiteResult res;
  Rng rng(seed);
  size_t fi = 0;
  while (res.checked < instances) {
    const Field& F = fields[fi++ % fields.size()];
    Poly f = random_poly_deg(F, rng, 2, 4);
    if (!critical_data(f).has_finite_critical_points) continue;
    const int N = 3;
    CollisionResult lib = orbit_collision_check(f, N);
    CollisionResult ora = collision_oracle(f, N, rng.next());
    ++res.checked;
    if (lib.ok != ora.ok || lib.n != ora.n || lib.m != ora.m) {
      std::ostringstream os;
      os << "collision mismatch over " << F.to_string() << ", f = " << f.to_string()
         << ": check gave (" << lib.ok << "," << lib.n << "," << lib.m << "), oracle ("
         << ora.ok << "," << ora.n << "," << ora.m << ")";
      res.note(os.str());
    }
  }
  return res;
}

inline SuiteResult run_cube_oracle_suite(int instances, uint64_t seed) {
  const std::vector<Field> fields = {Field::finite(2), Field::finite(2, 2), Field::finite(2, 3)};
  SuiteResult res;
  Rng rng(seed);
  size_t fi = 0;
  while (res.checked < instances) {
    const Field& F = fields[fi++ % fields.size()];
    Poly f = random_poly_deg(F, rng, 2, 6);
    bool lib = char2_cube_check(f);
    bool ora = cube_oracle(f, rng.next());
    ++res.checked;
    if (lib != ora)
      res.note("cube mismatch over " + F.to_string() + ", f = " + f.to_string() +
               ": check gave " + (lib ? "true" : "false") + ", oracle " +
               (ora ? "true" : "false"));
  }
  return res;
}

inline Poly product_with_exponents(const std::vector<std::pair<Poly, int>>& parts,
                                   const Field& F) {
  Poly acc = Poly::constant(F.one());
  for (const auto& [v, e] : parts) acc = acc * pow_poly(v, static_cast<uint64_t>(e));
  return acc;
}

/* Discriminant cross-check: the monic resultant form and the critical-value
 * product must have equal radicals on every map where the discriminant is
 * defined.  constant_ratio failures are only counted (flagged), not treated
 * as mismatches. */
inline SuiteResult run_disc_radical_suite(int finite_instances, int rational_instances,
                                          uint64_t seed) {
  const std::vector<Field> fields = {Field::finite(3),    Field::finite(5),
                                     Field::finite(7),    Field::finite(3, 2),
                                     Field::finite(11),   Field::finite(13)};
  SuiteResult res;
  Rng rng(seed);
  size_t fi = 0;
  int done_finite = 0, done_q = 0;
  while (done_finite < finite_instances || done_q < rational_instances) {
    bool use_q = done_finite >= finite_instances ||
                 (done_q < rational_instances && (done_finite + done_q) % 5 == 4);
    Field F = use_q ? Field::rationals() : fields[fi++ % fields.size()];
    Poly num = use_q ? random_poly_deg_q(rng, 1, 4) : random_poly_deg(F, rng, 1, 4);
    Poly den = Poly::constant(F.one());
    if (rng.below(2) == 1)
      den = use_q ? random_poly_deg_q(rng, 0, 4) : random_poly_deg(F, rng, 0, 4);
    DiscReport rep{Poly(F), F.zero(), {}, false};
    try {
      RationalMap phi = RationalMap::make(num, den);
      rep = disc_param(phi);
    } catch (const std::invalid_argument&) {
      continue;  // shared factor or degree zero: not a map instance
    } catch (const std::domain_error&) {
      continue;  // identically inseparable fibers: discriminant undefined
    }
    ++res.checked;
    (use_q ? done_q : done_finite)++;
    Poly prod = product_with_exponents(rep.critical_product, F);
    Poly lhs = rep.disc.is_constant() ? Poly::constant(F.one()) : radical(rep.disc);
    Poly rhs = prod.is_constant() ? Poly::constant(F.one()) : radical(prod);
    if (lhs != rhs)
      res.note("radical mismatch over " + F.to_string() + ", num = " + num.to_string() +
               ", den = " + den.to_string());
    if (!rep.constant_ratio) ++res.flagged;
  }
  return res;
}

/* Fixed-point proportion of the maps v -> v' + u*v on F_2[Y]/(Y^n), by
 * linear algebra: in characteristic 2 a fixed point solves (1 + u) v = v',
 * so the solvable v' form the image of multiplication by 1 + u.  The image
 * is spanned by the shifted masks (1+u)*Y^j; its size is 2^rank, computed by
 * echelon insertion.  Independent of any divisibility counting. */
inline Rational char2_fpp_linear_oracle(int n) {
  if (n < 1 || n > 30) throw std::invalid_argument("char2_fpp_linear_oracle: bad depth");
  uint64_t full = (1ull << n) - 1;
  Integer count = 0;
  for (uint64_t w = 0; w < (1ull << (n - 1)); ++w) {
    uint64_t c = w << 1;  // 1 + u, where u = 1 + Y * w
    uint64_t row[64] = {0};
    int rank = 0;
    for (int j = 0; j < n; ++j) {
      uint64_t v = (c << j) & full;
      for (int bit = n - 1; bit >= 0 && v; --bit) {
        if (!((v >> bit) & 1)) continue;
        if (!row[bit]) {
          row[bit] = v;
          ++rank;
          v = 0;
        } else {
          v ^= row[bit];
        }
      }
    }
    count += pow_int(Integer(2), static_cast<unsigned long>(rank));
  }
  return Rational(count) / Rational(pow_int(Integer(2), static_cast<unsigned long>(2 * n - 1)));
}

}  // namespace arboreal::oracle
