#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "arboreal/perm.hpp"
#include "arboreal/poly.hpp"
#include "arboreal/rng.hpp"

namespace arboreal {

struct Factorization {
  FieldElem unit;
  // monic irreducible factors with multiplicities, sorted by (degree,
  // coefficient vector read as a base-q integer)
  std::vector<std::pair<Poly, int>> factors;

  Poly product() const;
};

// true iff gcd(f, f') is constant; in characteristic p, f' = 0 with
// deg f > 0 reports false.  f must be nonzero.
bool squarefree_test(const Poly& f);

/* f = lc * prod g_i^(e_i) with the g_i monic, squarefree, pairwise coprime
 * and the e_i distinct.  Yun's algorithm over Q; over GF(p^k) the classical
 * char-p variant with p-th root descent.  Sorted by exponent. */
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);

// product of the distinct irreducible factors, monic; constants give 1
Poly radical(const Poly& f);

// g with g^p = f when f is a p-th power over GF(p^k); nullopt otherwise
std::optional<Poly> pth_root_poly(const Poly& f);

/* Full factorization over a finite field: squarefree decomposition, then
 * distinct-degree splitting, then seeded Cantor-Zassenhaus equal-degree
 * splitting (trace map in characteristic 2).  Deterministic given (f, seed). */
Factorization factor(const Poly& f, uint64_t seed);

// deterministic Frobenius-based irreducibility test over finite fields
bool is_irreducible(const Poly& f);

/* Multiset of irreducible factor degrees of a squarefree nonconstant f over a
 * finite field.  Throws NotSquarefree otherwise. */
CyclePattern cycle_pattern_of_poly(const Poly& f, uint64_t seed);

}  // namespace arboreal
