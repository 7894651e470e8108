#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "arboreal/perm.hpp"
#include "arboreal/rational.hpp"
#include "arboreal/rng.hpp"

namespace arboreal {

inline constexpr uint64_t kDefaultDegreeCap = 64;
inline constexpr uint64_t kDefaultEnumCap = 1000000;

/* Automorphism of the complete rooted d-ary tree of depth n, decomposed at
 * the root: a permutation of the d top branches plus one depth-(n-1)
 * automorphism per branch, indexed by the source branch.  Leaves are labelled
 * by base-d digit strings with the root digit most significant, so the leaf
 * set is {0, ..., d^n - 1}. */
struct TreeAut {
  int d = 2;
  int n = 1;
  Perm root = Perm::identity(2);
  std::vector<TreeAut> children;  // size d when n > 1, empty when n == 1

  static TreeAut identity(int d, int n);
  bool operator==(const TreeAut& o) const;
};

// order of the full automorphism group: (d!)^((d^n - 1)/(d - 1))
Integer wreath_order(int d, int n);

// the permutation induced on the d^n leaves
Perm leaf_action(const TreeAut& a);

// action of a after b; leaf_action(wr_compose(a, b)) = leaf_action(a) * leaf_action(b)
TreeAut wr_compose(const TreeAut& a, const TreeAut& b);
TreeAut wr_inverse(const TreeAut& a);

// uniform element (Fisher-Yates at every node), deterministic given the rng state
TreeAut wr_sample(int d, int n, Rng& rng);

/* Index-based enumeration of the full group in a fixed order.  The order
 * must not exceed `cap` (default 10^6). */
class WreathEnum {
 public:
  WreathEnum(int d, int n, uint64_t cap = kDefaultEnumCap);
  uint64_t size() const { return size_; }
  TreeAut at(uint64_t index) const;

 private:
  int d_, n_;
  uint64_t size_;
  std::vector<uint64_t> level_size_;  // group order per depth
};

/* Exact distribution of leaf-action cycle patterns for a uniform element.
 * entries hold every pattern of positive probability; probabilities sum to 1. */
struct PatternDistribution {
  int d = 0, n = 0;
  Integer group_order;
  std::map<CyclePattern, Rational> entries;
};

/* Level-1 distribution is the S_d cycle-type law  P(type) = 1 / prod_i
 * (i^(r_i) r_i!); deeper levels convolve: each top k-cycle draws one pattern
 * from the level-(n-1) law (a product of independent uniform elements is
 * uniform) and stretches every part length by k.  Throws CapExceeded when
 * d^n exceeds cap_degree. */
PatternDistribution pattern_distribution(int d, int n, uint64_t cap_degree = kDefaultDegreeCap);

// probability of pattern pi; 0 when unsupported; degree mismatch throws
Rational rho(const PatternDistribution& dist, const CyclePattern& pi);

enum class FppMethod { from_distribution, recursive };

/* Proportion of elements whose leaf action has a fixed point.
 * from_distribution sums the r_1 >= 1 patterns (subject to the degree cap);
 * recursive uses f_1 = 1 - D_d/d!, f_(m+1) = 1 - sum_j P[fix = j] (1 - f_m)^j
 * and has no cap. */
Rational fpp(int d, int n, FppMethod method, uint64_t cap_degree = kDefaultDegreeCap);

}  // namespace arboreal
