#include "arboreal/wreath.hpp"

#include <stdexcept>

namespace arboreal {

namespace {

void check_dn(int d, int n) {
  if (d < 2) throw std::invalid_argument("arity d must be >= 2");
  if (n < 1) throw std::invalid_argument("depth n must be >= 1");
}

Rational rat_pow(const Rational& b, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

TreeAut TreeAut::identity(int d, int n) {
  check_dn(d, n);
  TreeAut a{d, n, Perm::identity(d), {}};
  if (n > 1) a.children.assign(d, identity(d, n - 1));
  return a;
}

bool TreeAut::operator==(const TreeAut& o) const {
  return d == o.d && n == o.n && root == o.root && children == o.children;
}

Integer wreath_order(int d, int n) {
  check_dn(d, n);
  Integer nodes = (pow_int(Integer(d), n) - 1) / (d - 1);
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), factorial_int(d).get_mpz_t(),
             to_u64(nodes, "wreath order exponent"));
  return r;
}

Perm leaf_action(const TreeAut& a) {
  if (a.n == 1) return a.root;
  int64_t m = 1;
  for (int i = 1; i < a.n; ++i) m *= a.d;
  std::vector<int> img(static_cast<size_t>(m) * a.d);
  for (int i = 0; i < a.d; ++i) {
    Perm sub = leaf_action(a.children[i]);
    int64_t src = i * m, dst = a.root(i) * m;
    for (int64_t r = 0; r < m; ++r) img[src + r] = static_cast<int>(dst + sub(static_cast<int>(r)));
  }
  return Perm::from_images(std::move(img));
}

TreeAut wr_compose(const TreeAut& a, const TreeAut& b) {
  if (a.d != b.d || a.n != b.n) throw std::invalid_argument("tree shape mismatch");
  TreeAut r{a.d, a.n, a.root * b.root, {}};
  if (a.n > 1) {
    r.children.reserve(a.d);
    for (int i = 0; i < a.d; ++i)
      r.children.push_back(wr_compose(a.children[b.root(i)], b.children[i]));
  }
  return r;
}

TreeAut wr_inverse(const TreeAut& a) {
  TreeAut r{a.d, a.n, a.root.inverse(), {}};
  if (a.n > 1) {
    r.children.reserve(a.d);
    for (int j = 0; j < a.d; ++j) r.children.push_back(wr_inverse(a.children[r.root(j)]));
  }
  return r;
}

TreeAut wr_sample(int d, int n, Rng& rng) {
  check_dn(d, n);
  // root permutation by Fisher-Yates, then children in branch order
  std::vector<int> img(d);
  for (int i = 0; i < d; ++i) img[i] = i;
  for (int i = d - 1; i >= 1; --i) {
    int j = static_cast<int>(rng.below(static_cast<uint64_t>(i) + 1));
    std::swap(img[i], img[j]);
  }
  TreeAut a{d, n, Perm::from_images(std::move(img)), {}};
  if (n > 1) {
    a.children.reserve(d);
    for (int i = 0; i < d; ++i) a.children.push_back(wr_sample(d, n - 1, rng));
  }
  return a;
}

WreathEnum::WreathEnum(int d, int n, uint64_t cap) : d_(d), n_(n) {
  check_dn(d, n);
  Integer fact = factorial_int(d);
  level_size_.assign(n + 1, 0);
  Integer cur = 1;
  for (int m = 1; m <= n; ++m) {
    Integer prev = cur;
    cur = fact;
    for (int i = 0; i < d; ++i) cur *= prev;
    if (cur > Integer(static_cast<unsigned long>(cap)))
      throw CapExceeded("wreath enumeration exceeds cap");
    level_size_[m] = to_u64(cur, "wreath level size");
  }
  size_ = level_size_[n];
}

TreeAut WreathEnum::at(uint64_t index) const {
  if (index >= size_) throw std::out_of_range("enumeration index out of range");
  uint64_t fact = level_size_[1];
  // recursive decode: root Lehmer code, then one digit per branch
  struct Decoder {
    int d;
    const std::vector<uint64_t>& ls;
    uint64_t fact;
    TreeAut build(int level, uint64_t idx) const {
      TreeAut a{d, level, Perm::from_lehmer(d, idx % fact), {}};
      idx /= fact;
      if (level > 1) {
        uint64_t sub = ls[level - 1];
        a.children.reserve(d);
        for (int i = 0; i < d; ++i) {
          a.children.push_back(build(level - 1, idx % sub));
          idx /= sub;
        }
      }
      return a;
    }
  };
  return Decoder{d_, level_size_, fact}.build(n_, index);
}

/* ---- pattern distribution ------------------------------------------------ */

namespace {

using Dist = std::map<CyclePattern, Rational>;

// all partitions of v as (length, multiplicity) patterns
void partitions_rec(int v, int maxpart, std::vector<int>& acc,
                    std::vector<std::vector<int>>& out) {
  if (v == 0) {
    out.push_back(acc);
    return;
  }
  for (int part = std::min(v, maxpart); part >= 1; --part) {
    acc.push_back(part);
    partitions_rec(v - part, part, acc, out);
    acc.pop_back();
  }
}

Dist sd_cycle_type_law(int d) {
  std::vector<std::vector<int>> parts;
  std::vector<int> acc;
  partitions_rec(d, d, acc, parts);
  Dist law;
  for (const auto& lengths : parts) {
    CyclePattern pat = CyclePattern::from_lengths(lengths);
    Integer denom = 1;
    for (auto [len, mult] : pat.parts()) {
      denom *= pow_int(Integer(len), mult);
      denom *= factorial_int(mult);
    }
    law[pat] = Rational(1) / Rational(denom);
  }
  return law;
}

Dist convolve(const Dist& a, const Dist& b) {
  Dist r;
  for (const auto& [pa, qa] : a)
    for (const auto& [pb, qb] : b) r[pa.merged(pb)] += qa * qb;
  return r;
}

}  // namespace

PatternDistribution pattern_distribution(int d, int n, uint64_t cap_degree) {
  check_dn(d, n);
  if (pow_int(Integer(d), n) > Integer(static_cast<unsigned long>(cap_degree)))
    throw CapExceeded("pattern distribution degree exceeds cap");
  Dist top = sd_cycle_type_law(d);
  Dist level = top;  // depth 1
  for (int depth = 2; depth <= n; ++depth) {
    // per-cycle-length laws: a top k-cycle stretches a depth-(depth-1) pattern by k
    std::map<int, Dist> stretched;
    for (int k = 1; k <= d; ++k) {
      Dist dk;
      for (const auto& [pat, pr] : level) dk[pat.scaled(k)] = pr;
      stretched[k] = std::move(dk);
    }
    Dist next;
    for (const auto& [type, typepr] : top) {
      Dist acc;
      acc[CyclePattern()] = Rational(1);
      for (auto [k, mult] : type.parts())
        for (int i = 0; i < mult; ++i) acc = convolve(acc, stretched[k]);
      for (const auto& [pat, pr] : acc) next[pat] += typepr * pr;
    }
    level = std::move(next);
  }
  PatternDistribution out;
  out.d = d;
  out.n = n;
  out.group_order = wreath_order(d, n);
  out.entries = std::move(level);
  return out;
}

Rational rho(const PatternDistribution& dist, const CyclePattern& pi) {
  Integer deg = pow_int(Integer(dist.d), dist.n);
  if (Integer(pi.degree()) != deg)
    throw std::invalid_argument("pattern degree does not match d^n");
  auto it = dist.entries.find(pi);
  return it == dist.entries.end() ? Rational(0) : it->second;
}

Rational fpp(int d, int n, FppMethod method, uint64_t cap_degree) {
  check_dn(d, n);
  if (method == FppMethod::from_distribution) {
    PatternDistribution dist = pattern_distribution(d, n, cap_degree);
    Rational s(0);
    for (const auto& [pat, pr] : dist.entries)
      if (pat.fixed_points() >= 1) s += pr;
    return s;
  }
  // derangement counts
  std::vector<Integer> der(d + 1);
  der[0] = 1;
  for (int m = 1; m <= d; ++m) der[m] = der[m - 1] * m + (m % 2 == 0 ? 1 : -1);
  Integer dfact = factorial_int(d);
  std::vector<Rational> pfix(d + 1);
  for (int j = 0; j <= d; ++j)
    pfix[j] = Rational(binomial_int(d, j) * der[d - j]) / Rational(dfact);
  Rational f = Rational(1) - Rational(der[d]) / Rational(dfact);
  for (int m = 2; m <= n; ++m) {
    Rational s(0);
    for (int j = 0; j <= d; ++j) s += pfix[j] * rat_pow(Rational(1) - f, j);
    f = Rational(1) - s;
  }
  return f;
}

}  // namespace arboreal
