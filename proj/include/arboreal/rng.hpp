#pragma once

#include <cstdint>

namespace arboreal {

/* Deterministic 64-bit generator (splitmix64 finalizer).  Everything that
 * needs randomness (equal-degree splitting, wreath sampling, scan worker
 * streams) goes through this class so that a fixed seed gives identical
 * results on every platform and standard library.  std::mt19937_64 plus
 * std::uniform_int_distribution would not: the distribution's output is
 * implementation defined. */
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n >= 1; rejection keeps it exactly uniform
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t limit = ~0ULL - ~0ULL % n;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  /* Independent stream for item/worker `index`, derived from the seed state
   * without advancing it.  Scans derive one stream per item index, which is
   * what makes reports independent of the worker partitioning. */
  Rng derive(uint64_t index) const {
    Rng r(state_ ^ (0x6a09e667f3bcc909ULL + (index + 1) * 0x9e3779b97f4a7c15ULL));
    r.next();
    return r;
  }

 private:
  uint64_t state_;
};

}  // namespace arboreal
