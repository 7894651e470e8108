#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/rational.hpp"

namespace arboreal {

// Permutation of {0, ..., m-1}, stored as the image vector.
class Perm {
 public:
  static Perm identity(int m);
  static Perm from_images(std::vector<int> img);  // validates bijection
  static Perm transposition(int m, int i, int j);
  // factorial-number-system decode of code in [0, m!)
  static Perm from_lehmer(int m, uint64_t code);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }
  bool is_identity() const;

  // (a * b)(x) = a(b(x))
  Perm operator*(const Perm& o) const;
  Perm inverse() const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

 private:
  explicit Perm(std::vector<int> img) : img_(std::move(img)) {}
  std::vector<int> img_;
};

/* Multiset of cycle lengths, e.g. (1)^3 (2)^1.  Parts are kept ascending by
 * length.  Text form: "1^3 2^1"; the empty pattern prints as "-". */
class CyclePattern {
 public:
  CyclePattern() = default;
  static CyclePattern of_perm(const Perm& p);
  static CyclePattern from_lengths(const std::vector<int>& lengths);
  // (length, multiplicity) pairs; validated and normalized
  static CyclePattern from_parts(std::vector<std::pair<int, int>> parts);
  static CyclePattern parse(const std::string& text);

  const std::vector<std::pair<int, int>>& parts() const { return parts_; }
  int degree() const;        // sum of length * multiplicity
  int fixed_points() const;  // multiplicity of length 1
  bool empty() const { return parts_.empty(); }

  CyclePattern merged(const CyclePattern& o) const;  // multiset union
  CyclePattern scaled(int k) const;                  // lengths multiplied by k

  std::string to_string() const;

  bool operator==(const CyclePattern& o) const { return parts_ == o.parts_; }
  bool operator!=(const CyclePattern& o) const { return parts_ != o.parts_; }
  bool operator<(const CyclePattern& o) const { return parts_ < o.parts_; }

 private:
  std::vector<std::pair<int, int>> parts_;
};

struct PermGroup {
  int degree = 0;
  std::vector<Perm> generators;
};

/* Breadth-first closure of the generators (with the identity).  Throws
 * CapExceeded when more than `cap` elements appear.  No stabilizer chains;
 * explicit enumeration is the point at this scale. */
std::vector<Perm> group_closure(const PermGroup& g, uint64_t cap);
Integer group_order(const PermGroup& g, uint64_t cap);

bool is_transitive(const PermGroup& g);
/* Minimal-block test: primitive iff the smallest block containing {0, j} is
 * the full point set for every j != 0.  Degree-1 groups count as primitive by
 * convention; intransitive groups do not. */
bool is_primitive(const PermGroup& g);

}  // namespace arboreal
