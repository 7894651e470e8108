#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "arboreal/rational.hpp"

namespace arboreal {

class FieldElem;

/* A coefficient field: either Q or GF(p^k).
 *
 * GF(p^k) always uses the canonical modulus: the first monic irreducible of
 * degree k when candidates are ordered by the base-p integer value of their
 * non-leading coefficient vector (c_0 + c_1 p + ...).  Two Field values with
 * equal (p, k) are therefore interchangeable, and computations are
 * bit-reproducible across machines.  For k = 1 the search yields x, i.e. the
 * plain residue field.
 *
 * Field is an immutable value; copies share the modulus. */
class Field {
 public:
  enum class Kind { rationals, finite };

  static Field rationals();
  // p prime, k >= 1, p^k < 2^62.  Throws std::invalid_argument otherwise.
  static Field finite(int64_t p, int k = 1);

  Kind kind() const { return kind_; }
  bool is_rationals() const { return kind_ == Kind::rationals; }
  bool is_finite() const { return kind_ == Kind::finite; }
  int64_t characteristic() const { return is_finite() ? p_ : 0; }
  int64_t prime() const;
  int extension_degree() const;
  Integer order() const;      // p^k
  uint64_t order_u64() const;
  // ascending, length k+1, monic; finite fields only
  const std::vector<int64_t>& modulus() const;

  bool operator==(const Field& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && k_ == o.k_;
  }
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::string to_string() const;  // "Q", "q=5", "q=3^2"

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(int64_t v) const;
  FieldElem from_integer(const Integer& v) const;
  // finite fields reduce num * den^{-1} mod p; BadPrime if p divides den
  FieldElem from_rational(const Rational& v) const;
  // residues interpreted in the power basis, any length <= k, entries reduced
  FieldElem from_residues(std::vector<int64_t> r) const;
  // inverse of FieldElem::index(); finite fields only
  FieldElem from_index(uint64_t idx) const;

 private:
  Field(Kind kind, int64_t p, int k, std::shared_ptr<const std::vector<int64_t>> mod)
      : kind_(kind), p_(p), k_(k), mod_(std::move(mod)) {}

  Kind kind_;
  int64_t p_ = 0;
  int k_ = 0;
  std::shared_ptr<const std::vector<int64_t>> mod_;
};

/* One field element.  Value type; arithmetic between elements of different
 * fields throws std::invalid_argument. */
class FieldElem {
 public:
  const Field& field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElem operator-() const;
  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;  // throws on zero divisor
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  FieldElem inverse() const;
  FieldElem pow(const Integer& e) const;  // negative e via inverse
  // p-th root, i.e. a^{p^{k-1}}; finite fields only (Frobenius is bijective)
  FieldElem pth_root() const;

  // base-p integer value of the residue vector; finite fields only
  uint64_t index() const;

  const Rational& rat() const;
  const std::vector<int64_t>& residues() const;  // length k

  // "7", "-1/2" over Q; "3" over GF(p); "[c0,c1,...]" over GF(p^k), k > 1
  std::string to_string() const;

 private:
  friend class Field;
  FieldElem(Field f, Rational v) : f_(std::move(f)), q_(std::move(v)) {}
  FieldElem(Field f, std::vector<int64_t> r) : f_(std::move(f)), r_(std::move(r)) {}

  void check_same(const FieldElem& o) const;

  Field f_;
  Rational q_;               // rationals only
  std::vector<int64_t> r_;   // finite only, length k, entries in [0, p)
};

// deterministic trial-division primality, adequate for p < 2^62
bool is_prime_u64(uint64_t n);

// q = p^k with p prime, or throws std::invalid_argument
std::pair<int64_t, int> prime_power_decompose(uint64_t q);

}  // namespace arboreal
