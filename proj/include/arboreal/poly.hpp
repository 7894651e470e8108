#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/field.hpp"

namespace arboreal {

/* Dense univariate polynomial over a Field.  Coefficients ascending, no
 * trailing zeros; the zero polynomial has an empty coefficient vector and
 * degree -1.  All arithmetic is exact. */
class Poly {
 public:
  explicit Poly(const Field& f) : f_(f) {}
  Poly(const Field& f, std::vector<FieldElem> coeffs);

  static Poly constant(const FieldElem& c);
  static Poly x(const Field& f);
  // coefficient list ascending, entries reduced into the field
  static Poly from_ints(const Field& f, std::initializer_list<int64_t> cs);
  static Poly from_ints(const Field& f, const std::vector<int64_t>& cs);
  static Poly monomial(const FieldElem& c, int deg);

  const Field& field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  // coefficient of x^i (zero element beyond the degree)
  FieldElem coeff(int i) const;
  FieldElem lc() const;  // leading coefficient; throws on zero polynomial
  bool is_monic() const;
  const std::vector<FieldElem>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const FieldElem& s) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly shifted(int k) const;  // * x^k
  FieldElem eval(const FieldElem& a) const;

  std::string to_string() const;  // comma-separated ascending coefficients

 private:
  void trim();
  Field f_;
  std::vector<FieldElem> c_;
};

// Euclidean division: a = q*b + r with deg r < deg b.  Throws on b = 0.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // Euclidean quotient
Poly operator%(const Poly& a, const Poly& b);

// exact division; throws std::domain_error if b does not divide a
Poly divexact(const Poly& a, const Poly& b);

Poly monic(const Poly& a);  // zero stays zero
// monic gcd; gcd(0, 0) = 0
Poly gcd_poly(Poly a, Poly b);

Poly derivative(const Poly& f);
/* j-th Hasse derivative: sum_i C(i, j) a_i x^(i-j).  In characteristic p this
 * stays meaningful where the iterated derivative vanishes; binomials are
 * reduced into the field. */
Poly hasse_derivative(const Poly& f, int j);

Poly compose(const Poly& f, const Poly& g);  // f(g(x)), Horner
Poly pow_poly(Poly base, uint64_t e);
Poly pow_mod(Poly base, Integer e, const Poly& m);  // base^e mod m, e >= 0

/* Resultant via the Euclidean remainder sequence.  Res(f, g) = 0 iff f and g
 * share a root in the algebraic closure (f, g nonconstant).  Errors if both
 * inputs are zero. */
FieldElem resultant(const Poly& f, const Poly& g);

}  // namespace arboreal
