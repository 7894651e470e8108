#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "arboreal/factor.hpp"
#include "arboreal/field.hpp"
#include "arboreal/poly.hpp"
#include "arboreal/rng.hpp"

using namespace arboreal;

namespace {

// random polynomial of degree <= maxdeg (possibly zero unless nonzero is set)
Poly random_poly(const Field& F, Rng& rng, int maxdeg, bool nonzero = false) {
  for (;;) {
    int deg = static_cast<int>(rng.below(static_cast<uint64_t>(maxdeg) + 1));
    std::vector<FieldElem> cs;
    cs.reserve(deg + 1);
    for (int i = 0; i <= deg; ++i) cs.push_back(F.from_index(rng.below(F.order_u64())));
    Poly f(F, std::move(cs));
    if (!nonzero || !f.is_zero()) return f;
  }
}

Poly random_rational_poly(Rng& rng, int maxdeg, bool nonzero = false) {
  Field Q = Field::rationals();
  for (;;) {
    int deg = static_cast<int>(rng.below(static_cast<uint64_t>(maxdeg) + 1));
    std::vector<FieldElem> cs;
    for (int i = 0; i <= deg; ++i)
      cs.push_back(Q.from_int(static_cast<int64_t>(rng.below(19)) - 9));
    Poly f(Q, std::move(cs));
    if (!nonzero || !f.is_zero()) return f;
  }
}

bool poly_divides(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero();
  return (b % a).is_zero();
}

const std::vector<Field>& test_fields() {
  static const std::vector<Field> fs = {Field::finite(2), Field::finite(3), Field::finite(5),
                                        Field::finite(7, 2)};
  return fs;
}

}  // namespace

TEST_CASE("finite field construction picks the canonical modulus") {
  CHECK(Field::finite(2, 2).modulus() == std::vector<int64_t>{1, 1, 1});  // x^2+x+1
  CHECK(Field::finite(3, 2).modulus() == std::vector<int64_t>{1, 0, 1});  // x^2+1
  Field f8 = Field::finite(2, 3);
  CHECK(f8.order() == 8);
  CHECK(f8.modulus() == std::vector<int64_t>{1, 1, 0, 1});  // x^3+x+1
  CHECK(Field::finite(5).to_string() == "q=5");
  CHECK(Field::finite(3, 2).to_string() == "q=3^2");
  CHECK(Field::rationals().to_string() == "Q");
  CHECK_THROWS_AS(Field::finite(6), std::invalid_argument);
  CHECK_THROWS_AS(Field::finite(2, 0), std::invalid_argument);
}

TEST_CASE("prime and prime power recognition") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(97));
  CHECK(is_prime_u64(4294967311ull));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(91));
  CHECK(prime_power_decompose(27) == std::pair<int64_t, int>{3, 3});
  CHECK(prime_power_decompose(1024) == std::pair<int64_t, int>{2, 10});
  CHECK(prime_power_decompose(101) == std::pair<int64_t, int>{101, 1});
  CHECK_THROWS_AS(prime_power_decompose(12), std::invalid_argument);
}

TEST_CASE("field element arithmetic satisfies the field axioms on every element") {
  for (const Field& F : test_fields()) {
    CAPTURE(F.to_string());
    uint64_t q = F.order_u64();
    for (uint64_t i = 0; i < q; ++i) {
      FieldElem a = F.from_index(i);
      CHECK(a.index() == i);
      CHECK(a + F.zero() == a);
      CHECK(a * F.one() == a);
      CHECK((a - a).is_zero());
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == F.one());
        // Lagrange: a^(q-1) = 1
        CHECK(a.pow(Integer(q - 1)) == F.one());
      }
    }
    // commutativity / distributivity on a sample
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
      FieldElem a = F.from_index(rng.below(q));
      FieldElem b = F.from_index(rng.below(q));
      FieldElem c = F.from_index(rng.below(q));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("pth_root inverts the Frobenius map") {
  for (const Field& F : {Field::finite(3, 2), Field::finite(2, 3), Field::finite(5)}) {
    int64_t p = F.characteristic();
    for (uint64_t i = 0; i < F.order_u64(); ++i) {
      FieldElem a = F.from_index(i);
      CHECK(a.pow(Integer(p)).pth_root() == a);
    }
  }
  CHECK_THROWS_AS(Field::rationals().one().pth_root(), std::logic_error);
}

TEST_CASE("rational field elements reduce to lowest terms") {
  Field Q = Field::rationals();
  FieldElem a = Q.from_rational(Rational(6, 4));
  CHECK(a.rat() == Rational(3, 2));
  CHECK(a.to_string() == "3/2");
  CHECK(Q.from_int(-7).to_string() == "-7");
  CHECK((Q.from_rational(Rational(1, 3)) + Q.from_rational(Rational(2, 3))) == Q.one());
  CHECK_THROWS_AS(Q.zero().inverse(), std::domain_error);
}

TEST_CASE("extension field elements format as bracketed residues") {
  Field F9 = Field::finite(3, 2);
  FieldElem g = F9.from_residues({0, 1});
  CHECK(g.to_string() == "[0,1]");
  // modulus is x^2+1, so g^2 = -1
  CHECK(g * g == F9.from_int(-1));
  CHECK_THROWS_AS(F9.from_residues({1, 2, 1}), std::invalid_argument);
}

TEST_CASE("polynomial division reconstructs the dividend with a smaller remainder") {
  for (const Field& F : test_fields()) {
    CAPTURE(F.to_string());
    Rng rng(101);
    for (int t = 0; t < 200; ++t) {
      Poly f = random_poly(F, rng, 8);
      Poly g = random_poly(F, rng, 5, /*nonzero=*/true);
      auto [q, r] = divrem(f, g);
      CHECK(q * g + r == f);
      CHECK(r.degree() < g.degree());
    }
  }
}

TEST_CASE("gcd divides both inputs and is divided by every common divisor") {
  for (const Field& F : test_fields()) {
    CAPTURE(F.to_string());
    Rng rng(202);
    for (int t = 0; t < 200; ++t) {
      Poly w = random_poly(F, rng, 3, /*nonzero=*/true);
      Poly f = random_poly(F, rng, 5) * w;
      Poly g = random_poly(F, rng, 5) * w;
      Poly d = gcd_poly(f, g);
      if (f.is_zero() && g.is_zero()) {
        CHECK(d.is_zero());
        continue;
      }
      CHECK(d.is_monic());
      CHECK(poly_divides(d, f));
      CHECK(poly_divides(d, g));
      CHECK(poly_divides(w, d));  // common divisor divides the gcd
    }
  }
}

TEST_CASE("core polynomial identities") {
  Field Q = Field::rationals();
  Poly x = Poly::x(Q);
  CHECK(gcd_poly(x * x - Poly::constant(Q.one()), x - Poly::constant(Q.one())) ==
        x - Poly::constant(Q.one()));
  CHECK(compose(x * x, x + Poly::constant(Q.one())) == Poly::from_ints(Q, {1, 2, 1}));
  Field F2 = Field::finite(2);
  CHECK(derivative(Poly::from_ints(F2, {0, 0, 0, 1, 1})) == Poly::from_ints(F2, {0, 0, 1}));
  CHECK(Poly::from_ints(Q, {1, 0, 1}).to_string() == "1,0,1");
  CHECK(Poly::from_ints(Q, {3, 1}).eval(Q.from_int(4)) == Q.from_int(7));
  CHECK_THROWS_AS(divrem(x, Poly(Q)), std::domain_error);
}

TEST_CASE("hasse derivatives reduce binomial coefficients into the field") {
  Field F2 = Field::finite(2);
  Poly f = Poly::from_ints(F2, {0, 0, 0, 1, 0, 1});  // x^5 + x^3
  CHECK(hasse_derivative(f, 1) == Poly::from_ints(F2, {0, 0, 1, 0, 1}));
  CHECK(hasse_derivative(f, 2) == Poly::from_ints(F2, {0, 1}));
  CHECK(hasse_derivative(Poly::constant(F2.one()), 3).is_zero());
  CHECK(hasse_derivative(f, 0) == f);
}

TEST_CASE("vanishing order at a point is read off the hasse derivatives") {
  for (const Field& F : test_fields()) {
    CAPTURE(F.to_string());
    Rng rng(303);
    for (int t = 0; t < 60; ++t) {
      FieldElem b = F.from_index(rng.below(F.order_u64()));
      int m = 1 + static_cast<int>(rng.below(4));
      Poly u = random_poly(F, rng, 3, /*nonzero=*/true);
      if (u.eval(b).is_zero()) u = u + Poly::constant(F.one() - u.eval(b));
      Poly lin = Poly::from_ints(F, {0, 1}) - Poly::constant(b);
      Poly f = pow_poly(lin, static_cast<uint64_t>(m)) * u;
      for (int j = 1; j < m; ++j) CHECK(hasse_derivative(f, j).eval(b).is_zero());
      CHECK_FALSE(hasse_derivative(f, m).eval(b).is_zero());
    }
  }
}

TEST_CASE("squarefree_test spots repeated factors, including inseparable ones") {
  CHECK(squarefree_test(Poly::from_ints(Field::finite(3), {1, 0, 1})));
  CHECK_FALSE(squarefree_test(Poly::from_ints(Field::finite(2), {1, 0, 1})));
  CHECK_FALSE(squarefree_test(Poly::from_ints(Field::rationals(), {0, 0, 1})));
  CHECK(squarefree_test(Poly::constant(Field::rationals().from_int(5))));
  CHECK_THROWS_AS(squarefree_test(Poly(Field::rationals())), std::invalid_argument);
}

TEST_CASE("radical strips multiplicity but keeps the root set") {
  Field Q = Field::rationals();
  CHECK(radical(Poly::from_ints(Q, {0, 0, 1, 1})) == Poly::from_ints(Q, {0, 1, 1}));
  Field F2 = Field::finite(2);
  CHECK(radical(Poly::from_ints(F2, {0, 0, 1})) == Poly::from_ints(F2, {0, 1}));
  CHECK(radical(Poly::from_ints(F2, {0, 0, 1, 0, 1})) == Poly::from_ints(F2, {0, 1, 1}));
  CHECK(radical(Poly::constant(Q.from_int(7))) == Poly::constant(Q.one()));
}

TEST_CASE("radical is squarefree and divides a power of the input") {
  for (const Field& F : test_fields()) {
    CAPTURE(F.to_string());
    Rng rng(404);
    for (int t = 0; t < 80; ++t) {
      Poly f = random_poly(F, rng, 4, /*nonzero=*/true) * random_poly(F, rng, 2, true);
      Poly r = radical(f);
      if (f.is_constant()) {
        CHECK(r == Poly::constant(F.one()));
        continue;
      }
      CHECK(squarefree_test(r));
      CHECK(poly_divides(r, f));
      Poly rpow = pow_poly(r, static_cast<uint64_t>(f.degree()));
      CHECK(poly_divides(f, monic(rpow) * f.lc()));
    }
  }
  Rng rng(405);
  for (int t = 0; t < 40; ++t) {
    Poly f = random_rational_poly(rng, 4, true) * random_rational_poly(rng, 2, true);
    if (f.is_constant()) continue;
    Poly r = radical(f);
    CHECK(squarefree_test(r));
    CHECK(poly_divides(r, f));
  }
}

TEST_CASE("squarefree decomposition multiplies back to the input") {
  for (const Field& F : test_fields()) {
    CAPTURE(F.to_string());
    Rng rng(505);
    for (int t = 0; t < 60; ++t) {
      Poly a = random_poly(F, rng, 3, true);
      Poly b = random_poly(F, rng, 2, true);
      Poly f = a * b * b;
      if (f.is_zero()) continue;
      auto parts = squarefree_decomposition(f);
      Poly prod = Poly::constant(f.is_zero() ? F.one() : f.lc());
      int last_exp = 0;
      for (const auto& [g, e] : parts) {
        CHECK(g.is_monic());
        CHECK(squarefree_test(g));
        CHECK(e > last_exp);
        last_exp = e;
        prod = prod * pow_poly(g, static_cast<uint64_t>(e));
      }
      CHECK(prod == f);
    }
  }
}

TEST_CASE("pth_root_poly recognizes exactly the p-th powers") {
  Field F2 = Field::finite(2);
  Poly s = Poly::from_ints(F2, {0, 1, 1});  // x^2+x
  auto r = pth_root_poly(s * s);
  REQUIRE(r.has_value());
  CHECK(*r == s);
  CHECK_FALSE(pth_root_poly(Poly::from_ints(F2, {1, 1})).has_value());
  Field F9 = Field::finite(3, 2);
  Rng rng(606);
  for (int t = 0; t < 20; ++t) {
    Poly f = random_poly(F9, rng, 3, true);
    Poly cube = f * f * f;
    auto root = pth_root_poly(cube);
    REQUIRE(root.has_value());
    CHECK(*root == f);
  }
}

TEST_CASE("factorization multiplies back exactly and lists only irreducibles") {
  for (const Field& F : test_fields()) {
    CAPTURE(F.to_string());
    Rng rng(707);
    for (int t = 0; t < 500; ++t) {
      Poly f = random_poly(F, rng, 16, /*nonzero=*/true);
      Factorization fac = factor(f, rng.next());
      CHECK(fac.product() == f);
      uint64_t prev_key = 0;
      int prev_deg = 0;
      for (const auto& [g, e] : fac.factors) {
        CHECK(g.is_monic());
        CHECK(g.degree() >= 1);
        CHECK(e >= 1);
        CHECK(is_irreducible(g));
        // sorted by (degree, coefficient vector as a base-q integer)
        uint64_t key = 0;
        for (int i = g.degree() - 1; i >= 0; --i) key = key * F.order_u64() + g.coeff(i).index();
        if (g.degree() == prev_deg) CHECK(key > prev_key);
        CHECK(g.degree() >= prev_deg);
        prev_deg = g.degree();
        prev_key = key;
      }
    }
  }
}

TEST_CASE("factorization is deterministic and seed independent after sorting") {
  Field F5 = Field::finite(5);
  Rng rng(808);
  for (int t = 0; t < 40; ++t) {
    Poly f = random_poly(F5, rng, 10, true);
    Factorization a = factor(f, 1);
    Factorization b = factor(f, 999);
    CHECK(a.factors == b.factors);
    CHECK(a.unit == b.unit);
  }
}

TEST_CASE("known small factorizations") {
  Field F5 = Field::finite(5);
  Factorization f1 = factor(Poly::from_ints(F5, {1, 0, 1}), 0);
  REQUIRE(f1.factors.size() == 2);
  CHECK(f1.factors[0].first == Poly::from_ints(F5, {2, 1}));
  CHECK(f1.factors[1].first == Poly::from_ints(F5, {3, 1}));
  Field F2 = Field::finite(2);
  CHECK(is_irreducible(Poly::from_ints(F2, {1, 1, 1})));
  Factorization f2 = factor(Poly::from_ints(F2, {0, 0, 1, 0, 1}), 0);  // x^4+x^2
  REQUIRE(f2.factors.size() == 2);
  CHECK(f2.factors[0].first == Poly::from_ints(F2, {0, 1}));
  CHECK(f2.factors[0].second == 2);
  CHECK(f2.factors[1].first == Poly::from_ints(F2, {1, 1}));
  CHECK(f2.factors[1].second == 2);
  CHECK_THROWS_AS(factor(Poly::from_ints(Field::rationals(), {1, 0, 1}), 0),
                  std::invalid_argument);
}

TEST_CASE("resultant vanishes exactly on pairs with a common factor") {
  Field Q = Field::rationals();
  CHECK(resultant(Poly::from_ints(Q, {1, 0, 1}), Poly::from_ints(Q, {-1, 0, 1})) ==
        Q.from_int(4));
  for (const Field& F : test_fields()) {
    CAPTURE(F.to_string());
    Rng rng(909);
    for (int t = 0; t < 125; ++t) {
      Poly f = random_poly(F, rng, 5, true);
      Poly g = random_poly(F, rng, 5, true);
      if (t % 2 == 0) {
        // plant a common root
        Poly w = random_poly(F, rng, 2, true);
        while (w.is_constant()) w = random_poly(F, rng, 2, true);
        f = f * w;
        g = g * w;
      }
      if (f.is_constant() || g.is_constant()) continue;
      bool common = !gcd_poly(f, g).is_constant();
      CHECK(resultant(f, g).is_zero() == common);
    }
  }
}

TEST_CASE("linear resultant evaluates the other argument") {
  for (const Field& F : test_fields()) {
    Rng rng(1010);
    for (int t = 0; t < 25; ++t) {
      FieldElem a = F.from_index(rng.below(F.order_u64()));
      Poly lin = Poly::from_ints(F, {0, 1}) - Poly::constant(a);
      Poly g = random_poly(F, rng, 4, true);
      CHECK(resultant(lin, g) == g.eval(a));
    }
  }
}

TEST_CASE("resultant is multiplicative in the first argument") {
  Field F7 = Field::finite(7);
  Rng rng(1111);
  for (int t = 0; t < 30; ++t) {
    Poly f = random_poly(F7, rng, 3, true);
    Poly g = random_poly(F7, rng, 3, true);
    Poly h = random_poly(F7, rng, 3, true);
    if (f.is_constant() || g.is_constant() || h.is_constant()) continue;
    CHECK(resultant(f * g, h) == resultant(f, h) * resultant(g, h));
  }
}

TEST_CASE("cycle patterns of squarefree polynomials count factor degrees") {
  CHECK(cycle_pattern_of_poly(Poly::from_ints(Field::finite(5), {1, 0, 1}), 3) ==
        CyclePattern::parse("1^2"));
  CHECK(cycle_pattern_of_poly(Poly::from_ints(Field::finite(2), {1, 1, 1}), 3) ==
        CyclePattern::parse("2^1"));
  CHECK_THROWS_AS(cycle_pattern_of_poly(Poly::from_ints(Field::finite(2), {1, 0, 1}), 3),
                  NotSquarefree);
  for (const Field& F : test_fields()) {
    Rng rng(1212);
    for (int t = 0; t < 60; ++t) {
      Poly f = random_poly(F, rng, 8, true);
      if (f.is_constant() || !squarefree_test(f)) continue;
      CyclePattern pi = cycle_pattern_of_poly(f, rng.next());
      CHECK(pi.degree() == f.degree());
    }
  }
}
