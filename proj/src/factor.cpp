#include "arboreal/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace arboreal {

Poly Factorization::product() const {
  Poly r = Poly::constant(unit);
  for (const auto& [g, e] : factors)
    for (int i = 0; i < e; ++i) r = r * g;
  return r;
}

bool squarefree_test(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_test: zero polynomial");
  Poly d = derivative(f);
  if (d.is_zero()) return f.degree() <= 0;
  return gcd_poly(f, d).is_constant();
}

std::optional<Poly> pth_root_poly(const Poly& f) {
  const Field& F = f.field();
  if (!F.is_finite()) throw std::invalid_argument("pth_root_poly: field must be finite");
  int64_t p = F.prime();
  if (f.is_zero()) return Poly(F);
  std::vector<FieldElem> c;
  c.reserve(f.degree() / p + 1);
  for (int i = 0; i <= f.degree(); ++i) {
    if (i % p == 0) {
      c.push_back(f.coeff(i).pth_root());
    } else if (!f.coeff(i).is_zero()) {
      return std::nullopt;
    }
  }
  return Poly(F, std::move(c));
}

namespace {

std::vector<std::pair<Poly, int>> sqfree_rec(const Poly& fmonic);

// char-0 case (Yun)
std::vector<std::pair<Poly, int>> yun(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  Poly d = derivative(f);
  Poly g = gcd_poly(f, d);
  Poly w = divexact(f, g);
  Poly y = divexact(d, g);
  int i = 1;
  while (!w.is_constant()) {
    Poly z = y - derivative(w);
    Poly a = gcd_poly(w, z);
    if (!a.is_constant()) out.emplace_back(a, i);
    w = divexact(w, a);
    y = divexact(z, a);
    ++i;
  }
  return out;
}

// char-p case, with p-th root descent for the inseparable part
std::vector<std::pair<Poly, int>> charp(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  int64_t p = f.field().prime();
  Poly d = derivative(f);
  if (d.is_zero()) {
    auto root = pth_root_poly(f);
    for (auto& [g, e] : sqfree_rec(*root)) out.emplace_back(g, e * static_cast<int>(p));
    return out;
  }
  Poly c = gcd_poly(f, d);
  Poly w = divexact(f, c);
  int i = 1;
  while (!w.is_constant()) {
    Poly y = gcd_poly(w, c);
    Poly z = divexact(w, y);
    if (!z.is_constant()) out.emplace_back(z, i);
    c = divexact(c, y);
    w = std::move(y);
    ++i;
  }
  if (!c.is_constant()) {
    auto root = pth_root_poly(c);
    for (auto& [g, e] : sqfree_rec(*root)) out.emplace_back(g, e * static_cast<int>(p));
  }
  return out;
}

std::vector<std::pair<Poly, int>> sqfree_rec(const Poly& fmonic) {
  if (fmonic.is_constant()) return {};
  return fmonic.field().is_rationals() ? yun(fmonic) : charp(fmonic);
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
  auto out = sqfree_rec(monic(f));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

Poly radical(const Poly& f) {
  const Field& F = f.field();
  Poly r = Poly::constant(F.one());
  for (const auto& [g, e] : squarefree_decomposition(f)) r = r * g;
  return r;
}

/* ---- distinct-degree / equal-degree splitting over finite fields -------- */

namespace {

// canonical factor order: degree, then coefficient vector as base-q integer
bool poly_key_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    uint64_t ia = a.coeff(i).index(), ib = b.coeff(i).index();
    if (ia != ib) return ia < ib;
  }
  return false;
}

void edf(const Poly& h, int d, const Integer& q, Rng& rng, std::vector<Poly>& out) {
  if (h.degree() == d) {
    out.push_back(h);
    return;
  }
  const Field& F = h.field();
  uint64_t qu = F.order_u64();
  Poly split(F);
  for (;;) {
    // random element of F[x]/(h)
    std::vector<FieldElem> cs;
    cs.reserve(h.degree());
    for (int i = 0; i < h.degree(); ++i) cs.push_back(F.from_index(rng.below(qu)));
    Poly a(F, std::move(cs));
    if (a.is_constant()) continue;
    Poly g = gcd_poly(a, h);
    if (!g.is_constant() && g.degree() < h.degree()) {
      split = g;  // lucky: a already shares a factor
      break;
    }
    Poly b(F);
    if (F.prime() == 2) {
      // trace map over GF(2): sum of a^(2^i), i < k*d
      int reps = F.extension_degree() * d;
      Poly t = a, s = a;
      for (int i = 1; i < reps; ++i) {
        s = (s * s) % h;
        t = t + s;
      }
      b = std::move(t);
    } else {
      Integer e = (pow_int(q, d) - 1) / 2;
      b = pow_mod(a, e, h) - Poly::constant(F.one());
    }
    if (b.is_zero()) continue;
    Poly g2 = gcd_poly(b, h);
    if (!g2.is_constant() && g2.degree() < h.degree()) {
      split = g2;
      break;
    }
  }
  edf(split, d, q, rng, out);
  edf(divexact(h, split), d, q, rng, out);
}

// g monic squarefree; factor fully, appending (factor, mult) pairs
void factor_squarefree(const Poly& g, int mult, Rng& rng,
                       std::vector<std::pair<Poly, int>>& out) {
  const Field& F = g.field();
  Integer q = F.order();
  Poly v = g;
  Poly h = Poly::x(F) % v;
  int i = 0;
  while (v.degree() >= 2 * (i + 1)) {
    ++i;
    h = pow_mod(h, q, v);
    Poly w = gcd_poly(h - Poly::x(F), v);
    if (!w.is_constant()) {
      std::vector<Poly> pieces;
      edf(w, i, q, rng, pieces);
      for (auto& piece : pieces) out.emplace_back(std::move(piece), mult);
      v = divexact(v, w);
      if (v.is_constant()) return;
      h = h % v;
    }
  }
  if (v.degree() > 0) out.emplace_back(v, mult);
}

}  // namespace

Factorization factor(const Poly& f, uint64_t seed) {
  const Field& F = f.field();
  if (!F.is_finite()) throw std::invalid_argument("factor: field must be finite");
  if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
  Rng rng(seed);
  Factorization out{f.is_constant() ? f.lc() : f.lc(), {}};
  if (f.is_constant()) return out;
  for (const auto& [g, e] : squarefree_decomposition(f))
    factor_squarefree(g, e, rng, out.factors);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return poly_key_less(a.first, b.first); });
  return out;
}

bool is_irreducible(const Poly& f) {
  const Field& F = f.field();
  if (!F.is_finite()) throw std::invalid_argument("is_irreducible: field must be finite");
  int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  Integer q = F.order();
  Poly fm = monic(f);
  Poly x = Poly::x(F);
  // x^(q^j) mod f for j = 1..n by repeated q-th powering
  std::vector<Poly> frob;
  frob.reserve(n + 1);
  frob.push_back(x % fm);
  for (int j = 1; j <= n; ++j) frob.push_back(pow_mod(frob[j - 1], q, fm));
  if (frob[n] != frob[0]) return false;
  for (int t = 2; t <= n; ++t) {
    if (n % t != 0) continue;
    bool prime = true;
    for (int s = 2; s * s <= t; ++s)
      if (t % s == 0) prime = false;
    if (!prime) continue;
    if (!gcd_poly(frob[n / t] - x, fm).is_constant()) return false;
  }
  return true;
}

CyclePattern cycle_pattern_of_poly(const Poly& f, uint64_t seed) {
  if (f.degree() < 1) throw std::invalid_argument("cycle_pattern_of_poly: constant polynomial");
  if (!squarefree_test(f)) throw NotSquarefree("polynomial has a repeated factor");
  std::vector<int> lengths;
  for (const auto& [g, e] : factor(f, seed).factors) lengths.push_back(g.degree());
  return CyclePattern::from_lengths(lengths);
}

}  // namespace arboreal
