#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace arboreal {

using Integer = mpz_class;
using Rational = mpq_class;

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NotSquarefree : std::runtime_error {
  explicit NotSquarefree(const std::string& what) : std::runtime_error(what) {}
};

struct BadPrime : std::runtime_error {
  explicit BadPrime(const std::string& what) : std::runtime_error(what) {}
};

inline Integer factorial_int(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial_int(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer pow_int(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// bits needed for |v|; 0 for v = 0
inline size_t bit_size(const Integer& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline uint64_t to_u64(const Integer& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p())
    throw std::overflow_error(std::string(what) + ": value does not fit in 64 bits");
  return mpz_get_ui(v.get_mpz_t());
}

}  // namespace arboreal
