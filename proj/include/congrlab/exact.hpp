#pragma once
// Exact integer and rational arithmetic: Bernoulli numbers, divisor sums,
// 64-bit factorization, orders mod m.  Everything here is deterministic and
// exact; no floating point.  Backed by GMP (mpz_class / mpq_class).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "congrlab/errors.hpp"

namespace congrlab {

using Int = mpz_class;
using Rat = mpq_class;

// Prime-power factorization, pairs sorted ascending by prime.
struct Factorization {
  std::vector<std::pair<std::uint64_t, int>> primes;

  std::uint64_t value() const;           // product of p^e (round-trip check)
  std::uint64_t largest_prime() const;   // 1 for the empty factorization
  bool contains(std::uint64_t p) const;
};

// B_k with the B_1 = -1/2 convention, via the defining recurrence
// sum_{j=0}^{k} C(k+1, j) B_j = 0.
Rat bernoulli(unsigned k);

// |numerator of q| in lowest terms.  Throws ZeroInput for q == 0.
Int reduced_numerator(const Rat& q);

// sigma_m(n) = sum_{d | n} d^m, exact.  n >= 1.
Int sigma(unsigned m, std::uint64_t n);

// P+(n): largest prime divisor, with P+(1) = 1.
std::uint64_t largest_prime_factor(std::uint64_t n);

// Order of a in (Z/m)^*.  Throws NotCoprime when gcd(a, m) != 1.
// Uses the factorization of m-1 when m is prime, successive powers otherwise.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

// Factorization of n >= 1: trial division against the shared prime table,
// then deterministic Brent rho; reported primes pass a Miller-Rabin test
// that is exact for 64-bit inputs.
Factorization factor(std::uint64_t n);

// Convenience overload; throws Overflow when |n| does not fit in 64 bits
// and ZeroInput for n == 0.
Factorization factor(const Int& n);

// ---------- shared utilities ----------

bool is_prime_u64(std::uint64_t n);
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m);
// Inverse of a mod m; throws NotCoprime when it does not exist.
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);

// All primes <= limit (fresh vector; simple Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Shared immutable table of the primes below 1e6, built once.
const std::vector<std::uint32_t>& small_prime_table();

// b^e as exact integers.
Int ipow(const Int& b, unsigned long e);
Int ipow_u64(std::uint64_t b, unsigned long e);

// num/den as a canonical rational (den != 0).
Rat make_rat(const Int& num, const Int& den);

// v_p(q) for nonzero q: valuation of the numerator minus that of the
// denominator.  p must be a prime > 1.
long padic_valuation(const Int& p, const Rat& q);
long padic_valuation(const Int& p, const Int& n);  // n != 0

// Reduce q mod m (m >= 2): returns num * den^{-1} in [0, m).
// Throws DenominatorNotInvertible when gcd(den, m) != 1.
Int rat_mod(const Rat& q, const Int& m);

// "a/b" or "a"; round-trips with rat_to_string.  Throws ParseError.
Rat parse_rat(const std::string& s);
std::string rat_to_string(const Rat& q);

}  // namespace congrlab
