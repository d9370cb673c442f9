#pragma once
// Non-divisibility machinery for sigma_m and its level-decorated variant:
// Euler-product local factors with their mu bookkeeping, Euler-Kronecker
// delta terms, sieve counts of {n <= x : ell does not divide f(n)},
// empirical prime densities, and Landau-vs-Ramanujan comparison.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "congrlab/exact.hpp"

namespace congrlab {

struct LevelPart {
  std::uint64_t p = 0;
  int eps = 0;
};

// Parameters of f(n) = sigma_m(n), optionally decorated with a level part:
// f(n) = sigma_m(n) + eps p^{(m+1)/2} sigma_m(n/p).
struct NonDivParams {
  std::uint64_t ell = 0;
  unsigned m = 0;
  unsigned r = 0;   // gcd(m, ell - 1)
  unsigned h1 = 0;  // (ell - 1) / r
  std::optional<LevelPart> level;

  // Validates ell prime >= 3 and m >= 1.  With a level part, m must be odd
  // (m = k - 1 for an even weight k) and eps p^{(m+1)/2} = -1 (mod ell).
  static NonDivParams make(std::uint64_t ell, unsigned m,
                           std::optional<LevelPart> level = {});
};

// Local Euler factor data at one prime p1: indicator[a] = 1 exactly when
// ell does not divide f(p1^a), a = 0..A.
struct EulerFactor {
  std::uint64_t p1 = 0;
  std::uint64_t mu = 0;  // 0 for the level prime (its factor is (1-t)^{-1})
  bool level_prime = false;
  std::vector<std::uint8_t> indicator;
};

struct NonDivCount {
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  unsigned h1 = 0;
  double landau = 0.0;     // filled in once a constant C is chosen
  double ramanujan = 0.0;
};

// mu = ell when p1^r = 1 (mod ell), otherwise the multiplicative order of
// p1^r mod ell.  p1 must be a prime different from ell.
std::uint64_t mu_of(std::uint64_t p1, unsigned r, std::uint64_t ell);

// Expands (1 - t^{mu-1}) / ((1-t)(1-t^mu)) to order A; every coefficient is
// 0 or 1 and is cross-checked against the direct test ell | sigma_r(p1^a).
EulerFactor local_factor_indicator(std::uint64_t p1, unsigned r,
                                   std::uint64_t ell, unsigned A);

// Level-aware variant: at the level prime the local factor is (1-t)^{-1}
// (all ones); elsewhere it agrees with the generic form.
EulerFactor local_factor_indicator(std::uint64_t p1,
                                   const NonDivParams& params, unsigned A);

struct EkDeltaReport {
  std::uint64_t mu = 0;
  double with_log = 0.0;     // (mu/(p^mu - 1) - (mu-1)/(p^{mu-1} - 1)) ln p
  double without_log = 0.0;  // the same bracket without the ln p factor
  bool readings_differ = false;
};

// The Euler-Kronecker correction attached to the level prime p.  Both the
// ln p reading and the bare-bracket reading are reported because published
// worked values follow the latter while the displayed formula has the log.
EkDeltaReport ek_delta_report(std::uint64_t p, unsigned r, std::uint64_t ell);
double ek_delta_term(std::uint64_t p, unsigned r, std::uint64_t ell);

// Reference Euler-Kronecker constants (external inputs, not recomputed).
double gamma_from_table(std::uint64_t ell);  // ell in {3, 5, 7, 23, 691}

// Companion reference constant for ell = 37 before the level correction.
inline constexpr double kGammaBase37 = 0.47464;

enum class Winner { Landau, Ramanujan, Tie };

// Landau approximation wins for gamma > 1/2, Ramanujan for gamma < 1/2.
Winner winner(double gamma);

// Exact count of n <= x with ell not dividing f(n).  Uses an in-memory
// linear smallest-prime-factor sieve for small x and a threaded segmented
// sieve beyond; CONGRLAB_THREADS caps the worker count.
NonDivCount count_nondiv(std::uint64_t x, const NonDivParams& params);

// Segmented path with explicit knobs (threads = 0 means default policy);
// exposed so large runs can tune memory and tests can cross-check paths.
std::uint64_t count_nondiv_segmented(std::uint64_t x,
                                     const NonDivParams& params,
                                     std::uint64_t segment_size = 1 << 20,
                                     unsigned threads = 0);

// Per-n indicator of ell not dividing f(n), n = 0..x (index 0 is 0).
// Limited to x <= 10^7 (in-memory variant).
std::vector<std::uint8_t> sieve_indicators(std::uint64_t x,
                                           const NonDivParams& params);

struct PrimeDensity {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  double empirical = 0.0;
  double predicted = 0.0;
};

// Fraction of primes p1 <= x with ell | sigma_r(p1), against the predicted
// density r/(ell-1) when h1 is even and 0 when h1 is odd.
PrimeDensity prime_density_check(std::uint64_t x, const NonDivParams& params);

struct ApproxCompare {
  double landau = 0.0;
  double ramanujan = 0.0;
  double second_order = 0.0;
};

// landau = C x/(ln x)^{1/h1}; ramanujan = C Int_2^x dt/(ln t)^{1/h1};
// second_order = landau (1 + (1 - gamma)/(h1 ln x)).
ApproxCompare approx_compare(double x, double c, unsigned h1, double gamma);

// Int_2^x (ln t)^{-beta} dt by adaptive Simpson, relative error < 1e-9.
double ramanujan_integral(double x, double beta);

// Least-squares C in count ~ C Int_2^x (ln t)^{-1/h1} dt.
double fit_constant(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts,
    unsigned h1);

struct ExponentFit {
  double exponent = 0.0;
  double constant = 0.0;
};

// Fits count ~ C Int_2^x (ln t)^{-beta} dt over beta by least squares
// (ternary search on the profiled residual).
ExponentFit fit_lnx_exponent(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts);

}  // namespace congrlab
