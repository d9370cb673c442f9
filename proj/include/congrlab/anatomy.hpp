#pragma once
// Friable-integer and shifted-prime machinery: the Dickman function rho,
// friable counts Psi(x, y), smoothness statistics for p + s and p^2 - 1,
// and the coefficient-field degree lower bounds they feed.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "congrlab/exact.hpp"

namespace congrlab {

// rho sampled on the uniform grid u = 0, step, 2*step, ..., from the
// integrated delay equation u rho(u) = integral_{u-1}^{u} rho(t) dt.
struct RhoTable {
  double step = 0.0;
  std::vector<double> values;
};

// Solves the delay equation with implicit trapezoid steps at spacing
// 2^-10, repeats at 2^-11, and keeps the Richardson combination
// (4 fine - coarse) / 3; the two runs double as a convergence check.
RhoTable build_rho_table(double u_max);

// Shared table out to u = 64, built on first use.
const RhoTable& rho_reference_table();

// rho(u) with absolute error below 1e-8; exactly 1 on [0, 1] and 0 past
// the reference table (where rho is far below the error budget).
double dickman_rho(double u);

// Unique root of 4 u rho(u) = 1 in (2, 3), bisected to 1e-6.
double solve_u1();

// CSV rows "u,rho" with round-trippable precision.
void rho_table_to_csv(const RhoTable& table, std::ostream& out);
RhoTable rho_table_from_csv(std::istream& in);

// Psi(x, y) = #{1 <= n <= x : P+(n) <= y} by a largest-prime-factor
// sieve; in-memory, so limited to x <= 10^7.
std::uint64_t psi_friable(std::uint64_t x, std::uint64_t y);

// Smoothness census of the shifted primes p + shift over p <= x.
struct SmoothStats {
  std::uint64_t x = 0;
  double u = 0.0;
  long long shift = 0;
  std::uint64_t hits = 0;   // primes with P+(p + shift) >= p^{1/u}
  std::uint64_t total = 0;  // pi(x)
};

// Exact count over primes p <= x (trial division against the shared
// prime list).  Callers compare hits/total with the conjectural density
// 1 - rho(u) and the unconditional floor 1 - 4 rho(u).
SmoothStats shifted_prime_stats(std::uint64_t x, long long shift, double u);

// Coefficient-field degree lower bound 5 ln(P+(p^2 - 1)) / (2k) for even
// weight k >= 4 at the prime p.
double dk_lower_bound(unsigned k, std::uint64_t p);

// Sharper variant 5 ln(P+(p - 1)) / (2k), available only under the
// guards p >= (k+1)^4 and P+(p - 1) >= 5; absent otherwise.
std::optional<double> dknew_lower_bound(unsigned k, std::uint64_t p);

// All primes p <= bound with P+(p^2 - 1) <= 3; the full list is
// {2, 3, 5, 7, 17}, so any bound >= 17 returns exactly that.
std::vector<std::uint64_t> special_smooth_primes(std::uint64_t bound);

struct EvertseCheck {
  std::uint64_t count = 0;  // #{p <= X : P+(p^2 - 1) <= x}
  Int bound = 0;            // 3 * 7^{1 + 2 pi(x)}
  bool ok = false;          // count <= bound (a failure would be a bug)
};

// Checks the S-unit-equation bound on primes with x-smooth p^2 - 1.
EvertseCheck evertse_bound_check(std::uint64_t X, std::uint64_t x);

}  // namespace congrlab
