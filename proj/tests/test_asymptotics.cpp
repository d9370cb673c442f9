#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "congrlab/asymptotics.hpp"
#include "congrlab/exact.hpp"

using namespace congrlab;

namespace {

std::uint64_t sigma_mod_naive(std::uint64_t n, unsigned m, std::uint64_t ell) {
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s = (s + powmod_u64(d % ell, m, ell)) % ell;
    const std::uint64_t e = n / d;
    if (e != d) s = (s + powmod_u64(e % ell, m, ell)) % ell;
  }
  return s;
}

// f(n) mod ell straight from the defining divisor sums
std::uint64_t f_mod_naive(std::uint64_t n, const NonDivParams& P) {
  std::uint64_t v = sigma_mod_naive(n, P.m, P.ell);
  if (P.level && n % P.level->p == 0) {
    const std::uint64_t shift =
        powmod_u64(P.level->p % P.ell, (P.m + 1) / 2, P.ell);
    const std::uint64_t tail =
        mulmod_u64(shift, sigma_mod_naive(n / P.level->p, P.m, P.ell), P.ell);
    v = (P.level->eps == 1) ? (v + tail) % P.ell : (v + P.ell - tail) % P.ell;
  }
  return v;
}

bool product_indicator(std::uint64_t n, const NonDivParams& P,
                       std::map<std::uint64_t, EulerFactor>& cache) {
  const auto factor_ok = [&](std::uint64_t q, unsigned a) {
    if (q == P.ell) return true;  // sigma(ell^a) = 1 (mod ell), never divisible
    auto it = cache.find(q);
    if (it == cache.end())
      it = cache.emplace(q, local_factor_indicator(q, P, 14)).first;
    return it->second.indicator[a] != 0;
  };
  bool ok = true;
  std::uint64_t w = n;
  for (std::uint64_t q = 2; q * q <= w; ++q) {
    if (w % q) continue;
    unsigned a = 0;
    while (w % q == 0) {
      w /= q;
      ++a;
    }
    ok = ok && factor_ok(q, a);
  }
  if (w > 1) ok = ok && factor_ok(w, 1);
  return ok;
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("mu of a prime and the local factor expansion") {
  CHECK(mu_of(11, 1, 37) == 6);
  CHECK(mu_of(2, 1, 7) == 3);
  CHECK(mu_of(3, 3, 13) == 13);  // 3^3 = 1 (mod 13), order-one case
  CHECK(mu_of(2, 2, 5) == 2);    // 2^2 = 4, and 4^2 = 1 (mod 5)
  CHECK_THROWS_AS(mu_of(7, 1, 7), BadParameters);
  CHECK_THROWS_AS(mu_of(4, 1, 7), BadParameters);
  CHECK_THROWS_AS(mu_of(2, 0, 7), BadParameters);
  CHECK_THROWS_AS(mu_of(2, 1, 9), BadParameters);

  const EulerFactor f = local_factor_indicator(2, 1, 7, 12);
  CHECK(f.p1 == 2);
  CHECK(f.mu == 3);
  CHECK_FALSE(f.level_prime);
  REQUIRE(f.indicator.size() == 13);
  CHECK(f.indicator[0] == 1);
  for (unsigned a = 0; a <= 12; ++a)
    CHECK(f.indicator[a] == (a % 3 == 2 ? 0 : 1));

  // order-one case: zeros exactly at a = -1 (mod ell)
  const EulerFactor g = local_factor_indicator(3, 3, 13, 30);
  CHECK(g.mu == 13);
  for (unsigned a = 0; a <= 30; ++a)
    CHECK(g.indicator[a] == (a % 13 == 12 ? 0 : 1));

  CHECK_THROWS_AS(local_factor_indicator(2, 1, 7, 0), BadParameters);

  // the expansion carries a built-in cross-check against direct divisor
  // sums; sweeping it over many (p1, r, ell) exercises that invariant
  for (const std::uint64_t ell : {5ull, 7ull, 11ull, 37ull, 691ull}) {
    for (const unsigned r : {1u, 2u, 3u}) {
      for (const std::uint64_t p1 : primes_up_to(50)) {
        if (p1 == ell) continue;
        const EulerFactor h = local_factor_indicator(p1, r, ell, 12);
        CHECK(h.indicator[0] == 1);
        for (unsigned a = 0; a <= 12; ++a) {
          std::uint64_t pw = 1, direct = 0;
          for (unsigned j = 0; j <= a; ++j) {
            direct = (direct + pw) % ell;
            pw = mulmod_u64(pw, powmod_u64(p1 % ell, r, ell), ell);
          }
          CHECK((h.indicator[a] != 0) == (direct != 0));
        }
      }
    }
  }
}

TEST_CASE("parameter validation and the level-decorated mode") {
  const NonDivParams p7 = NonDivParams::make(7, 1);
  CHECK(p7.r == 1);
  CHECK(p7.h1 == 6);
  CHECK_FALSE(p7.level.has_value());

  CHECK(NonDivParams::make(5, 2).r == 2);
  CHECK(NonDivParams::make(5, 2).h1 == 2);
  CHECK(NonDivParams::make(691, 11).r == 1);
  CHECK(NonDivParams::make(691, 11).h1 == 690);
  CHECK(NonDivParams::make(7, 3).h1 == 2);
  CHECK(NonDivParams::make(7, 5).h1 == 6);

  const NonDivParams L = NonDivParams::make(5, 5, LevelPart{11, -1});
  CHECK(L.r == 1);
  CHECK(L.h1 == 4);
  REQUIRE(L.level.has_value());
  CHECK(L.level->p == 11);
  CHECK(L.level->eps == -1);

  CHECK_THROWS_AS(NonDivParams::make(4, 1), BadParameters);
  CHECK_THROWS_AS(NonDivParams::make(2, 1), BadParameters);
  CHECK_THROWS_AS(NonDivParams::make(7, 0), BadParameters);
  // level mode: m must be odd and eps p^{(m+1)/2} = -1 (mod ell)
  CHECK_THROWS_AS(NonDivParams::make(5, 4, LevelPart{11, -1}), BadParameters);
  CHECK_THROWS_AS(NonDivParams::make(5, 5, LevelPart{11, 1}), BadParameters);
  CHECK_THROWS_AS(NonDivParams::make(5, 3, LevelPart{7, -1}), BadParameters);
  CHECK_THROWS_AS(NonDivParams::make(5, 5, LevelPart{10, -1}), BadParameters);
  CHECK_THROWS_AS(NonDivParams::make(5, 5, LevelPart{11, 0}), BadParameters);

  // at the level prime the local factor collapses to (1-t)^{-1}
  const EulerFactor lev = local_factor_indicator(11, L, 10);
  CHECK(lev.level_prime);
  CHECK(lev.mu == 0);
  CHECK(std::all_of(lev.indicator.begin(), lev.indicator.end(),
                    [](std::uint8_t b) { return b == 1; }));
  const EulerFactor away = local_factor_indicator(2, L, 10);
  CHECK_FALSE(away.level_prime);
  CHECK(away.mu == mu_of(2, 1, 5));
}

TEST_CASE("sieve counts match frozen reference values") {
  const NonDivParams p7 = NonDivParams::make(7, 1);
  const NonDivCount c20 = count_nondiv(20, p7);
  CHECK(c20.x == 20);
  CHECK(c20.count == 16);  // 7 | sigma(n) only at n = 4, 12, 13, 20
  CHECK(c20.h1 == 6);
  CHECK(count_nondiv(1, p7).count == 1);

  const NonDivParams p691 = NonDivParams::make(691, 11);
  CHECK(count_nondiv(10000, p691).count == 9991);
  CHECK(count_nondiv(100000, p691).count == 99867);

  const NonDivParams p73 = NonDivParams::make(7, 3);
  CHECK(count_nondiv(100000, p73).count == 22516);
  CHECK(count_nondiv(1000000, p73).count == 202901);

  const NonDivParams L = NonDivParams::make(5, 5, LevelPart{11, -1});
  CHECK(count_nondiv(10000, L).count == 6625);

  CHECK_THROWS_AS(count_nondiv(0, p7), BadParameters);
}

TEST_CASE("sieve agrees with direct divisor-sum evaluation") {
  const NonDivParams p7 = NonDivParams::make(7, 1);
  const NonDivParams p52 = NonDivParams::make(5, 2);
  const NonDivParams L = NonDivParams::make(5, 5, LevelPart{11, -1});
  for (const NonDivParams* P : {&p7, &p52, &L}) {
    const std::vector<std::uint8_t> ind = sieve_indicators(2000, *P);
    REQUIRE(ind.size() == 2001);
    CHECK(ind[0] == 0);
    for (std::uint64_t n = 1; n <= 2000; ++n)
      CHECK(ind[n] == (f_mod_naive(n, *P) != 0 ? 1 : 0));
  }
  CHECK_THROWS_AS(sieve_indicators(0, p7), BadParameters);
  CHECK_THROWS_AS(sieve_indicators(10000001, p7), BadParameters);
}

TEST_CASE("euler product of local factors reconstructs the sieve") {
  // m = 5 with ell = 7 gives r = 1, exercising the sigma_m-to-sigma_r
  // reduction between the sieve and the local factors
  const NonDivParams p75 = NonDivParams::make(7, 5);
  std::map<std::uint64_t, EulerFactor> cache;
  const std::vector<std::uint8_t> ind = sieve_indicators(10000, p75);
  for (std::uint64_t n = 1; n <= 10000; ++n)
    CHECK((ind[n] != 0) == product_indicator(n, p75, cache));

  const NonDivParams L = NonDivParams::make(5, 5, LevelPart{11, -1});
  std::map<std::uint64_t, EulerFactor> lcache;
  const std::vector<std::uint8_t> lind = sieve_indicators(5000, L);
  for (std::uint64_t n = 1; n <= 5000; ++n)
    CHECK((lind[n] != 0) == product_indicator(n, L, lcache));

  // multiplicativity on coprime pairs
  for (std::uint64_t a = 2; a <= 60; ++a)
    for (std::uint64_t b = a + 1; b <= 90; ++b) {
      if (std::gcd(a, b) != 1 || a * b > 5000) continue;
      CHECK((lind[a * b] != 0) == ((lind[a] != 0) && (lind[b] != 0)));
    }
}

TEST_CASE("segmented sieve matches the linear sieve") {
  const NonDivParams p7 = NonDivParams::make(7, 1);
  CHECK(count_nondiv_segmented(200000, p7, 4096, 3) ==
        count_nondiv(200000, p7).count);
  CHECK(count_nondiv_segmented(100, p7, 64, 1) == count_nondiv(100, p7).count);

  const NonDivParams L = NonDivParams::make(5, 5, LevelPart{11, -1});
  CHECK(count_nondiv_segmented(30000, L, 1024, 2) ==
        count_nondiv(30000, L).count);

  const NonDivParams p691 = NonDivParams::make(691, 11);
  CHECK(count_nondiv_segmented(50000, p691, 8192, 4) ==
        count_nondiv(50000, p691).count);

  CHECK_THROWS_AS(count_nondiv_segmented(0, p7), BadParameters);
  CHECK_THROWS_AS(count_nondiv_segmented(100, p7, 32), BadParameters);
}

TEST_CASE("euler-kronecker delta readings") {
  const EkDeltaReport r11 = ek_delta_report(11, 1, 37);
  CHECK(r11.mu == 6);
  CHECK(r11.without_log ==
        doctest::Approx(-2.76594134337e-5).epsilon(1e-9));
  CHECK(r11.with_log == doctest::Approx(-6.6324376721e-5).epsilon(1e-9));
  CHECK(r11.readings_differ);
  CHECK(r11.without_log < 0);
  CHECK(r11.with_log < 0);
  CHECK(ek_delta_term(11, 1, 37) == r11.with_log);

  const EkDeltaReport r2 = ek_delta_report(2, 1, 7);
  CHECK(r2.mu == 3);
  CHECK(r2.without_log == doctest::Approx(-5.0 / 21).epsilon(1e-12));
  CHECK(r2.with_log ==
        doctest::Approx(-5.0 / 21 * std::log(2.0)).epsilon(1e-12));

  // order-one case evaluates with mu = ell
  const EkDeltaReport r3 = ek_delta_report(3, 3, 13);
  CHECK(r3.mu == 13);
  CHECK(r3.without_log ==
        doctest::Approx(13.0 / 1594322 - 12.0 / 531440).epsilon(1e-12));
}

TEST_CASE("reference constants and the winner rule") {
  CHECK(gamma_from_table(3) == doctest::Approx(0.534921));
  CHECK(gamma_from_table(5) == doctest::Approx(0.399547));
  CHECK(gamma_from_table(7) == doctest::Approx(0.231640));
  CHECK(gamma_from_table(23) == doctest::Approx(0.216691));
  CHECK(gamma_from_table(691) == doctest::Approx(0.571714));
  CHECK_THROWS_AS(gamma_from_table(11), NotInTable);
  CHECK(kGammaBase37 == doctest::Approx(0.47464));

  CHECK(winner(0.6) == Winner::Landau);
  CHECK(winner(0.4) == Winner::Ramanujan);
  CHECK(winner(0.5) == Winner::Tie);
  CHECK(winner(gamma_from_table(7)) == Winner::Ramanujan);
  CHECK(winner(gamma_from_table(691)) == Winner::Landau);
  CHECK(winner(gamma_from_table(3)) == Winner::Landau);
}

TEST_CASE("logarithmic integral and the approximation trio") {
  CHECK(ramanujan_integral(1e4, 1.0) ==
        doctest::Approx(1245.09205211927).epsilon(1e-8));
  CHECK(ramanujan_integral(2.0, 1.0) == 0.0);
  CHECK(ramanujan_integral(1.5, 1.0) == 0.0);
  // beta = 0 integrates the constant 1 exactly
  CHECK(ramanujan_integral(10000.0, 0.0) == doctest::Approx(9998.0));
  CHECK(ramanujan_integral(1e5, 0.5) > ramanujan_integral(1e4, 0.5));

  const ApproxCompare one = approx_compare(1e6, 2.0, 1, 1.0);
  CHECK(one.landau == doctest::Approx(2e6 / std::log(1e6)).epsilon(1e-12));
  CHECK(one.ramanujan ==
        doctest::Approx(2.0 * ramanujan_integral(1e6, 1.0)).epsilon(1e-12));
  CHECK(one.second_order == doctest::Approx(one.landau).epsilon(1e-12));
  CHECK(one.ramanujan > one.landau);

  const ApproxCompare zero = approx_compare(1e6, 2.0, 4, 0.0);
  CHECK(zero.second_order ==
        doctest::Approx(zero.landau * (1.0 + 1.0 / (4 * std::log(1e6))))
            .epsilon(1e-12));

  CHECK_THROWS_AS(approx_compare(2.0, 1.0, 1, 0.5), BadParameters);
  CHECK_THROWS_AS(approx_compare(100.0, 0.0, 1, 0.5), BadParameters);
  CHECK_THROWS_AS(approx_compare(100.0, 1.0, 0, 0.5), BadParameters);
}

TEST_CASE("empirical prime density against the splitting prediction") {
  const PrimeDensity d52 = prime_density_check(1000000, NonDivParams::make(5, 2));
  CHECK(d52.total == 78498);
  CHECK(d52.predicted == doctest::Approx(0.5));
  CHECK(std::abs(d52.empirical - d52.predicted) < 0.01);

  const PrimeDensity d73 = prime_density_check(100000, NonDivParams::make(7, 3));
  CHECK(d73.predicted == doctest::Approx(0.5));
  CHECK(std::abs(d73.empirical - d73.predicted) < 0.02);

  // odd h1: the density target degenerates to zero and is met exactly
  const PrimeDensity d72 = prime_density_check(100000, NonDivParams::make(7, 2));
  CHECK(NonDivParams::make(7, 2).h1 == 3);
  CHECK(d72.predicted == 0.0);
  CHECK(d72.hits == 0);
  CHECK(d72.empirical == 0.0);

  CHECK_THROWS_AS(prime_density_check(99, NonDivParams::make(5, 2)),
                  BadParameters);
}

TEST_CASE("constant and exponent fits recover planted models") {
  // plant count = 0.9 * I(x, 1/3) and recover the constant
  std::vector<std::pair<std::uint64_t, std::uint64_t>> planted;
  for (const double x : {1e3, 1e4, 1e5})
    planted.emplace_back(static_cast<std::uint64_t>(x),
                         static_cast<std::uint64_t>(
                             std::llround(0.9 * ramanujan_integral(x, 1.0 / 3))));
  CHECK(fit_constant(planted, 3) == doctest::Approx(0.9).epsilon(0.005));

  std::vector<std::pair<std::uint64_t, std::uint64_t>> curved;
  for (const double x : {1e3, 1e4, 1e5, 1e6})
    curved.emplace_back(static_cast<std::uint64_t>(x),
                        static_cast<std::uint64_t>(
                            std::llround(1.3 * ramanujan_integral(x, 0.7))));
  const ExponentFit planted_fit = fit_lnx_exponent(curved);
  CHECK(planted_fit.exponent == doctest::Approx(0.7).epsilon(0.02));
  CHECK(planted_fit.constant == doctest::Approx(1.3).epsilon(0.02));

  // frozen sieve counts for ell = 7, m = 3 (true exponent 1/h1 = 1/2)
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> observed = {
      {100000, 22516}, {1000000, 202901}, {10000000, 1863131}};
  const ExponentFit fit = fit_lnx_exponent(observed);
  CHECK(fit.exponent > 0.45);
  CHECK(fit.exponent < 0.55);
  CHECK(std::abs(fit.exponent - 0.515) < 0.01);
  CHECK(fit.constant > 0);

  CHECK_THROWS_AS(fit_constant({}, 3), BadParameters);
  CHECK_THROWS_AS(
      fit_lnx_exponent({{1000, 500}}), BadParameters);
}

}  // TEST_SUITE
