#include "congrlab/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace congrlab {

namespace {

constexpr std::uint64_t kLinearSieveLimit = 10'000'000;

unsigned default_threads() {
  if (const char* env = std::getenv("CONGRLAB_THREADS")) {
    const unsigned long v = std::strtoul(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min<unsigned long>(v, 256));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  // each worker holds one segment in memory, so stay modest by default
  return hc ? std::min(hc, 8u) : 1;
}

// sigma_e(q^a) mod ell via the geometric sum, with the q^e = 1 case counted.
std::uint64_t sigma_prime_power_mod(std::uint64_t q, unsigned e, unsigned a,
                                    std::uint64_t ell) {
  const std::uint64_t t = powmod_u64(q % ell, e, ell);
  if (t == 1) return (a + 1) % ell;
  const std::uint64_t num = (powmod_u64(t, a + 1, ell) + ell - 1) % ell;
  return mulmod_u64(num, invmod_u64((t + ell - 1) % ell, ell), ell);
}

// f(q^a) mod ell for the configured f (level-decorated at the level prime).
std::uint64_t f_prime_power_mod(const NonDivParams& P, std::uint64_t q,
                                unsigned a) {
  if (a == 0) return 1;
  const std::uint64_t ell = P.ell;
  std::uint64_t v = sigma_prime_power_mod(q, P.m, a, ell);
  if (P.level && q == P.level->p) {
    const std::uint64_t shift = powmod_u64(q % ell, (P.m + 1) / 2, ell);
    const std::uint64_t tail =
        mulmod_u64(shift, sigma_prime_power_mod(q, P.m, a - 1, ell), ell);
    v = (P.level->eps == 1) ? (v + tail) % ell : (v + ell - tail) % ell;
  }
  return v;
}

}  // namespace

NonDivParams NonDivParams::make(std::uint64_t ell, unsigned m,
                                std::optional<LevelPart> level) {
  if (ell < 3 || !is_prime_u64(ell))
    throw BadParameters("ell must be a prime >= 3");
  if (m == 0) throw BadParameters("m must be >= 1");
  NonDivParams P;
  P.ell = ell;
  P.m = m;
  P.r = static_cast<unsigned>(std::gcd<std::uint64_t>(m, ell - 1));
  P.h1 = static_cast<unsigned>((ell - 1) / P.r);
  if (level) {
    if (!is_prime_u64(level->p)) throw BadParameters("level p must be prime");
    if (level->eps != 1 && level->eps != -1)
      throw BadParameters("eps must be +1 or -1");
    if (m % 2 == 0)
      throw BadParameters("the level-decorated form needs m odd");
    const std::uint64_t pk = powmod_u64(level->p % ell, (m + 1) / 2, ell);
    const std::uint64_t v = (level->eps == 1) ? pk : (ell - pk) % ell;
    if (v != ell - 1)
      throw BadParameters(
          "level mode requires eps p^{(m+1)/2} = -1 (mod ell)");
    P.level = level;
  }
  return P;
}

std::uint64_t mu_of(std::uint64_t p1, unsigned r, std::uint64_t ell) {
  if (!is_prime_u64(p1)) throw BadParameters("p1 must be prime");
  if (!is_prime_u64(ell) || ell < 3)
    throw BadParameters("ell must be a prime >= 3");
  if (p1 == ell) throw BadParameters("p1 must differ from ell");
  if (r == 0) throw BadParameters("r must be >= 1");
  const std::uint64_t pr = powmod_u64(p1 % ell, r, ell);
  const std::uint64_t ord = multiplicative_order(pr, ell);
  return ord == 1 ? ell : ord;
}

EulerFactor local_factor_indicator(std::uint64_t p1, unsigned r,
                                   std::uint64_t ell, unsigned A) {
  if (A < 1) throw BadParameters("A must be >= 1");
  EulerFactor f;
  f.p1 = p1;
  f.mu = mu_of(p1, r, ell);
  f.indicator.resize(A + 1);
  // (1 - t^{mu-1}) / ((1-t)(1-t^mu)): the coefficient at t^a is
  // (floor(a/mu) + 1) - (floor((a+1-mu)/mu) + 1 when a+1 >= mu else 0),
  // which is 0 exactly when a = -1 (mod mu).
  for (unsigned a = 0; a <= A; ++a) {
    const std::uint64_t c1 = a / f.mu + 1;
    const std::uint64_t c2 = (a + 1 >= f.mu) ? (a + 1 - f.mu) / f.mu + 1 : 0;
    f.indicator[a] = (c1 != c2) ? 1 : 0;
  }
  for (unsigned a = 0; a <= A; ++a) {
    const bool nondiv = sigma_prime_power_mod(p1, r, a, ell) != 0;
    if (nondiv != (f.indicator[a] != 0))
      throw std::logic_error(
          "internal error: local factor disagrees with direct evaluation "
          "at a = " + std::to_string(a));
  }
  return f;
}

EulerFactor local_factor_indicator(std::uint64_t p1,
                                   const NonDivParams& params, unsigned A) {
  if (params.level && p1 == params.level->p) {
    if (A < 1) throw BadParameters("A must be >= 1");
    EulerFactor f;
    f.p1 = p1;
    f.mu = 0;
    f.level_prime = true;
    f.indicator.assign(A + 1, 1);
    for (unsigned a = 0; a <= A; ++a) {
      if (f_prime_power_mod(params, p1, a) == 0)
        throw std::logic_error(
            "internal error: level prime factor is not (1-t)^{-1}");
    }
    return f;
  }
  return local_factor_indicator(p1, params.r, params.ell, A);
}

EkDeltaReport ek_delta_report(std::uint64_t p, unsigned r, std::uint64_t ell) {
  EkDeltaReport rep;
  rep.mu = mu_of(p, r, ell);
  // evaluated as an exact rational before the single rounding to double
  const Int den_hi = Int(ipow_u64(p, rep.mu) - 1);
  const Int den_lo = Int(ipow_u64(p, rep.mu - 1) - 1);
  const Rat bracket = Rat(static_cast<unsigned long>(rep.mu)) / Rat(den_hi) -
                      Rat(static_cast<unsigned long>(rep.mu - 1)) / Rat(den_lo);
  rep.without_log = bracket.get_d();
  rep.with_log = rep.without_log * std::log(static_cast<double>(p));
  rep.readings_differ = std::abs(rep.with_log - rep.without_log) > 1e-12;
  return rep;
}

double ek_delta_term(std::uint64_t p, unsigned r, std::uint64_t ell) {
  return ek_delta_report(p, r, ell).with_log;
}

double gamma_from_table(std::uint64_t ell) {
  switch (ell) {
    case 3: return 0.534921;
    case 5: return 0.399547;
    case 7: return 0.231640;
    case 23: return 0.216691;
    case 691: return 0.571714;
    default:
      throw NotInTable("no reference constant recorded for ell = " +
                       std::to_string(ell));
  }
}

Winner winner(double gamma) {
  if (gamma > 0.5) return Winner::Landau;
  if (gamma < 0.5) return Winner::Ramanujan;
  return Winner::Tie;
}

namespace {

// In-memory linear smallest-prime-factor sieve computing f(n) mod ell
// multiplicatively; low[n] is the full power of the smallest prime in n.
std::uint64_t count_linear(std::uint64_t x, const NonDivParams& P,
                           std::vector<std::uint8_t>* indicators) {
  const std::uint64_t ell = P.ell;
  const std::size_t size = static_cast<std::size_t>(x) + 1;
  std::vector<std::uint32_t> low(size, 0), val(size, 0);
  std::vector<std::uint32_t> primes;
  if (x >= 1) {
    low[1] = 1;
    val[1] = 1;
  }
  for (std::uint32_t i = 2; i <= x; ++i) {
    if (low[i] == 0) {
      low[i] = i;
      val[i] = static_cast<std::uint32_t>(f_prime_power_mod(P, i, 1));
      primes.push_back(i);
    }
    for (const std::uint32_t q : primes) {
      if (static_cast<std::uint64_t>(q) * i > x) break;
      const std::uint32_t n = q * i;
      if (i % q == 0) {
        low[n] = low[i] * q;
        if (low[n] == n) {
          unsigned a = 0;
          for (std::uint32_t w = n; w > 1; w /= q) ++a;
          val[n] = static_cast<std::uint32_t>(f_prime_power_mod(P, q, a));
        } else {
          val[n] = static_cast<std::uint32_t>(
              mulmod_u64(val[n / low[n]], val[low[n]], ell));
        }
        break;
      }
      low[n] = q;
      val[n] = static_cast<std::uint32_t>(mulmod_u64(val[i], val[q], ell));
    }
  }
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (val[n] != 0) ++count;
  if (indicators) {
    indicators->assign(size, 0);
    for (std::uint64_t n = 1; n <= x; ++n)
      (*indicators)[n] = val[n] != 0 ? 1 : 0;
  }
  return count;
}

}  // namespace

std::uint64_t count_nondiv_segmented(std::uint64_t x,
                                     const NonDivParams& params,
                                     std::uint64_t segment_size,
                                     unsigned threads) {
  if (x < 1) throw BadParameters("x must be >= 1");
  if (segment_size < 64) throw BadParameters("segment size too small");
  if (params.ell >> 32)
    throw Overflow("sieve supports ell below 2^32 only");
  const std::uint64_t ell = params.ell;

  std::uint64_t root = static_cast<std::uint64_t>(
      std::sqrt(static_cast<double>(x)));
  while (root * root > x) --root;
  while ((root + 1) * (root + 1) <= x) ++root;
  const std::vector<std::uint64_t> base = primes_up_to(root);

  // f(q^a) mod ell for every base prime power q^a <= x
  std::vector<std::vector<std::uint32_t>> tables(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    const std::uint64_t q = base[i];
    std::uint64_t pw = 1;
    unsigned a = 0;
    for (;;) {
      tables[i].push_back(
          static_cast<std::uint32_t>(f_prime_power_mod(params, q, a)));
      if (pw > x / q) break;
      pw *= q;
      ++a;
    }
  }

  const unsigned nt = threads ? threads : default_threads();
  std::atomic<std::uint64_t> next{1};
  std::atomic<std::uint64_t> total{0};

  auto worker = [&]() {
    std::vector<std::uint64_t> rem(segment_size);
    std::vector<std::uint32_t> val(segment_size);
    std::uint64_t local = 0;
    for (;;) {
      const std::uint64_t lo = next.fetch_add(segment_size);
      if (lo > x) break;
      const std::uint64_t hi = std::min(x + 1, lo + segment_size);
      const std::size_t len = static_cast<std::size_t>(hi - lo);
      for (std::size_t i = 0; i < len; ++i) {
        rem[i] = lo + i;
        val[i] = 1;
      }
      for (std::size_t bi = 0; bi < base.size(); ++bi) {
        const std::uint64_t q = base[bi];
        for (std::uint64_t n = ((lo + q - 1) / q) * q; n < hi; n += q) {
          std::uint64_t& r = rem[static_cast<std::size_t>(n - lo)];
          unsigned a = 0;
          while (r % q == 0) {
            r /= q;
            ++a;
          }
          std::uint32_t& v = val[static_cast<std::size_t>(n - lo)];
          v = static_cast<std::uint32_t>(
              static_cast<std::uint64_t>(v) * tables[bi][a] % ell);
        }
      }
      for (std::size_t i = 0; i < len; ++i) {
        std::uint64_t v = val[i];
        if (rem[i] > 1)
          v = v * f_prime_power_mod(params, rem[i], 1) % ell;
        if (v != 0) ++local;
      }
    }
    total.fetch_add(local);
  };

  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return total.load();
}

NonDivCount count_nondiv(std::uint64_t x, const NonDivParams& params) {
  if (x < 1) throw BadParameters("x must be >= 1");
  NonDivCount out;
  out.x = x;
  out.h1 = params.h1;
  out.count = x <= kLinearSieveLimit ? count_linear(x, params, nullptr)
                                     : count_nondiv_segmented(x, params);
  return out;
}

std::vector<std::uint8_t> sieve_indicators(std::uint64_t x,
                                           const NonDivParams& params) {
  if (x < 1 || x > kLinearSieveLimit)
    throw BadParameters("indicator dump supports 1 <= x <= 10^7");
  std::vector<std::uint8_t> out;
  count_linear(x, params, &out);
  return out;
}

PrimeDensity prime_density_check(std::uint64_t x, const NonDivParams& params) {
  if (x < 100) throw BadParameters("x must be >= 100");
  PrimeDensity d;
  for (const std::uint64_t q : primes_up_to(x)) {
    ++d.total;
    if (sigma_prime_power_mod(q, params.r, 1, params.ell) == 0) ++d.hits;
  }
  d.empirical = static_cast<double>(d.hits) / static_cast<double>(d.total);
  d.predicted = params.h1 % 2 == 0 ? static_cast<double>(params.r) /
                                         static_cast<double>(params.ell - 1)
                                   : 0.0;
  return d;
}

namespace {

double log_power(double t, double beta) { return std::pow(std::log(t), -beta); }

double simpson_rec(double beta, double a, double m, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = log_power(lm, beta), frm = log_power(rm, beta);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol)
    return left + right + delta / 15;
  return simpson_rec(beta, a, lm, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(beta, m, rm, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double ramanujan_integral(double x, double beta) {
  if (!(x > 2)) return 0.0;
  const double a = 2.0, b = x;
  const double m = (a + b) / 2;
  const double fa = log_power(a, beta), fm = log_power(m, beta),
               fb = log_power(b, beta);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  const double tol = std::max(std::abs(whole), 1.0) * 1e-10;
  return simpson_rec(beta, a, m, b, fa, fm, fb, whole, tol, 60);
}

ApproxCompare approx_compare(double x, double c, unsigned h1, double gamma) {
  if (!(x > 2) || !(c > 0) || h1 < 1)
    throw BadParameters("need x > 2, C > 0, h1 >= 1");
  const double beta = 1.0 / h1;
  ApproxCompare r;
  r.landau = c * x / std::pow(std::log(x), beta);
  r.ramanujan = c * ramanujan_integral(x, beta);
  r.second_order = r.landau * (1.0 + (1.0 - gamma) / (h1 * std::log(x)));
  return r;
}

double fit_constant(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts,
    unsigned h1) {
  if (counts.empty() || h1 < 1)
    throw BadParameters("need data points and h1 >= 1");
  double num = 0, den = 0;
  for (const auto& [x, c] : counts) {
    const double v = ramanujan_integral(static_cast<double>(x), 1.0 / h1);
    num += static_cast<double>(c) * v;
    den += v * v;
  }
  if (den == 0) throw BadParameters("data points must have x > 2");
  return num / den;
}

ExponentFit fit_lnx_exponent(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts) {
  if (counts.size() < 2) throw BadParameters("need at least two data points");
  const auto profile = [&](double beta, double* c_out) {
    double num = 0, den = 0;
    std::vector<double> basis;
    basis.reserve(counts.size());
    for (const auto& [x, c] : counts) {
      const double v = ramanujan_integral(static_cast<double>(x), beta);
      basis.push_back(v);
      num += static_cast<double>(c) * v;
      den += v * v;
    }
    const double cc = num / den;
    double sse = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const double res = static_cast<double>(counts[i].second) - cc * basis[i];
      sse += res * res;
    }
    if (c_out) *c_out = cc;
    return sse;
  };
  double lo = 0.05, hi = 1.5;
  for (int it = 0; it < 120; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (profile(m1, nullptr) < profile(m2, nullptr))
      hi = m2;
    else
      lo = m1;
  }
  ExponentFit fit;
  fit.exponent = (lo + hi) / 2;
  profile(fit.exponent, &fit.constant);
  return fit;
}

}  // namespace congrlab
