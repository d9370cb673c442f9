#include "congrlab/exact.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace congrlab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::zero_input: return "ZeroInput";
    case Errc::not_coprime: return "NotCoprime";
    case Errc::overflow: return "Overflow";
    case Errc::unsupported_degree: return "UnsupportedDegree";
    case Errc::denominator_not_invertible: return "DenominatorNotInvertible";
    case Errc::mismatched_field: return "MismatchedField";
    case Errc::ring_mismatch: return "RingMismatch";
    case Errc::bad_weight: return "BadWeight";
    case Errc::bad_parameters: return "BadParameters";
    case Errc::insufficient_precision: return "InsufficientPrecision";
    case Errc::fractional_exponent: return "FractionalExponent";
    case Errc::coprimality_failed: return "CoprimalityFailed";
    case Errc::precondition_failed: return "PreconditionFailed";
    case Errc::not_in_table: return "NotInTable";
    case Errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

std::uint64_t Factorization::value() const {
  std::uint64_t v = 1;
  for (auto& [p, e] : primes)
    for (int i = 0; i < e; ++i) v *= p;
  return v;
}

std::uint64_t Factorization::largest_prime() const {
  return primes.empty() ? 1 : primes.back().first;
}

bool Factorization::contains(std::uint64_t p) const {
  for (auto& [q, e] : primes)
    if (q == p) return true;
  return false;
}

Rat bernoulli(unsigned k) {
  // B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j, starting from B_0 = 1.
  std::vector<Rat> B(k + 1);
  B[0] = 1;
  for (unsigned n = 1; n <= k; ++n) {
    Rat acc = 0;
    for (unsigned j = 0; j < n; ++j) {
      Int binom;
      mpz_bin_uiui(binom.get_mpz_t(), n + 1, j);
      acc += Rat(binom) * B[j];
    }
    B[n] = -acc / Rat(n + 1);
  }
  return B[k];
}

Int reduced_numerator(const Rat& q) {
  if (q == 0) throw ZeroInput("reduced_numerator of 0");
  return abs(Int(q.get_num()));
}

Int sigma(unsigned m, std::uint64_t n) {
  if (n == 0) throw BadParameters("sigma requires n >= 1");
  Int out = 1;
  for (auto& [p, e] : factor(n).primes) {
    if (m == 0) {
      out *= e + 1;
      continue;
    }
    // 1 + p^m + ... + p^{em}
    Int pm = ipow_u64(p, m), term = 1, sum = 1;
    for (int i = 0; i < e; ++i) {
      term *= pm;
      sum += term;
    }
    out *= sum;
  }
  return out;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
  return factor(n).largest_prime();
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m < 2) throw BadParameters("multiplicative_order requires m >= 2");
  a %= m;
  if (std::gcd(a, m) != 1) throw NotCoprime("gcd(a, m) != 1");
  if (is_prime_u64(m)) {
    // Start from m-1 and strip prime factors while the power stays 1.
    std::uint64_t t = m - 1;
    for (auto& [q, e] : factor(m - 1).primes)
      while (t % q == 0 && powmod_u64(a, t / q, m) == 1) t /= q;
    return t;
  }
  std::uint64_t v = a % m, t = 1;
  while (v != 1) {
    v = mulmod_u64(v, a, m);
    ++t;
  }
  return t;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
  // Extended Euclid on signed 128-bit accumulators.
  __int128 t = 0, nt = 1;
  std::uint64_t r = m, nr = a % m;
  while (nr != 0) {
    std::uint64_t q = r / nr;
    __int128 tmp = t - static_cast<__int128>(q) * nt;
    t = nt;
    nt = tmp;
    std::uint64_t tm = r - q * nr;
    r = nr;
    nr = tm;
  }
  if (r != 1) throw NotCoprime("no inverse mod m");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> comp(limit + 1, false);
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (!comp[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

const std::vector<std::uint32_t>& small_prime_table() {
  static std::vector<std::uint32_t> table;
  static std::once_flag flag;
  std::call_once(flag, [] {
    auto ps = primes_up_to(1000000);
    table.assign(ps.begin(), ps.end());
  });
  return table;
}

namespace {

// Brent's cycle-based rho with deterministic parameters; n must be odd,
// composite and free of factors below the trial-division bound.
std::uint64_t brent_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1, q = 1, ys = 0;
    const unsigned m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
    while (d == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && d == 1) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(m, r - k); ++i) {
          y = f(y);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (d == n) {
      // Backtrack one step at a time.
      do {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
    // Rare failure: retry with the next increment.
  }
}

void factor_hard(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = brent_rho(n);
  factor_hard(d, out);
  factor_hard(n / d, out);
}

}  // namespace

Factorization factor(std::uint64_t n) {
  if (n == 0) throw ZeroInput("factor(0)");
  Factorization out;
  const auto& table = small_prime_table();
  for (std::uint32_t p : table) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.primes.emplace_back(p, e);
    }
  }
  if (n > 1) {
    if (is_prime_u64(n)) {
      out.primes.emplace_back(n, 1);
    } else {
      std::vector<std::uint64_t> hard;
      factor_hard(n, hard);
      std::sort(hard.begin(), hard.end());
      for (std::size_t i = 0; i < hard.size();) {
        std::size_t j = i;
        while (j < hard.size() && hard[j] == hard[i]) ++j;
        out.primes.emplace_back(hard[i], static_cast<int>(j - i));
        i = j;
      }
    }
  }
  return out;
}

Factorization factor(const Int& n) {
  Int a = abs(n);
  if (a == 0) throw ZeroInput("factor(0)");
  if (!a.fits_ulong_p() && mpz_sizeinbase(a.get_mpz_t(), 2) > 64)
    throw Overflow("factor: |n| needs more than 64 bits");
  std::uint64_t v = 0;
  // mpz -> u64 via two limbs to stay correct on 32-bit longs.
  Int hi = a >> 32, lo = a & Int(0xffffffffUL);
  v = (static_cast<std::uint64_t>(hi.get_ui()) << 32) | lo.get_ui();
  return factor(v);
}

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Int ipow_u64(std::uint64_t b, unsigned long e) {
  Int base;
  mpz_import(base.get_mpz_t(), 1, 1, sizeof(b), 0, 0, &b);
  return ipow(base, e);
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw ZeroInput("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

long padic_valuation(const Int& p, const Int& n) {
  if (n == 0) throw ZeroInput("padic_valuation of 0");
  Int rem;
  return static_cast<long>(
      mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long padic_valuation(const Int& p, const Rat& q) {
  if (q == 0) throw ZeroInput("padic_valuation of 0");
  return padic_valuation(p, Int(q.get_num())) -
         padic_valuation(p, Int(q.get_den()));
}

Int rat_mod(const Rat& q, const Int& m) {
  if (m < 2) throw BadParameters("rat_mod: modulus must be >= 2");
  Int den = q.get_den(), inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DenominatorNotInvertible("denominator " + den.get_str() +
                                   " not invertible mod " + m.get_str());
  Int r = (Int(q.get_num()) % m) * inv % m;
  if (r < 0) r += m;
  return r;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      return Rat(Int(s));
    }
    Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal '" + s + "'");
  }
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace congrlab
