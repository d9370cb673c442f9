#include "congrlab/anatomy.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace congrlab {

namespace {

constexpr unsigned kRhoGridPerUnit = 1024;  // spacing 2^-10

// Implicit trapezoid advance of u rho(u) = integral_{u-1}^{u} rho(t) dt on
// the grid u = j / K; w carries the sliding-window integral.
std::vector<double> solve_rho_grid(unsigned K, double u_max) {
  const double h = 1.0 / K;
  const std::size_t n = static_cast<std::size_t>(std::llround(u_max * K));
  std::vector<double> rho(n + 1, 1.0);
  if (n <= K) return rho;  // entirely inside the flat initial segment
  double w = 1.0;          // integral of rho over [0, 1]
  for (std::size_t j = K; j + 1 <= n; ++j) {
    const double u1 = (j + 1) * h;
    const double known = w + 0.5 * h * (rho[j] - rho[j + 1 - K] - rho[j - K]);
    const double next = known / (u1 - 0.5 * h);
    rho[j + 1] = next;
    w = known + 0.5 * h * next;
  }
  return rho;
}

}  // namespace

RhoTable build_rho_table(double u_max) {
  if (!(u_max > 0) || u_max > 256)
    throw BadParameters("u_max must lie in (0, 256]");
  const std::vector<double> coarse = solve_rho_grid(kRhoGridPerUnit, u_max);
  const std::vector<double> fine = solve_rho_grid(2 * kRhoGridPerUnit, u_max);
  RhoTable table;
  table.step = 1.0 / kRhoGridPerUnit;
  table.values.resize(coarse.size());
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    if (std::abs(fine[2 * j] - coarse[j]) > 1e-5)
      throw std::logic_error(
          "internal error: rho grids failed to converge at u = " +
          std::to_string(j * table.step));
    table.values[j] = (4.0 * fine[2 * j] - coarse[j]) / 3.0;
  }
  return table;
}

const RhoTable& rho_reference_table() {
  static const RhoTable table = build_rho_table(64.0);
  return table;
}

double dickman_rho(double u) {
  if (!(u >= 0)) throw BadParameters("u must be >= 0");
  if (u <= 1.0) return 1.0;
  const RhoTable& T = rho_reference_table();
  const std::size_t K = kRhoGridPerUnit;
  const double u_max = T.step * static_cast<double>(T.values.size() - 1);
  if (u >= u_max) return 0.0;  // rho is far below the 1e-8 budget there
  const double s = u / T.step;
  std::size_t j = static_cast<std::size_t>(s);
  if (j + 1 >= T.values.size()) j = T.values.size() - 2;
  const double t = s - static_cast<double>(j);
  // cubic Hermite with the exact slope relation rho'(u) = -rho(u-1)/u
  const auto slope = [&](std::size_t i) {
    return i >= K ? -T.values[i - K] / (static_cast<double>(i) * T.step) : 0.0;
  };
  const double v0 = T.values[j], v1 = T.values[j + 1];
  const double d0 = slope(j) * T.step, d1 = slope(j + 1) * T.step;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * v0 + (t3 - 2 * t2 + t) * d0 +
         (-2 * t3 + 3 * t2) * v1 + (t3 - t2) * d1;
}

double solve_u1() {
  const auto g = [](double u) { return 4.0 * u * dickman_rho(u) - 1.0; };
  double lo = 2.0, hi = 3.0;  // g(2) > 0 > g(3)
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void rho_table_to_csv(const RhoTable& table, std::ostream& out) {
  out << "u,rho\n" << std::setprecision(17);
  for (std::size_t j = 0; j < table.values.size(); ++j)
    out << static_cast<double>(j) * table.step << ',' << table.values[j]
        << '\n';
}

RhoTable rho_table_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "u,rho")
    throw ParseError("expected header 'u,rho'");
  RhoTable table;
  std::vector<double> us;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("expected 'u,rho' row, got: " + line);
    try {
      std::size_t used = 0;
      us.push_back(std::stod(line.substr(0, comma), &used));
      table.values.push_back(std::stod(line.substr(comma + 1), &used));
    } catch (const std::exception&) {
      throw ParseError("bad number in row: " + line);
    }
  }
  if (us.size() < 2) throw ParseError("table needs at least two rows");
  table.step = us[1] - us[0];
  return table;
}

std::uint64_t psi_friable(std::uint64_t x, std::uint64_t y) {
  if (x < 1 || y < 1) throw BadParameters("x and y must be >= 1");
  if (x > 10'000'000)
    throw BadParameters("friable counting supports x <= 10^7");
  std::vector<std::uint32_t> lpf(x + 1, 1);
  for (std::uint64_t p = 2; p <= x; ++p) {
    if (lpf[p] != 1) continue;  // p has a recorded factor, hence composite
    for (std::uint64_t m = p; m <= x; m += p)
      lpf[m] = static_cast<std::uint32_t>(p);
  }
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (lpf[n] <= y) ++count;
  return count;
}

SmoothStats shifted_prime_stats(std::uint64_t x, long long shift, double u) {
  if (x < 100) throw BadParameters("x must be >= 100");
  if (x > 100'000'000) throw BadParameters("supported up to x = 10^8");
  if (shift == 0) throw BadParameters("shift must be nonzero");
  if (!(u > 1.0)) throw BadParameters("u must be > 1");
  SmoothStats s;
  s.x = x;
  s.u = u;
  s.shift = shift;
  const double inv_u = 1.0 / u;
  for (const std::uint64_t p : primes_up_to(x)) {
    ++s.total;
    const long long v = static_cast<long long>(p) + shift;
    const std::uint64_t lpf =
        v > 1 ? largest_prime_factor(static_cast<std::uint64_t>(v)) : 1;
    if (static_cast<double>(lpf) >=
        std::pow(static_cast<double>(p), inv_u))
      ++s.hits;
  }
  return s;
}

double dk_lower_bound(unsigned k, std::uint64_t p) {
  if (k < 4 || k % 2 != 0) throw BadParameters("k must be even and >= 4");
  if (!is_prime_u64(p)) throw BadParameters("p must be prime");
  if (p >= (1ull << 31)) throw Overflow("p^2 - 1 must fit in 64 bits");
  const std::uint64_t lpf = largest_prime_factor(p * p - 1);
  return 5.0 * std::log(static_cast<double>(lpf)) / (2.0 * k);
}

std::optional<double> dknew_lower_bound(unsigned k, std::uint64_t p) {
  if (k < 2 || k % 2 != 0) throw BadParameters("k must be even and >= 2");
  if (!is_prime_u64(p)) throw BadParameters("p must be prime");
  if (Int(static_cast<unsigned long>(p)) < ipow_u64(k + 1, 4))
    return std::nullopt;
  const std::uint64_t lpf = largest_prime_factor(p - 1);
  if (lpf < 5) return std::nullopt;
  return 5.0 * std::log(static_cast<double>(lpf)) / (2.0 * k);
}

std::vector<std::uint64_t> special_smooth_primes(std::uint64_t bound) {
  if (bound > 100'000'000)
    throw BadParameters("supported up to bound = 10^8");
  std::vector<std::uint64_t> out;
  for (const std::uint64_t p : primes_up_to(bound)) {
    std::uint64_t w = p * p - 1;
    while (w % 2 == 0) w /= 2;
    while (w % 3 == 0) w /= 3;
    if (w == 1) out.push_back(p);
  }
  return out;
}

EvertseCheck evertse_bound_check(std::uint64_t X, std::uint64_t x) {
  if (X < 2 || x < 2) throw BadParameters("need X >= 2 and x >= 2");
  if (X > 100'000'000) throw BadParameters("supported up to X = 10^8");
  EvertseCheck c;
  const std::vector<std::uint64_t> small = primes_up_to(x);
  for (const std::uint64_t p : primes_up_to(X)) {
    std::uint64_t w = p * p - 1;
    for (const std::uint64_t q : small)
      while (w % q == 0) w /= q;
    if (w == 1) ++c.count;
  }
  c.bound = 3 * ipow_u64(7, 1 + 2 * small.size());
  c.ok = Int(static_cast<unsigned long>(c.count)) <= c.bound;
  return c;
}

}  // namespace congrlab
