#include "congrlab/congruence.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace congrlab {

namespace {

void validate_weight_level(unsigned k, std::uint64_t p, int eps) {
  if (eps != 1 && eps != -1) throw BadParameters("eps must be +1 or -1");
  if (k < 2 || k % 2 != 0)
    throw BadParameters("k must be an even integer >= 2");
  if (k == 2 && eps == 1)
    throw BadParameters("(k, eps) = (2, +1) is excluded");
  if (!is_prime_u64(p)) throw BadParameters("p must be prime");
}

// Exact factorization of a value whose prime support is contained in the
// union of the supports of the given parts (each part fits 64 bits even
// when the value itself does not).
Factorization factor_through_parts(const Int& value,
                                   const std::vector<Int>& parts) {
  std::vector<std::uint64_t> candidates;
  for (const Int& part : parts) {
    const Int a = abs(part);
    if (a <= 1) continue;
    for (const auto& [q, e] : factor(a).primes) candidates.push_back(q);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  Factorization out;
  Int rebuilt = 1;
  for (std::uint64_t q : candidates) {
    if (value % Int(q) != 0) continue;
    const long e = padic_valuation(Int(q), value);
    out.primes.emplace_back(q, static_cast<int>(e));
    rebuilt *= ipow(Int(q), static_cast<unsigned long>(e));
  }
  if (rebuilt != abs(value))
    throw std::logic_error(
        "internal error: factor support does not cover the value");
  return out;
}

}  // namespace

ModuliReport congruence_moduli(unsigned k, std::uint64_t p, int eps) {
  validate_weight_level(k, p, eps);

  ModuliReport r;
  r.k = k;
  r.p = p;
  r.eps = eps;

  const Int a_part = Int(eps) + ipow_u64(p, k / 2);
  const Int b_part = Int(eps) + ipow_u64(p, k / 2 - 1);
  const Rat bk2k = bernoulli(k) / Rat(2 * static_cast<long>(k));
  const Int bk_num = reduced_numerator(bk2k);

  r.n_value = abs(Rat(bk2k * Rat(a_part)).get_num());
  r.n_factors = factor_through_parts(r.n_value, {bk_num, a_part});

  r.m_value = abs(a_part * b_part);
  if (r.m_value != 0)
    r.m_factors = factor_through_parts(r.m_value, {a_part, b_part});

  for (const auto& [q, e] : r.n_factors.primes) {
    if (q < 5) continue;
    if (r.m_value == 0 || r.m_value % Int(q) == 0) r.common_ells.push_back(q);
  }
  return r;
}

unsigned long sturm_bound(unsigned k, std::uint64_t p) {
  return (static_cast<unsigned long>(k) * (p + 1) + 11) / 12;
}

HypothesisReport check_hypotheses_main(unsigned k, std::uint64_t p, int eps,
                                       std::uint64_t ell) {
  if (!is_prime_u64(ell)) throw BadParameters("ell must be prime");
  const ModuliReport mod = congruence_moduli(k, p, eps);

  HypothesisReport r;
  r.theorem = "main";
  r.k = k;
  r.p = p;
  r.eps = eps;
  r.ell = ell;
  r.conditions.emplace_back("k even, k >= 2, (k, eps) != (2, +1)", true);
  r.conditions.emplace_back("ell >= max(5, k-1)",
                            ell >= std::max<std::uint64_t>(5, k - 1));
  r.conditions.emplace_back("p != -1 (mod ell)", (p + 1) % ell != 0);
  r.conditions.emplace_back("ell divides N", mod.n_value % Int(ell) == 0);
  r.conditions.emplace_back(
      "ell divides M", mod.m_value == 0 || mod.m_value % Int(ell) == 0);
  r.all_hold = std::all_of(r.conditions.begin(), r.conditions.end(),
                           [](const auto& c) { return c.second; });
  return r;
}

HypothesisReport check_hypotheses_rmain(unsigned k, std::uint64_t p, int eps,
                                        std::uint64_t ell) {
  if (!is_prime_u64(ell) || ell < 5)
    throw BadParameters("ell must be a prime >= 5");
  const ModuliReport mod = congruence_moduli(k, p, eps);
  const Int bk_num =
      reduced_numerator(bernoulli(k) / Rat(2 * static_cast<long>(k)));

  HypothesisReport r;
  r.theorem = "rmain";
  r.k = k;
  r.p = p;
  r.eps = eps;
  r.ell = ell;
  r.conditions.emplace_back("ell divides N", mod.n_value % Int(ell) == 0);
  r.conditions.emplace_back("k != 0 (mod ell-1)", k % (ell - 1) != 0);
  r.conditions.emplace_back("ell does not divide numerator(B_k/2k)",
                            bk_num % Int(ell) != 0);
  r.all_hold = std::all_of(r.conditions.begin(), r.conditions.end(),
                           [](const auto& c) { return c.second; });
  return r;
}

CongruenceCertificate verify_congruence(const QSeries<Rat>& f,
                                        const QSeries<Rat>& g,
                                        const Int& modulus,
                                        unsigned long bound,
                                        unsigned long sturm, std::string lhs,
                                        std::string rhs) {
  if (modulus < 2) throw BadParameters("modulus must be >= 2");
  if (bound >= f.prec || bound >= g.prec)
    throw InsufficientPrecision("comparing up to n = " + std::to_string(bound) +
                                " needs " + std::to_string(bound + 1) +
                                " coefficients on both sides");

  CongruenceCertificate cert;
  cert.lhs = std::move(lhs);
  cert.rhs = std::move(rhs);
  cert.modulus = modulus.get_str();
  cert.checked_bound = bound;
  cert.sturm = sturm;
  cert.holds = true;
  for (unsigned long n = 0; n <= bound; ++n) {
    for (const Rat* c : {&f.a[n], &g.a[n]}) {
      if (gcd(c->get_den(), modulus) != 1)
        throw DenominatorNotInvertible(
            "coefficient denominator at n = " + std::to_string(n) +
            " shares a factor with the modulus");
    }
    if (Rat(f.a[n] - g.a[n]).get_num() % modulus != 0) {
      cert.holds = false;
      cert.first_failure = n;
      break;
    }
  }
  cert.theorem_level = cert.holds && sturm > 0 && bound >= sturm;
  return cert;
}

std::vector<FactorVerdict> verify_congruence_numberfield(
    const QSeries<NFElem>& f, const QSeries<Rat>& eis, std::uint64_t ell,
    unsigned long bound, unsigned long sturm, std::string lhs,
    std::string rhs) {
  if (f.prec == 0) throw BadParameters("empty series");
  if (bound >= f.prec || bound >= eis.prec)
    throw InsufficientPrecision("comparing up to n = " + std::to_string(bound) +
                                " needs " + std::to_string(bound + 1) +
                                " coefficients on both sides");

  const FieldPtr field = f.a[0].field;
  const Int m(ell);
  std::vector<FactorVerdict> out;
  for (const auto& P : factor_minpoly_mod(field->minpoly, ell)) {
    FactorVerdict v;
    v.factor = P;
    v.cert.lhs = lhs;
    v.cert.rhs = rhs;
    v.cert.modulus = "(" + std::to_string(ell) + ", " + P.g.str() + ")";
    v.cert.checked_bound = bound;
    v.cert.sturm = sturm;
    v.cert.holds = true;
    for (unsigned long n = 0; n <= bound; ++n) {
      const ResidueElement lhs_r = reduce_element(f.a[n], P);
      const std::uint64_t t = rat_mod(eis.a[n], m).get_ui();
      const ResidueElement rhs_r{ell, P.g, fp_normalize(FpPoly{ell, {t}})};
      if (!residue_equal(lhs_r, rhs_r)) {
        v.cert.holds = false;
        v.cert.first_failure = n;
        break;
      }
    }
    v.cert.theorem_level = v.cert.holds && sturm > 0 && bound >= sturm;
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

// b(n) of U_p E_{k,p}^eps in closed form.
Rat up_coefficient(unsigned k, std::uint64_t p, int eps,
                   const QSeries<Rat>& e, unsigned long n) {
  if (n == 0) return e.a[0];
  const Int pk2 = ipow_u64(p, k / 2);
  const Int lam = Int(1) + ipow_u64(p, k - 1) + Int(eps) * pk2;
  Rat v = Rat(lam) * e.a[n];
  if (n % p == 0) {
    const Int tail = Int(eps) * sigma(k - 1, n / p) * pk2 *
                     (Int(eps) + pk2) * (Int(eps) + ipow_u64(p, k / 2 - 1));
    v -= Rat(tail);
  }
  return v;
}

}  // namespace

CongruenceCertificate up_eigen_congruence(unsigned k, std::uint64_t p, int eps,
                                          std::uint64_t ell,
                                          std::size_t prec) {
  if (!is_prime_u64(ell)) throw BadParameters("ell must be prime");
  const ModuliReport mod = congruence_moduli(k, p, eps);
  if (mod.n_value % Int(ell) != 0)
    throw PreconditionFailed("ell does not divide N");
  if (mod.m_value != 0 && mod.m_value % Int(ell) != 0)
    throw PreconditionFailed("ell does not divide M");

  const unsigned long sturm = sturm_bound(k, p);
  if (prec < p * (sturm + 1))
    throw InsufficientPrecision(
        "need precision >= p * (sturm + 1) = " + std::to_string(p * (sturm + 1)));

  const QSeries<Rat> e = eisenstein_level(k, p, eps, prec);
  const QSeries<Rat> u = hecke_U(p, e);
  for (unsigned long n = 0; n < u.prec; ++n) {
    if (u.a[n] != up_coefficient(k, p, eps, e, n))
      throw std::logic_error(
          "internal error: U_p closed form mismatch at n = " +
          std::to_string(n));
  }

  const Int lam = Int(1) + ipow_u64(p, k - 1) + Int(eps) * ipow_u64(p, k / 2);
  const QSeries<Rat> lam_e = series_scale(Rat(lam), e);
  return verify_congruence(u, lam_e, Int(ell), u.prec - 1, sturm,
                           "U_p E_{k,p}^eps", "(1 + p^{k-1} + eps p^{k/2}) E_{k,p}^eps");
}

bool up_closed_form_matches(unsigned k, std::uint64_t p, int eps,
                            unsigned long n_limit) {
  if (n_limit == 0) return true;
  const QSeries<Rat> e = eisenstein_level(k, p, eps, p * n_limit);
  const QSeries<Rat> u = hecke_U(p, e);
  for (unsigned long n = 0; n < n_limit; ++n)
    if (u.a[n] != up_coefficient(k, p, eps, e, n)) return false;
  return true;
}

bool level_raise_condition(unsigned k, std::uint64_t p, std::uint64_t ell) {
  if (k < 2 || k % 2 != 0)
    throw BadParameters("k must be an even integer >= 2");
  if (!is_prime_u64(p)) throw BadParameters("p must be prime");
  if (!is_prime_u64(ell)) throw BadParameters("ell must be prime");
  const Int s = Int(1) + ipow_u64(p, k - 1);
  const Int diff = s * s - ipow_u64(p, k - 2) * (Int(p) + 1) * (Int(p) + 1);
  return diff % Int(ell) == 0;
}

namespace {

Construction finish_construction(unsigned k, std::uint64_t p, int eps,
                                 const ModuliReport& mod, QSeries<Rat> g,
                                 std::size_t prec, unsigned a, unsigned b,
                                 unsigned alpha) {
  const unsigned long sturm = sturm_bound(k, p);
  const Rat g0 = g.at(0);
  if (g0 == 0)
    throw std::logic_error(
        "internal error: auxiliary series has zero constant term");
  if (gcd(abs(g0.get_num()), mod.n_value) != 1)
    throw CoprimalityFailed(
        "constant term of the auxiliary series shares a factor with N");

  const Rat bk2k = bernoulli(k) / Rat(2 * static_cast<long>(k));
  const Rat scalar =
      bk2k * Rat(eps) * Rat(Int(eps) + ipow_u64(p, k / 2)) / g0;
  const QSeries<Rat> e = eisenstein_level(k, p, eps, prec);
  QSeries<Rat> f = series_add(e, series_scale(scalar, g));
  if (f.at(0) != 0)
    throw std::logic_error(
        "internal error: constructed form has a nonzero constant term");
  if (f.at(1) == 0)
    throw std::logic_error("internal error: constructed form vanishes at q^1");

  Construction out;
  out.a = a;
  out.b = b;
  out.alpha = alpha;
  out.g_constant = g0;
  if (mod.n_value == 1) {
    out.cert.lhs = "f";
    out.cert.rhs = "E_{k,p}^eps";
    out.cert.modulus = "1";
    out.cert.checked_bound = prec - 1;
    out.cert.sturm = sturm;
    out.cert.holds = true;
    out.cert.theorem_level = prec - 1 >= sturm;
  } else {
    out.cert = verify_congruence(f, e, mod.n_value, prec - 1, sturm, "f",
                                 "E_{k,p}^eps");
  }
  out.f = std::move(f);
  return out;
}

}  // namespace

Construction construct_case_b(unsigned k, std::uint64_t p, int eps,
                              std::size_t prec) {
  const ModuliReport mod = congruence_moduli(k, p, eps);
  if (prec == 0) prec = 2 * sturm_bound(k, p) + 11;

  const unsigned target = (eps == 1) ? k : k - 2;
  if (target < 8 || target % 4 != 0)
    throw BadParameters("weight " + std::to_string(k) + " with eps = " +
                        std::to_string(eps) +
                        " is not expressible as " +
                        (eps == 1 ? "8a + 12b" : "2 + 8a + 12b"));
  const unsigned b = (target % 8 == 0) ? 0 : 1;
  const unsigned a = (target - 12 * b) / 8;

  std::optional<QSeries<Rat>> g;
  if (eps == -1) g = g2_minus(p, prec);
  if (a > 0) {
    const QSeries<Rat> g4 = eisenstein_G(4, prec);
    const QSeries<Rat> pow =
        series_pow(series_mul(g4, level_raise_V(p, g4)), a);
    g = g ? series_mul(*g, pow) : pow;
  }
  if (b > 0) {
    const QSeries<Rat> g6 = eisenstein_G(6, prec);
    const QSeries<Rat> pow =
        series_pow(series_mul(g6, level_raise_V(p, g6)), b);
    g = g ? series_mul(*g, pow) : pow;
  }
  if (!g) throw std::logic_error("internal error: empty weight decomposition");
  return finish_construction(k, p, eps, mod, std::move(*g), prec, a, b, 0);
}

Construction construct_case_c(unsigned k, std::uint64_t p, int eps,
                              std::size_t prec) {
  const ModuliReport mod = congruence_moduli(k, p, eps);
  if (prec == 0) prec = 2 * sturm_bound(k, p) + 11;

  const unsigned target = (eps == 1) ? k : k - 2;
  if (target < 10 || target % 10 != 0)
    throw BadParameters("weight " + std::to_string(k) + " with eps = " +
                        std::to_string(eps) +
                        " is not expressible as " +
                        (eps == 1 ? "10 alpha" : "2 + 10 alpha"));
  const unsigned alpha = target / 10;

  const Int guard = (Int(p) + eps) * Int(p) * (Int(p) + 1);
  if (gcd(mod.n_value, abs(guard)) != 1)
    throw CoprimalityFailed("N shares a factor with (p + eps) p (p + 1)");

  const QSeries<Rat> g4 = eisenstein_G(4, prec);
  const QSeries<Rat> g6 = eisenstein_G(6, prec);
  const Rat p2 = Rat(Int(p) * Int(p));
  const Rat p3 = p2 * Rat(static_cast<long>(p));
  const QSeries<Rat> base =
      series_add(series_scale(p2, series_mul(level_raise_V(p, g4), g6)),
                 series_scale(p3, series_mul(g4, level_raise_V(p, g6))));
  QSeries<Rat> g = series_pow(base, alpha);
  if (eps == -1) g = series_mul(g2_minus(p, prec), g);
  return finish_construction(k, p, eps, mod, std::move(g), prec, 0, 0, alpha);
}

NewformFixture fixture_from_json(const nlohmann::json& j) {
  try {
    NewformFixture fx;
    fx.label = j.at("label").get<std::string>();
    fx.k = j.at("k").get<unsigned>();
    fx.p = j.at("p").get<std::uint64_t>();
    fx.al_sign = j.at("al_sign").get<int>();
    if (fx.k < 2 || fx.k % 2 != 0)
      throw ParseError("fixture weight must be even and >= 2");
    if (!is_prime_u64(fx.p)) throw ParseError("fixture level must be prime");
    if (fx.al_sign != 1 && fx.al_sign != -1)
      throw ParseError("fixture al_sign must be +1 or -1");

    std::vector<Int> mp;
    for (const auto& v : j.at("minpoly")) mp.push_back(int_from_json(v));
    fx.field = make_field(std::move(mp));
    const auto deg = static_cast<std::size_t>(fx.field->degree());

    QSeries<NFElem> s;
    s.weight = static_cast<int>(fx.k);
    s.a.push_back(NFElem::from_rat(fx.field, Rat(0)));
    for (const auto& row : j.at("coeffs")) {
      if (!row.is_array() || row.empty() || row.size() > deg)
        throw ParseError("fixture coefficient rows must list 1.." +
                         std::to_string(deg) + " entries");
      NFElem e{fx.field, std::vector<Rat>(deg, Rat(0))};
      for (std::size_t i = 0; i < row.size(); ++i) e.c[i] = rat_from_json(row[i]);
      s.a.push_back(std::move(e));
    }
    if (s.a.size() < 2) throw ParseError("fixture lists no coefficients");
    s.prec = s.a.size();
    fx.coeffs = std::move(s);
    return fx;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed fixture: ") + e.what());
  }
}

NewformFixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open fixture file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("fixture " + path + ": " + e.what());
  }
  return fixture_from_json(j);
}

QSeries<Rat> fixture_to_rational(const NewformFixture& fx) {
  if (fx.field->degree() != 1)
    throw BadParameters("fixture coefficients generate a nontrivial field");
  QSeries<Rat> out;
  out.prec = fx.coeffs.prec;
  out.weight = fx.coeffs.weight;
  out.a.reserve(out.prec);
  for (const auto& e : fx.coeffs.a) out.a.push_back(e.c[0]);
  return out;
}

namespace {

nlohmann::json factors_json(const Factorization& f) {
  auto arr = nlohmann::json::array();
  for (const auto& [q, e] : f.primes)
    arr.push_back(nlohmann::json::array({q, e}));
  return arr;
}

}  // namespace

nlohmann::json moduli_to_json(const ModuliReport& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["p"] = r.p;
  j["eps"] = r.eps;
  j["N"] = json_int(r.n_value);
  j["N_factors"] = factors_json(r.n_factors);
  j["M"] = json_int(r.m_value);
  j["M_factors"] = factors_json(r.m_factors);
  j["common_ells"] = r.common_ells;
  j["sturm"] = sturm_bound(r.k, r.p);
  return j;
}

nlohmann::json hypotheses_to_json(const HypothesisReport& r) {
  nlohmann::json j;
  j["theorem"] = r.theorem;
  j["k"] = r.k;
  j["p"] = r.p;
  j["eps"] = r.eps;
  j["ell"] = r.ell;
  auto arr = nlohmann::json::array();
  for (const auto& [name, holds] : r.conditions)
    arr.push_back({{"name", name}, {"holds", holds}});
  j["conditions"] = arr;
  j["all_hold"] = r.all_hold;
  return j;
}

nlohmann::json certificate_to_json(const CongruenceCertificate& c) {
  nlohmann::json j;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["modulus"] = c.modulus;
  j["checked_bound"] = c.checked_bound;
  j["sturm"] = c.sturm;
  j["theorem_level"] = c.theorem_level;
  j["holds"] = c.holds;
  j["first_failure"] =
      c.first_failure ? nlohmann::json(*c.first_failure) : nlohmann::json();
  return j;
}

nlohmann::json factor_verdicts_to_json(const std::vector<FactorVerdict>& v) {
  auto arr = nlohmann::json::array();
  for (const auto& fv : v) {
    nlohmann::json j;
    j["ell"] = fv.factor.ell;
    j["g"] = fv.factor.g.str();
    j["residue_degree"] = fv.factor.residue_degree;
    j["multiplicity"] = fv.factor.multiplicity;
    j["certificate"] = certificate_to_json(fv.cert);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace congrlab
