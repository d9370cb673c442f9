#pragma once
// Congruence moduli N, M for the level Eisenstein series, hypothesis checks
// for the two congruence theorems, the U_p eigenvalue congruence, explicit
// cusp-form constructions, and Sturm-bound verification with certificates.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "congrlab/exact.hpp"
#include "congrlab/fieldred.hpp"
#include "congrlab/qseries.hpp"

namespace congrlab {

// N = reduced numerator of (B_k/2k)(eps + p^{k/2});
// M = |(eps + p^{k/2})(eps + p^{k/2-1})| (0 exactly when k = 2, eps = -1).
struct ModuliReport {
  unsigned k = 0;
  std::uint64_t p = 0;
  int eps = 0;
  Int n_value;
  Factorization n_factors;
  Int m_value;
  Factorization m_factors;  // empty when m_value == 0
  // primes ell >= 5 dividing both N and M (everything divides 0)
  std::vector<std::uint64_t> common_ells;
};

// Throws BadParameters for odd k, k < 2, (k,eps) = (2,+1), composite p,
// or eps outside {-1,+1}.  N and M are factored through their two integer
// parts, each of which must fit in 64 bits (Overflow otherwise).
ModuliReport congruence_moduli(unsigned k, std::uint64_t p, int eps);

// ceil(k(p+1)/12)
unsigned long sturm_bound(unsigned k, std::uint64_t p);

struct HypothesisReport {
  std::string theorem;  // "main" or "rmain"
  unsigned k = 0;
  std::uint64_t p = 0;
  int eps = 0;
  std::uint64_t ell = 0;
  std::vector<std::pair<std::string, bool>> conditions;
  bool all_hold = false;
};

// Five conditions: ell >= max(5, k-1); p != -1 mod ell; ell | N; ell | M;
// (k, eps) admissible.  ell must be prime (BadParameters).
HypothesisReport check_hypotheses_main(unsigned k, std::uint64_t p, int eps,
                                       std::uint64_t ell);

// Three conditions: ell | N; k != 0 mod ell-1; ell does not divide the
// reduced numerator of B_k/2k.  ell must be a prime >= 5.
HypothesisReport check_hypotheses_rmain(unsigned k, std::uint64_t p, int eps,
                                        std::uint64_t ell);

struct CongruenceCertificate {
  std::string lhs, rhs;
  std::string modulus;           // e.g. "5", "6", "(19, x + 5)"
  unsigned long checked_bound = 0;  // indices n <= checked_bound were compared
  unsigned long sturm = 0;          // 0 when not applicable
  bool theorem_level = false;  // holds and checked_bound >= sturm (sturm known)
  bool holds = false;
  std::optional<unsigned long> first_failure;
};

// Compares a(n) for all n <= bound; congruence mod a composite modulus means
// v_ell(a_f(n) - a_g(n)) >= e for every prime power ell^e dividing it.
// Denominators must be coprime to the modulus (DenominatorNotInvertible);
// bound must be below both precisions (InsufficientPrecision).
CongruenceCertificate verify_congruence(const QSeries<Rat>& f,
                                        const QSeries<Rat>& g,
                                        const Int& modulus,
                                        unsigned long bound,
                                        unsigned long sturm = 0,
                                        std::string lhs = "lhs",
                                        std::string rhs = "rhs");

struct FactorVerdict {
  PrimeIdealFactor factor;
  CongruenceCertificate cert;
};

// Factors the minimal polynomial mod ell and compares the reductions of f
// and eis at every prime-ideal factor separately.
std::vector<FactorVerdict> verify_congruence_numberfield(
    const QSeries<NFElem>& f, const QSeries<Rat>& eis, std::uint64_t ell,
    unsigned long bound, unsigned long sturm = 0, std::string lhs = "lhs",
    std::string rhs = "rhs");

// U_p E_{k,p}^eps = (1 + p^{k-1} + eps p^{k/2}) E_{k,p}^eps mod ell,
// checked coefficient-wise to floor(prec/p) - 1 >= sturm_bound.
// Requires ell | N and ell | M (PreconditionFailed) and
// prec >= p (sturm_bound + 1) (InsufficientPrecision).  The exact rational
// U_p output is also cross-checked against its closed form; a mismatch there
// is an internal error.
CongruenceCertificate up_eigen_congruence(unsigned k, std::uint64_t p, int eps,
                                          std::uint64_t ell, std::size_t prec);

// The closed form alone, over the rationals, no modulus: b(0) = a(0);
// b(n) = lam a(n) for p coprime to n; b(n) = lam a(n) -
// eps sigma_{k-1}(n/p) p^{k/2} (eps+p^{k/2})(eps+p^{k/2-1}) otherwise.
bool up_closed_form_matches(unsigned k, std::uint64_t p, int eps,
                            unsigned long n_limit);

// Level-raising criterion for the weight-k Eisenstein class at p:
// (1 + p^{k-1})^2 = p^{k-2}(1+p)^2 mod ell.  Algebraically the difference
// is M^+ M^-, so this holds exactly when ell divides that product.
bool level_raise_condition(unsigned k, std::uint64_t p, std::uint64_t ell);

struct Construction {
  QSeries<Rat> f;
  CongruenceCertificate cert;
  unsigned a = 0, b = 0, alpha = 0;  // decomposition actually used
  Rat g_constant;                    // constant term of the auxiliary g
};

// Weight decomposition 8a + 12b = k (eps=+1) or 2 + 8a + 12b = k (eps=-1),
// minimizing b then a; g is the matching product of G_4, G_6 at z and pz
// (times the weight-2 level series when eps=-1); f = E_{k,p}^eps +
// (B_k/2k) eps (eps+p^{k/2}) g / a_g(0).  Asserts a_f(0)=0, a_f(1)!=0 and
// certifies f = E mod N.  prec 0 means 2*sturm + 11 (certificate then
// covers n <= 2*sturm + 10).
Construction construct_case_b(unsigned k, std::uint64_t p, int eps,
                              std::size_t prec = 0);

// g = (p^2 G_4(pz) G_6(z) + p^3 G_4(z) G_6(pz))^alpha with alpha = k/10 or
// (k-2)/10, times the weight-2 level series when eps=-1.
Construction construct_case_c(unsigned k, std::uint64_t p, int eps,
                              std::size_t prec = 0);

struct NewformFixture {
  std::string label;
  unsigned k = 0;
  std::uint64_t p = 0;
  int al_sign = 0;
  FieldPtr field;
  QSeries<NFElem> coeffs;  // index 0 holds 0; printed a(n) at n >= 1
};

NewformFixture fixture_from_json(const nlohmann::json& j);
NewformFixture load_fixture(const std::string& path);

// Degree-1 fixtures viewed over the rationals (BadParameters otherwise).
QSeries<Rat> fixture_to_rational(const NewformFixture& fx);

nlohmann::json moduli_to_json(const ModuliReport& r);
nlohmann::json hypotheses_to_json(const HypothesisReport& r);
nlohmann::json certificate_to_json(const CongruenceCertificate& c);
nlohmann::json factor_verdicts_to_json(const std::vector<FactorVerdict>& v);

}  // namespace congrlab
