#pragma once
// Number fields Q[x]/(m(x)) of degree <= 4 and reduction of their elements
// modulo prime-ideal factors (represented by irreducible factors of m mod l).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "congrlab/exact.hpp"

namespace congrlab {

// Polynomial over F_ell, coefficients ascending, normalized (no leading 0).
struct FpPoly {
  std::uint64_t ell = 0;
  std::vector<std::uint64_t> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool operator==(const FpPoly&) const = default;
  std::string str() const;  // e.g. "x^2 + 3x + 4"
};

// One irreducible factor of the minimal polynomial mod ell.
struct PrimeIdealFactor {
  std::uint64_t ell = 0;
  FpPoly g;             // monic irreducible
  int residue_degree = 0;
  int multiplicity = 0;
};

struct NumberField {
  std::vector<Int> minpoly;  // monic, ascending, degree 1..4

  int degree() const { return static_cast<int>(minpoly.size()) - 1; }
  bool same(const NumberField& o) const { return minpoly == o.minpoly; }
};

using FieldPtr = std::shared_ptr<const NumberField>;

FieldPtr make_field(std::vector<Int> minpoly);  // validates monic, degree 1..4

// Element c0 + c1*a + ... of Q[x]/(m(x)); arithmetic reduces mod m.
struct NFElem {
  FieldPtr field;
  std::vector<Rat> c;  // size == degree of the field

  static NFElem from_rat(const FieldPtr& f, const Rat& v);
  bool is_zero() const;
  bool operator==(const NFElem&) const;
};

NFElem nf_add(const NFElem& a, const NFElem& b);
NFElem nf_sub(const NFElem& a, const NFElem& b);
NFElem nf_mul(const NFElem& a, const NFElem& b);
NFElem nf_scale(const Rat& s, const NFElem& a);
NFElem nf_neg(const NFElem& a);

// Residue of an element in F_ell[x]/(g): value has degree < deg g.
struct ResidueElement {
  std::uint64_t ell = 0;
  FpPoly modulus;  // the factor g
  FpPoly value;
};

// Factor a monic integral minpoly of degree <= 4 modulo a prime ell:
// exhaustive root search for linear factors, then trial division by monic
// quadratics.  Result sorted by (degree, coefficients); multiplicities
// recorded.  Throws UnsupportedDegree for degree > 4, BadParameters for a
// non-monic polynomial or non-prime ell.
std::vector<PrimeIdealFactor> factor_minpoly_mod(const std::vector<Int>& minpoly,
                                                 std::uint64_t ell);

// Reduce e modulo the prime ideal (ell, g(a)); every denominator must be
// invertible mod ell (else DenominatorNotInvertible).
ResidueElement reduce_element(const NFElem& e, const PrimeIdealFactor& P);

// Residue arithmetic inside one F_ell[x]/(g); MismatchedField when the
// residue fields differ.
ResidueElement residue_add(const ResidueElement& a, const ResidueElement& b);
ResidueElement residue_mul(const ResidueElement& a, const ResidueElement& b);
bool residue_equal(const ResidueElement& a, const ResidueElement& b);

// ---------- F_ell[x] helpers (exposed for tests) ----------

FpPoly fp_normalize(FpPoly p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_mod(const FpPoly& a, const FpPoly& g);  // remainder, g monic
std::uint64_t fp_eval(const FpPoly& p, std::uint64_t x);

}  // namespace congrlab
