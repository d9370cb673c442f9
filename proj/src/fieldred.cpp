#include "congrlab/fieldred.hpp"

#include <algorithm>

namespace congrlab {

std::string FpPoly::str() const {
  if (c.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    std::uint64_t v = c[i];
    if (v == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || v != 1) out += std::to_string(v);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

FpPoly fp_normalize(FpPoly p) {
  for (auto& v : p.c) v %= p.ell;
  while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
  return p;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  if (a.ell != b.ell) throw MismatchedField("fp_mul across characteristics");
  FpPoly out{a.ell, {}};
  if (a.c.empty() || b.c.empty()) return out;
  out.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      out.c[i + j] = (out.c[i + j] + mulmod_u64(a.c[i], b.c[j], a.ell)) % a.ell;
  return fp_normalize(out);
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& g) {
  if (a.ell != g.ell) throw MismatchedField("fp_mod across characteristics");
  if (g.c.empty()) throw BadParameters("division by zero polynomial");
  FpPoly r = fp_normalize(a);
  const std::uint64_t ell = g.ell;
  const int dg = g.degree();
  // g is monic in all uses here; enforce to keep the division exact.
  if (g.c.back() != 1) throw BadParameters("fp_mod expects a monic divisor");
  while (r.degree() >= dg) {
    std::uint64_t lead = r.c.back();
    int shift = r.degree() - dg;
    for (int i = 0; i <= dg; ++i) {
      std::uint64_t sub = mulmod_u64(lead, g.c[i], ell);
      std::uint64_t& ri = r.c[i + shift];
      ri = (ri + ell - sub) % ell;
    }
    r = fp_normalize(r);
  }
  return r;
}

std::uint64_t fp_eval(const FpPoly& p, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (int i = p.degree(); i >= 0; --i)
    acc = (mulmod_u64(acc, x % p.ell, p.ell) + p.c[i]) % p.ell;
  return acc;
}

FieldPtr make_field(std::vector<Int> minpoly) {
  if (minpoly.size() < 2 || minpoly.size() > 5)
    throw UnsupportedDegree("number field degree must be 1..4");
  if (minpoly.back() != 1)
    throw BadParameters("minimal polynomial must be monic");
  auto f = std::make_shared<NumberField>();
  f->minpoly = std::move(minpoly);
  return f;
}

NFElem NFElem::from_rat(const FieldPtr& f, const Rat& v) {
  NFElem e;
  e.field = f;
  e.c.assign(f->degree(), Rat(0));
  e.c[0] = v;
  return e;
}

bool NFElem::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Rat& v) { return v == 0; });
}

bool NFElem::operator==(const NFElem& o) const {
  return field->same(*o.field) && c == o.c;
}

namespace {

void check_same_field(const NFElem& a, const NFElem& b) {
  if (!a.field || !b.field || !a.field->same(*b.field))
    throw RingMismatch("number field elements from different fields");
}

}  // namespace

NFElem nf_add(const NFElem& a, const NFElem& b) {
  check_same_field(a, b);
  NFElem out = a;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
  return out;
}

NFElem nf_sub(const NFElem& a, const NFElem& b) {
  check_same_field(a, b);
  NFElem out = a;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] -= b.c[i];
  return out;
}

NFElem nf_neg(const NFElem& a) {
  NFElem out = a;
  for (auto& v : out.c) v = -v;
  return out;
}

NFElem nf_scale(const Rat& s, const NFElem& a) {
  NFElem out = a;
  for (auto& v : out.c) v *= s;
  return out;
}

NFElem nf_mul(const NFElem& a, const NFElem& b) {
  check_same_field(a, b);
  const int d = a.field->degree();
  std::vector<Rat> prod(2 * d - 1, Rat(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) prod[i + j] += a.c[i] * b.c[j];
  // Reduce modulo the monic minpoly: x^d = -(m_0 + m_1 x + ... + m_{d-1}x^{d-1})
  const auto& m = a.field->minpoly;
  for (int i = 2 * d - 2; i >= d; --i) {
    Rat lead = prod[i];
    if (lead == 0) continue;
    prod[i] = 0;
    for (int j = 0; j < d; ++j) prod[i - d + j] -= lead * Rat(m[j]);
  }
  NFElem out;
  out.field = a.field;
  out.c.assign(prod.begin(), prod.begin() + d);
  return out;
}

std::vector<PrimeIdealFactor> factor_minpoly_mod(
    const std::vector<Int>& minpoly, std::uint64_t ell) {
  if (minpoly.size() < 2 || minpoly.size() > 5)
    throw UnsupportedDegree("factor_minpoly_mod supports degree 1..4 only");
  if (minpoly.back() != 1)
    throw BadParameters("minimal polynomial must be monic");
  if (!is_prime_u64(ell)) throw BadParameters("modulus must be prime");

  FpPoly m{ell, {}};
  for (const Int& v : minpoly) {
    Int r = v % Int(static_cast<unsigned long>(ell));
    if (r < 0) r += static_cast<unsigned long>(ell);
    m.c.push_back(r.get_ui());
  }
  m = fp_normalize(m);

  std::vector<FpPoly> found;
  FpPoly rem = m;

  // Linear factors by exhaustive root search, with multiplicity.
  for (std::uint64_t r = 0; r < ell && rem.degree() >= 1; ++r) {
    FpPoly lin{ell, {(ell - r) % ell, 1}};  // x - r
    while (rem.degree() >= 1 && fp_eval(rem, r) == 0) {
      // Exact synthetic division by (x - r).
      std::vector<std::uint64_t> q(rem.degree(), 0);
      std::uint64_t carry = 0;
      for (int i = rem.degree(); i >= 1; --i) {
        carry = (mulmod_u64(carry, r, ell) + rem.c[i]) % ell;
        q[i - 1] = carry;
      }
      rem.c = q;
      rem = fp_normalize(rem);
      found.push_back(lin);
    }
  }

  // Remaining degree 2..4 part: trial division by monic quadratics.
  if (rem.degree() >= 2) {
    for (std::uint64_t b = 0; b < ell && rem.degree() >= 2; ++b) {
      for (std::uint64_t c0 = 0; c0 < ell && rem.degree() >= 2; ++c0) {
        FpPoly quad{ell, {c0, b, 1}};
        // Only genuinely irreducible quadratics can appear now (all roots
        // were stripped), so skip quadratics with a root.
        // (Cheap check: discriminant b^2-4c a square.)
        while (rem.degree() >= 2 && fp_mod(rem, quad).c.empty()) {
          // Long division rem / quad.
          FpPoly q{ell, std::vector<std::uint64_t>(rem.degree() - 1, 0)};
          FpPoly work = rem;
          while (work.degree() >= 2) {
            std::uint64_t lead = work.c.back();
            int shift = work.degree() - 2;
            q.c[shift] = lead;
            for (int i = 0; i <= 2; ++i) {
              std::uint64_t sub = mulmod_u64(lead, quad.c[i], ell);
              work.c[i + shift] = (work.c[i + shift] + ell - sub) % ell;
            }
            work = fp_normalize(work);
          }
          if (!work.c.empty()) break;  // not an exact divisor after all
          bool has_root = false;
          for (std::uint64_t x = 0; x < ell; ++x)
            if (fp_eval(quad, x) == 0) {
              has_root = true;
              break;
            }
          if (has_root) break;  // reducible quadratic; its roots were stripped
          found.push_back(quad);
          rem = fp_normalize(q);
        }
      }
    }
  }
  if (rem.degree() >= 2) found.push_back(rem);  // irreducible cubic/quartic tail
  else if (rem.degree() == 1) found.push_back(rem);

  std::sort(found.begin(), found.end(), [](const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.c < b.c;
  });

  std::vector<PrimeIdealFactor> out;
  for (std::size_t i = 0; i < found.size();) {
    std::size_t j = i;
    while (j < found.size() && found[j] == found[i]) ++j;
    out.push_back(PrimeIdealFactor{ell, found[i], found[i].degree(),
                                   static_cast<int>(j - i)});
    i = j;
  }
  // Sanity: degrees (with multiplicity) add up to deg(m).
  int total = 0;
  for (auto& f : out) total += f.residue_degree * f.multiplicity;
  if (total != m.degree())
    throw BadParameters("internal: factor degrees do not sum to deg(m)");
  return out;
}

ResidueElement reduce_element(const NFElem& e, const PrimeIdealFactor& P) {
  FpPoly poly{P.ell, {}};
  poly.c.reserve(e.c.size());
  for (const Rat& v : e.c) {
    Int r = rat_mod(v, Int(static_cast<unsigned long>(P.ell)));
    poly.c.push_back(r.get_ui());
  }
  ResidueElement out;
  out.ell = P.ell;
  out.modulus = P.g;
  out.value = fp_mod(fp_normalize(poly), P.g);
  return out;
}

namespace {

void check_same_residue_field(const ResidueElement& a,
                              const ResidueElement& b) {
  if (a.ell != b.ell || !(a.modulus == b.modulus))
    throw MismatchedField("residues live in different residue fields");
}

}  // namespace

ResidueElement residue_add(const ResidueElement& a, const ResidueElement& b) {
  check_same_residue_field(a, b);
  FpPoly s{a.ell, {}};
  s.c.assign(std::max(a.value.c.size(), b.value.c.size()), 0);
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    std::uint64_t av = i < a.value.c.size() ? a.value.c[i] : 0;
    std::uint64_t bv = i < b.value.c.size() ? b.value.c[i] : 0;
    s.c[i] = (av + bv) % a.ell;
  }
  ResidueElement out;
  out.ell = a.ell;
  out.modulus = a.modulus;
  out.value = fp_mod(fp_normalize(s), a.modulus);
  return out;
}

ResidueElement residue_mul(const ResidueElement& a, const ResidueElement& b) {
  check_same_residue_field(a, b);
  ResidueElement out;
  out.ell = a.ell;
  out.modulus = a.modulus;
  out.value = fp_mod(fp_mul(a.value, b.value), a.modulus);
  return out;
}

bool residue_equal(const ResidueElement& a, const ResidueElement& b) {
  check_same_residue_field(a, b);
  return a.value == b.value;
}

}  // namespace congrlab
