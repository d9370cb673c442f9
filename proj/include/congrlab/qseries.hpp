#pragma once
// Truncated q-expansions over an exact coefficient ring (Q, Z/m, or a small
// number field) with the Eisenstein constructors and Hecke operators used
// throughout.  A series stores coefficients a(0)..a(prec-1); binary
// operations truncate to the shorter operand.  No floating point anywhere.

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "congrlab/exact.hpp"
#include "congrlab/fieldred.hpp"

namespace congrlab {

// ----- Z/m coefficients (m arbitrary >= 2, not necessarily prime) -----

struct ZMod {
  Int m = 0;  // modulus; 0 only in default-constructed placeholders
  Int v = 0;  // normalized to [0, m)

  ZMod() = default;
  ZMod(Int modulus, Int value) : m(std::move(modulus)) {
    v = value % m;
    if (v < 0) v += m;
  }
  bool operator==(const ZMod&) const = default;
};

ZMod zmod_add(const ZMod& a, const ZMod& b);
ZMod zmod_sub(const ZMod& a, const ZMod& b);
ZMod zmod_mul(const ZMod& a, const ZMod& b);

// ----- ring glue used by the series template -----

inline bool ring_compatible(const Rat&, const Rat&) { return true; }
inline bool ring_compatible(const ZMod& a, const ZMod& b) { return a.m == b.m; }
inline bool ring_compatible(const NFElem& a, const NFElem& b) {
  return a.field && b.field && a.field->same(*b.field);
}

inline Rat ring_zero(const Rat&) { return Rat(0); }
inline ZMod ring_zero(const ZMod& proto) { return ZMod(proto.m, 0); }
inline NFElem ring_zero(const NFElem& proto) {
  return NFElem::from_rat(proto.field, Rat(0));
}

inline Rat ring_from_int(const Rat&, const Int& v) { return Rat(v); }
inline ZMod ring_from_int(const ZMod& proto, const Int& v) {
  return ZMod(proto.m, v);
}
inline NFElem ring_from_int(const NFElem& proto, const Int& v) {
  return NFElem::from_rat(proto.field, Rat(v));
}

inline Rat ring_add(const Rat& a, const Rat& b) { return a + b; }
inline Rat ring_sub(const Rat& a, const Rat& b) { return a - b; }
inline Rat ring_mul(const Rat& a, const Rat& b) { return a * b; }
inline ZMod ring_add(const ZMod& a, const ZMod& b) { return zmod_add(a, b); }
inline ZMod ring_sub(const ZMod& a, const ZMod& b) { return zmod_sub(a, b); }
inline ZMod ring_mul(const ZMod& a, const ZMod& b) { return zmod_mul(a, b); }
inline NFElem ring_add(const NFElem& a, const NFElem& b) { return nf_add(a, b); }
inline NFElem ring_sub(const NFElem& a, const NFElem& b) { return nf_sub(a, b); }
inline NFElem ring_mul(const NFElem& a, const NFElem& b) { return nf_mul(a, b); }

inline bool ring_is_zero(const Rat& a) { return a == 0; }
inline bool ring_is_zero(const ZMod& a) { return a.v == 0; }
inline bool ring_is_zero(const NFElem& a) { return a.is_zero(); }

// ----- the series type -----

template <class T>
struct QSeries {
  std::size_t prec = 0;        // number of known coefficients
  std::optional<int> weight;   // modular weight when tracked
  std::vector<T> a;            // a.size() == prec

  const T& at(std::size_t n) const {
    if (n >= prec)
      throw InsufficientPrecision("coefficient index " + std::to_string(n) +
                                  " beyond precision " + std::to_string(prec));
    return a[n];
  }
};

template <class T>
QSeries<T> make_series(std::vector<T> coeffs, std::optional<int> weight = {}) {
  if (coeffs.empty()) throw BadParameters("series needs positive precision");
  QSeries<T> f;
  f.prec = coeffs.size();
  f.weight = weight;
  f.a = std::move(coeffs);
  return f;
}

namespace detail {

template <class T>
void check_rings(const QSeries<T>& f, const QSeries<T>& g) {
  if (!ring_compatible(f.a[0], g.a[0]))
    throw RingMismatch("series coefficient rings differ");
}

inline std::optional<int> combined_weight_add(std::optional<int> a,
                                              std::optional<int> b) {
  if (a && b) {
    if (*a != *b) throw BadWeight("adding series of different weights");
    return a;
  }
  return a ? a : b;
}

}  // namespace detail

template <class T>
QSeries<T> series_add(const QSeries<T>& f, const QSeries<T>& g) {
  detail::check_rings(f, g);
  QSeries<T> out;
  out.prec = std::min(f.prec, g.prec);
  out.weight = detail::combined_weight_add(f.weight, g.weight);
  out.a.reserve(out.prec);
  for (std::size_t n = 0; n < out.prec; ++n)
    out.a.push_back(ring_add(f.a[n], g.a[n]));
  return out;
}

template <class T>
QSeries<T> series_sub(const QSeries<T>& f, const QSeries<T>& g) {
  detail::check_rings(f, g);
  QSeries<T> out;
  out.prec = std::min(f.prec, g.prec);
  out.weight = detail::combined_weight_add(f.weight, g.weight);
  out.a.reserve(out.prec);
  for (std::size_t n = 0; n < out.prec; ++n)
    out.a.push_back(ring_sub(f.a[n], g.a[n]));
  return out;
}

template <class T>
QSeries<T> series_mul(const QSeries<T>& f, const QSeries<T>& g) {
  detail::check_rings(f, g);
  QSeries<T> out;
  out.prec = std::min(f.prec, g.prec);
  if (f.weight && g.weight) out.weight = *f.weight + *g.weight;
  out.a.assign(out.prec, ring_zero(f.a[0]));
  for (std::size_t i = 0; i < std::min(f.prec, out.prec); ++i) {
    if (ring_is_zero(f.a[i])) continue;
    for (std::size_t j = 0; i + j < out.prec && j < g.prec; ++j)
      out.a[i + j] = ring_add(out.a[i + j], ring_mul(f.a[i], g.a[j]));
  }
  return out;
}

template <class T>
QSeries<T> series_scale(const T& s, const QSeries<T>& f) {
  if (!ring_compatible(s, f.a[0]))
    throw RingMismatch("scalar from a different ring");
  QSeries<T> out = f;
  for (auto& v : out.a) v = ring_mul(s, v);
  return out;
}

template <class T>
QSeries<T> series_one(const QSeries<T>& like) {
  QSeries<T> out;
  out.prec = like.prec;
  out.weight = 0;
  out.a.assign(like.prec, ring_zero(like.a[0]));
  out.a[0] = ring_from_int(like.a[0], 1);
  return out;
}

template <class T>
QSeries<T> series_pow(const QSeries<T>& f, unsigned e) {
  QSeries<T> acc = series_one(f);
  acc.weight = f.weight ? std::optional<int>(0) : std::nullopt;
  QSeries<T> base = f;
  unsigned k = e;
  while (k) {
    if (k & 1) acc = series_mul(acc, base);
    k >>= 1;
    if (k) base = series_mul(base, base);
  }
  if (f.weight) acc.weight = static_cast<int>(e) * *f.weight;
  return acc;
}

inline Rat ring_inverse(const Rat& a) {
  if (a == 0) throw ZeroInput("inverting zero");
  return Rat(1) / a;
}

// Multiplicative inverse of a series whose constant term is a unit
// (used by eta products with negative exponents).
template <class T>
QSeries<T> series_inverse_unit(const QSeries<T>& f) {
  const T inv0 = ring_inverse(f.a[0]);
  QSeries<T> out;
  out.prec = f.prec;
  if (f.weight) out.weight = -*f.weight;
  out.a.assign(f.prec, ring_zero(f.a[0]));
  out.a[0] = inv0;
  for (std::size_t n = 1; n < f.prec; ++n) {
    T s = ring_zero(f.a[0]);
    for (std::size_t i = 1; i <= n && i < f.prec; ++i)
      s = ring_add(s, ring_mul(f.a[i], out.a[n - i]));
    out.a[n] = ring_mul(inv0, ring_sub(ring_zero(s), s));
  }
  return out;
}

template <class T>
bool series_equal(const QSeries<T>& f, const QSeries<T>& g) {
  detail::check_rings(f, g);
  if (f.prec != g.prec) return false;
  for (std::size_t n = 0; n < f.prec; ++n)
    if (!(f.a[n] == g.a[n])) return false;
  return true;
}

// ----- constructors and operators (rational ring) -----

// E_k = -B_k/2k + sum sigma_{k-1}(n) q^n, weight k (k even >= 2).
QSeries<Rat> eisenstein_E(unsigned k, std::size_t prec);

// Normalized G_alpha = 1 - (2 alpha / B_alpha) sum sigma_{alpha-1}(n) q^n.
QSeries<Rat> eisenstein_G(unsigned alpha, std::size_t prec);

// E_{k,p}^eps = E_k + eps p^{k/2} E_k(p z); rejects (k, eps) = (2, +1).
QSeries<Rat> eisenstein_level(unsigned k, std::uint64_t p, int eps,
                              std::size_t prec);

// G_2(z) - p G_2(p z), the weight-2 level-p form with constant term 1 - p.
QSeries<Rat> g2_minus(std::uint64_t p, std::size_t prec);

// eta-quotient prod_delta (q^{delta/24} prod_n (1-q^{delta n}))^{r_delta};
// the total leading exponent sum(delta r_delta)/24 must be a nonnegative
// integer (FractionalExponent / BadParameters otherwise).
QSeries<Rat> eta_product(
    const std::vector<std::pair<unsigned, int>>& terms, std::size_t prec);

// ----- operators generic over the ring -----

// V_p: b(n) = a(n/p) when p | n else 0.  Output precision p * prec(f).
template <class T>
QSeries<T> level_raise_V(std::uint64_t p, const QSeries<T>& f) {
  if (p < 1) throw BadParameters("V_p needs p >= 1");
  QSeries<T> out;
  out.prec = f.prec * p;
  out.weight = f.weight;
  out.a.assign(out.prec, ring_zero(f.a[0]));
  for (std::size_t n = 0; n < f.prec; ++n) out.a[n * p] = f.a[n];
  return out;
}

// U_p: b(n) = a(n p).  Output precision floor(prec / p) (>= 1 required).
template <class T>
QSeries<T> hecke_U(std::uint64_t p, const QSeries<T>& f) {
  if (p < 1) throw BadParameters("U_p needs p >= 1");
  if (f.prec < p)
    throw InsufficientPrecision("U_p needs at least p coefficients");
  QSeries<T> out;
  out.prec = f.prec / p;
  out.weight = f.weight;
  out.a.reserve(out.prec);
  for (std::size_t n = 0; n < out.prec; ++n) out.a.push_back(f.a[n * p]);
  return out;
}

// T_q for prime q not dividing the level:
// b(n) = a(qn) + q^{k-1} a(n/q).  Weight k must be attached and agree.
template <class T>
QSeries<T> hecke_T(std::uint64_t q, unsigned k, const QSeries<T>& f) {
  if (!is_prime_u64(q)) throw BadParameters("T_q needs q prime");
  if (!f.weight) throw BadWeight("T_q needs the weight attached");
  if (*f.weight != static_cast<int>(k))
    throw BadWeight("T_q weight parameter disagrees with the series");
  if (f.prec < q)
    throw InsufficientPrecision("T_q needs at least q coefficients");
  const T qk = ring_from_int(f.a[0], ipow_u64(q, k - 1));
  QSeries<T> out;
  out.prec = f.prec / q;
  out.weight = f.weight;
  out.a.reserve(out.prec);
  for (std::size_t n = 0; n < out.prec; ++n) {
    T v = f.a[n * q];
    if (n % q == 0) v = ring_add(v, ring_mul(qk, f.a[n / q]));
    out.a.push_back(v);
  }
  return out;
}

// ----- ring changes -----

// Reduce a rational series mod m (every denominator must be invertible).
QSeries<ZMod> change_ring(const QSeries<Rat>& f, const Int& m);

// Embed a rational series into a number field.
QSeries<NFElem> to_number_field(const QSeries<Rat>& f, const FieldPtr& field);

// ----- JSON (schema: {ring, modulus?/minpoly?, weight?, prec, coeffs}) -----

// Integers are emitted as JSON numbers when they fit a signed long and as
// decimal strings otherwise; readers accept both forms.  Rationals are
// integers or "num/den" strings.
nlohmann::json json_int(const Int& v);
Int int_from_json(const nlohmann::json& j);
Rat rat_from_json(const nlohmann::json& j);

nlohmann::json series_to_json(const QSeries<Rat>& f);
nlohmann::json series_to_json(const QSeries<ZMod>& f);
nlohmann::json series_to_json(const QSeries<NFElem>& f);

QSeries<Rat> series_rat_from_json(const nlohmann::json& j);
QSeries<ZMod> series_zmod_from_json(const nlohmann::json& j);
QSeries<NFElem> series_nf_from_json(const nlohmann::json& j);

}  // namespace congrlab
