#include "congrlab/qseries.hpp"

#include <string>
#include <utility>

namespace congrlab {

ZMod zmod_add(const ZMod& a, const ZMod& b) {
  if (a.m != b.m) throw RingMismatch("Z/m elements with different moduli");
  Int v = a.v + b.v;
  if (v >= a.m) v -= a.m;
  return ZMod(a.m, v);
}

ZMod zmod_sub(const ZMod& a, const ZMod& b) {
  if (a.m != b.m) throw RingMismatch("Z/m elements with different moduli");
  Int v = a.v - b.v;
  if (v < 0) v += a.m;
  return ZMod(a.m, v);
}

ZMod zmod_mul(const ZMod& a, const ZMod& b) {
  if (a.m != b.m) throw RingMismatch("Z/m elements with different moduli");
  return ZMod(a.m, a.v * b.v);
}

// ----- Eisenstein constructors -----

QSeries<Rat> eisenstein_E(unsigned k, std::size_t prec) {
  if (k < 2 || k % 2 != 0) throw BadWeight("E_k needs even k >= 2");
  if (prec == 0) throw BadParameters("series needs positive precision");
  QSeries<Rat> f;
  f.prec = prec;
  f.weight = static_cast<int>(k);
  f.a.reserve(prec);
  f.a.push_back(-bernoulli(k) / make_rat(Int(2 * k), Int(1)));
  for (std::size_t n = 1; n < prec; ++n) f.a.emplace_back(sigma(k - 1, n));
  return f;
}

QSeries<Rat> eisenstein_G(unsigned alpha, std::size_t prec) {
  if (alpha < 2 || alpha % 2 != 0) throw BadWeight("G_a needs even a >= 2");
  if (prec == 0) throw BadParameters("series needs positive precision");
  const Rat scale = Rat(-2 * static_cast<long>(alpha)) / bernoulli(alpha);
  QSeries<Rat> f;
  f.prec = prec;
  f.weight = static_cast<int>(alpha);
  f.a.reserve(prec);
  f.a.emplace_back(1);
  for (std::size_t n = 1; n < prec; ++n)
    f.a.push_back(scale * Rat(sigma(alpha - 1, n)));
  return f;
}

QSeries<Rat> eisenstein_level(unsigned k, std::uint64_t p, int eps,
                              std::size_t prec) {
  if (k < 2 || k % 2 != 0) throw BadWeight("level series needs even k >= 2");
  if (eps != 1 && eps != -1) throw BadParameters("eps must be +1 or -1");
  if (!is_prime_u64(p)) throw BadParameters("level p must be prime");
  if (k == 2 && eps == 1)
    throw BadParameters("weight 2 only supports eps = -1");
  if (prec == 0) throw BadParameters("series needs positive precision");
  const Int pk2 = ipow(Int(p), k / 2);
  QSeries<Rat> f;
  f.prec = prec;
  f.weight = static_cast<int>(k);
  f.a.reserve(prec);
  f.a.push_back(-bernoulli(k) / make_rat(Int(2 * k), Int(1)) *
                Rat(1 + Int(eps) * pk2));
  for (std::size_t n = 1; n < prec; ++n) {
    Rat v(sigma(k - 1, n));
    if (n % p == 0) v += Rat(Int(eps) * pk2) * Rat(sigma(k - 1, n / p));
    f.a.push_back(std::move(v));
  }
  return f;
}

QSeries<Rat> g2_minus(std::uint64_t p, std::size_t prec) {
  if (!is_prime_u64(p)) throw BadParameters("level p must be prime");
  if (prec == 0) throw BadParameters("series needs positive precision");
  QSeries<Rat> f;
  f.prec = prec;
  f.weight = 2;
  f.a.reserve(prec);
  f.a.emplace_back(1 - Int(p));
  for (std::size_t n = 1; n < prec; ++n) {
    Int v = sigma(1, n);
    if (n % p == 0) v -= Int(p) * sigma(1, n / p);
    f.a.push_back(Rat(-24 * v));
  }
  return f;
}

// ----- eta quotients -----

namespace {

// prod_{n >= 1} (1 - q^{delta n}) truncated to prec coefficients.
QSeries<Rat> euler_factor(unsigned delta, std::size_t prec) {
  QSeries<Rat> f;
  f.prec = prec;
  f.a.assign(prec, Rat(0));
  f.a[0] = 1;
  for (std::size_t n = delta; n < prec; n += delta)
    for (std::size_t m = prec - 1; m >= n; --m) f.a[m] -= f.a[m - n];
  return f;
}

}  // namespace

QSeries<Rat> eta_product(
    const std::vector<std::pair<unsigned, int>>& terms, std::size_t prec) {
  if (prec == 0) throw BadParameters("series needs positive precision");
  long num24 = 0;  // 24 * leading q-exponent
  long wt2 = 0;    // 2 * weight
  for (auto [delta, r] : terms) {
    if (delta == 0) throw BadParameters("eta index delta must be positive");
    num24 += static_cast<long>(delta) * r;
    wt2 += r;
  }
  if (num24 % 24 != 0)
    throw FractionalExponent("leading exponent sum(delta r)/24 not integral");
  const long h = num24 / 24;
  if (h < 0) throw BadParameters("negative leading exponent");

  QSeries<Rat> acc;
  acc.prec = prec;
  acc.a.assign(prec, Rat(0));
  acc.a[0] = 1;
  for (auto [delta, r] : terms) {
    if (r == 0) continue;
    QSeries<Rat> base = euler_factor(delta, prec);
    if (r < 0) base = series_inverse_unit(base);
    acc = series_mul(acc, series_pow(base, static_cast<unsigned>(std::abs(r))));
  }
  // shift by q^h
  QSeries<Rat> out;
  out.prec = prec;
  if (wt2 % 2 == 0) out.weight = static_cast<int>(wt2 / 2);
  out.a.assign(prec, Rat(0));
  for (std::size_t n = static_cast<std::size_t>(h); n < prec; ++n)
    out.a[n] = acc.a[n - h];
  return out;
}

// ----- ring changes -----

QSeries<ZMod> change_ring(const QSeries<Rat>& f, const Int& m) {
  if (m < 2) throw BadParameters("modulus must be >= 2");
  QSeries<ZMod> out;
  out.prec = f.prec;
  out.weight = f.weight;
  out.a.reserve(f.prec);
  for (const auto& c : f.a) out.a.emplace_back(m, rat_mod(c, m));
  return out;
}

QSeries<NFElem> to_number_field(const QSeries<Rat>& f, const FieldPtr& field) {
  QSeries<NFElem> out;
  out.prec = f.prec;
  out.weight = f.weight;
  out.a.reserve(f.prec);
  for (const auto& c : f.a) out.a.push_back(NFElem::from_rat(field, c));
  return out;
}

// ----- JSON -----

nlohmann::json json_int(const Int& v) {
  if (v.fits_slong_p()) return static_cast<long>(v.get_si());
  return v.get_str();
}

Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError("bad integer literal: " + j.get<std::string>());
    }
  }
  throw ParseError("expected an integer (number or decimal string)");
}

Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<long>()));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw ParseError("expected a rational (integer or \"num/den\" string)");
}

namespace {

void put_common(nlohmann::json& j, std::size_t prec,
                const std::optional<int>& weight) {
  j["prec"] = prec;
  if (weight) j["weight"] = *weight;
}

std::pair<std::size_t, std::optional<int>> get_common(
    const nlohmann::json& j) {
  if (!j.contains("prec") || !j.contains("coeffs"))
    throw ParseError("series JSON needs prec and coeffs");
  std::size_t prec = j.at("prec").get<std::size_t>();
  if (prec == 0 || j.at("coeffs").size() != prec)
    throw ParseError("coeffs length disagrees with prec");
  std::optional<int> weight;
  if (j.contains("weight")) weight = j.at("weight").get<int>();
  return {prec, weight};
}

}  // namespace

nlohmann::json series_to_json(const QSeries<Rat>& f) {
  nlohmann::json j;
  j["ring"] = "rational";
  put_common(j, f.prec, f.weight);
  auto& c = j["coeffs"] = nlohmann::json::array();
  for (const auto& v : f.a) c.push_back(rat_to_string(v));
  return j;
}

nlohmann::json series_to_json(const QSeries<ZMod>& f) {
  nlohmann::json j;
  j["ring"] = "integers_mod";
  j["modulus"] = json_int(f.a[0].m);
  put_common(j, f.prec, f.weight);
  auto& c = j["coeffs"] = nlohmann::json::array();
  for (const auto& v : f.a) c.push_back(json_int(v.v));
  return j;
}

nlohmann::json series_to_json(const QSeries<NFElem>& f) {
  nlohmann::json j;
  j["ring"] = "number_field";
  auto& m = j["minpoly"] = nlohmann::json::array();
  for (const auto& v : f.a[0].field->minpoly) m.push_back(rat_to_string(v));
  put_common(j, f.prec, f.weight);
  auto& c = j["coeffs"] = nlohmann::json::array();
  for (const auto& v : f.a) {
    nlohmann::json e = nlohmann::json::array();
    for (const auto& x : v.c) e.push_back(rat_to_string(x));
    c.push_back(std::move(e));
  }
  return j;
}

QSeries<Rat> series_rat_from_json(const nlohmann::json& j) {
  if (j.value("ring", "") != "rational")
    throw ParseError("expected ring \"rational\"");
  auto [prec, weight] = get_common(j);
  QSeries<Rat> f;
  f.prec = prec;
  f.weight = weight;
  f.a.reserve(prec);
  for (const auto& v : j.at("coeffs")) f.a.push_back(rat_from_json(v));
  return f;
}

QSeries<ZMod> series_zmod_from_json(const nlohmann::json& j) {
  if (j.value("ring", "") != "integers_mod")
    throw ParseError("expected ring \"integers_mod\"");
  if (!j.contains("modulus")) throw ParseError("integers_mod needs modulus");
  Int m = int_from_json(j.at("modulus"));
  if (m < 2) throw ParseError("modulus must be >= 2");
  auto [prec, weight] = get_common(j);
  QSeries<ZMod> f;
  f.prec = prec;
  f.weight = weight;
  f.a.reserve(prec);
  for (const auto& v : j.at("coeffs")) f.a.emplace_back(m, int_from_json(v));
  return f;
}

QSeries<NFElem> series_nf_from_json(const nlohmann::json& j) {
  if (j.value("ring", "") != "number_field")
    throw ParseError("expected ring \"number_field\"");
  if (!j.contains("minpoly")) throw ParseError("number_field needs minpoly");
  std::vector<Int> mp;
  for (const auto& v : j.at("minpoly")) mp.push_back(int_from_json(v));
  FieldPtr field = make_field(std::move(mp));
  auto [prec, weight] = get_common(j);
  QSeries<NFElem> f;
  f.prec = prec;
  f.weight = weight;
  f.a.reserve(prec);
  for (const auto& v : j.at("coeffs")) {
    if (!v.is_array() || v.size() > static_cast<std::size_t>(field->degree()))
      throw ParseError("coefficient vector exceeds field degree");
    NFElem e;
    e.field = field;
    e.c.assign(field->degree(), Rat(0));
    for (std::size_t i = 0; i < v.size(); ++i) e.c[i] = rat_from_json(v[i]);
    f.a.push_back(std::move(e));
  }
  return f;
}

}  // namespace congrlab
