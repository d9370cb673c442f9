#include "congrlab/qseries.hpp"

#include <cstdint>
#include <vector>

#include "doctest.h"

using namespace congrlab;

namespace {

// tau(1..11) and tau(30), long since tabulated.
const std::vector<long> kTau = {1,       -24,     252,  -1472, 4830,  -6048,
                                -16744,  84480,   -113643, -115920, 534612};
constexpr long kTau30 = -29211840;

QSeries<Rat> delta_from_g4_g6(std::size_t prec) {
  auto num = series_sub(series_pow(eisenstein_G(4, prec), 3),
                        series_pow(eisenstein_G(6, prec), 2));
  return series_scale(make_rat(1, 1728), num);
}

}  // namespace

TEST_SUITE("qseries") {

TEST_CASE("Eisenstein constructors") {
  auto e12 = eisenstein_E(12, 8);
  CHECK(e12.at(0) == make_rat(691, 65520));  // -B_12/24
  CHECK(e12.at(1) == 1);
  CHECK(e12.at(2) == 2049);   // sigma_11(2)
  CHECK(e12.at(6) == Rat("362976252"));
  CHECK(e12.weight == 12);

  auto g4 = eisenstein_G(4, 4);
  CHECK(g4.at(0) == 1);
  CHECK(g4.at(1) == 240);
  CHECK(g4.at(2) == 2160);
  auto g6 = eisenstein_G(6, 3);
  CHECK(g6.at(1) == -504);
  auto g2 = eisenstein_G(2, 4);
  CHECK(g2.at(1) == -24);
  CHECK(g2.at(3) == -96);

  CHECK_THROWS_AS(eisenstein_E(7, 5), BadWeight);
  CHECK_THROWS_AS(eisenstein_E(0, 5), BadWeight);
  CHECK_THROWS_AS(eisenstein_G(4, 0), BadParameters);
}

TEST_CASE("level Eisenstein series") {
  auto em = eisenstein_level(6, 11, -1, 12);
  CHECK(em.at(0) == make_rat(95, 36));  // (B_6/12)(1331-1) = 1330/504
  CHECK(em.at(1) == 1);
  CHECK(em.at(11) == 159721);  // sigma_5(11) - 11^3
  CHECK(em.weight == 6);

  auto ep = eisenstein_level(6, 11, 1, 12);
  // Constant term is -(B_6/12)(1 + 11^3) = -1332/504 = -37/14.
  CHECK(ep.at(0) == make_rat(-37, 14));
  CHECK(ep.at(11) == 161052 + 1331);

  SUBCASE("agrees with E_k + eps p^{k/2} V_p(E_k)") {
    for (int eps : {1, -1}) {
      auto direct = eisenstein_level(8, 3, eps, 30);
      auto ek = eisenstein_E(8, 30);
      auto built = series_add(
          ek, series_scale(Rat(eps * 81), level_raise_V(3, ek)));
      CHECK(series_equal(direct, built));
    }
  }
  SUBCASE("weight 2") {
    auto g2m = g2_minus(11, 23);
    CHECK(g2m.at(0) == -10);
    CHECK(g2m.at(1) == -24);
    CHECK(g2m.at(11) == -24 * (12 - 11));
    CHECK(g2m.weight == 2);
    auto g2 = eisenstein_G(2, 23);
    auto built = series_sub(g2, series_scale(Rat(11), level_raise_V(11, g2)));
    CHECK(series_equal(g2m, built));
    CHECK_THROWS_AS(eisenstein_level(2, 11, 1, 5), BadParameters);
    CHECK(eisenstein_level(2, 11, -1, 5).at(0) ==
          -bernoulli(2) / Rat(4) * Rat(1 - 11));
  }
  CHECK_THROWS_AS(eisenstein_level(6, 10, 1, 5), BadParameters);  // p not prime
  CHECK_THROWS_AS(eisenstein_level(6, 11, 2, 5), BadParameters);
}

TEST_CASE("series arithmetic") {
  // (sum sigma_3(n) q^n)^2: q^2 coefficient is 1, q^3 coefficient is 18.
  QSeries<Rat> f;
  f.prec = 8;
  f.a.assign(8, Rat(0));
  for (std::size_t n = 1; n < 8; ++n) f.a[n] = Rat(sigma(3, n));
  auto sq = series_pow(f, 2);
  CHECK(sq.at(0) == 0);
  CHECK(sq.at(1) == 0);
  CHECK(sq.at(2) == 1);
  CHECK(sq.at(3) == 18);

  SUBCASE("multiplication matches a direct convolution") {
    auto g4 = eisenstein_G(4, 20);
    auto g6 = eisenstein_G(6, 20);
    auto prod = series_mul(g4, g6);
    CHECK(prod.weight == 10);
    for (std::size_t n = 0; n < 20; ++n) {
      Rat s(0);
      for (std::size_t i = 0; i <= n; ++i) s += g4.at(i) * g6.at(n - i);
      CHECK(prod.at(n) == s);
    }
  }
  SUBCASE("powers multiply weights, pow 0 gives 1") {
    auto g4 = eisenstein_G(4, 6);
    CHECK(series_pow(g4, 3).weight == 12);
    auto one = series_pow(g4, 0);
    CHECK(one.at(0) == 1);
    CHECK(one.at(3) == 0);
    CHECK(one.weight == 0);
  }
  SUBCASE("inverse of a unit") {
    auto g4 = eisenstein_G(4, 12);
    auto inv = series_inverse_unit(g4);
    CHECK(series_equal(series_mul(g4, inv), series_one(g4)));
    CHECK(inv.weight == -4);
  }
  SUBCASE("addition checks weights") {
    auto g4 = eisenstein_G(4, 6);
    auto g6 = eisenstein_G(6, 6);
    CHECK_THROWS_AS(series_add(g4, g6), BadWeight);
    QSeries<Rat> anon = g6;
    anon.weight.reset();
    CHECK(series_add(g4, anon).weight == 4);
  }
  SUBCASE("precision truncates to the shorter operand") {
    auto a = eisenstein_G(4, 10);
    auto b = eisenstein_G(4, 7);
    CHECK(series_add(a, b).prec == 7);
    CHECK(series_mul(a, b).prec == 7);
    CHECK_THROWS_AS(a.at(10), InsufficientPrecision);
  }
}

TEST_CASE("discriminant form two ways and the 691 congruence") {
  auto delta = delta_from_g4_g6(31);
  CHECK(delta.weight == 12);
  CHECK(delta.at(0) == 0);
  for (std::size_t n = 1; n <= kTau.size(); ++n)
    CHECK(delta.at(n) == kTau[n - 1]);
  CHECK(delta.at(30) == kTau30);

  auto eta24 = eta_product({{1, 24}}, 31);
  CHECK(eta24.weight == 12);
  CHECK(series_equal(delta, eta24));

  // Ramanujan: tau(n) = sigma_11(n) mod 691, constant terms included
  // (691 divides the numerator of -B_12/24).
  auto lhs = change_ring(delta, Int(691));
  auto rhs = change_ring(eisenstein_E(12, 31), Int(691));
  CHECK(series_equal(lhs, rhs));
}

TEST_CASE("eta quotients") {
  // eta(z)^8 eta(2z)^8, the weight-8 level-2 cusp form.
  auto d82 = eta_product({{1, 8}, {2, 8}}, 9);
  CHECK(d82.weight == 8);
  const std::vector<long> expect = {0, 1, -8, 12, 64, -210, -96, 1016, -512};
  for (std::size_t n = 0; n < expect.size(); ++n)
    CHECK(d82.at(n) == expect[n]);

  // Against the level series: both sides reduced mod 17 agree.
  auto lhs = change_ring(d82, Int(17));
  auto rhs = change_ring(eisenstein_level(8, 2, 1, 9), Int(17));
  CHECK(series_equal(lhs, rhs));

  SUBCASE("negative exponents: eta(2z)^{48}/eta(z)^{24} has integer leading power") {
    auto h = eta_product({{2, 48}, {1, -24}}, 6);
    CHECK(h.weight == 12);
    CHECK(h.at(0) == 0);
    CHECK(h.at(2) == 0);
    CHECK(h.at(3) == 1);  // leading power q^{(2*48-24)/24} = q^3
  }
  CHECK_THROWS_AS(eta_product({{1, 1}}, 5), FractionalExponent);
  CHECK_THROWS_AS(eta_product({{1, -24}}, 5), BadParameters);  // q^{-1}
  CHECK_THROWS_AS(eta_product({{0, 24}}, 5), BadParameters);
}

TEST_CASE("V and U operators") {
  auto g4 = eisenstein_G(4, 10);
  auto v3 = level_raise_V(3, g4);
  CHECK(v3.prec == 30);
  CHECK(v3.at(0) == 1);
  CHECK(v3.at(3) == 240);
  CHECK(v3.at(4) == 0);
  CHECK(v3.at(27) == g4.at(9));
  CHECK(series_equal(hecke_U(3, v3), g4));  // U_p V_p = id

  auto u2 = hecke_U(2, g4);
  CHECK(u2.prec == 5);
  CHECK(u2.at(1) == 2160);  // sigma_3(2) * 240
  CHECK_THROWS_AS(hecke_U(3, eisenstein_G(4, 2)), InsufficientPrecision);
}

TEST_CASE("Hecke T_q") {
  SUBCASE("Eisenstein eigenvalue 1 + q^{k-1}") {
    auto e12 = eisenstein_E(12, 50);
    for (std::uint64_t q : {2, 3, 5}) {
      auto t = hecke_T(q, 12, e12);
      auto scaled = series_scale(Rat(1 + ipow(Int(q), 11)), e12);
      scaled.prec = t.prec;
      scaled.a.resize(t.prec);
      CHECK(series_equal(t, scaled));
    }
  }
  SUBCASE("operators commute") {
    auto delta = delta_from_g4_g6(60);
    auto a = hecke_T(2, 12, hecke_T(3, 12, delta));
    auto b = hecke_T(3, 12, hecke_T(2, 12, delta));
    CHECK(series_equal(a, b));
    CHECK(a.prec == 10);
    // tau is multiplicative with the standard Hecke recursion, so Delta is
    // an eigenform: T_2 Delta = tau(2) Delta.
    auto t2 = hecke_T(2, 12, delta);
    auto scaled = series_scale(Rat(-24), delta);
    scaled.prec = t2.prec;
    scaled.a.resize(t2.prec);
    CHECK(series_equal(t2, scaled));
  }
  SUBCASE("reduction commutes with T_q") {
    auto e12 = eisenstein_E(12, 40);
    auto lhs = hecke_T(3, 12, change_ring(e12, Int(691)));
    auto rhs = change_ring(hecke_T(3, 12, e12), Int(691));
    CHECK(series_equal(lhs, rhs));
  }
  auto e12 = eisenstein_E(12, 10);
  CHECK_THROWS_AS(hecke_T(4, 12, e12), BadParameters);
  CHECK_THROWS_AS(hecke_T(2, 10, e12), BadWeight);
  QSeries<Rat> anon = e12;
  anon.weight.reset();
  CHECK_THROWS_AS(hecke_T(2, 12, anon), BadWeight);
}

TEST_CASE("ring changes") {
  auto e4 = eisenstein_E(4, 6);
  auto m = change_ring(e4, Int(7));
  CHECK(m.a[0].m == 7);
  CHECK(m.at(0).v == rat_mod(make_rat(1, 240), Int(7)));
  CHECK(m.at(3).v == sigma(3, 3) % 7);
  // 1/240 is not 5-adically integral.
  CHECK_THROWS_AS(change_ring(e4, Int(5)), DenominatorNotInvertible);
  CHECK_THROWS_AS(change_ring(e4, Int(1)), BadParameters);

  SUBCASE("mixed moduli refuse to combine") {
    auto a = change_ring(eisenstein_G(4, 5), Int(7));
    auto b = change_ring(eisenstein_G(4, 5), Int(11));
    CHECK_THROWS_AS(series_add(a, b), RingMismatch);
  }
  SUBCASE("number field embedding") {
    auto F = make_field({188, -90, 0, 1});
    auto nf = to_number_field(eisenstein_G(4, 5), F);
    CHECK(nf.at(1) == NFElem::from_rat(F, Rat(240)));
    auto sq = series_mul(nf, nf);
    CHECK(sq.at(1) == NFElem::from_rat(F, Rat(480)));
  }
}

TEST_CASE("JSON round trips") {
  SUBCASE("rational") {
    auto e6 = eisenstein_E(6, 7);
    auto j = series_to_json(e6);
    CHECK(j["ring"] == "rational");
    CHECK(j["coeffs"][0] == "-1/504");
    auto back = series_rat_from_json(j);
    CHECK(series_equal(e6, back));
    CHECK(back.weight == 6);
  }
  SUBCASE("integers mod m, including values beyond 64 bits") {
    Int big = ipow(Int(10), 30) + 57;
    QSeries<Rat> f;
    f.prec = 3;
    f.a = {Rat(0), Rat(ipow(Int(10), 25)), Rat(-1)};
    auto zm = change_ring(f, big);
    auto j = series_to_json(zm);
    CHECK(j["modulus"].is_string());
    auto back = series_zmod_from_json(j);
    CHECK(series_equal(zm, back));
  }
  SUBCASE("number field") {
    auto F = make_field({188, -90, 0, 1});
    QSeries<NFElem> f;
    f.prec = 2;
    f.weight = 6;
    f.a = {NFElem::from_rat(F, Rat(1)),
           NFElem{F, {make_rat(64, 3), make_rat(-5, 3), make_rat(-1, 6)}}};
    auto j = series_to_json(f);
    auto back = series_nf_from_json(j);
    CHECK(series_equal(f, back));
    CHECK(back.at(1).c[2] == make_rat(-1, 6));
  }
  SUBCASE("malformed input") {
    nlohmann::json j;
    j["ring"] = "rational";
    j["prec"] = 3;
    j["coeffs"] = {"1", "2"};
    CHECK_THROWS_AS(series_rat_from_json(j), ParseError);
    j["coeffs"] = {"1", "x", "3"};
    CHECK_THROWS_AS(series_rat_from_json(j), ParseError);
    j["ring"] = "integers_mod";
    CHECK_THROWS_AS(series_rat_from_json(j), ParseError);
  }
}

}  // TEST_SUITE
