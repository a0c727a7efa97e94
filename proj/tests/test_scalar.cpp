#include <doctest.h>

#include <random>

#include "fibset/scalar.hpp"

using namespace fibset;

namespace {

LaurentScalar x(std::uint32_t p) { return LaurentScalar::variable(p); }

LaurentScalar monomial(long num, long den, Monomial m) { return LaurentScalar(Rational(num, den), std::move(m)); }

LaurentScalar random_scalar(std::mt19937_64& rng) {
  LaurentScalar out;
  const int terms = static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (std::uint32_t p : {2U, 3U, 5U}) {
      const int e = static_cast<int>(rng() % 5) - 2;
      if (e != 0) m.emplace_back(p, e);
    }
    out += monomial(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 4) + 1, m);
  }
  return out;
}

}  // namespace

TEST_CASE("rationals are reduced") {
  CHECK(Rational(6, 4).to_string() == "3/2");
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(4).to_string() == "4/1");
  CHECK(Rational(4).pretty() == "4");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK_THROWS_AS(Rational(1, 0), ScalarError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ScalarError);
  CHECK_THROWS_AS(Rational::parse("abc"), ScalarError);
  CHECK_THROWS_AS(Rational(0).inverse(), ScalarError);
  CHECK(Rational(2, 3).inverse() == Rational(3, 2));
  CHECK(Rational(2).pow(-2) == Rational(1, 4));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  // no overflow on large products
  Rational big(1);
  for (int k = 0; k < 40; ++k) big *= Rational(1000003);
  CHECK(big * big.inverse() == Rational(1));
}

TEST_CASE("ell on integers") {
  for (const auto& ell : {EllMap::identity(), EllMap::one(), EllMap::generic()}) CHECK(ell_eval(ell, 1) == LaurentScalar::one());
  CHECK(ell_eval(EllMap::identity(), 12) == LaurentScalar(12));
  CHECK(ell_eval(EllMap::one(), 12) == LaurentScalar(1));
  CHECK(ell_eval(EllMap::generic(), 12) == x(2) * x(2) * x(3));
  CHECK(ell_eval(EllMap::generic(), 12).to_string() == "x2^2*x3");
  CHECK_THROWS_AS(ell_eval(EllMap::generic(), 0), ScalarError);
  CHECK(ell_value<Rational>(EllMap::identity(), 6) == Rational(6));
  CHECK_THROWS_AS(ell_value<Rational>(EllMap::generic(), 2), ScalarError);

  auto explicit_ell = EllMap::explicit_values({{2, LaurentScalar(Rational(-1))}});
  CHECK(ell_eval(explicit_ell, 4) == LaurentScalar(1));
  CHECK(ell_eval(explicit_ell, 6) == LaurentScalar(-1) * x(3));
  CHECK_THROWS_AS(EllMap::explicit_values({{2, LaurentScalar(1) + x(2)}}), ScalarError);
  CHECK_THROWS_AS(EllMap::explicit_values({{4, LaurentScalar(1)}}), ScalarError);
  CHECK_THROWS_AS(EllMap::parse("sometimes"), ScalarError);
}

TEST_CASE("ell is multiplicative and generic ell specializes to n") {
  std::map<std::uint32_t, Rational> to_q;
  for (std::uint32_t p : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U, 41U, 43U, 47U, 53U, 59U, 61U, 67U,
                          71U, 73U, 79U, 83U, 89U, 97U})
    to_q.emplace(p, Rational(static_cast<long>(p)));
  for (const auto& ell : {EllMap::identity(), EllMap::one(), EllMap::generic()})
    for (std::uint64_t m = 1; m <= 100; ++m)
      for (std::uint64_t n = 1; n <= 100; ++n) REQUIRE(ell_eval(ell, m * n) == ell_eval(ell, m) * ell_eval(ell, n));
  for (std::uint64_t n = 1; n <= 100; ++n)
    CHECK(specialize(ell_eval(EllMap::generic(), n), to_q) == Rational(static_cast<long>(n)));
}

TEST_CASE("specialization") {
  CHECK(specialize(x(2) * x(2) * x(3), {{2, Rational(2)}, {3, Rational(3)}}) == Rational(12));
  CHECK(specialize(LaurentScalar(1) + x(2), {{2, Rational(1)}}) == Rational(2));
  CHECK(specialize(x(2).inverse(), {{2, Rational(2)}}) == Rational(1, 2));
  CHECK_THROWS_WITH_AS(specialize(x(3), {{2, Rational(2)}}), doctest::Contains("3"), ScalarError);
  CHECK_THROWS_AS(specialize(x(2), {{2, Rational(0)}}), ScalarError);
  CHECK(specialize_partial(x(2) * x(3), {{2, Rational(5)}}) == LaurentScalar(5) * x(3));

  std::mt19937_64 rng(7);
  const std::map<std::uint32_t, Rational> at{{2, Rational(3, 2)}, {3, Rational(-2)}, {5, Rational(7)}};
  for (int t = 0; t < 300; ++t) {
    auto a = random_scalar(rng), b = random_scalar(rng);
    CHECK(specialize(a + b, at) == specialize(a, at) + specialize(b, at));
    CHECK(specialize(a * b, at) == specialize(a, at) * specialize(b, at));
  }
}

TEST_CASE("Laurent units and inversion") {
  CHECK(LaurentScalar(1).inverse() == LaurentScalar(1));
  const auto three_x2 = LaurentScalar(3) * x(2);
  CHECK(three_x2.inverse() == monomial(1, 3, {{2, -1}}));
  CHECK(three_x2 * three_x2.inverse() == LaurentScalar::one());
  CHECK_THROWS_AS((LaurentScalar(1) + x(2)).inverse(), ScalarError);
  CHECK_THROWS_AS(LaurentScalar::zero().inverse(), ScalarError);
  CHECK(x(2).is_unit());
  CHECK_FALSE((LaurentScalar(1) + x(2)).is_unit());
  CHECK_FALSE(LaurentScalar::zero().is_unit());
}

TEST_CASE("Laurent ring axioms on random elements") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    auto a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK((a + (-a)).terms().empty());
    CHECK(a * LaurentScalar::one() == a);
  }
  CHECK((x(2) - x(2)) == LaurentScalar::zero());
}

TEST_CASE("scalar documents") {
  CHECK(to_json(Rational(3, 6)) == "1/2");
  const auto s = monomial(1, 2, {{2, 1}}) + LaurentScalar(Rational(-3)) * x(3).inverse();
  const auto j = to_json(s);
  CHECK(laurent_from_json(j) == s);
  CHECK(j.dump() == R"([{"coeff":"1/2","exps":{"2":1}},{"coeff":"-3/1","exps":{"3":-1}}])");
  CHECK(ell_from_json(to_json(EllMap::generic())).kind() == EllMap::Kind::generic);
  auto e = EllMap::explicit_values({{2, LaurentScalar(5)}});
  CHECK(ell_eval(ell_from_json(to_json(e)), 2) == LaurentScalar(5));
}
