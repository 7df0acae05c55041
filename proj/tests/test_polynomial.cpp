#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyhilbert/polynomial.hpp"

using namespace polyhilbert;

TEST_SUITE("polynomial") {

TEST_CASE("parse reads monomials and merges like terms") {
  CHECK(parse("t1*t2") == Polynomial::monomial(1, 1, 1));
  const auto p = parse("t1^3*t2^2 + t1*t2^5");
  REQUIRE(p.terms().size() == 2);
  CHECK(p.coefficient({3, 2}) == 1);
  CHECK(p.coefficient({1, 5}) == 1);
  CHECK(parse("2*t1^2 - 2*t1^2 + t2") == Polynomial::monomial(1, 0, 1));
  CHECK(parse("-(t1 - 3)*t2") == parse("3*t2 - t1*t2"));
  CHECK(parse("(t1+t2)^2") == parse("t1^2 + 2*t1*t2 + t2^2"));
}

TEST_CASE("parse reports malformed input") {
  CHECK_THROWS_AS(parse("t1 +"), ParseError);
  CHECK_THROWS_AS(parse("1.5*t1"), ParseError);
  CHECK_THROWS_AS(parse("t1^-2"), ParseError);
  CHECK_THROWS_AS(parse("t3"), ParseError);
  try {
    parse("t1 * * t2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("render and parse are inverse on canonical forms") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto p = oracle::random_polynomial(rng, 8, 6);
    CHECK(parse(render(p)) == p);
  }
  CHECK(render(parse("t1^3*t2^2 + t1*t2^5")) == "t1^3*t2^2 + t1*t2^5");
}

TEST_CASE("exact evaluation") {
  CHECK(eval_exact(parse("t1*t2"), -3, 4) == -12);
  CHECK(eval_exact(parse("t1^3*t2^2+t1*t2^5"), 2, 1) == 10);
  CHECK(eval_exact(parse("t1^2*t2"), 10, 10) == 1000);
  // Large arguments stay exact.
  const BigInt big = eval_exact(parse("t1^6*t2^4"), std::int64_t{1} << 20, 3);
  CHECK(big == (BigInt(1) << 120) * 81);
}

TEST_CASE("modular evaluation agrees with exact evaluation") {
  CHECK(eval_mod(parse("t1^2"), 3, 0, 4) == 1);
  CHECK(eval_mod(parse("t1*t2"), 5, 7, 6) == 5);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> t(-1000000, 1000000);
  std::uniform_int_distribution<std::uint64_t> q(1, std::uint64_t{1} << 62);
  for (int i = 0; i < 500; ++i) {
    const auto p = oracle::random_polynomial(rng, 8, 6);
    const auto a = t(rng), b = t(rng);
    const auto m = q(rng);
    BigInt exact = eval_exact(p, a, b) % m;
    if (exact < 0) exact += m;
    CHECK(eval_mod(p, a, b, m) == static_cast<std::uint64_t>(exact));
  }
}

TEST_CASE("evaluation is linear in the coefficients") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto p = oracle::random_polynomial(rng, 6, 5), q = oracle::random_polynomial(rng, 6, 5);
    const std::int64_t a = static_cast<std::int64_t>(rng() % 2001) - 1000, b = static_cast<std::int64_t>(rng() % 2001) - 1000;
    CHECK(eval_exact(p + q, a, b) == eval_exact(p, a, b) + eval_exact(q, a, b));
  }
}

TEST_CASE("shifts expand correctly") {
  const auto p = parse("t1^2*t2^3 - 4*t1*t2 + 7");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const std::int64_t a = static_cast<std::int64_t>(rng() % 41) - 20, b = static_cast<std::int64_t>(rng() % 41) - 20;
    const std::int64_t r = static_cast<std::int64_t>(rng() % 11) - 5;
    CHECK(eval_exact(p.shift_t2(BigInt(r)), a, b) == eval_exact(p, a, b + r));
    CHECK(eval_exact(p.shift_t1(BigInt(r)), a, b) == eval_exact(p, a + r, b));
  }
}

TEST_CASE("coefficient ratio constant") {
  // Oracle: the double sum over ordered pairs, evaluated directly.
  auto ratio_sum = [](const Polynomial& p) {
    double s = 0;
    for (const auto& m : p.terms())
      for (const auto& n : p.terms()) s += std::abs(static_cast<double>(m.coefficient) / static_cast<double>(n.coefficient));
    return static_cast<long>(std::ceil(10 * s - 1e-9));
  };
  for (const char* text : {"t1^2*t2", "t1^2+t2^2", "2*t1^2*t2", "3*t1*t2 - t2^2 + 5*t1"}) {
    const auto p = parse(text);
    CHECK(coefficient_ratio_constant(p) == ratio_sum(p));
  }
  CHECK(coefficient_ratio_constant(parse("t1^2*t2")) == 10);
  CHECK(coefficient_ratio_constant(parse("t1^2+t2^2")) == 40);
  CHECK(coefficient_ratio_constant(parse("2*t1^2*t2")) == 10);
}

TEST_CASE("annihilating t2 values") {
  // (t2 - 100) t1 + (t2 - 100) t2 vanishes identically in t1 at t2 = 100.
  const auto p = parse("(t2 - 100)*t1 + (t2 - 100)*t2");
  const auto roots = annihilating_t2(p);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == 100);
  const BigInt c = coefficient_ratio_constant(p);
  CHECK(c >= 128);  // 2^p > 100
  CHECK(annihilating_t2(parse("t1*t2 + 1")).empty());
}

}  // TEST_SUITE
