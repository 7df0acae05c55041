#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyhilbert/frequency.hpp"

using namespace polyhilbert;

TEST_SUITE("frequency") {

TEST_CASE("parsing keeps a/q exact and rounds decimals to 2^-128") {
  const auto third = Frequency::parse("1/3");
  CHECK(third.num() == 1);
  CHECK(third.den() == 3);
  CHECK_FALSE(third.is_dyadic128());
  CHECK(Frequency::parse("2/6") == third);
  CHECK(Frequency::parse("-0.5") == Frequency::rational(-1, 2));
  CHECK(Frequency::parse("1e-3").is_dyadic128());
  CHECK(Frequency::parse("3") == Frequency::integer(3));
  const auto x = Frequency::parse("0.123");
  // |x - 0.123| <= 2^-129
  const BigInt diff = abs(x.num() * 1000 - 123 * x.den());
  CHECK(diff * (BigInt(1) << 129) <= 1000 * x.den());
  CHECK_THROWS(Frequency::parse("abc"));
  CHECK_THROWS(Frequency::parse("1/0"));
}

TEST_CASE("fixed point and exact decimal strings") {
  CHECK(Frequency::rational(1, 2).fixed128() == (static_cast<u128>(1) << 127));
  CHECK(Frequency::rational(-1, 4).fixed128() == (static_cast<u128>(3) << 126));
  CHECK(Frequency::rational(3, 8).exact_string() == "0.375");
  CHECK(Frequency::rational(1, 3).exact_string() == "1/3");
  CHECK(Frequency::from_double(0.1).exact_string() == "0.1000000000000000055511151231257827021181583404541015625");
}

TEST_CASE("long double conversion keeps tiny fractions") {
  const Frequency tiny(BigInt(1), BigInt(1) << 120);
  CHECK(tiny.to_long_double() == doctest::Approx(std::ldexp(1.0, -120)).epsilon(1e-15));
  CHECK(Frequency::rational(7, 3).to_double() == doctest::Approx(7.0 / 3));
}

TEST_CASE("unit phase matches high-precision trigonometry") {
  std::mt19937_64 rng(1);
  double worst = 0;
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t f = rng();
    const oracle::Float50 x = oracle::Float50(f) / oracle::Float50(std::ldexp(1.0L, 64));
    const auto ref = oracle::cis(x, +1);
    const auto got = unit_phase(f);
    worst = std::max(worst, std::abs(std::complex<double>(static_cast<double>(ref.real()), static_cast<double>(ref.imag())) - got));
  }
  CHECK(worst < 4e-16);
  CHECK(unit_phase(0) == std::complex<double>(1, 0));
  CHECK(unit_phase(std::uint64_t{1} << 63) == std::complex<double>(-1, 0));
}

TEST_CASE("roots of unity") {
  CHECK(root_of_unity(1, 4) == std::complex<double>(0, 1));
  CHECK(std::abs(root_of_unity(1, 3) - std::polar(1.0, 2 * M_PI / 3)) < 1e-15);
  CHECK(root_of_unity(5, 5) == std::complex<double>(1, 0));
  CHECK_THROWS(root_of_unity(0, 0));
}

}  // TEST_SUITE
