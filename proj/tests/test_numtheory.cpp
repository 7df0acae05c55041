#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "polyhilbert/numtheory.hpp"
#include "polyhilbert/report.hpp"

using namespace polyhilbert;

namespace {

// (1/q) sum e^{sign 2 pi i a P / q} over t1 = 1..q, with the residue reduced exactly.
std::complex<double> fiber_oracle(const Polynomial& p, long t2, long a, long q) {
  std::complex<long double> s = 0;
  for (long t1 = 1; t1 <= q; ++t1) {
    BigInt r = (BigInt(a) * eval_exact(p, t1, t2)) % q;
    if (r < 0) r += q;
    s += oracle::cis(oracle::Float50(r) / q, 1);
  }
  return {static_cast<double>(s.real() / q), static_cast<double>(s.imag() / q)};
}

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(POLYHILBERT_FIXTURES) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("numtheory") {

TEST_CASE("fiber sum examples") {
  CHECK(std::abs(gauss_fiber(parse("t1^2"), 5, 1, 2).value) < 1e-15);
  const auto g = gauss_fiber(parse("t1^2*t2"), 1, 1, 4);
  CHECK(std::abs(g.value - std::complex<double>(0.5, 0.5)) < 1e-15);
  CHECK(g.magnitude == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK_THROWS(gauss_fiber(parse("t1"), 1, 1, 0));
  CHECK_THROWS(gauss_fiber(parse("t1"), 1, 2, 4));
}

TEST_CASE("fiber sums match direct summation") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const Polynomial p = oracle::random_polynomial(rng, 4, 4);
    const long q = 1 + static_cast<long>(rng() % 60);
    long a = static_cast<long>(rng() % static_cast<unsigned long>(q));
    while (std::gcd(a, q) != 1) ++a;
    const long t2 = static_cast<long>(rng() % 1000) - 500;
    const auto v = gauss_fiber(p, t2, a, static_cast<std::uint64_t>(q));
    CHECK(std::abs(v.value - fiber_oracle(p, t2, a, q)) < 1e-13);
    CHECK(std::abs(v.value) <= 1 + 1e-12);
    // periodicity and conjugation
    CHECK(std::abs(gauss_fiber(p, t2, a + 3 * q, static_cast<std::uint64_t>(q)).value - v.value) < 1e-15);
    CHECK(std::abs(gauss_fiber(p, t2, -a, static_cast<std::uint64_t>(q)).value - std::conj(v.value)) < 1e-14);
  }
}

TEST_CASE("fiber averages") {
  const Polynomial p = parse("t1^2*t2");
  CHECK(gauss_fiber_average(p, 7, 0, 1).average == 1.0);
  const auto avg = gauss_fiber_average(p, 6, 1, 4);
  double mean = 0;
  for (long t2 = 33; t2 <= 64; ++t2) mean += std::abs(fiber_oracle(p, t2, 1, 4));
  mean /= 32;
  CHECK(avg.fibers == 32);
  CHECK(avg.average < 1);
  CHECK(avg.average == doctest::Approx(mean).epsilon(1e-13));
  // leading coefficient t2 vanishes mod 4 for t2 = 36, 40, ..., 64
  CHECK(avg.degenerate == 8);
}

TEST_CASE("complete sums") {
  CHECK(std::abs(gauss_full(parse("t1*t2"), 0, 1, 0, 0).value - 1.0) < 1e-15);
  CHECK(std::abs(gauss_full(parse("t1*t2"), 1, 2, 0, 0).value - 0.5) < 1e-15);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 60; ++i) {
    const Polynomial p = oracle::random_polynomial(rng, 3, 4);
    const long q = 1 + static_cast<long>(rng() % 25);
    long a = 1 + static_cast<long>(rng() % static_cast<unsigned long>(q));
    while (std::gcd(a, q) != 1) ++a;
    const long w1 = static_cast<long>(rng() % 9) - 4, w2 = static_cast<long>(rng() % 9) - 4;
    const auto v = gauss_full(p, a, static_cast<std::uint64_t>(q), w1, w2);
    std::complex<long double> s = 0;
    for (long l1 = 1; l1 <= q; ++l1) {
      for (long l2 = 1; l2 <= q; ++l2) {
        BigInt r = (BigInt(a) * eval_exact(p, l1, l2) - w1 * l1 - w2 * l2) % q;
        if (r < 0) r += q;
        s += oracle::cis(oracle::Float50(r) / q, -1);
      }
    }
    s /= static_cast<long double>(q * q);
    CHECK(std::abs(v.value - std::complex<double>(static_cast<double>(s.real()), static_cast<double>(s.imag()))) < 1e-13);
    CHECK(std::abs(v.value) <= 1 + 1e-12);
    CHECK(std::abs(gauss_full(p, a, static_cast<std::uint64_t>(q), w1 + q, w2 - 2 * q).value - v.value) < 1e-14);
  }
}

TEST_CASE("congruence root counts") {
  CHECK(count_congruence_roots({0, 1}, 5, 2) == 1);
  CHECK(count_congruence_roots({0, 0, 1}, 3, 2) == 3);
  CHECK(count_congruence_roots({-1, 0, 1}, 2, 3) == 4);
  CHECK_THROWS(count_congruence_roots({0, 1}, 1009, 2));
}

TEST_CASE("root count bounds") {
  std::mt19937_64 rng(41);
  std::size_t checked = 0, exceeded = 0;
  for (std::uint64_t p : primes_up_to(13)) {
    for (int alpha = 1; alpha <= 4; ++alpha) {
      const double pa = std::pow(static_cast<double>(p), alpha);
      if (pa > 1e6) continue;
      for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<BigInt> g(static_cast<std::size_t>(n) + 1);
        for (auto& c : g) c = static_cast<long>(rng() % 41) - 20;
        const BigInt forbid = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(alpha - alpha / 2));
        while (g.back() % forbid == 0) g.back() += 1;
        const auto count = count_congruence_roots(g, p, alpha);
        ++checked;
        if (static_cast<double>(count) > n * std::pow(static_cast<double>(p), alpha * (1.0 - 1.0 / n))) ++exceeded;
        if (alpha == 1 && g.back() % p != 0) CHECK(count <= static_cast<std::uint64_t>(n));
      }
    }
  }
  MESSAGE("root-count instantiation exceeded in " << exceeded << " of " << checked << " cases");
}

TEST_CASE("decay fits") {
  std::vector<std::pair<double, double>> law, flat;
  for (double q : {3.0, 5.0, 7.0, 11.0, 13.0}) {
    law.emplace_back(q, 2.0 / std::sqrt(q));
    flat.emplace_back(q, 0.25);
  }
  const auto f = fit_decay(law);
  CHECK(f.exponent == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.constant == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(fit_decay(flat).exponent) < 1e-14);
  CHECK_THROWS(fit_decay({{3, 1}, {3, 0.5}, {3, 0.2}}));
  CHECK_THROWS(fit_decay({{3, 1}, {5, 0.5}}));
}

TEST_CASE("decay table regression") {
  const auto primes = primes_up_to(199);
  const auto rows = gauss_decay_table(parse("t1^2*t2"), 10, primes);
  const std::string text = gauss_csv(rows);
  const std::string expected = fixture("gauss_t1sq_t2_j10_q199.csv");
  std::istringstream a(text), b(expected);
  std::string la, lb;
  std::getline(a, la);
  std::getline(b, lb);
  CHECK(la == lb);
  std::size_t n = 0;
  while (std::getline(b, lb)) {
    REQUIRE(std::getline(a, la));
    double qa, aa, va, ma, qb, ab, vb, mb;
    char c;
    std::istringstream(la) >> qa >> c >> aa >> c >> va >> c >> ma;
    std::istringstream(lb) >> qb >> c >> ab >> c >> vb >> c >> mb;
    CHECK(qa == qb);
    CHECK(va == doctest::Approx(vb).epsilon(1e-12));
    CHECK(ma == doctest::Approx(mb).epsilon(1e-12));
    ++n;
  }
  CHECK(n == primes.size());
  std::vector<std::pair<double, double>> samples;
  for (const auto& r : rows) samples.emplace_back(static_cast<double>(r.q), r.average);
  CHECK(fit_decay(samples).exponent > 0);
}

}  // TEST_SUITE
