#include <doctest.h>

#include <cmath>

#include "polyhilbert/newton.hpp"
#include "polyhilbert/verify.hpp"

using namespace polyhilbert;

namespace {

std::vector<std::int64_t> doublings(int lo, int hi) {
  std::vector<std::int64_t> s;
  for (int k = lo; k <= hi; ++k) s.push_back(std::int64_t{1} << k);
  return s;
}

double tail(long w) {
  double s = 0;
  for (long k = w + 1; k < 100000; ++k) s += 8.0 * k / std::pow(k + 1.0, 5);
  return s;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("growth classification thresholds") {
  CHECK(classify_growth({0.2, 0, 0.95}) == Empirics::Divergent);
  CHECK(classify_growth({0.2, 0, 0.5}) == Empirics::Inconclusive);
  CHECK(classify_growth({0.005, 0, 0.1}) == Empirics::Bounded);
  CHECK(classify_growth({-0.005, 0, 0.1}) == Empirics::Bounded);
  CHECK(classify_growth({0.03, 0, 0.99}) == Empirics::Inconclusive);
}

TEST_CASE("theorem against empirics") {
  const auto sched = doublings(4, 9);
  const auto odd = theorem_crosscheck(parse("t1*t2"), default_xi3_grid(32, 20), sched);
  CHECK_FALSE(odd.theorem_says.bounded);
  CHECK(odd.empirics_say == Empirics::Divergent);
  CHECK(odd.agree);
  const auto even = theorem_crosscheck(parse("t1^2*t2^2"), default_xi3_grid(32, 38), sched);
  CHECK(even.theorem_says.bounded);
  CHECK(even.empirics_say == Empirics::Bounded);
  CHECK(even.agree);
  CHECK_THROWS_AS(theorem_crosscheck(parse("t1*t2"), default_xi3_grid(8, 10), doublings(4, 8)), std::invalid_argument);
}

TEST_CASE("curated corpus never contradicts the theorem") {
  const char* corpus[] = {
      // bounded: every vertex has an even component
      "t1^2*t2^2", "t1^2*t2 + t1*t2^2", "t1^2*t2 + t1^3*t2^2", "t1^2*t2^3 - 3*t1^4*t2", "t1^3*t2^2 + t2^4",
      "2*t1^2*t2^5 + t1^6*t2",
      // unbounded: some vertex is (odd, odd)
      "t1*t2", "t1^3*t2^2 + t1*t2^5", "t1^3*t2^3", "t1*t2 + t1^2", "t1^3*t2 + t1^2*t2^4", "5*t1*t2^3 - t1^5*t2"};
  const auto sched = doublings(4, 9);
  std::size_t bounded = 0;
  for (const char* text : corpus) {
    const Polynomial p = parse(text);
    const auto v = theorem_crosscheck(p, default_xi3_grid(32, p.degree() * 9.0 + 2), sched);
    bounded += v.theorem_says.bounded;
    CHECK_MESSAGE(!v.contradiction, std::string(text));
    MESSAGE(std::string(text) << ": theorem " << std::string(v.theorem_says.bounded ? "bounded" : "unbounded") << ", empirics "
                 << std::string(to_string(v.empirics_say)) << ", slope " << v.fit.slope << ", r2 " << v.fit.r_squared);
  }
  CHECK(bounded == 6);
}

TEST_CASE("slow saturation is reported, not coerced") {
  // Bounded by the theorem, yet the desk-scale running sup still rises over
  // N = 16..512; the verdict is recorded as computed.
  const Polynomial p = parse("t1^4*t2 + t1*t2^2 + t1^2*t2^3");
  const auto v = theorem_crosscheck(p, default_xi3_grid(32, p.degree() * 9.0 + 2), doublings(4, 9));
  CHECK(v.theorem_says.bounded);
  CHECK(v.contradiction == (v.empirics_say == Empirics::Divergent));
  MESSAGE("empirics " << std::string(to_string(v.empirics_say)) << ", slope " << v.fit.slope << ", r2 "
                      << v.fit.r_squared);
}

TEST_CASE("major-arc approximation") {
  const Polynomial p = parse("t1^2*t2");
  const Frequency third = Frequency::rational(1, 3);
  const auto r = major_arc_approx_check(p, 30, 8, third, {2, 1});
  CHECK(r.residual < std::ldexp(1.0, -15));
  CHECK(r.passed);
  CHECK(r.precondition_met);
  double last = INFINITY;
  for (long j1 : {20L, 25L, 30L, 35L}) {
    const auto s = major_arc_approx_check(p, j1, 8, third, {2, 1});
    CHECK(s.residual < last);
    last = s.residual;
    if (s.passed) CHECK(s.residual <= s.tolerance);
  }
  // xi3 = 0: S = 1 and beta = 0; both sides are the real positive block sum,
  // up to the sum-versus-integral error of the ramped window in t1
  const auto z = major_arc_approx_check(p, 12, 5, Frequency{}, {2, 1});
  CHECK(std::abs(z.lhs.imag()) < 1e-15);
  CHECK(std::abs(z.rhs.imag()) < 1e-15);
  CHECK(z.lhs.real() > 0);
  CHECK(z.residual < 1e-7);
  CHECK(z.passed);
  CHECK_THROWS_AS(major_arc_approx_check(p, 10, 5, third, {2, 1}), PreconditionError);
}

TEST_CASE("Poisson identity") {
  // xi3 = 0 on the positive quadrant: only w = 0 survives the limit, both sides real
  const auto z = poisson_identity_check(parse("t1*t2"), 6, 6, Frequency{}, {1, 1}, 4);
  CHECK(z.lhs.real() > 0);
  CHECK(std::abs(z.lhs.imag()) < 1e-15);
  CHECK(z.passed);
  CHECK(z.residual < 1e-6);

  const auto half = Frequency::rational(1, 2);
  double prev = INFINITY;
  for (long w : {4L, 8L, 16L}) {
    const auto r = poisson_identity_check(parse("t1*t2"), 8, 8, half, {1, 1}, w);
    CHECK(r.residual <= prev);
    prev = r.residual;
    if (r.passed) CHECK(r.residual <= r.tolerance);
  }
  CHECK(prev < 1e-3);

  // q = 1: the zero mode alone sits within the tail bound of the wider window
  const Polynomial p = parse("t1^2*t2");
  const Frequency beta(BigInt(1), BigInt(1) << 24);
  const auto one = poisson_identity_check(p, 5, 4, beta, {2, 1}, 0);
  const auto wide = poisson_identity_check(p, 5, 4, beta, {2, 1}, 8);
  CHECK(one.klass == ArcClass::MajorFlat);
  CHECK(std::abs(one.rhs - wide.rhs) <= tail(0));
  CHECK(wide.passed);
}

TEST_CASE("minor arcs") {
  CHECK_THROWS_AS(minor_arc_bound_check(parse("t1^2*t2"), Frequency{}, 10, 5, {2, 1}), PreconditionError);
  const Frequency golden = Frequency::parse("0.6180339887498948482045868343656381177203");
  const auto ray = minor_arc_ray(parse("t1^2*t2"), golden, {2, 1}, 10, 16, 0.5);
  CHECK(ray.rows.size() >= 5);
  CHECK(ray.fit.exponent > 0);
  CHECK(ray.decays);
  for (const auto& row : ray.rows) {
    CHECK(row.klass == ArcClass::Minor);
    CHECK(row.weyl_ratio <= 1.0);
    if (row.abel_bound >= 0) CHECK(row.within_bound);
  }
}

TEST_CASE("arc classes recompose the grid sum") {
  for (const char* text : {"t1^2*t2", "t1*t2 + t2^3"}) {
    for (const char* xi : {"0.6180339887", "1/3", "0.001"}) {
      const auto r = arc_recomposition(parse(text), Frequency::parse(xi), 8);
      CHECK_MESSAGE(r.residual < 1e-10, std::string(text) << " at " << std::string(xi));
      std::size_t cells = 0;
      for (auto c : r.class_counts) cells += c;
      CHECK(cells == 81);
    }
  }
}

}  // TEST_SUITE
