#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polyhilbert/polynomial.hpp"

namespace polyhilbert {

struct GaussSumValue {
  std::complex<double> value;
  std::uint64_t q = 1;
  std::int64_t a = 0;
  std::optional<std::int64_t> t2;
  double magnitude = 0;
};

/// (1/q) sum_{t1=1..q} e^{2 pi i (a/q) P(t1, t2)}.
GaussSumValue gauss_fiber(const Polynomial& p, std::int64_t t2, std::int64_t a, std::uint64_t q);

struct GaussAverage {
  double average = 0;          // mean of |S^{t2}(a/q)| over t2 in (2^{j2-1}, 2^{j2}]
  std::size_t fibers = 0;
  std::size_t degenerate = 0;  // fibers whose leading t1-coefficient vanishes mod q
};

GaussAverage gauss_fiber_average(const Polynomial& p, int j2, std::int64_t a, std::uint64_t q);

struct GaussTableRow {
  std::uint64_t q = 1;
  std::int64_t a = 1;
  double average = 0;    // gauss_fiber_average at scale j2
  double magnitude = 0;  // |S^{t2}(a/q)| at t2 = 2^{j2}
  std::size_t degenerate = 0;
};

/// One row per modulus; feeds fit_decay over (q, average).
std::vector<GaussTableRow> gauss_decay_table(const Polynomial& p, int j2, const std::vector<std::uint64_t>& moduli,
                                             std::int64_t a = 1);

/// (1/q^2) sum_{l1,l2=1..q} e^{-2 pi i ((a/q) P(l) - (w . l)/q)}.
GaussSumValue gauss_full(const Polynomial& p, std::int64_t a, std::uint64_t q, std::int64_t w1, std::int64_t w2);

/// #{t in [1, p^alpha] : g(t) = 0 mod p^alpha}; g given by coefficients in
/// ascending degree. Exhaustive; p^alpha must not exceed 10^6.
std::uint64_t count_congruence_roots(const std::vector<BigInt>& g, std::uint64_t p, int alpha);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

/// Ordinary least squares y = intercept + slope x. r^2 is 1 for constant y.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct DecayFit {
  double exponent = 0;  // delta in value ~ C q^{-delta}
  double constant = 0;
  double r_squared = 0;
  std::pair<double, double> sample_range{};
};

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

}  // namespace polyhilbert
