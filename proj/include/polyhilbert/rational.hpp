#pragma once

#include <array>
#include <optional>
#include <vector>

#include "polyhilbert/frequency.hpp"
#include "polyhilbert/polynomial.hpp"

namespace polyhilbert {

/// A height N = 2^{e/10}, e an integer. Dyadic heights N_j and ordinary
/// integer bounds are both compared exactly through tenth powers.
class Height {
 public:
  /// 2^{tenths/10}, clamped below at 1.
  static Height dyadic_tenths(long tenths) { return Height(std::max(0L, tenths), BigInt(0)); }
  /// An integer bound N >= 1.
  static Height integer(const BigInt& n);

  /// N_j = 2^{j.m} 2^{-j1/10}, clamped to >= 1. Throws std::overflow_error when
  /// 10 (j.m) exceeds the exponent budget.
  static Height dyadic_for(long j1, long j2, Exponent vertex);

  bool is_integer() const { return integer_ != 0; }
  long tenths() const { return tenths_; }
  const BigInt& integer_value() const { return integer_; }
  long double log2() const;

  /// q <= N
  bool admits(const BigInt& q) const;
  /// x * N < 1 for an exact non-negative rational x = num/den.
  bool product_below_one(const BigInt& num, const BigInt& den) const;

  static constexpr long kExponentBudget = 1L << 20;

 private:
  Height(long tenths, BigInt integer) : tenths_(tenths), integer_(std::move(integer)) {}
  long tenths_ = 0;
  BigInt integer_ = 0;  // nonzero for integer heights
};

struct RationalApprox {
  BigInt a = 0;
  BigInt q = 1;
  Frequency beta;  // xi - a/q, exact

  long double beta_value() const { return beta.to_long_double(); }
};

/// Continued-fraction data for one xi, answering Dirichlet queries for many N.
class DirichletSolver {
 public:
  explicit DirichletSolver(Frequency xi);

  /// Smallest q <= N with |xi - a/q| < 1/(qN), gcd(a, q) = 1.
  RationalApprox approx(const Height& n) const;

  const Frequency& xi() const { return xi_; }

 private:
  struct Candidate {
    BigInt q, a;
    BigInt err_num;  // |q xi - a| = err_num / den
    long double log2_q, log2_err;
  };
  Frequency xi_;
  std::vector<Candidate> candidates_;
};

RationalApprox dirichlet_approx(const Frequency& xi, const Height& n);

/// The map (j, xi) -> q(j, xi) at height N_j for the given vertex.
RationalApprox q_of(long j1, long j2, const Frequency& xi, Exponent vertex);

struct SimultaneousApprox {
  BigInt q = 1;
  std::array<BigInt, 3> a{};
  std::array<Frequency, 3> beta{};
  /// |beta_i| == 1/(2q) exactly for i = 1, 2 (the strict inequality fails).
  std::array<bool, 2> boundary{};
};

SimultaneousApprox simultaneous_approx(const std::array<Frequency, 3>& xi, long j1, long j2, Exponent vertex);

struct SparsityReport {
  std::vector<BigInt> denominators;  // distinct q(j, xi) with q < 2^{j1/10}, sorted
  bool sparse = true;                // consecutive q < q' satisfy 5q < q'
};

SparsityReport sparsity_scan(const Frequency& xi, Exponent vertex, long j_max);

}  // namespace polyhilbert
