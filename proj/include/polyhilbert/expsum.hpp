#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "polyhilbert/frequency.hpp"
#include "polyhilbert/polynomial.hpp"

namespace polyhilbert {

struct SumResult {
  std::complex<double> value;
  double abs_error_bound = 0;
  std::uint64_t terms = 0;
};

/// The frequency xi = (xi1, xi2, xi3) prepared for exact phase reduction.
///
/// When every component is a dyadic rational with denominator dividing 2^128,
/// phases are computed exactly in Z/2^128. Otherwise, when the common
/// denominator Q is below 2^62, phases are computed exactly modulo Q (the
/// rational split). Anything else is rounded to 128-bit fixed point.
class PhaseContext {
 public:
  enum class Ring { Wrap128, ModQ };

  PhaseContext() : PhaseContext(Frequency{}, Frequency{}, Frequency{}) {}
  PhaseContext(Frequency xi1, Frequency xi2, Frequency xi3);
  static PhaseContext xi3_only(Frequency xi3) { return PhaseContext({}, {}, std::move(xi3)); }

  const std::array<Frequency, 3>& xi() const { return xi_; }
  Ring ring() const { return ring_; }
  /// Q when the rational split is in use.
  std::optional<std::uint64_t> modulus() const {
    return ring_ == Ring::ModQ ? std::optional<std::uint64_t>(modulus_) : std::nullopt;
  }
  /// False when xi had to be rounded to 128-bit fixed point.
  bool exact() const { return exact_; }
  bool is_zero() const { return xi_[0].is_zero() && xi_[1].is_zero() && xi_[2].is_zero(); }

  const std::array<u128, 3>& fixed() const { return fixed_; }
  const std::array<std::uint64_t, 3>& residues() const { return residues_; }

  PhaseContext negated() const { return PhaseContext(-xi_[0], -xi_[1], -xi_[2]); }

 private:
  std::array<Frequency, 3> xi_;
  Ring ring_ = Ring::Wrap128;
  bool exact_ = true;
  std::uint64_t modulus_ = 1;
  std::array<u128, 3> fixed_{};                // xi_i * 2^128 mod 2^128
  std::array<std::uint64_t, 3> residues_{};    // xi_i * Q mod Q
};

enum class Quadrants {
  All,      // sign patterns (+-t1, +-t2), kernel 1/(t1 t2)
  Positive  // t1, t2 > 0 only
};

struct SumOptions {
  Quadrants quadrants = Quadrants::All;
  /// 0: POLYHILBERT_WORKERS, else hardware concurrency. Results do not depend on it.
  unsigned workers = 0;
};

/// Positive integer range [lo, hi]; flagged endpoints carry weight 1/2.
struct AxisRange {
  std::int64_t lo = 1, hi = 1;
  bool half_lo = false, half_hi = false;
};

/// sum over 1 <= |t1| <= N1, 1 <= |t2| <= N2 of e^{-2 pi i xi.(t1, t2, P(t))} / (t1 t2).
SumResult hilbert_sum(const Polynomial& p, std::int64_t n1, std::int64_t n2, const PhaseContext& xi,
                      SumOptions opts = {});

/// Block t1 ~ 2^{j1}, t2 ~ 2^{j2}: t in (2^{j-1}, 2^j] for j >= 1, t = 1 for j = 0.
SumResult dyadic_piece(const Polynomial& p, long j1, long j2, const PhaseContext& xi, SumOptions opts = {});

/// The block weighted by the sharp cutoffs chi_{j1}(t1) chi_{j2}(t2):
/// t in [2^{j-1}, 2^j] with both endpoints at weight 1/2 (j >= 1).
SumResult sharp_block(const Polynomial& p, long j1, long j2, const PhaseContext& xi, SumOptions opts = {});

/// Weighted sum over a positive box with kernel 1/(t1 t2) and the Hilbert phase sign.
SumResult box_sum(const Polynomial& p, const AxisRange& r1, const AxisRange& r2, const PhaseContext& xi,
                  SumOptions opts = {});

/// Unweighted sum of e^{+2 pi i xi.(t1, t2, P(t))} over the box.
SumResult weyl_sum(const Polynomial& p, const AxisRange& r1, const AxisRange& r2, const PhaseContext& xi,
                   SumOptions opts = {});

/// max over x, y of |sum_{t1 = lo1..x} sum_{t2 = lo2..y} e^{2 pi i xi.(t1, t2, P(t))}|, the rectangle
/// supremum that controls monotone weights by summation by parts. Box area is limited to 2^26.
double weyl_rectangle_sup(const Polynomial& p, const AxisRange& r1, const AxisRange& r2, const PhaseContext& xi);

/// | |sum_{t2 in [a,b]} e(xi3 P(t1,t2))|^2 - sum_r sum_{t2} e(xi3 D_r P(t1,t2)) |, where
/// D_r P(t1, t2) = P(t1, t2 + r) - P(t1, t2).
double differencing_identity_check(const Polynomial& p, const Frequency& xi3, std::int64_t t1, std::int64_t a,
                                   std::int64_t b);

/// H_{(N,N)} for every N of an increasing schedule, in one pass.
std::vector<SumResult> nested_sums(const Polynomial& p, const std::vector<std::int64_t>& schedule,
                                   const PhaseContext& xi, SumOptions opts = {});

struct ScanRow {
  std::int64_t n = 0;
  double sup_abs = 0;     // running max over the grid and all N' <= N
  double argmax_xi3 = 0;  // grid point attaining the current-N maximum
};

/// Running sup over the xi3 grid of |H_{(N,N)}(0, 0, xi3)|.
std::vector<ScanRow> partial_sup_scan(const Polynomial& p, const std::vector<Frequency>& xi3_grid,
                                      const std::vector<std::int64_t>& schedule, SumOptions opts = {});

/// Log-spaced grid of n frequencies from 2^{-log2_lo} to 1/2 (dyadic decimals).
std::vector<Frequency> default_xi3_grid(std::size_t n, double log2_lo);

/// Worker count used when SumOptions::workers is 0.
unsigned default_workers();

}  // namespace polyhilbert
