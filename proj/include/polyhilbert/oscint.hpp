#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "polyhilbert/polynomial.hpp"

namespace polyhilbert {

/// Cutoff functions. All profiles are built from psi(u) = e^{-1/u} (u > 0).
namespace cutoff {

/// Smooth step: 0 for u <= 0, 1 for u >= 1.
double step(double u);
/// Bump with phi = 1 on [-1, 1], 0 outside [-2, 2].
double phi(double x);
/// phi(x/2) - phi(x); supported in 1 < |x| < 4.
double chi(double x);
/// chi(x / 2^{j-1}): the smooth dyadic window of scale j, supported in (2^{j-1}, 2^{j+1}).
double chi_smooth(long j, double x);
/// Ramp s(x) = psi(1/2 + x) / (psi(1/2 + x) + psi(1/2 - x)): 0 below -1/2, 1 above 1/2, s(0) = 1/2.
double ramp(double x);
/// Sharp window s(|x| - 2^{j-1}) s(2^j - |x|): 1 strictly inside, 1/2 at the
/// integers 2^{j-1} and 2^j, 0 beyond half a unit outside.
double chi_sharp(long j, double x);

}  // namespace cutoff

enum class CutoffKind { Smooth, Sharp };

struct OscOptions {
  CutoffKind cutoff = CutoffKind::Smooth;
  bool one_sided = false;     // positive shell(s) only
  double tolerance = 1e-11;   // absolute
  std::size_t panel_budget = std::size_t{1} << 22;
  /// Expand e(xi3 P) in powers of xi3 when |xi3| sum |c| |x^m| <= 1/2 on the
  /// window, reducing osc_2d to one-dimensional moments.
  bool series = true;
};

struct OscIntegralResult {
  std::complex<double> value;
  double quadrature_error = 0;
  bool flagged = false;  // tolerance not reached within the panel budget
  std::size_t panels = 0;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0;
  bool converged = true;
  std::size_t panels = 0;
};

/// Adaptive Gauss-Kronrod (7, 15) quadrature of f over [a, b], starting from
/// `initial` equal panels and refining the worst panel until the summed error
/// estimate is below tol or the budget is exhausted.
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a, double b, double tol,
                           std::size_t initial = 1, std::size_t budget = std::size_t{1} << 22);

/// Equal panels needed so the phase (in cycles) moves by at most 1/8 per panel,
/// estimated by sampling.
std::size_t oscillation_panels(const std::function<double(double)>& phase_cycles, double a, double b,
                               std::size_t cap);

/// int e^{-2 pi i beta P(x, t2)} chi_{j1}(x) dx / x over the shells of scale j1.
OscIntegralResult osc_1d(const Polynomial& p, std::int64_t t2, long j1, double beta, OscOptions opts = {});

/// int e^{2 pi i a x} chi_j(x) dx / x over the shells of scale j.
OscIntegralResult osc_linear(long j, double a, OscOptions opts = {});

/// int int e^{2 pi i (xi1 x1 + xi2 x2 + xi3 P(x))} chi_{j1}(x1) chi_{j2}(x2) dx1/x1 dx2/x2.
OscIntegralResult osc_2d(const Polynomial& p, long j1, long j2, const std::array<double, 3>& xi,
                         OscOptions opts = {});

struct DecayRow {
  long j1 = 0, j2 = 0;
  std::complex<double> value;
  double magnitude = 0;
  double scaled_frequency = 0;  // |xi3| 2^{j.m}
  double running_abs = 0;       // sum |H_j|
  double running_sqrt = 0;      // sum |H_j|^{1/2}
  std::complex<double> running_signed;
  bool flagged = false;
};

struct DecayTable {
  std::vector<DecayRow> rows;
  double fitted_rate = 0;  // c in |H_j| ~ (|xi3| 2^{j.m})^{-c}, over unflagged rows with scaled frequency > 1
  double r_squared = 0;
  std::size_t fitted_points = 0;
};

DecayTable decay_probe(const Polynomial& p, Exponent vertex, const std::vector<std::array<long, 2>>& ray, double xi3,
                       OscOptions opts = {});

}  // namespace polyhilbert
