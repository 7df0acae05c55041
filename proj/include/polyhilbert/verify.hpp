#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyhilbert/arcs.hpp"
#include "polyhilbert/expsum.hpp"
#include "polyhilbert/newton.hpp"
#include "polyhilbert/numtheory.hpp"
#include "polyhilbert/oscint.hpp"

namespace polyhilbert {

/// Raised when a check is asked to run outside the regime it verifies.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct IdentityReport {
  std::complex<double> lhs, rhs;
  double residual = 0;
  double tolerance = 0;
  bool passed = false;
  ArcClass klass = ArcClass::MajorFlat;
  bool precondition_met = true;
  std::map<std::string, double> truncation;  // parameters used (window, quadrature tolerance, ...)
};

/// Discrete block with sharp one-sided windows, times phi(q / 2^{j1/10}),
/// against sum_{t2} chi_{j2}(t2)/t2 S^{t2}(-a/q) H_{j1}^{t2}(beta).
/// Tolerance 2^{-j1/2}. Throws PreconditionError on the minor arc.
IdentityReport major_arc_approx_check(const Polynomial& p, long j1, long j2, const Frequency& xi3, Exponent vertex,
                                      double quad_tol = 1e-13);

/// Discrete block against the truncated Poisson series
/// sum_{|w|_inf <= W} S_w(a/q) H_j(-w1/q, -w2/q, -beta).
/// Tolerance: the tail sum_{|w|_inf > W} (|w|_inf + 1)^{-5} plus quadrature
/// error. A class other than MajorFlat is recorded, not rejected.
IdentityReport poisson_identity_check(const Polynomial& p, long j1, long j2, const Frequency& xi3, Exponent vertex,
                                      long w_window, double quad_tol = 1e-12);

struct MinorArcReport {
  long j1 = 0, j2 = 0;
  ArcClass klass = ArcClass::Minor;
  double piece_abs = 0;     // |H_j| over the positive block
  double weyl_ratio = 0;    // |weyl_sum| / 2^{j1 + j2}
  double abel_bound = -1;   // sup-rectangle bound on |H_j|; -1 when the block is too large to scan
  bool within_bound = true;
};

/// Throws PreconditionError unless j is on the minor arc.
MinorArcReport minor_arc_bound_check(const Polynomial& p, const Frequency& xi3, long j1, long j2, Exponent vertex);

struct MinorRay {
  std::vector<MinorArcReport> rows;
  DecayFit fit;  // weyl_ratio against 2^{j1}
  bool decays = false;
};

/// Minor-arc rows along j1 in [j1_lo, j1_hi] with j2 = floor(j1 * j2_ratio).
MinorRay minor_arc_ray(const Polynomial& p, const Frequency& xi3, Exponent vertex, long j1_lo, long j1_hi,
                       double j2_ratio);

enum class Empirics { Bounded, Divergent, Inconclusive };
std::string_view to_string(Empirics e);

struct Verdict {
  BoundednessVerdict theorem_says;
  Empirics empirics_say = Empirics::Inconclusive;
  LineFit fit;  // sup |H| against log2 N
  std::vector<ScanRow> scan;
  bool agree = false;
  bool contradiction = false;  // confident disagreement
};

/// Classifies a sup-growth fit: slope > 0.05 with r^2 >= 0.9 is divergent,
/// |slope| <= 0.01 bounded, anything else inconclusive.
Empirics classify_growth(const LineFit& fit);

/// Requires the schedule to span at least 5 doublings.
Verdict theorem_crosscheck(const Polynomial& p, const std::vector<Frequency>& xi3_grid,
                           const std::vector<std::int64_t>& schedule, SumOptions opts = {});

struct Recomposition {
  std::array<std::complex<double>, 4> class_sums{};  // indexed by ArcClass
  std::array<std::size_t, 4> class_counts{};
  std::complex<double> recomposed;  // sum of the class sums
  std::complex<double> direct;      // hilbert_sum over [1, 2^J]^2
  double residual = 0;
};

/// Groups the dyadic pieces of {0..J}^2 (both halves, the lower one by role
/// swap) by arc class and recomposes them.
Recomposition arc_recomposition(const Polynomial& p, const Frequency& xi3, long J, SumOptions opts = {});

}  // namespace polyhilbert
