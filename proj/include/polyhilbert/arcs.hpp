#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "polyhilbert/newton.hpp"
#include "polyhilbert/rational.hpp"

namespace polyhilbert {

enum class ArcClass { Minor, MajorMinor, MajorSharp, MajorFlat };

std::string_view to_string(ArcClass c);

struct ArcReport {
  long j1 = 0, j2 = 0;
  ArcClass klass = ArcClass::MajorFlat;
  BigInt q = 1;
  long double beta_scaled = 0;  // |beta| 2^{j.m}
};

struct ClassifyOptions {
  /// Accept j1 < j2 by swapping the roles of the two thresholds.
  bool allow_lower_half = false;
};

/// Circle-method class of the dyadic index j for the phase coefficient xi3:
///   Minor       q >= 2^{j1/10}
///   MajorFlat   q <= 2^{j2/10} and |beta| 2^{j.m} <  2^{j2/10}
///   MajorSharp  q <= 2^{j2/10} and |beta| 2^{j.m} >= 2^{j2/10}
///   MajorMinor  otherwise
/// All comparisons are exact (tenth powers).
ArcReport classify(long j1, long j2, const Frequency& xi3, Exponent vertex, ClassifyOptions opts = {});

/// Same, reusing continued-fraction data across many j.
ArcReport classify(long j1, long j2, const DirichletSolver& solver, Exponent vertex, ClassifyOptions opts = {});

struct ArcPartition {
  std::vector<ArcReport> cells;  // row-major over j1, then j2, restricted to j1 >= j2
  std::array<std::size_t, 4> counts{};  // indexed by ArcClass
};

/// Classifies every j in {0..J1} x {0..J2} with j1 >= j2.
ArcPartition partition_grid(const Frequency& xi3, Exponent vertex, long J1, long J2);

/// Same, with each j classified against its own vertex (dual_face_of).
ArcPartition partition_grid(const Frequency& xi3, const NewtonPolyhedron& n, long J1, long J2);

}  // namespace polyhilbert
