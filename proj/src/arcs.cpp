#include "polyhilbert/arcs.hpp"

#include <cmath>
#include <stdexcept>

namespace polyhilbert {

namespace {

long double log2_big(const BigInt& v) {
  if (v <= 0) return -INFINITY;
  const std::size_t bits = boost::multiprecision::msb(v);
  if (bits < 60) return std::log2(static_cast<long double>(v));
  const std::size_t shift = bits - 60;
  return std::log2(static_cast<long double>(v >> shift)) + static_cast<long double>(shift);
}

// Sign of 10*log2(num/den) + tenths, exact.
int compare_scaled(const BigInt& num, const BigInt& den, long tenths) {
  const long double l = 10.0L * (log2_big(num) - log2_big(den)) + tenths;
  if (l < -1e-9L) return -1;
  if (l > 1e-9L) return 1;
  BigInt lhs = boost::multiprecision::pow(num, 10);
  BigInt rhs = boost::multiprecision::pow(den, 10);
  if (tenths >= 0) {
    lhs <<= tenths;
  } else {
    rhs <<= -tenths;
  }
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace

std::string_view to_string(ArcClass c) {
  switch (c) {
    case ArcClass::Minor: return "minor";
    case ArcClass::MajorMinor: return "major_minor";
    case ArcClass::MajorSharp: return "major_sharp";
    case ArcClass::MajorFlat: return "major_flat";
  }
  return "?";
}

ArcReport classify(long j1, long j2, const DirichletSolver& solver, Exponent vertex, ClassifyOptions opts) {
  if (j1 < 0 || j2 < 0) throw std::invalid_argument("dyadic index must be non-negative");
  if (j1 < j2 && !opts.allow_lower_half) throw std::invalid_argument("classification requires j1 >= j2");
  const long hi = std::max(j1, j2), lo = std::min(j1, j2);

  const RationalApprox r = solver.approx(Height::dyadic_for(j1, j2, vertex));
  ArcReport rep;
  rep.j1 = j1;
  rep.j2 = j2;
  rep.q = r.q;
  const long jm = j1 * vertex.m1 + j2 * vertex.m2;
  const BigInt beta_num = abs(r.beta.num());
  rep.beta_scaled = beta_num == 0 ? 0.0L : std::exp2(log2_big(beta_num) - log2_big(r.beta.den()) + jm);

  // q >= 2^{hi/10}  <=>  q^10 >= 2^hi  <=>  10 log2(q) - hi >= 0
  if (compare_scaled(r.q, 1, -hi) >= 0) {
    rep.klass = ArcClass::Minor;
  } else if (compare_scaled(r.q, 1, -lo) <= 0) {
    // |beta| 2^{j.m} >= 2^{lo/10}  <=>  |beta|^10 2^{10 j.m - lo} >= 1
    const bool sharp = beta_num != 0 && compare_scaled(beta_num, r.beta.den(), 10 * jm - lo) >= 0;
    rep.klass = sharp ? ArcClass::MajorSharp : ArcClass::MajorFlat;
  } else {
    rep.klass = ArcClass::MajorMinor;
  }
  return rep;
}

ArcReport classify(long j1, long j2, const Frequency& xi3, Exponent vertex, ClassifyOptions opts) {
  return classify(j1, j2, DirichletSolver(xi3), vertex, opts);
}

ArcPartition partition_grid(const Frequency& xi3, Exponent vertex, long J1, long J2) {
  if (J1 < 0 || J2 < 0) throw std::invalid_argument("grid bounds must be non-negative");
  const DirichletSolver solver(xi3);
  ArcPartition out;
  for (long j1 = 0; j1 <= J1; ++j1) {
    for (long j2 = 0; j2 <= std::min(j1, J2); ++j2) {
      out.cells.push_back(classify(j1, j2, solver, vertex));
      ++out.counts[static_cast<std::size_t>(out.cells.back().klass)];
    }
  }
  return out;
}

ArcPartition partition_grid(const Frequency& xi3, const NewtonPolyhedron& n, long J1, long J2) {
  if (J1 < 0 || J2 < 0) throw std::invalid_argument("grid bounds must be non-negative");
  const DirichletSolver solver(xi3);
  ArcPartition out;
  for (long j1 = 0; j1 <= J1; ++j1) {
    for (long j2 = 0; j2 <= std::min(j1, J2); ++j2) {
      out.cells.push_back(classify(j1, j2, solver, n.vertices()[n.dual_face_of(j1, j2)]));
      ++out.counts[static_cast<std::size_t>(out.cells.back().klass)];
    }
  }
  return out;
}

}  // namespace polyhilbert
