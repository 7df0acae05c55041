#include "polyhilbert/verify.hpp"

#include <algorithm>
#include <cmath>

#include "polyhilbert/summation.hpp"

namespace polyhilbert {

namespace {

std::uint64_t small_q(const BigInt& q) {
  if (q > BigInt(std::uint64_t{1} << 40)) throw std::overflow_error("denominator too large for complete sums");
  return static_cast<std::uint64_t>(q);
}

std::int64_t small_a(const BigInt& a, std::uint64_t q) { return static_cast<std::int64_t>(mod_u64(a, q)); }

// sum_{|w|_inf > W} (|w|_inf + 1)^{-5}; the shell |w|_inf = k has 8k points.
double poisson_tail(long w) {
  double s = 0;
  const long stop = w + 100000;
  for (long k = stop; k > w; --k) s += 8.0 * k / std::pow(k + 1.0, 5);
  return s + 8.0 / (3.0 * std::pow(stop + 1.0, 3));  // integral beyond the explicit range
}

std::int64_t lower_end(long j) { return j == 0 ? 1 : std::int64_t{1} << (j - 1); }

}  // namespace

IdentityReport major_arc_approx_check(const Polynomial& p, long j1, long j2, const Frequency& xi3, Exponent vertex,
                                      double quad_tol) {
  if (j1 < 1) throw std::invalid_argument("major-arc check needs j1 >= 1");
  const ArcReport arc = classify(j1, j2, xi3, vertex, {true});
  if (arc.klass == ArcClass::Minor) throw PreconditionError("major-arc check on a minor-arc index");
  const RationalApprox ra = q_of(j1, j2, xi3, vertex);
  const std::uint64_t q = small_q(ra.q);
  const std::int64_t a = small_a(ra.a, q);
  const double beta = ra.beta.to_double();

  IdentityReport rep;
  rep.klass = arc.klass;
  const double cut = cutoff::phi(static_cast<double>(q) / std::exp2(j1 / 10.0));
  const auto block = sharp_block(p, j1, j2, PhaseContext::xi3_only(xi3), {Quadrants::Positive});
  rep.lhs = block.value * cut;

  OscOptions o;
  o.cutoff = CutoffKind::Sharp;
  o.one_sided = true;
  o.tolerance = quad_tol;
  CompensatedSum rhs;
  double quad_err = 0;
  std::optional<OscIntegralResult> shared;
  if (beta == 0) shared = osc_1d(p, 1, j1, 0.0, o);  // independent of t2
  const std::int64_t lo = lower_end(j2), hi = std::int64_t{1} << j2;
  for (std::int64_t t2 = lo; t2 <= hi; ++t2) {
    const double w = cutoff::chi_sharp(j2, static_cast<double>(t2)) / static_cast<double>(t2);
    if (w == 0) continue;
    const auto g = gauss_fiber(p, t2, -a, q);
    const auto h = shared ? *shared : osc_1d(p, t2, j1, beta, o);
    quad_err += std::abs(w) * h.quadrature_error;
    rhs.add(w * g.value * h.value);
  }
  rep.rhs = rhs.value();
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.tolerance = std::exp2(-j1 / 2.0);
  rep.passed = rep.residual <= rep.tolerance;
  rep.truncation = {{"q", static_cast<double>(q)}, {"a", static_cast<double>(a)}, {"beta", beta},
                    {"quadrature_tolerance", quad_tol}, {"quadrature_error", quad_err},
                    {"block_error_bound", block.abs_error_bound}};
  return rep;
}

IdentityReport poisson_identity_check(const Polynomial& p, long j1, long j2, const Frequency& xi3, Exponent vertex,
                                      long w_window, double quad_tol) {
  if (w_window < 0) throw std::invalid_argument("negative w window");
  const ArcReport arc = classify(j1, j2, xi3, vertex, {true});
  const RationalApprox ra = q_of(j1, j2, xi3, vertex);
  const std::uint64_t q = small_q(ra.q);
  const std::int64_t a = small_a(ra.a, q);
  const double beta = ra.beta.to_double();

  IdentityReport rep;
  rep.klass = arc.klass;
  rep.precondition_met = arc.klass == ArcClass::MajorFlat;
  rep.lhs = sharp_block(p, j1, j2, PhaseContext::xi3_only(xi3), {Quadrants::Positive}).value;

  OscOptions o;
  o.cutoff = CutoffKind::Sharp;
  o.one_sided = true;
  o.tolerance = quad_tol;
  const auto qd = static_cast<double>(q);

  // With beta = 0 each term factors into two one-dimensional transforms.
  std::vector<OscIntegralResult> f1, f2;
  if (beta == 0) {
    for (long w = -w_window; w <= w_window; ++w) {
      f1.push_back(osc_linear(j1, -static_cast<double>(w) / qd, o));
      f2.push_back(osc_linear(j2, -static_cast<double>(w) / qd, o));
    }
  }
  CompensatedSum rhs;
  double quad_err = 0;
  for (long w1 = -w_window; w1 <= w_window; ++w1) {
    for (long w2 = -w_window; w2 <= w_window; ++w2) {
      const auto s = gauss_full(p, a, q, w1, w2);
      if (s.magnitude < 1e-15) continue;
      std::complex<double> h;
      double err;
      if (beta == 0) {
        const auto& x = f1[static_cast<std::size_t>(w1 + w_window)];
        const auto& y = f2[static_cast<std::size_t>(w2 + w_window)];
        h = x.value * y.value;
        err = x.quadrature_error * std::abs(y.value) + y.quadrature_error * std::abs(x.value);
      } else {
        const auto r = osc_2d(p, j1, j2, {-static_cast<double>(w1) / qd, -static_cast<double>(w2) / qd, -beta}, o);
        h = r.value;
        err = r.quadrature_error;
      }
      rhs.add(s.value * h);
      quad_err += s.magnitude * err;
    }
  }
  rep.rhs = rhs.value();
  rep.residual = std::abs(rep.lhs - rep.rhs);
  const double tail = poisson_tail(w_window);
  rep.tolerance = tail + quad_err;
  rep.passed = rep.residual <= rep.tolerance;
  rep.truncation = {{"w_window", static_cast<double>(w_window)}, {"q", qd}, {"a", static_cast<double>(a)},
                    {"beta", beta}, {"tail_bound", tail}, {"quadrature_tolerance", quad_tol},
                    {"quadrature_error", quad_err}};
  return rep;
}

MinorArcReport minor_arc_bound_check(const Polynomial& p, const Frequency& xi3, long j1, long j2, Exponent vertex) {
  const ArcReport arc = classify(j1, j2, xi3, vertex, {true});
  if (arc.klass != ArcClass::Minor) throw PreconditionError("minor-arc check on a major-arc index");
  const PhaseContext ctx = PhaseContext::xi3_only(xi3);
  const AxisRange r1 = j1 == 0 ? AxisRange{1, 1} : AxisRange{(std::int64_t{1} << (j1 - 1)) + 1, std::int64_t{1} << j1};
  const AxisRange r2 = j2 == 0 ? AxisRange{1, 1} : AxisRange{(std::int64_t{1} << (j2 - 1)) + 1, std::int64_t{1} << j2};

  MinorArcReport rep;
  rep.j1 = j1;
  rep.j2 = j2;
  rep.klass = arc.klass;
  rep.piece_abs = std::abs(box_sum(p, r1, r2, ctx, {Quadrants::Positive}).value);
  rep.weyl_ratio = std::abs(weyl_sum(p, r1, r2, ctx).value) / std::exp2(static_cast<double>(j1 + j2));
  const double area = static_cast<double>(r1.hi - r1.lo + 1) * static_cast<double>(r2.hi - r2.lo + 1);
  if (area <= std::ldexp(1.0, 26)) {
    // Weights 1/(t1 t2) are monotone in each variable: two-dimensional summation by parts.
    rep.abel_bound = weyl_rectangle_sup(p, r1, r2, ctx) / (static_cast<double>(r1.lo) * static_cast<double>(r2.lo));
    rep.within_bound = rep.piece_abs <= rep.abel_bound * (1 + 1e-9) + 1e-12;
  }
  return rep;
}

MinorRay minor_arc_ray(const Polynomial& p, const Frequency& xi3, Exponent vertex, long j1_lo, long j1_hi,
                       double j2_ratio) {
  MinorRay ray;
  const DirichletSolver solver(xi3);
  std::vector<std::pair<double, double>> samples;
  for (long j1 = j1_lo; j1 <= j1_hi; ++j1) {
    const long j2 = static_cast<long>(std::floor(j2_ratio * static_cast<double>(j1)));
    if (classify(j1, j2, solver, vertex, {true}).klass != ArcClass::Minor) continue;
    ray.rows.push_back(minor_arc_bound_check(p, xi3, j1, j2, vertex));
    if (ray.rows.back().weyl_ratio > 0) samples.emplace_back(std::exp2(static_cast<double>(j1)), ray.rows.back().weyl_ratio);
  }
  if (samples.size() >= 3) {
    ray.fit = fit_decay(samples);
    ray.decays = ray.fit.exponent > 0;
  }
  return ray;
}

std::string_view to_string(Empirics e) {
  switch (e) {
    case Empirics::Bounded: return "bounded";
    case Empirics::Divergent: return "divergent";
    case Empirics::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Empirics classify_growth(const LineFit& fit) {
  if (fit.slope > 0.05 && fit.r_squared >= 0.9) return Empirics::Divergent;
  if (std::abs(fit.slope) <= 0.01) return Empirics::Bounded;
  return Empirics::Inconclusive;
}

Verdict theorem_crosscheck(const Polynomial& p, const std::vector<Frequency>& xi3_grid,
                           const std::vector<std::int64_t>& schedule, SumOptions opts) {
  if (schedule.size() < 2 ||
      std::log2(static_cast<double>(schedule.back()) / static_cast<double>(schedule.front())) < 5 - 1e-9) {
    throw std::invalid_argument("schedule must span at least 5 doublings");
  }
  Verdict v;
  v.theorem_says = decide_boundedness(NewtonPolyhedron::build(p));
  v.scan = partial_sup_scan(p, xi3_grid, schedule, opts);
  std::vector<double> x, y;
  for (const auto& r : v.scan) {
    x.push_back(std::log2(static_cast<double>(r.n)));
    y.push_back(r.sup_abs);
  }
  v.fit = fit_line(x, y);
  v.empirics_say = classify_growth(v.fit);
  const bool bounded = v.theorem_says.bounded;
  v.agree = (bounded && v.empirics_say == Empirics::Bounded) || (!bounded && v.empirics_say == Empirics::Divergent);
  v.contradiction = (bounded && v.empirics_say == Empirics::Divergent) || (!bounded && v.empirics_say == Empirics::Bounded);
  return v;
}

Recomposition arc_recomposition(const Polynomial& p, const Frequency& xi3, long J, SumOptions opts) {
  if (J < 0 || J > 20) throw std::invalid_argument("recomposition grid limited to J <= 20");
  const NewtonPolyhedron n = NewtonPolyhedron::build(p);
  const DirichletSolver solver(xi3);
  const PhaseContext ctx = PhaseContext::xi3_only(xi3);
  std::array<CompensatedSum, 4> sums;
  Recomposition rec;
  for (long j1 = 0; j1 <= J; ++j1) {
    for (long j2 = 0; j2 <= J; ++j2) {
      const Exponent m = n.vertices()[n.dual_face_of(j1, j2)];
      const auto k = static_cast<std::size_t>(classify(j1, j2, solver, m, {true}).klass);
      sums[k].add(dyadic_piece(p, j1, j2, ctx, opts).value);
      ++rec.class_counts[k];
    }
  }
  CompensatedSum total;
  for (std::size_t k = 0; k < 4; ++k) {
    rec.class_sums[k] = sums[k].value();
    total.add(rec.class_sums[k]);
  }
  rec.recomposed = total.value();
  const std::int64_t side = std::int64_t{1} << J;
  rec.direct = hilbert_sum(p, side, side, ctx, opts).value;
  rec.residual = std::abs(rec.recomposed - rec.direct);
  return rec;
}

}  // namespace polyhilbert
