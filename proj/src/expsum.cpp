#include "polyhilbert/expsum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include <boost/integer/common_factor.hpp>

#include "polyhilbert/summation.hpp"

namespace polyhilbert {

// ---------------------------------------------------------------------------
// PhaseContext

PhaseContext::PhaseContext(Frequency xi1, Frequency xi2, Frequency xi3) : xi_{std::move(xi1), std::move(xi2), std::move(xi3)} {
  bool dyadic = true;
  BigInt q = 1;
  for (const auto& f : xi_) {
    dyadic = dyadic && f.is_dyadic128();
    q = boost::multiprecision::lcm(q, f.den());
  }
  for (std::size_t i = 0; i < 3; ++i) fixed_[i] = xi_[i].fixed128();
  if (dyadic) return;
  if (q < (BigInt(1) << 62)) {
    ring_ = Ring::ModQ;
    modulus_ = static_cast<std::uint64_t>(q);
    for (std::size_t i = 0; i < 3; ++i) {
      residues_[i] = mod_u64(xi_[i].num() * (q / xi_[i].den()), modulus_);
    }
    return;
  }
  exact_ = false;
}

unsigned default_workers() {
  if (const char* env = std::getenv("POLYHILBERT_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(std::min(v, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

enum class Kernel { Inverse, Unit };

struct Plan {
  AxisRange r1, r2;
  Kernel kernel = Kernel::Inverse;
  bool all_quadrants = true;
  int sign = -1;                       // e^{sign 2 pi i phase}
  std::vector<std::int64_t> breaks;    // ascending upper ends of nested squares; empty: one bin
  unsigned workers = 0;
};

// Digamma difference psi(x + n) - psi(x) = sum_{k<n} 1/(x + k), x > 0.
long double digamma_tail(long double z) {
  const long double f = 1.0L / (z * z);
  return f * (1.0L / 12 - f * (1.0L / 120 - f * (1.0L / 252 - f * (1.0L / 240 - f / 132))));
}

long double digamma_diff(long double x, std::int64_t n) {
  long double acc = 0;
  if (n <= 48) {
    for (std::int64_t k = n - 1; k >= 0; --k) acc += 1.0L / (x + static_cast<long double>(k));
    return acc;
  }
  while (x < 16 && n > 0) {
    acc += 1.0L / x;
    x += 1;
    --n;
  }
  const long double y = x + static_cast<long double>(n);
  acc += log1pl(static_cast<long double>(n) / x) - 0.5L / y + 0.5L / x - (digamma_tail(y) - digamma_tail(x));
  return acc;
}

// Sum of w(t) over t in [lo, hi] with t = r mod q.
long double progression_weight(Kernel k, std::int64_t lo, std::int64_t hi, std::uint64_t r, std::uint64_t q) {
  const auto qi = static_cast<std::int64_t>(q);
  std::int64_t t0 = lo + ((static_cast<std::int64_t>(r) - lo % qi) % qi + qi) % qi;
  if (t0 > hi) return 0;
  const std::int64_t n = (hi - t0) / qi + 1;
  if (k == Kernel::Unit) return static_cast<long double>(n);
  return digamma_diff(static_cast<long double>(t0) / qi, n) / qi;
}

double axis_weight(Kernel k, const AxisRange& r, std::int64_t t) {
  double w = k == Kernel::Inverse ? 1.0 / static_cast<double>(t) : 1.0;
  if ((t == r.lo && r.half_lo) || (t == r.hi && r.half_hi)) w *= 0.5;
  return w;
}

// Phase coefficients of one row P(., t2) (already multiplied by xi3, with the
// linear terms folded in) in the active ring.
class RowPhase {
 public:
  RowPhase(const Polynomial& p, const PhaseContext& ctx) : ctx_(ctx), deg_(std::max(1, p.degree_t1())) {
    for (const auto& t : p.terms()) {
      terms_.push_back({t.exponent.m1, t.exponent.m2, wrap_u128(t.coefficient),
                        ctx.modulus() ? mod_u64(t.coefficient, *ctx.modulus()) : 0});
    }
    wrap_.assign(static_cast<std::size_t>(deg_ + 1), 0);
    mod_.assign(static_cast<std::size_t>(deg_ + 1), 0);
  }

  void set_row(std::int64_t t2) {
    if (ctx_.ring() == PhaseContext::Ring::ModQ) {
      const std::uint64_t q = *ctx_.modulus();
      std::fill(mod_.begin(), mod_.end(), 0);
      const std::uint64_t x2 = reduce(t2, q);
      const auto& a = ctx_.residues();
      for (const auto& t : terms_) {
        u128 v = t.cmod;
        for (int k = 0; k < t.m2; ++k) v = mulmod(v, x2, q);
        auto& slot = mod_[static_cast<std::size_t>(t.m1)];
        slot = static_cast<std::uint64_t>((slot + mulmod(v, a[2], q)) % q);
      }
      mod_[1] = static_cast<std::uint64_t>((static_cast<u128>(mod_[1]) + a[0]) % q);
      mod_[0] = static_cast<std::uint64_t>((static_cast<u128>(mod_[0]) + mulmod(a[1], x2, q)) % q);
    } else {
      std::fill(wrap_.begin(), wrap_.end(), 0);
      const u128 x2 = static_cast<u128>(static_cast<__int128>(t2));
      const auto& f = ctx_.fixed();
      for (const auto& t : terms_) {
        u128 v = t.cwrap;
        for (int k = 0; k < t.m2; ++k) v *= x2;
        wrap_[static_cast<std::size_t>(t.m1)] += v * f[2];
      }
      wrap_[1] += f[0];
      wrap_[0] += f[1] * x2;
    }
  }

  /// Phase at t1 as a fraction of 2^64.
  std::uint64_t frac(std::int64_t t1) const {
    if (ctx_.ring() == PhaseContext::Ring::ModQ) {
      const std::uint64_t q = *ctx_.modulus();
      const std::uint64_t x = reduce(t1, q);
      u128 acc = mod_[static_cast<std::size_t>(deg_)];
      for (int i = deg_ - 1; i >= 0; --i) acc = (mulmod(acc, x, q) + mod_[static_cast<std::size_t>(i)]) % q;
      return residue_to_frac64(static_cast<std::uint64_t>(acc), q);
    }
    const u128 x = static_cast<u128>(static_cast<__int128>(t1));
    u128 acc = wrap_[static_cast<std::size_t>(deg_)];
    for (int i = deg_ - 1; i >= 0; --i) acc = acc * x + wrap_[static_cast<std::size_t>(i)];
    return frac64(acc);
  }

 private:
  static std::uint64_t reduce(std::int64_t v, std::uint64_t q) {
    __int128 r = static_cast<__int128>(v) % static_cast<__int128>(q);
    if (r < 0) r += q;
    return static_cast<std::uint64_t>(r);
  }

  struct Term {
    int m1, m2;
    u128 cwrap;
    std::uint64_t cmod;
  };
  const PhaseContext& ctx_;
  int deg_;
  std::vector<Term> terms_;
  std::vector<u128> wrap_;
  std::vector<std::uint64_t> mod_;
};

inline std::complex<double> phase_value(std::uint64_t frac, int sign) {
  return unit_phase(sign < 0 ? std::uint64_t{0} - frac : frac);
}

struct Tile {
  std::int64_t row_lo, row_hi, col_lo, col_hi;
};

struct TileResult {
  std::vector<CompensatedSum> bins;
  double weight = 0;  // sum of |weights| over positive points
  std::uint64_t terms = 0;
};

constexpr std::int64_t kTileRows = 16;
constexpr std::int64_t kTileCols = 1 << 16;
constexpr std::uint64_t kFastModulus = 4096;

std::size_t bin_of(const std::vector<std::int64_t>& breaks, std::int64_t t) {
  if (breaks.empty()) return 0;
  return static_cast<std::size_t>(std::lower_bound(breaks.begin(), breaks.end(), t) - breaks.begin());
}

class Engine {
 public:
  Engine(const Polynomial& p, const PhaseContext& ctx, Plan plan) : p_(p), ctx_(ctx), plan_(std::move(plan)) {
    const auto& r1 = plan_.r1;
    fast_ = ctx_.ring() == PhaseContext::Ring::ModQ && *ctx_.modulus() <= kFastModulus &&
            r1.hi - r1.lo + 1 >= static_cast<std::int64_t>(8 * *ctx_.modulus());
    const std::int64_t width = fast_ ? r1.hi - r1.lo + 1 : kTileCols;
    for (std::int64_t r = plan_.r2.lo; r <= plan_.r2.hi; r += kTileRows) {
      for (std::int64_t c = r1.lo; c <= r1.hi; c += width) {
        tiles_.push_back({r, std::min(plan_.r2.hi, r + kTileRows - 1), c, std::min(r1.hi, c + width - 1)});
        if (c > r1.hi - width) break;
      }
      if (r > plan_.r2.hi - kTileRows) break;
    }
    nbins_ = plan_.breaks.empty() ? 1 : plan_.breaks.size();
  }

  std::vector<SumResult> run() {
    std::vector<TileResult> results(tiles_.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(plan_.workers ? plan_.workers : default_workers(),
                                                             static_cast<unsigned>(tiles_.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      RowPhase plus(p_, ctx_), minus(p_, ctx_);
      for (std::size_t i = next++; i < tiles_.size(); i = next++) results[i] = run_tile(tiles_[i], plus, minus);
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }

    std::vector<SumResult> out(nbins_);
    double weight = 0;
    std::uint64_t terms = 0;
    for (const auto& r : results) {
      weight += r.weight;
      terms += r.terms;
    }
    for (std::size_t b = 0; b < nbins_; ++b) {
      std::vector<CompensatedSum> parts;
      parts.reserve(results.size());
      for (const auto& r : results) parts.push_back(r.bins[b]);
      out[b].value = pairwise_reduce(std::move(parts)).value();
    }
    // Each phase carries at most ~4e-16 absolute error; rounding in the
    // weighted accumulation adds a few ulps per quadrant.
    const double quadrants = plan_.all_quadrants ? 4.0 : 1.0;
    const double bound = quadrants * weight * 1e-15 + 1e-300;
    for (auto& r : out) {
      r.abs_error_bound = bound;
      r.terms = terms;
    }
    return out;
  }

 private:
  TileResult run_tile(const Tile& tile, RowPhase& plus, RowPhase& minus) const {
    TileResult res;
    res.bins.resize(nbins_);
    const bool all = plan_.all_quadrants;
    for (std::int64_t t2 = tile.row_lo; t2 <= tile.row_hi; ++t2) {
      const double w2 = axis_weight(plan_.kernel, plan_.r2, t2);
      const std::size_t row_bin = bin_of(plan_.breaks, t2);
      plus.set_row(t2);
      if (all) minus.set_row(-t2);
      // Split the tile columns at the nested-square boundaries.
      std::int64_t lo = tile.col_lo;
      while (lo <= tile.col_hi) {
        const std::size_t seg_bin = bin_of(plan_.breaks, lo);
        std::int64_t hi = tile.col_hi;
        if (seg_bin < plan_.breaks.size()) hi = std::min(hi, plan_.breaks[seg_bin]);
        const std::size_t bin = nbins_ == 1 ? 0 : std::min(nbins_ - 1, std::max(row_bin, seg_bin));
        if (row_bin < nbins_ || plan_.breaks.empty()) {
          if (fast_) {
            segment_fast(lo, hi, w2, plus, minus, res.bins[bin], res.weight);
          } else {
            segment_direct(lo, hi, w2, plus, minus, res.bins[bin], res.weight);
          }
          res.terms += static_cast<std::uint64_t>(hi - lo + 1) * (all ? 4 : 1);
        }
        lo = hi + 1;
      }
    }
    return res;
  }

  void segment_direct(std::int64_t lo, std::int64_t hi, double w2, const RowPhase& plus, const RowPhase& minus,
                      CompensatedSum& acc, double& weight) const {
    const int s = plan_.sign;
    for (std::int64_t t1 = lo; t1 <= hi; ++t1) {
      const double w = axis_weight(plan_.kernel, plan_.r1, t1) * w2;
      weight += std::abs(w);
      std::complex<double> e = phase_value(plus.frac(t1), s);
      if (plan_.all_quadrants) {
        e = (e - phase_value(plus.frac(-t1), s)) - (phase_value(minus.frac(t1), s) - phase_value(minus.frac(-t1), s));
      }
      acc.add(w * e);
    }
  }

  // Rational split: the phase depends on t1 only through t1 mod q, so each
  // residue class is weighted by a closed-form progression sum.
  void segment_fast(std::int64_t lo, std::int64_t hi, double w2, const RowPhase& plus, const RowPhase& minus,
                    CompensatedSum& acc, double& weight) const {
    const std::uint64_t q = *ctx_.modulus();
    const int s = plan_.sign;
    const auto qi = static_cast<std::int64_t>(q);
    std::vector<long double> mass(q, 0.0L);
    for (std::uint64_t r = 0; r < q; ++r) mass[r] = progression_weight(plan_.kernel, lo, hi, r, q);
    auto unhalve = [&](std::int64_t t, bool flagged, std::int64_t end) {
      if (flagged && t == end) {
        mass[static_cast<std::size_t>(t % qi)] -= 0.5L * (plan_.kernel == Kernel::Inverse ? 1.0L / t : 1.0L);
      }
    };
    unhalve(lo, plan_.r1.half_lo, plan_.r1.lo);
    if (hi != lo || !(plan_.r1.half_lo && lo == plan_.r1.lo)) unhalve(hi, plan_.r1.half_hi, plan_.r1.hi);
    for (std::uint64_t r = 0; r < q; ++r) {
      const auto t = static_cast<std::int64_t>(r);
      std::complex<double> e = phase_value(plus.frac(t), s);
      if (plan_.all_quadrants) {
        e = (e - phase_value(plus.frac(-t), s)) - (phase_value(minus.frac(t), s) - phase_value(minus.frac(-t), s));
      }
      const double m = static_cast<double>(mass[r]) * w2;
      weight += std::abs(m);
      acc.add(m * e);
    }
  }

  const Polynomial& p_;
  const PhaseContext& ctx_;
  Plan plan_;
  bool fast_ = false;
  std::vector<Tile> tiles_;
  std::size_t nbins_ = 1;
};

bool even_in(const Polynomial& p, bool t1) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [&](const Monomial& m) { return (t1 ? m.exponent.m1 : m.exponent.m2) % 2 == 0; });
}

// With all four quadrants the kernel is odd in each variable; if the phase is
// even in one of them the sum vanishes identically.
bool vanishes_by_symmetry(const Polynomial& p, const PhaseContext& ctx) {
  return (ctx.xi()[0].is_zero() && even_in(p, true)) || (ctx.xi()[1].is_zero() && even_in(p, false));
}

void check_range(const AxisRange& r) {
  if (r.lo < 1 || r.hi < r.lo) throw std::invalid_argument("box ranges must be non-empty and positive");
  if (r.hi > (std::int64_t{1} << 40)) throw std::overflow_error("box range beyond the summation budget");
}

std::vector<SumResult> run_plan(const Polynomial& p, const PhaseContext& ctx, Plan plan) {
  check_range(plan.r1);
  check_range(plan.r2);
  if (plan.all_quadrants && vanishes_by_symmetry(p, ctx)) {
    std::vector<SumResult> out(plan.breaks.empty() ? 1 : plan.breaks.size());
    for (std::size_t b = 0; b < out.size(); ++b) {
      const auto n1 = plan.breaks.empty() ? plan.r1.hi : std::min(plan.breaks[b], plan.r1.hi);
      const auto n2 = plan.breaks.empty() ? plan.r2.hi : std::min(plan.breaks[b], plan.r2.hi);
      out[b].terms = static_cast<std::uint64_t>(4 * (n1 - plan.r1.lo + 1) * (n2 - plan.r2.lo + 1));
    }
    return out;
  }
  Engine engine(p, ctx, std::move(plan));
  return engine.run();
}

AxisRange dyadic_axis(long j) {
  if (j < 0) throw std::invalid_argument("dyadic index must be non-negative");
  if (j > 40) throw std::overflow_error("dyadic index beyond the summation budget");
  if (j == 0) return {1, 1};
  return {(std::int64_t{1} << (j - 1)) + 1, std::int64_t{1} << j};
}

AxisRange sharp_axis(long j) {
  if (j < 0) throw std::invalid_argument("dyadic index must be non-negative");
  if (j > 40) throw std::overflow_error("dyadic index beyond the summation budget");
  if (j == 0) return {1, 1, false, true};
  return {std::int64_t{1} << (j - 1), std::int64_t{1} << j, true, true};
}

}  // namespace

SumResult box_sum(const Polynomial& p, const AxisRange& r1, const AxisRange& r2, const PhaseContext& xi,
                  SumOptions opts) {
  Plan plan{r1, r2, Kernel::Inverse, opts.quadrants == Quadrants::All, -1, {}, opts.workers};
  return run_plan(p, xi, std::move(plan)).front();
}

SumResult hilbert_sum(const Polynomial& p, std::int64_t n1, std::int64_t n2, const PhaseContext& xi,
                      SumOptions opts) {
  return box_sum(p, {1, n1}, {1, n2}, xi, opts);
}

SumResult dyadic_piece(const Polynomial& p, long j1, long j2, const PhaseContext& xi, SumOptions opts) {
  return box_sum(p, dyadic_axis(j1), dyadic_axis(j2), xi, opts);
}

SumResult sharp_block(const Polynomial& p, long j1, long j2, const PhaseContext& xi, SumOptions opts) {
  return box_sum(p, sharp_axis(j1), sharp_axis(j2), xi, opts);
}

SumResult weyl_sum(const Polynomial& p, const AxisRange& r1, const AxisRange& r2, const PhaseContext& xi,
                   SumOptions opts) {
  Plan plan{r1, r2, Kernel::Unit, false, +1, {}, opts.workers};
  return run_plan(p, xi, std::move(plan)).front();
}

std::vector<SumResult> nested_sums(const Polynomial& p, const std::vector<std::int64_t>& schedule,
                                   const PhaseContext& xi, SumOptions opts) {
  if (schedule.empty()) return {};
  if (!std::is_sorted(schedule.begin(), schedule.end()) ||
      std::adjacent_find(schedule.begin(), schedule.end()) != schedule.end() || schedule.front() < 1) {
    throw std::invalid_argument("schedule must be strictly increasing and positive");
  }
  const std::int64_t n = schedule.back();
  Plan plan{{1, n}, {1, n}, Kernel::Inverse, opts.quadrants == Quadrants::All, -1, schedule, opts.workers};
  auto shells = run_plan(p, xi, std::move(plan));
  // Shell k holds max(t1, t2) in (N_{k-1}, N_k]; prefix sums give the squares.
  std::vector<SumResult> out(shells.size());
  CompensatedSum acc;
  for (std::size_t k = 0; k < shells.size(); ++k) {
    acc.add(shells[k].value);
    out[k].value = acc.value();
    const double frac = static_cast<double>(schedule[k]) / static_cast<double>(n);
    out[k].abs_error_bound = shells.back().abs_error_bound;
    out[k].terms = static_cast<std::uint64_t>(4.0 * frac * frac * static_cast<double>(n) * static_cast<double>(n) /
                                              (opts.quadrants == Quadrants::All ? 1.0 : 4.0));
  }
  return out;
}

std::vector<ScanRow> partial_sup_scan(const Polynomial& p, const std::vector<Frequency>& xi3_grid,
                                      const std::vector<std::int64_t>& schedule, SumOptions opts) {
  std::vector<ScanRow> rows(schedule.size());
  for (std::size_t k = 0; k < schedule.size(); ++k) rows[k].n = schedule[k];
  std::vector<double> current(schedule.size(), -1.0);
  for (const auto& xi3 : xi3_grid) {
    const auto sums = nested_sums(p, schedule, PhaseContext::xi3_only(xi3), opts);
    for (std::size_t k = 0; k < sums.size(); ++k) {
      const double a = std::abs(sums[k].value);
      if (a > current[k]) {
        current[k] = a;
        rows[k].argmax_xi3 = xi3.to_double();
      }
    }
  }
  double running = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    running = std::max(running, std::max(0.0, current[k]));
    rows[k].sup_abs = running;
  }
  return rows;
}

std::vector<Frequency> default_xi3_grid(std::size_t n, double log2_lo) {
  if (n == 0) return {};
  if (n == 1) return {Frequency::rational(1, 2)};
  std::vector<Frequency> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = -log2_lo + (log2_lo - 1.0) * static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back(Frequency::from_double(std::exp2(e)));
  }
  out.back() = Frequency::rational(1, 2);
  return out;
}

double weyl_rectangle_sup(const Polynomial& p, const AxisRange& r1, const AxisRange& r2, const PhaseContext& xi) {
  check_range(r1);
  check_range(r2);
  const std::int64_t w = r1.hi - r1.lo + 1, h = r2.hi - r2.lo + 1;
  if (static_cast<double>(w) * static_cast<double>(h) > std::ldexp(1.0, 26)) {
    throw std::overflow_error("rectangle scan beyond its budget");
  }
  RowPhase row(p, xi);
  std::vector<std::complex<double>> column(static_cast<std::size_t>(w));
  double sup = 0;
  for (std::int64_t t2 = r2.lo; t2 <= r2.hi; ++t2) {
    row.set_row(t2);
    std::complex<double> prefix;
    for (std::int64_t t1 = r1.lo; t1 <= r1.hi; ++t1) {
      prefix += phase_value(row.frac(t1), +1);
      auto& c = column[static_cast<std::size_t>(t1 - r1.lo)];
      c += prefix;
      sup = std::max(sup, std::abs(c));
    }
  }
  return sup;
}

double differencing_identity_check(const Polynomial& p, const Frequency& xi3, std::int64_t t1, std::int64_t a,
                                   std::int64_t b) {
  if (b < a) throw std::invalid_argument("empty range");
  if (b - a > 64) throw std::invalid_argument("differencing check is limited to ranges of length 65");
  const PhaseContext ctx = PhaseContext::xi3_only(xi3);
  auto phase_of = [&](const Polynomial& poly, std::int64_t t2) {
    RowPhase row(poly, ctx);
    row.set_row(t2);
    return phase_value(row.frac(t1), +1);
  };
  CompensatedSum lhs;
  for (std::int64_t t2 = a; t2 <= b; ++t2) lhs.add(phase_of(p, t2));
  const double lhs_sq = std::norm(lhs.value());

  CompensatedSum rhs;
  for (std::int64_t r = -(b - a); r <= b - a; ++r) {
    const Polynomial d = p.shift_t2(BigInt(r)) - p;
    for (std::int64_t t2 = std::max(a, a - r); t2 <= std::min(b, b - r); ++t2) rhs.add(phase_of(d, t2));
  }
  return std::abs(std::complex<double>(lhs_sq, 0.0) - rhs.value());
}

}  // namespace polyhilbert
