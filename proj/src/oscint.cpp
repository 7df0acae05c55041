#include "polyhilbert/oscint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>

#include "polyhilbert/numtheory.hpp"
#include "polyhilbert/summation.hpp"

namespace polyhilbert {

namespace cutoff {

namespace {
double psi(double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; }
}  // namespace

double step(double u) {
  if (u <= 0) return 0.0;
  if (u >= 1) return 1.0;
  const double a = psi(u), b = psi(1.0 - u);
  return a / (a + b);
}

double phi(double x) {
  const double ax = std::abs(x);
  if (ax <= 1) return 1.0;
  if (ax >= 2) return 0.0;
  return step(2.0 - ax);
}

double chi(double x) { return phi(x / 2) - phi(x); }

double chi_smooth(long j, double x) { return chi(std::ldexp(x, static_cast<int>(1 - j))); }

double ramp(double x) { return step(x + 0.5); }

double chi_sharp(long j, double x) {
  const double ax = std::abs(x);
  return ramp(ax - std::ldexp(1.0, static_cast<int>(j - 1))) * ramp(std::ldexp(1.0, static_cast<int>(j)) - ax);
}

}  // namespace cutoff

// ---------------------------------------------------------------------------
// Quadrature

namespace {

constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<std::complex<double>(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const std::complex<double> fc = f(c);
  std::complex<double> k = fc * kWgk[7], g = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[static_cast<std::size_t>(i)];
    const std::complex<double> s = f(c - dx) + f(c + dx);
    k += kWgk[static_cast<std::size_t>(i)] * s;
    if (i % 2 == 1) g += kWg[static_cast<std::size_t>(i / 2)] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a, double b, double tol,
                           std::size_t initial, std::size_t budget) {
  QuadratureResult res;
  if (!(b > a)) return res;
  initial = std::clamp<std::size_t>(initial, 1, std::max<std::size_t>(1, budget));
  std::priority_queue<Panel> heap;
  double total_err = 0;
  const double w = (b - a) / static_cast<double>(initial);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = a + w * static_cast<double>(i);
    const double hi = i + 1 == initial ? b : a + w * static_cast<double>(i + 1);
    Panel p = gk15(f, lo, hi);
    total_err += p.error;
    heap.push(p);
  }
  std::size_t panels = initial;
  std::size_t since_refresh = 0;
  // Error estimates cannot drop below the rounding floor of the panel sums.
  double magnitude = 0;
  {
    auto copy = heap;
    while (!copy.empty()) {
      magnitude += std::abs(copy.top().value);
      copy.pop();
    }
  }
  auto floor = [&] { return 64 * std::numeric_limits<double>::epsilon() * magnitude; };
  while (total_err > std::max(tol, floor()) && panels < budget) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // cannot split further
      heap.push(worst);
      break;
    }
    Panel l = gk15(f, worst.a, mid), r = gk15(f, mid, worst.b);
    total_err += l.error + r.error - worst.error;
    magnitude += std::abs(l.value) + std::abs(r.value) - std::abs(worst.value);
    heap.push(l);
    heap.push(r);
    ++panels;
    if (++since_refresh == 4096) {  // keep the running error free of drift
      since_refresh = 0;
      auto copy = heap;
      total_err = 0;
      while (!copy.empty()) {
        total_err += copy.top().error;
        copy.pop();
      }
    }
  }
  // Sum in interval order for reproducibility.
  std::vector<Panel> all;
  all.reserve(heap.size());
  total_err = 0;
  while (!heap.empty()) {
    all.push_back(heap.top());
    total_err += heap.top().error;
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum sum;
  for (const auto& p : all) sum.add(p.value);
  res.value = sum.value();
  res.error = total_err;
  res.converged = total_err <= std::max(tol, floor());
  res.panels = panels;
  return res;
}

std::size_t oscillation_panels(const std::function<double(double)>& phase_cycles, double a, double b,
                               std::size_t cap) {
  constexpr int kSamples = 512;
  double variation = 0, prev = phase_cycles(a);
  for (int i = 1; i <= kSamples; ++i) {
    const double x = a + (b - a) * i / kSamples;
    const double v = phase_cycles(x);
    variation += std::abs(v - prev);
    prev = v;
  }
  const double n = std::ceil(variation * 8.0);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::min(n, 1e15)), 1, std::max<std::size_t>(1, cap));
}

// ---------------------------------------------------------------------------

namespace {

struct Window {
  std::vector<double> breaks;  // panels of qualitatively different behaviour
};

Window window_for(long j, CutoffKind kind) {
  if (j < 0) throw std::invalid_argument("scale must be non-negative");
  if (j > 60) throw std::overflow_error("scale too large for double quadrature");
  if (kind == CutoffKind::Smooth) {
    const double lo = std::ldexp(1.0, static_cast<int>(j - 1));
    return {{lo, 2 * lo, 4 * lo}};
  }
  if (j == 0) return {{0.0, 0.5, 1.5}};
  const double lo = std::ldexp(1.0, static_cast<int>(j - 1)), hi = 2 * lo;
  if (hi - lo <= 1) return {{lo - 0.5, lo + 0.5, hi + 0.5}};
  return {{lo - 0.5, lo + 0.5, hi - 0.5, hi + 0.5}};
}

double window_value(long j, CutoffKind kind, double x) {
  return kind == CutoffKind::Smooth ? cutoff::chi_smooth(j, x) : cutoff::chi_sharp(j, x);
}

// Real-valued evaluation of P with long double accumulation.
struct RealPoly {
  struct Term {
    long double c;
    int m1, m2;
  };
  std::vector<Term> terms;

  explicit RealPoly(const Polynomial& p) {
    for (const auto& t : p.terms()) terms.push_back({static_cast<long double>(t.coefficient), t.exponent.m1, t.exponent.m2});
  }
  long double operator()(long double x1, long double x2) const {
    long double s = 0;
    for (const auto& t : terms) {
      long double v = t.c;
      for (int k = 0; k < t.m1; ++k) v *= x1;
      for (int k = 0; k < t.m2; ++k) v *= x2;
      s += v;
    }
    return s;
  }
};

std::complex<double> cis_cycles(long double cycles) {
  const long double f = cycles - std::floor(cycles);
  const double a = static_cast<double>(6.283185307179586476925286766559L * f);
  return {std::cos(a), std::sin(a)};
}

struct Piecewise {
  std::complex<double> value;
  double error = 0;
  bool converged = true;
  std::size_t panels = 0;
};

// Integrates over consecutive break intervals with oscillation-aware starts.
Piecewise integrate_pieces(const std::function<std::complex<double>(double)>& f,
                           const std::function<double(double)>& phase, const std::vector<double>& breaks, double tol,
                           std::size_t budget) {
  Piecewise out;
  const double total = breaks.back() - breaks.front();
  const double pieces = static_cast<double>(breaks.size() - 1);
  CompensatedSum sum;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    const double share = (b - a) / total;
    const std::size_t cap = std::max<std::size_t>(64, static_cast<std::size_t>(share * static_cast<double>(budget)));
    const std::size_t start = oscillation_panels(phase, a, b, cap / 2 + 1);
    const auto r = integrate(f, a, b, tol / pieces, start, cap);
    sum.add(r.value);
    out.error += r.error;
    out.converged = out.converged && r.converged;
    out.panels += r.panels;
  }
  out.value = sum.value();
  return out;
}

// int over the window of (x/scale)^a e(omega x) chi_j(x) dx / x, both signs of x unless one-sided.
OscIntegralResult moment(long j, const Window& win, int a, double scale, double omega, const OscOptions& opts) {
  const bool both = !opts.one_sided;
  const long double om = omega;
  const double parity = a % 2 == 0 ? 1.0 : -1.0;
  auto f = [&](double x) -> std::complex<double> {
    const double c = window_value(j, opts.cutoff, x) / x;
    if (c == 0) return {0.0, 0.0};
    std::complex<double> e = cis_cycles(om * x);
    if (both) e -= parity * cis_cycles(-om * x);
    return c * std::pow(x / scale, a) * e;
  };
  auto ph = [&](double x) { return static_cast<double>(om * x); };
  const auto r = integrate_pieces(f, ph, win.breaks, opts.tolerance, opts.panel_budget);
  return {r.value, r.error, !r.converged, r.panels};
}

// e(xi3 P) = sum_k (2 pi i xi3 P)^k / k!, truncated once the remainder is below
// tolerance; every term is separable. Returns nullopt when the series is not
// applicable (|xi3 P| may exceed 1/2 on the window).
std::optional<OscIntegralResult> osc_2d_series(const Polynomial& p, long j1, long j2, const Window& w1,
                                               const Window& w2, const std::array<double, 3>& xi,
                                               const OscOptions& opts) {
  const double s1 = std::max(std::abs(w1.breaks.front()), std::abs(w1.breaks.back()));
  const double s2 = std::max(std::abs(w2.breaks.front()), std::abs(w2.breaks.back()));
  // Q = xi3 P in the scaled variables u = x / s, |u| <= 1.
  using Key = std::pair<int, int>;
  std::map<Key, long double> q;
  long double bound = 0;
  for (const auto& t : p.terms()) {
    const long double c = static_cast<long double>(xi[2]) * static_cast<long double>(t.coefficient) *
                          std::pow(static_cast<long double>(s1), t.exponent.m1) *
                          std::pow(static_cast<long double>(s2), t.exponent.m2);
    q[{t.exponent.m1, t.exponent.m2}] += c;
    bound += std::abs(c);
  }
  if (!(bound <= 0.5L)) return std::nullopt;

  const double sides = opts.one_sided ? 1.0 : 2.0;
  auto log_span = [&](const Window& w) { return sides * std::log(w.breaks.back() / std::max(w.breaks.front(), 0.25)); };
  const double kernel = log_span(w1) * log_span(w2);  // bounds int int |chi chi| / |x1 x2|

  // T = sum_k (2 pi i)^k Q^k / k!
  constexpr long double kTwoPi = 6.283185307179586476925286766559L;
  std::map<Key, std::complex<long double>> total{{{0, 0}, 1.0L}};
  std::map<Key, std::complex<long double>> power{{{0, 0}, 1.0L}};
  long double term_bound = 1;
  int k = 0;
  double remainder = 0;
  for (;;) {
    ++k;
    term_bound *= kTwoPi * bound / k;
    if (term_bound * kernel < opts.tolerance / 16 || k > 200) {
      remainder = static_cast<double>(term_bound) * kernel * 2;
      break;
    }
    std::map<Key, std::complex<long double>> next;
    for (const auto& [e1, c1] : power)
      for (const auto& [e2, c2] : q) next[{e1.first + e2.first, e1.second + e2.second}] += c1 * c2 * std::complex<long double>(0, kTwoPi / k);
    power = std::move(next);
    for (const auto& [e, c] : power) total[e] += c;
  }

  long double weight = 0;
  for (const auto& [e, c] : total) weight += std::abs(c);
  OscOptions mo = opts;
  mo.tolerance = opts.tolerance / (8 * static_cast<double>(std::max(1.0L, weight)) * std::max(1.0, kernel));
  std::map<int, OscIntegralResult> m1, m2;
  OscIntegralResult out;
  CompensatedSum sum;
  double err = remainder;
  for (const auto& [e, c] : total) {
    auto it1 = m1.find(e.first);
    if (it1 == m1.end()) it1 = m1.emplace(e.first, moment(j1, w1, e.first, s1, xi[0], mo)).first;
    auto it2 = m2.find(e.second);
    if (it2 == m2.end()) it2 = m2.emplace(e.second, moment(j2, w2, e.second, s2, xi[1], mo)).first;
    const auto& a = it1->second;
    const auto& b = it2->second;
    const std::complex<double> cd(static_cast<double>(c.real()), static_cast<double>(c.imag()));
    sum.add(cd * a.value * b.value);
    err += std::abs(cd) * (a.quadrature_error * std::abs(b.value) + b.quadrature_error * std::abs(a.value) +
                           a.quadrature_error * b.quadrature_error);
    out.flagged = out.flagged || a.flagged || b.flagged;
  }
  for (const auto& [a, r] : m1) out.panels += r.panels;
  for (const auto& [a, r] : m2) out.panels += r.panels;
  out.value = sum.value();
  out.quadrature_error = err;
  return out;
}

}  // namespace

OscIntegralResult osc_1d(const Polynomial& p, std::int64_t t2, long j1, double beta, OscOptions opts) {
  if (j1 < 1) throw std::invalid_argument("osc_1d needs j1 >= 1");
  const RealPoly poly(p);
  const auto x2 = static_cast<long double>(t2);
  const long double b = beta;
  const Window win = window_for(j1, opts.cutoff);
  const bool both = !opts.one_sided;

  auto f = [&](double x) -> std::complex<double> {
    const double w = window_value(j1, opts.cutoff, x) / x;
    if (w == 0) return {0.0, 0.0};
    std::complex<double> e = cis_cycles(-b * poly(x, x2));
    if (both) e -= cis_cycles(-b * poly(-static_cast<long double>(x), x2));
    return w * e;
  };
  auto phase = [&](double x) {
    const double a = static_cast<double>(b * poly(x, x2));
    return both ? std::max(std::abs(a), std::abs(static_cast<double>(b * poly(-static_cast<long double>(x), x2)))) : a;
  };
  OscIntegralResult out;
  if (beta == 0 && both) return out;  // odd kernel against an even window
  const auto r = integrate_pieces(f, phase, win.breaks, opts.tolerance, opts.panel_budget);
  out.value = r.value;
  out.quadrature_error = r.error;
  out.flagged = !r.converged;
  out.panels = r.panels;
  return out;
}

OscIntegralResult osc_linear(long j, double a, OscOptions opts) {
  const Window win = window_for(j, opts.cutoff);
  const bool both = !opts.one_sided;
  const long double al = a;
  OscIntegralResult out;
  if (a == 0 && both) return out;
  auto f = [&](double x) -> std::complex<double> {
    const double c = window_value(j, opts.cutoff, x) / x;
    if (c == 0) return {0.0, 0.0};
    std::complex<double> e = cis_cycles(al * x);
    if (both) e -= cis_cycles(-al * x);
    return c * e;
  };
  auto ph = [&](double x) { return static_cast<double>(al * x); };
  const auto r = integrate_pieces(f, ph, win.breaks, opts.tolerance, opts.panel_budget);
  out.value = r.value;
  out.quadrature_error = r.error;
  out.flagged = !r.converged;
  out.panels = r.panels;
  return out;
}

OscIntegralResult osc_2d(const Polynomial& p, long j1, long j2, const std::array<double, 3>& xi, OscOptions opts) {
  const RealPoly poly(p);
  const Window w1 = window_for(j1, opts.cutoff), w2 = window_for(j2, opts.cutoff);
  const bool all = !opts.one_sided;
  OscIntegralResult out;
  if (all && xi[0] == 0 && xi[1] == 0 && xi[2] == 0) return out;

  const long double a1 = xi[0], a2 = xi[1], a3 = xi[2];
  const double area1 = w1.breaks.back() - w1.breaks.front();
  if (xi[2] == 0) {
    // Separable: the integral is a product of two one-dimensional transforms.
    OscOptions half = opts;
    half.tolerance = opts.tolerance / 4;
    half.panel_budget = opts.panel_budget / 2;
    const auto f1 = osc_linear(j1, xi[0], half), f2 = osc_linear(j2, xi[1], half);
    out.value = f1.value * f2.value;
    out.quadrature_error = f1.quadrature_error * std::abs(f2.value) + f2.quadrature_error * std::abs(f1.value) +
                           f1.quadrature_error * f2.quadrature_error;
    out.flagged = f1.flagged || f2.flagged;
    out.panels = f1.panels + f2.panels;
    return out;
  }

  if (opts.series) {
    if (auto r = osc_2d_series(p, j1, j2, w1, w2, xi, opts)) return *r;
  }

  // Nested adaptive quadrature: outer in x2, inner in x1.
  std::size_t inner_panels = 0;
  bool inner_ok = true;
  const std::size_t inner_budget = std::max<std::size_t>(64, opts.panel_budget / 256);
  auto inner = [&](double x2) -> std::complex<double> {
    const double c2 = window_value(j2, opts.cutoff, x2) / x2;
    if (c2 == 0) return {0.0, 0.0};
    const long double y2 = x2;
    auto f = [&](double x1) -> std::complex<double> {
      const double c1 = window_value(j1, opts.cutoff, x1) / x1;
      if (c1 == 0) return {0.0, 0.0};
      const long double y1 = x1;
      std::complex<double> e = cis_cycles(a1 * y1 + a2 * y2 + a3 * poly(y1, y2));
      if (all) {
        e -= cis_cycles(-a1 * y1 + a2 * y2 + a3 * poly(-y1, y2));
        e -= cis_cycles(a1 * y1 - a2 * y2 + a3 * poly(y1, -y2));
        e += cis_cycles(-a1 * y1 - a2 * y2 + a3 * poly(-y1, -y2));
      }
      return c1 * e;
    };
    auto ph = [&](double x1) {
      const long double y1 = x1;
      return static_cast<double>(std::max(std::abs(a1 * y1 + a3 * poly(y1, y2)), std::abs(-a1 * y1 + a3 * poly(-y1, y2))));
    };
    const auto r = integrate_pieces(f, ph, w1.breaks, opts.tolerance / (4 * area1 + 1), inner_budget);
    inner_panels += r.panels;
    inner_ok = inner_ok && r.converged;
    return c2 * r.value;
  };
  auto outer_phase = [&](double x2) {
    const long double y2 = x2, y1 = w1.breaks[w1.breaks.size() / 2];
    return static_cast<double>(std::abs(a2 * y2 + a3 * poly(y1, y2)));
  };
  const auto r = integrate_pieces(inner, outer_phase, w2.breaks, opts.tolerance / 2,
                                  std::max<std::size_t>(64, opts.panel_budget / inner_budget));
  out.value = r.value;
  out.quadrature_error = r.error + opts.tolerance / 2;
  out.flagged = !(r.converged && inner_ok);
  out.panels = r.panels + inner_panels;
  return out;
}

DecayTable decay_probe(const Polynomial& p, Exponent vertex, const std::vector<std::array<long, 2>>& ray, double xi3,
                       OscOptions opts) {
  DecayTable t;
  double run_abs = 0, run_sqrt = 0;
  std::complex<double> run_signed;
  std::vector<std::pair<double, double>> fit;
  for (const auto& j : ray) {
    DecayRow row;
    row.j1 = j[0];
    row.j2 = j[1];
    row.scaled_frequency = std::abs(xi3) * std::exp2(static_cast<double>(j[0] * vertex.m1 + j[1] * vertex.m2));
    if (xi3 != 0) {
      const auto r = osc_2d(p, j[0], j[1], {0.0, 0.0, xi3}, opts);
      row.value = r.value;
      row.flagged = r.flagged;
    }
    row.magnitude = std::abs(row.value);
    run_abs += row.magnitude;
    run_sqrt += std::sqrt(row.magnitude);
    run_signed += row.value;
    row.running_abs = run_abs;
    row.running_sqrt = run_sqrt;
    row.running_signed = run_signed;
    if (!row.flagged && row.scaled_frequency > 1 && row.magnitude > 0) fit.emplace_back(row.scaled_frequency, row.magnitude);
    t.rows.push_back(row);
  }
  if (fit.size() >= 3) {
    const auto d = fit_decay(fit);
    t.fitted_rate = d.exponent;
    t.r_squared = d.r_squared;
  }
  t.fitted_points = fit.size();
  return t;
}

}  // namespace polyhilbert
