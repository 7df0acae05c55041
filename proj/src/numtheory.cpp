#include "polyhilbert/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "polyhilbert/frequency.hpp"
#include "polyhilbert/summation.hpp"

namespace polyhilbert {

namespace {

std::uint64_t reduce(std::int64_t v, std::uint64_t q) {
  __int128 r = static_cast<__int128>(v) % static_cast<__int128>(q);
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

std::vector<std::complex<double>> roots_table(std::uint64_t q) {
  std::vector<std::complex<double>> t(q);
  for (std::uint64_t r = 0; r < q; ++r) t[r] = root_of_unity(r, q);
  return t;
}

// Residues of the t1-coefficients of P(., t2) mod q.
std::vector<std::uint64_t> row_mod(const Polynomial& p, std::int64_t t2, std::uint64_t q) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(std::max(0, p.degree_t1() + 1)), 0);
  const std::uint64_t x2 = reduce(t2, q);
  for (const auto& t : p.terms()) {
    u128 v = mod_u64(t.coefficient, q);
    for (int k = 0; k < t.exponent.m2; ++k) v = mulmod(v, x2, q);
    auto& slot = out[static_cast<std::size_t>(t.exponent.m1)];
    slot = static_cast<std::uint64_t>((static_cast<u128>(slot) + v) % q);
  }
  return out;
}

std::uint64_t horner_mod(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t q) {
  u128 acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = (mulmod(acc, x, q) + c[i]) % q;
  return static_cast<std::uint64_t>(acc);
}

GaussSumValue fiber_with_table(const Polynomial& p, std::int64_t t2, std::int64_t a, std::uint64_t q,
                               const std::vector<std::complex<double>>& table) {
  const auto row = row_mod(p, t2, q);
  const std::uint64_t ar = reduce(a, q);
  CompensatedSum sum;
  for (std::uint64_t t1 = 1; t1 <= q; ++t1) {
    const std::uint64_t r = static_cast<std::uint64_t>(mulmod(ar, horner_mod(row, t1 % q, q), q));
    sum.add(table[r]);
  }
  GaussSumValue g;
  g.value = sum.value() / static_cast<double>(q);
  g.q = q;
  g.a = a;
  g.t2 = t2;
  g.magnitude = std::abs(g.value);
  return g;
}

void check_modulus(std::int64_t a, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("q must be positive");
  if (std::gcd(reduce(a, q), q) != 1) throw std::invalid_argument("a and q must be coprime");
}

}  // namespace

GaussSumValue gauss_fiber(const Polynomial& p, std::int64_t t2, std::int64_t a, std::uint64_t q) {
  check_modulus(a, q);
  return fiber_with_table(p, t2, a, q, roots_table(q));
}

GaussAverage gauss_fiber_average(const Polynomial& p, int j2, std::int64_t a, std::uint64_t q) {
  check_modulus(a, q);
  if (j2 < 1 || j2 > 40) throw std::overflow_error("fiber scale out of range");
  const auto table = roots_table(q);
  const std::int64_t lo = (std::int64_t{1} << (j2 - 1)) + 1;
  const std::int64_t hi = std::int64_t{1} << j2;
  const int top = p.degree_t1();

  GaussAverage out;
  CompensatedSum sum;
  for (std::int64_t t2 = lo; t2 <= hi; ++t2) {
    const auto g = fiber_with_table(p, t2, a, q, table);
    sum.add(g.magnitude);
    ++out.fibers;
    if (top >= 0 && row_mod(p, t2, q)[static_cast<std::size_t>(top)] == 0) ++out.degenerate;
  }
  out.average = sum.value().real() / static_cast<double>(out.fibers);
  return out;
}

std::vector<GaussTableRow> gauss_decay_table(const Polynomial& p, int j2, const std::vector<std::uint64_t>& moduli,
                                             std::int64_t a) {
  std::vector<GaussTableRow> out;
  for (const std::uint64_t q : moduli) {
    const auto avg = gauss_fiber_average(p, j2, a, q);
    const auto top = gauss_fiber(p, std::int64_t{1} << j2, a, q);
    out.push_back({q, a, avg.average, top.magnitude, avg.degenerate});
  }
  return out;
}

GaussSumValue gauss_full(const Polynomial& p, std::int64_t a, std::uint64_t q, std::int64_t w1, std::int64_t w2) {
  check_modulus(a, q);
  const auto table = roots_table(q);
  const std::uint64_t ar = reduce(a, q), w1r = reduce(w1, q), w2r = reduce(w2, q);
  CompensatedSum sum;
  for (std::uint64_t l2 = 1; l2 <= q; ++l2) {
    const auto row = row_mod(p, static_cast<std::int64_t>(l2), q);
    for (std::uint64_t l1 = 1; l1 <= q; ++l1) {
      const u128 phase = mulmod(ar, horner_mod(row, l1 % q, q), q);
      const u128 lin = (mulmod(w1r, l1, q) + mulmod(w2r, l2, q)) % q;
      // exponent is -(aP - w.l)/q = (w.l - aP)/q
      const auto r = static_cast<std::uint64_t>((lin + q - phase) % q);
      sum.add(table[r]);
    }
  }
  GaussSumValue g;
  g.value = sum.value() / (static_cast<double>(q) * static_cast<double>(q));
  g.q = q;
  g.a = a;
  g.magnitude = std::abs(g.value);
  return g;
}

std::uint64_t count_congruence_roots(const std::vector<BigInt>& g, std::uint64_t p, int alpha) {
  if (p < 2 || alpha < 1) throw std::invalid_argument("need prime p and alpha >= 1");
  std::uint64_t modulus = 1;
  for (int i = 0; i < alpha; ++i) {
    modulus *= p;
    if (modulus > 1000000) throw std::overflow_error("p^alpha exceeds the exhaustive budget");
  }
  std::vector<std::uint64_t> c;
  c.reserve(g.size());
  for (const auto& v : g) c.push_back(mod_u64(v, modulus));
  std::uint64_t count = 0;
  for (std::uint64_t t = 1; t <= modulus; ++t) {
    if (horner_mod(c, t % modulus, modulus) == 0) ++count;
  }
  return count;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("degenerate fit: all abscissae equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  const double ss_res = std::max(0.0, syy - f.slope * sxy);
  // Relative threshold: constant data gives syy of pure rounding noise.
  f.r_squared = syy <= 1e-28 * std::max(1.0, my * my) * n ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return f;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) throw std::invalid_argument("fit_decay needs at least 3 samples");
  std::vector<double> lx, ly;
  double qmin = INFINITY, qmax = -INFINITY;
  for (const auto& [q, v] : samples) {
    if (!(q > 0) || !(v > 0)) throw std::invalid_argument("fit_decay needs positive q and values");
    lx.push_back(std::log(q));
    ly.push_back(std::log(v));
    qmin = std::min(qmin, q);
    qmax = std::max(qmax, q);
  }
  if (qmin == qmax) throw std::invalid_argument("degenerate fit: all q equal");
  const LineFit f = fit_line(lx, ly);
  return {-f.slope, std::exp(f.intercept), f.r_squared, {qmin, qmax}};
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k <= n; ++k) {
    if (is_prime(k)) out.push_back(k);
  }
  return out;
}

}  // namespace polyhilbert
