#include "polyhilbert/rational.hpp"

#include <cmath>
#include <set>
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

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Nearest integer to num/den; exact halves go down, or to even when requested.
BigInt nearest(const BigInt& num, const BigInt& den, bool ties_to_even) {
  BigInt f = floor_div(num, den);
  const BigInt rem2 = 2 * (num - f * den);
  if (rem2 > den || (rem2 == den && ties_to_even && (f & 1) != 0)) f += 1;
  return f;
}

constexpr long double kLogMargin = 1e-9L;

}  // namespace

Height Height::integer(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("height must be at least 1");
  return Height(0, n);
}

Height Height::dyadic_for(long j1, long j2, Exponent vertex) {
  if (j1 < 0 || j2 < 0) throw std::invalid_argument("dyadic index must be non-negative");
  const long jm = j1 * vertex.m1 + j2 * vertex.m2;
  if (jm > kExponentBudget / 10) throw std::overflow_error("dyadic height exceeds exponent budget");
  return dyadic_tenths(10 * jm - j1);
}

long double Height::log2() const {
  if (is_integer()) return log2_big(integer_);
  return static_cast<long double>(tenths_) / 10.0L;
}

bool Height::admits(const BigInt& q) const {
  if (is_integer()) return q <= integer_;
  const long double lhs = 10.0L * log2_big(q);
  if (lhs < tenths_ - kLogMargin) return true;
  if (lhs > tenths_ + kLogMargin) return false;
  return boost::multiprecision::pow(q, 10) <= (BigInt(1) << tenths_);
}

bool Height::product_below_one(const BigInt& num, const BigInt& den) const {
  if (num == 0) return true;
  if (is_integer()) return num * integer_ < den;
  const long double l = 10.0L * (log2_big(num) - log2_big(den)) + tenths_;
  if (l < -kLogMargin) return true;
  if (l > kLogMargin) return false;
  return boost::multiprecision::pow(num, 10) * (BigInt(1) << tenths_) < boost::multiprecision::pow(den, 10);
}

DirichletSolver::DirichletSolver(Frequency xi) : xi_(std::move(xi)) {
  const BigInt& X = xi_.num();
  const BigInt& D = xi_.den();
  // Continued fraction of X/D; every best approximation of the second kind
  // is a convergent, so the smallest admissible q is among them.
  BigInt h_prev = 0, h = 1;  // p_{-2}, p_{-1}
  BigInt k_prev = 1, k = 0;  // q_{-2}, q_{-1}
  BigInt num = X, den = D;
  for (;;) {
    const BigInt a_i = floor_div(num, den);
    const BigInt h_next = a_i * h + h_prev;
    const BigInt k_next = a_i * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;

    const BigInt& q = k;
    if (candidates_.empty() || candidates_.back().q != q) {
      const BigInt a = nearest(q * X, D, false);
      const BigInt err = abs(q * X - a * D);
      if (candidates_.empty() || err < candidates_.back().err_num) {
        candidates_.push_back({q, a, err, log2_big(q), log2_big(err)});
      }
    }
    const BigInt rem = num - a_i * den;
    if (rem == 0) break;
    num = den;
    den = rem;
  }
}

RationalApprox DirichletSolver::approx(const Height& n) const {
  const BigInt& D = xi_.den();
  for (const auto& c : candidates_) {
    if (!n.admits(c.q)) break;
    if (n.product_below_one(c.err_num, D)) {
      if (boost::multiprecision::gcd(abs(c.a), c.q) != 1) continue;
      RationalApprox r;
      r.a = c.a;
      r.q = c.q;
      r.beta = xi_ - Frequency(c.a, c.q);
      return r;
    }
  }
  throw std::logic_error("no Dirichlet approximation found among convergents");
}

RationalApprox dirichlet_approx(const Frequency& xi, const Height& n) { return DirichletSolver(xi).approx(n); }

RationalApprox q_of(long j1, long j2, const Frequency& xi, Exponent vertex) {
  return dirichlet_approx(xi, Height::dyadic_for(j1, j2, vertex));
}

SimultaneousApprox simultaneous_approx(const std::array<Frequency, 3>& xi, long j1, long j2, Exponent vertex) {
  const RationalApprox r = q_of(j1, j2, xi[2], vertex);
  SimultaneousApprox s;
  s.q = r.q;
  s.a[2] = r.a;
  s.beta[2] = r.beta;
  for (int i = 0; i < 2; ++i) {
    s.a[i] = nearest(xi[i].num() * r.q, xi[i].den(), true);
    s.beta[i] = xi[i] - Frequency(s.a[i], r.q);
    // |beta| == 1/(2q)  <=>  2 q |num| == den
    s.boundary[i] = 2 * r.q * abs(s.beta[i].num()) == s.beta[i].den();
  }
  return s;
}

SparsityReport sparsity_scan(const Frequency& xi, Exponent vertex, long j_max) {
  DirichletSolver solver(xi);
  std::set<BigInt> found;
  for (long j1 = 0; j1 < j_max; ++j1) {
    for (long j2 = 0; j2 < j_max; ++j2) {
      const RationalApprox r = solver.approx(Height::dyadic_for(j1, j2, vertex));
      // q < 2^{j1/10}  <=>  not (2^{j1/10} <= q)  <=>  q^10 < 2^{j1}
      if (boost::multiprecision::pow(r.q, 10) < (BigInt(1) << j1)) found.insert(r.q);
    }
  }
  SparsityReport rep;
  rep.denominators.assign(found.begin(), found.end());
  for (std::size_t i = 1; i < rep.denominators.size(); ++i) {
    if (5 * rep.denominators[i - 1] >= rep.denominators[i]) rep.sparse = false;
  }
  return rep;
}

}  // namespace polyhilbert
