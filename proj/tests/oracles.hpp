#pragma once
// Independent reference implementations used only by tests.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "polyhilbert/frequency.hpp"
#include "polyhilbert/polynomial.hpp"

namespace oracle {

using polyhilbert::BigInt;
using polyhilbert::Exponent;
using polyhilbert::Frequency;
using polyhilbert::Polynomial;
using Float50 = boost::multiprecision::cpp_bin_float_50;

/// Fractional part of xi.(t1, t2, v) computed exactly, as a 50-digit float in [0, 1).
inline Float50 exact_frac(const std::array<Frequency, 3>& xi, const std::array<BigInt, 3>& v) {
  BigInt den = 1;
  for (const auto& f : xi) den = boost::multiprecision::lcm(den, f.den());
  BigInt num = 0;
  for (int i = 0; i < 3; ++i) num += xi[i].num() * (den / xi[i].den()) * v[i];
  num %= den;
  if (num < 0) num += den;
  return Float50(num) / Float50(den);
}

/// e^{sign 2 pi i f}: long double trigonometry on an exactly reduced phase.
inline std::complex<long double> cis(const Float50& f, int sign) {
  const long double x = static_cast<long double>(f);
  const long double a = 6.283185307179586476925286766559L * x;
  return {cosl(a), sign * sinl(a)};
}

/// Term-by-term sum of e^{-2 pi i xi.(t1,t2,P)} / (t1 t2) over 1 <= |t_i| <= N_i,
/// with exact phases and 50-digit accumulation.
inline std::complex<double> hilbert_sum(const Polynomial& p, long n1, long n2, const std::array<Frequency, 3>& xi) {
  Float50 re = 0, im = 0;
  for (long a = -n1; a <= n1; ++a) {
    if (a == 0) continue;
    for (long b = -n2; b <= n2; ++b) {
      if (b == 0) continue;
      const auto e = cis(exact_frac(xi, {BigInt(a), BigInt(b), polyhilbert::eval_exact(p, a, b)}), -1);
      const Float50 w = Float50(1) / Float50(a * b);
      re += w * Float50(e.real());
      im += w * Float50(e.imag());
    }
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

/// Same kernel and phase over a positive box with optional half-weight endpoints.
inline std::complex<double> box_sum(const Polynomial& p, long lo1, long hi1, long lo2, long hi2,
                                    const Frequency& xi3, bool half_ends, int sign = -1, bool unit = false) {
  Float50 re = 0, im = 0;
  for (long a = lo1; a <= hi1; ++a) {
    for (long b = lo2; b <= hi2; ++b) {
      const auto e = cis(exact_frac({Frequency{}, Frequency{}, xi3}, {BigInt(0), BigInt(0), polyhilbert::eval_exact(p, a, b)}), sign);
      Float50 w = unit ? Float50(1) : Float50(1) / Float50(a * b);
      if (half_ends && (a == lo1 || a == hi1)) w /= 2;
      if (half_ends && (b == lo2 || b == hi2)) w /= 2;
      re += w * Float50(e.real());
      im += w * Float50(e.imag());
    }
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

/// Vertices of conv(S) + (-R_+^2) by exhaustive extreme-point testing: e is
/// not extreme iff e <= lambda a + (1 - lambda) b componentwise for some other
/// a, b in S and lambda in [0, 1].
inline std::vector<Exponent> hull_vertices(const std::vector<Exponent>& s) {
  // Feasible lambda for c * lambda >= d, as an interval intersected exactly with rationals.
  struct Interval {
    long lo_n = 0, lo_d = 1, hi_n = 1, hi_d = 1;
  };
  auto dominated_by = [](const Exponent& e, const Exponent& a, const Exponent& b) {
    Interval iv;
    auto constrain = [&](long c, long d) {  // c * lambda >= d
      if (c == 0) return d <= 0;
      if (c > 0) {  // lambda >= d / c
        if (d * iv.lo_d > iv.lo_n * c) {
          iv.lo_n = d;
          iv.lo_d = c;
        }
      } else {  // lambda <= d / c = (-d) / (-c)
        if ((-d) * iv.hi_d < iv.hi_n * (-c)) {
          iv.hi_n = -d;
          iv.hi_d = -c;
        }
      }
      return true;
    };
    // lambda a + (1 - lambda) b >= e  <=>  lambda (a - b) >= e - b
    if (!constrain(a.m1 - b.m1, e.m1 - b.m1)) return false;
    if (!constrain(a.m2 - b.m2, e.m2 - b.m2)) return false;
    return iv.lo_n * iv.hi_d <= iv.hi_n * iv.lo_d;
  };
  std::vector<Exponent> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool extreme = true;
    for (std::size_t a = 0; a < s.size() && extreme; ++a) {
      for (std::size_t b = a; b < s.size() && extreme; ++b) {
        if (a == i || b == i) continue;
        if (dominated_by(s[i], s[a], s[b])) extreme = false;
      }
    }
    if (extreme) out.push_back(s[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool hull_bounded(const std::vector<Exponent>& s) {
  for (const auto& v : hull_vertices(s)) {
    if (v.m1 % 2 != 0 && v.m2 % 2 != 0) return false;
  }
  return true;
}

/// Random polynomial with total degree <= max_deg and up to max_terms terms.
inline Polynomial random_polynomial(std::mt19937_64& rng, int max_deg, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_deg), coef(-9, 9);
  std::vector<polyhilbert::Monomial> terms;
  const int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    const int m1 = deg(rng);
    const int m2 = std::uniform_int_distribution<int>(0, max_deg - m1)(rng);
    int c = coef(rng);
    if (c == 0) c = 1;
    terms.push_back({{m1, m2}, BigInt(c)});
  }
  Polynomial p(terms);
  if (p.is_zero()) return Polynomial::monomial(1, 1, 1);
  return p;
}

/// Smallest q <= n with |q xi - a| < 1/n for an integer a, by exhaustive search.
inline std::pair<BigInt, BigInt> dirichlet_exhaustive(const Frequency& xi, long n) {
  for (long q = 1; q <= n; ++q) {
    const BigInt qn = xi.num() * q;  // q xi = qn / den
    // nearest integer a
    BigInt a = qn / xi.den();
    if (qn < 0 && a * xi.den() != qn) a -= 1;  // floor
    for (const BigInt& cand : {a, BigInt(a + 1)}) {
      BigInt diff = qn - cand * xi.den();
      if (diff < 0) diff = -diff;
      if (diff * n < xi.den()) return {cand, BigInt(q)};
    }
  }
  return {0, 0};
}

}  // namespace oracle
