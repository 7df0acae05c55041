#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace polyhilbert {

using BigInt = boost::multiprecision::cpp_int;
using u128 = unsigned __int128;

/// Exponent pair (m1, m2) of a monomial t1^m1 * t2^m2.
struct Exponent {
  int m1 = 0;
  int m2 = 0;

  friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

struct Monomial {
  Exponent exponent;
  BigInt coefficient;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Integer polynomial in t1, t2. Terms are kept in canonical order
/// (exponents lexicographically descending), with unique exponents and
/// nonzero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Monomial> terms);

  static Polynomial monomial(BigInt coefficient, int m1, int m2);
  static Polynomial constant(BigInt value) { return monomial(std::move(value), 0, 0); }

  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::vector<Exponent> support() const;

  int degree() const;     // total degree; -1 for zero
  int degree_t1() const;  // -1 for zero
  int degree_t2() const;
  BigInt coefficient(Exponent e) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial pow(unsigned k) const;

  /// P(t1, t2 + r) expanded.
  Polynomial shift_t2(const BigInt& r) const;
  /// P(t1 + l, t2) expanded.
  Polynomial shift_t1(const BigInt& l) const;

  /// Coefficients of P(., t2) as a polynomial in t1; entry m is sum_n c_{m,n} t2^n.
  std::vector<BigInt> row(const BigInt& t2) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Monomial> terms_;
};

Polynomial parse(std::string_view text);
std::string render(const Polynomial& p);

BigInt eval_exact(const Polynomial& p, const BigInt& t1, const BigInt& t2);
inline BigInt eval_exact(const Polynomial& p, std::int64_t t1, std::int64_t t2) {
  return eval_exact(p, BigInt(t1), BigInt(t2));
}

/// P(t) mod q in [0, q), using word-sized modular arithmetic throughout.
std::uint64_t eval_mod(const Polynomial& p, std::int64_t t1, std::int64_t t2, std::uint64_t q);

/// Residue of an arbitrary integer in [0, q).
std::uint64_t mod_u64(const BigInt& v, std::uint64_t q);
/// Two's complement image of v in Z / 2^128.
u128 wrap_u128(const BigInt& v);

inline u128 mulmod(u128 a, u128 b, std::uint64_t q) {
  return static_cast<u128>(static_cast<std::uint64_t>(a % q)) * static_cast<std::uint64_t>(b % q) % q;
}

/// Positive integers t2* with P(t1, t2*) = 0 identically in t1.
std::vector<BigInt> annihilating_t2(const Polynomial& p);

/// max{ ceil(10 * sum_{m,n} |c_m / c_n|), 2^p } where 2^p is the least power
/// of two exceeding the largest annihilating t2* (1 when there is none).
BigInt coefficient_ratio_constant(const Polynomial& p);

/// Integer roots of a univariate integer polynomial (coefficients by degree).
std::vector<BigInt> integer_roots(const std::vector<BigInt>& coeffs);

}  // namespace polyhilbert
