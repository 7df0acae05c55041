#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "polyhilbert/polynomial.hpp"

namespace polyhilbert {

/// A real frequency held as an exact rational num/den (den > 0, reduced).
///
/// Decimal input is rounded to the nearest multiple of 2^-128, so every
/// decimal frequency is a dyadic rational with denominator dividing 2^128.
/// Input of the form "a/q" is kept exactly.
class Frequency {
 public:
  Frequency() = default;
  Frequency(BigInt num, BigInt den);
  static Frequency integer(std::int64_t v) { return Frequency(BigInt(v), BigInt(1)); }
  static Frequency rational(std::int64_t a, std::int64_t q) { return Frequency(BigInt(a), BigInt(q)); }
  /// Nearest multiple of 2^-128 to x (exact: doubles are dyadic).
  static Frequency from_double(double x);
  /// Parses "0.123", "-1.5e-3", "1/3", "3".
  static Frequency parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  /// Denominator is a power of two not exceeding 2^128.
  bool is_dyadic128() const;
  /// num/den mod 1 scaled by 2^128 and rounded to nearest (exact when dyadic128).
  u128 fixed128() const;

  long double to_long_double() const;
  double to_double() const { return static_cast<double>(to_long_double()); }
  std::string to_string() const;
  /// Shortest exact decimal when dyadic, otherwise "num/den".
  std::string exact_string() const;

  Frequency operator-() const { return Frequency(-num_, den_); }
  Frequency operator+(const Frequency& o) const;
  Frequency operator-(const Frequency& o) const { return *this + (-o); }
  Frequency operator*(const BigInt& k) const { return Frequency(num_ * k, den_); }

  friend bool operator==(const Frequency&, const Frequency&) = default;

 private:
  BigInt num_ = 0;
  BigInt den_ = 1;
};

/// e^{2 pi i f} for f = frac / 2^64. Table driven, absolute error below 4e-16.
std::complex<double> unit_phase(std::uint64_t frac);

/// e^{2 pi i r / q} for a residue r in [0, q).
std::complex<double> root_of_unity(std::uint64_t r, std::uint64_t q);

/// Fraction r/q scaled to 2^64, rounded to nearest (mod 2^64).
inline std::uint64_t residue_to_frac64(std::uint64_t r, std::uint64_t q) {
  return static_cast<std::uint64_t>(((static_cast<u128>(r) << 64) + q / 2) / q);
}

/// Top 64 bits of a 128-bit phase, rounded to nearest.
inline std::uint64_t frac64(u128 phase) {
  return static_cast<std::uint64_t>((phase + (static_cast<u128>(1) << 63)) >> 64);
}

}  // namespace polyhilbert
