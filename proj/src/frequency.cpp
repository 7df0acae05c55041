#include "polyhilbert/frequency.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/integer/common_factor.hpp>

namespace polyhilbert {

namespace {

const BigInt& two128() {
  static const BigInt v = BigInt(1) << 128;
  return v;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Round num/den to the nearest integer, ties to even.
BigInt round_half_even(const BigInt& num, const BigInt& den) {
  BigInt q = floor_div(num, den);
  const BigInt rem2 = 2 * (num - q * den);
  if (rem2 > den || (rem2 == den && (q & 1) != 0)) q += 1;
  return q;
}

}  // namespace

Frequency::Frequency(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::invalid_argument("frequency with zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  const BigInt g = boost::multiprecision::gcd(abs(num_), den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Frequency Frequency::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite frequency");
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  // x = m * 2^(exp - 53) with integer m
  const auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  const int shift = exp - 53;
  if (shift >= 0) return Frequency(BigInt(m) << shift, 1);
  if (-shift <= 128) return Frequency(BigInt(m), BigInt(1) << -shift);
  return Frequency(round_half_even(BigInt(m), BigInt(1) << (-shift - 128)), two128());
}

Frequency Frequency::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty frequency");
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    try {
      return Frequency(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("malformed rational frequency '" + s + "'");
    }
  }
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  BigInt digits = 0;
  int scale = 0;  // value = digits * 10^scale
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (dot) --scale;
      any = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw std::invalid_argument("malformed frequency '" + s + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("malformed frequency '" + s + "'");
    std::size_t used = 0;
    int e = 0;
    try {
      e = std::stoi(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + s + "'");
    }
    if (i + 1 + used != s.size() || std::abs(e) > 4000) throw std::invalid_argument("malformed exponent in '" + s + "'");
    scale += e;
  }
  if (negative) digits = -digits;
  BigInt num = digits, den = 1;
  if (scale >= 0) {
    num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale));
  } else {
    den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-scale));
  }
  if (den == 1) return Frequency(num, 1);
  return Frequency(round_half_even(num * two128(), den), two128());
}

bool Frequency::is_dyadic128() const {
  return (den_ & (den_ - 1)) == 0 && den_ <= two128();
}

u128 Frequency::fixed128() const {
  BigInt scaled = round_half_even(num_ * two128(), den_);
  return wrap_u128(scaled);
}

long double Frequency::to_long_double() const {
  // Split off the integer part so tiny fractions keep full relative precision.
  const BigInt ip = floor_div(num_, den_);
  const BigInt rem = num_ - ip * den_;
  const std::size_t bits = boost::multiprecision::msb(den_);
  long double frac = 0;
  if (rem != 0) {
    const int shift = static_cast<int>(bits) > 70 ? static_cast<int>(bits) - 70 : 0;
    const long double r = static_cast<long double>(rem >> shift);
    const long double d = static_cast<long double>(den_ >> shift);
    frac = r / d;
  }
  return static_cast<long double>(ip) + frac;
}

std::string Frequency::to_string() const {
  std::ostringstream os;
  os.precision(21);
  os << to_long_double();
  return os.str();
}

std::string Frequency::exact_string() const {
  std::ostringstream os;
  if (den_ == 1) {
    os << num_;
    return os.str();
  }
  if (!is_dyadic128()) {
    os << num_ << '/' << den_;
    return os.str();
  }
  // den = 2^k: num/2^k = num*5^k / 10^k
  const unsigned k = static_cast<unsigned>(boost::multiprecision::msb(den_));
  BigInt scaled = abs(num_) * boost::multiprecision::pow(BigInt(5), k);
  std::string digits = scaled.str();
  if (digits.size() <= k) digits.insert(0, k - digits.size() + 1, '0');
  digits.insert(digits.size() - k, ".");
  if (num_ < 0) digits.insert(0, "-");
  return digits;
}

Frequency Frequency::operator+(const Frequency& o) const {
  return Frequency(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

// ---------------------------------------------------------------------------

namespace {

struct PhaseTables {
  std::array<std::complex<double>, 1024> coarse;
  std::array<std::complex<double>, 1024> fine;

  PhaseTables() {
    const long double two_pi = 6.283185307179586476925286766559005768L;
    for (int k = 0; k < 1024; ++k) {
      const long double a = two_pi * k / 1024.0L;
      coarse[k] = {static_cast<double>(cosl(a)), static_cast<double>(sinl(a))};
      const long double b = two_pi * k / 1048576.0L;
      fine[k] = {static_cast<double>(cosl(b)), static_cast<double>(sinl(b))};
    }
    // Exact values at the quarter points keep symmetric sums exactly cancelling.
    coarse[0] = {1.0, 0.0};
    coarse[256] = {0.0, 1.0};
    coarse[512] = {-1.0, 0.0};
    coarse[768] = {0.0, -1.0};
    fine[0] = {1.0, 0.0};
  }
};

const PhaseTables& tables() {
  static const PhaseTables t;
  return t;
}

}  // namespace

std::complex<double> unit_phase(std::uint64_t frac) {
  const auto& t = tables();
  const auto hi = static_cast<std::size_t>(frac >> 54);
  const auto mid = static_cast<std::size_t>((frac >> 44) & 1023u);
  const std::uint64_t low = frac & ((std::uint64_t{1} << 44) - 1);
  std::complex<double> v = t.coarse[hi];
  if (mid) v *= t.fine[mid];
  if (low) {
    // theta < 2 pi 2^-20; the cubic Taylor remainder is below 1e-22.
    const double theta = 6.283185307179586 * std::ldexp(static_cast<double>(low), -64);
    const double t2 = theta * theta;
    const std::complex<double> r{1.0 - 0.5 * t2, theta * (1.0 - t2 / 6.0)};
    v *= r;
  }
  return v;
}

std::complex<double> root_of_unity(std::uint64_t r, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("root of unity of order zero");
  return unit_phase(residue_to_frac64(r % q, q));
}

}  // namespace polyhilbert
