#include "polyhilbert/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace polyhilbert {

namespace {

using TermMap = std::map<Exponent, BigInt, std::greater<>>;

Polynomial from_map(const TermMap& m) {
  std::vector<Monomial> terms;
  terms.reserve(m.size());
  for (const auto& [e, c] : m) {
    if (c != 0) terms.push_back({e, c});
  }
  return Polynomial(std::move(terms));
}

TermMap to_map(const Polynomial& p) {
  TermMap m;
  for (const auto& t : p.terms()) m.emplace(t.exponent, t.coefficient);
  return m;
}

BigInt binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace

Polynomial::Polynomial(std::vector<Monomial> terms) {
  TermMap m;
  for (auto& t : terms) {
    if (t.exponent.m1 < 0 || t.exponent.m2 < 0) throw std::invalid_argument("negative exponent");
    m[t.exponent] += t.coefficient;
  }
  for (const auto& [e, c] : m) {
    if (c != 0) terms_.push_back({e, c});
  }
}

Polynomial Polynomial::monomial(BigInt coefficient, int m1, int m2) {
  return Polynomial({Monomial{{m1, m2}, std::move(coefficient)}});
}

std::vector<Exponent> Polynomial::support() const {
  std::vector<Exponent> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.exponent);
  return out;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.exponent.m1 + t.exponent.m2);
  return d;
}

int Polynomial::degree_t1() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.exponent.m1);
  return d;
}

int Polynomial::degree_t2() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.exponent.m2);
  return d;
}

BigInt Polynomial::coefficient(Exponent e) const {
  for (const auto& t : terms_) {
    if (t.exponent == e) return t.coefficient;
  }
  return 0;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  TermMap m = to_map(*this);
  for (const auto& t : o.terms_) m[t.exponent] += t.coefficient;
  return from_map(m);
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  TermMap m;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      m[{a.exponent.m1 + b.exponent.m1, a.exponent.m2 + b.exponent.m2}] += a.coefficient * b.coefficient;
    }
  }
  return from_map(m);
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::shift_t2(const BigInt& r) const {
  TermMap m;
  for (const auto& t : terms_) {
    const int n = t.exponent.m2;
    BigInt rp = 1;
    // (t2 + r)^n = sum_k C(n,k) r^(n-k) t2^k, walking k downward
    for (int k = n; k >= 0; --k) {
      m[{t.exponent.m1, k}] += t.coefficient * binomial(n, k) * rp;
      rp *= r;
    }
  }
  return from_map(m);
}

Polynomial Polynomial::shift_t1(const BigInt& l) const {
  TermMap m;
  for (const auto& t : terms_) {
    const int n = t.exponent.m1;
    BigInt lp = 1;
    for (int k = n; k >= 0; --k) {
      m[{k, t.exponent.m2}] += t.coefficient * binomial(n, k) * lp;
      lp *= l;
    }
  }
  return from_map(m);
}

std::vector<BigInt> Polynomial::row(const BigInt& t2) const {
  std::vector<BigInt> out(static_cast<std::size_t>(std::max(0, degree_t1() + 1)));
  for (const auto& t : terms_) {
    out[static_cast<std::size_t>(t.exponent.m1)] += t.coefficient * boost::multiprecision::pow(t2, static_cast<unsigned>(t.exponent.m2));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Polynomial parse_all() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    skip_ws();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  unsigned exponent() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') throw ParseError("negative exponent", pos_);
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      throw ParseError("expected exponent", pos_);
    }
    unsigned long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (v > 4096) throw ParseError("exponent too large", start);
      ++pos_;
    }
    if (pos_ < s_.size() && s_[pos_] == '.') throw ParseError("non-integer exponent", start);
    return static_cast<unsigned>(v);
  }

  Polynomial factor() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    Polynomial base;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E' || s_[pos_] == '/')) {
        throw ParseError("non-integer coefficient", start);
      }
      base = Polynomial::constant(BigInt(std::string(s_.substr(start, pos_ - start))));
    } else if (c == 't') {
      const std::size_t start = pos_;
      if (pos_ + 1 < s_.size() && (s_[pos_ + 1] == '1' || s_[pos_ + 1] == '2')) {
        const bool first = s_[pos_ + 1] == '1';
        pos_ += 2;
        if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) {
          throw ParseError("unknown variable", start);
        }
        base = first ? Polynomial::monomial(1, 1, 0) : Polynomial::monomial(1, 0, 1);
      } else {
        throw ParseError("unknown variable", start);
      }
    } else if (c == '(') {
      ++pos_;
      base = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
    } else if (c == '.') {
      throw ParseError("non-integer coefficient", pos_);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
    if (accept('^')) base = base.pow(exponent());
    return base;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse(std::string_view text) { return Parser(text).parse_all(); }

std::string render(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    BigInt c = t.coefficient;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const auto [m1, m2] = t.exponent;
    bool wrote = false;
    if (c != 1 || (m1 == 0 && m2 == 0)) {
      os << c;
      wrote = true;
    }
    auto var = [&](const char* name, int m) {
      if (m == 0) return;
      if (wrote) os << '*';
      os << name;
      if (m > 1) os << '^' << m;
      wrote = true;
    };
    var("t1", m1);
    var("t2", m2);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

BigInt eval_exact(const Polynomial& p, const BigInt& t1, const BigInt& t2) {
  BigInt sum = 0;
  for (const auto& t : p.terms()) {
    sum += t.coefficient * boost::multiprecision::pow(t1, static_cast<unsigned>(t.exponent.m1)) *
           boost::multiprecision::pow(t2, static_cast<unsigned>(t.exponent.m2));
  }
  return sum;
}

std::uint64_t mod_u64(const BigInt& v, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("modulus must be positive");
  BigInt r = v % q;
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

u128 wrap_u128(const BigInt& v) {
  static const BigInt two128 = BigInt(1) << 128;
  BigInt r = v % two128;
  if (r < 0) r += two128;
  const auto lo = static_cast<std::uint64_t>(r & BigInt(UINT64_MAX));
  const auto hi = static_cast<std::uint64_t>(r >> 64);
  return (static_cast<u128>(hi) << 64) | lo;
}

std::uint64_t eval_mod(const Polynomial& p, std::int64_t t1, std::int64_t t2, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("modulus must be positive");
  auto reduce = [q](std::int64_t t) {
    __int128 r = static_cast<__int128>(t) % static_cast<__int128>(q);
    if (r < 0) r += q;
    return static_cast<std::uint64_t>(r);
  };
  const std::uint64_t x1 = reduce(t1);
  const std::uint64_t x2 = reduce(t2);
  auto powmod = [q](std::uint64_t b, int e) {
    u128 r = 1 % q;
    u128 base = b;
    while (e) {
      if (e & 1) r = mulmod(r, base, q);
      base = mulmod(base, base, q);
      e >>= 1;
    }
    return r;
  };
  u128 acc = 0;
  for (const auto& t : p.terms()) {
    const u128 c = mod_u64(t.coefficient, q);
    const u128 v = mulmod(mulmod(c, powmod(x1, t.exponent.m1), q), powmod(x2, t.exponent.m2), q);
    acc = (acc + v) % q;
  }
  return static_cast<std::uint64_t>(acc);
}

// ---------------------------------------------------------------------------
// C(P)

std::vector<BigInt> integer_roots(const std::vector<BigInt>& coeffs) {
  std::size_t low = 0;
  while (low < coeffs.size() && coeffs[low] == 0) ++low;
  if (low == coeffs.size()) throw std::invalid_argument("zero polynomial has every integer as root");
  std::vector<BigInt> roots;
  if (low > 0) roots.push_back(0);
  std::size_t high = coeffs.size() - 1;
  while (coeffs[high] == 0) --high;
  if (high == low) return roots;

  auto is_root = [&](const BigInt& x) {
    BigInt v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return v == 0;
  };

  // Nonzero integer roots divide the lowest nonzero coefficient.
  const BigInt c0 = abs(coeffs[low]);
  std::vector<BigInt> candidates;
  if (c0 <= BigInt(100000000000000LL)) {
    const auto n = static_cast<std::uint64_t>(c0);
    for (std::uint64_t d = 1; d * d <= n; ++d) {
      if (n % d == 0) {
        candidates.emplace_back(d);
        if (d * d != n) candidates.emplace_back(n / d);
      }
    }
  } else {
    // Cauchy bound scan; coefficients this large only arise from synthetic inputs.
    BigInt bound = 0;
    for (std::size_t i = low; i < high; ++i) bound = std::max(bound, BigInt(abs(coeffs[i])));
    bound = bound / abs(coeffs[high]) + 1;
    if (bound > 1000000) throw std::overflow_error("integer root search exceeds budget");
    for (std::uint64_t d = 1; d <= static_cast<std::uint64_t>(bound); ++d) {
      if (c0 % d == 0) candidates.emplace_back(d);
    }
  }
  for (const auto& d : candidates) {
    if (is_root(d)) roots.push_back(d);
    if (is_root(-d)) roots.push_back(-d);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<BigInt> annihilating_t2(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  // P(t1, t2*) == 0 for all t1 iff t2* is a common root of every R_m(t2).
  std::map<int, std::vector<BigInt>> by_m1;
  for (const auto& t : p.terms()) {
    auto& v = by_m1[t.exponent.m1];
    if (v.size() <= static_cast<std::size_t>(t.exponent.m2)) v.resize(static_cast<std::size_t>(t.exponent.m2) + 1);
    v[static_cast<std::size_t>(t.exponent.m2)] = t.coefficient;
  }
  std::vector<BigInt> common;
  bool first = true;
  for (const auto& [m1, coeffs] : by_m1) {
    std::vector<BigInt> roots;
    for (const auto& r : integer_roots(coeffs)) {
      if (r > 0) roots.push_back(r);
    }
    if (first) {
      common = roots;
      first = false;
    } else {
      std::vector<BigInt> next;
      std::set_intersection(common.begin(), common.end(), roots.begin(), roots.end(), std::back_inserter(next));
      common = std::move(next);
    }
    if (common.empty()) break;
  }
  return common;
}

BigInt coefficient_ratio_constant(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("C(P) undefined for the zero polynomial");
  // sum_{m,n} |c_m|/|c_n| = (sum |c_m|) * (sum 1/|c_n|)
  BigInt abs_sum = 0;
  BigInt denom = 1;
  for (const auto& t : p.terms()) {
    abs_sum += abs(t.coefficient);
    denom *= abs(t.coefficient);
  }
  BigInt inv_num = 0;  // sum 1/|c_n| == inv_num / denom
  for (const auto& t : p.terms()) inv_num += denom / abs(t.coefficient);
  const BigInt num = 10 * abs_sum * inv_num;
  BigInt ratio_term = num / denom;
  if (ratio_term * denom != num) ratio_term += 1;

  BigInt power = 1;
  const auto roots = annihilating_t2(p);
  if (!roots.empty()) {
    const BigInt& largest = roots.back();
    while (power <= largest) power <<= 1;
  }
  return std::max(ratio_term, power);
}

}  // namespace polyhilbert
