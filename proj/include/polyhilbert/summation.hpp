#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace polyhilbert {

/// Neumaier-compensated accumulator for complex values.
class CompensatedSum {
 public:
  void add(std::complex<double> v) {
    add1(re_, cre_, v.real());
    add1(im_, cim_, v.imag());
  }
  void add(const CompensatedSum& o) {
    add1(re_, cre_, o.re_);
    add1(re_, cre_, o.cre_);
    add1(im_, cim_, o.im_);
    add1(im_, cim_, o.cim_);
  }
  std::complex<double> value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add1(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

/// Pairwise merge in index order; the tree shape depends only on v.size().
inline CompensatedSum pairwise_reduce(std::vector<CompensatedSum> v) {
  if (v.empty()) return {};
  while (v.size() > 1) {
    std::vector<CompensatedSum> next((v.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = v[2 * i];
      if (2 * i + 1 < v.size()) next[i].add(v[2 * i + 1]);
    }
    v = std::move(next);
  }
  return v.front();
}

}  // namespace polyhilbert
