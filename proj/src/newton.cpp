#include "polyhilbert/newton.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace polyhilbert {

namespace {

long cross(const Exponent& o, const Exponent& a, const Exponent& b) {
  return static_cast<long>(a.m1 - o.m1) * (b.m2 - o.m2) - static_cast<long>(a.m2 - o.m2) * (b.m1 - o.m1);
}

}  // namespace

NewtonPolyhedron NewtonPolyhedron::build(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("Newton polyhedron of the zero polynomial");

  // Pareto-maximal exponents under the componentwise order.
  std::vector<Exponent> pts = p.support();
  std::sort(pts.begin(), pts.end(), [](const Exponent& a, const Exponent& b) {
    return a.m1 != b.m1 ? a.m1 > b.m1 : a.m2 > b.m2;
  });
  std::vector<Exponent> staircase;  // m1 descending, m2 ascending
  int best_m2 = -1;
  for (const auto& e : pts) {
    if (e.m2 > best_m2) {
      staircase.push_back(e);
      best_m2 = e.m2;
    }
  }
  std::reverse(staircase.begin(), staircase.end());  // m1 ascending, m2 descending

  // Upper-right convex chain: consecutive turns must be clockwise.
  NewtonPolyhedron n;
  for (const auto& e : staircase) {
    while (n.vertices_.size() >= 2 && cross(n.vertices_[n.vertices_.size() - 2], n.vertices_.back(), e) >= 0) {
      n.vertices_.pop_back();
    }
    n.vertices_.push_back(e);
  }

  const auto& v = n.vertices_;
  n.facets_.push_back({{0, -1}, -static_cast<long>(v.front().m2)});
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const long dx = v[i + 1].m1 - v[i].m1;
    const long dy = v[i].m2 - v[i + 1].m2;
    const long g = std::gcd(dx, dy);
    const std::array<long, 2> q{-dy / g, -dx / g};
    n.facets_.push_back({q, q[0] * v[i].m1 + q[1] * v[i].m2});
  }
  n.facets_.push_back({{-1, 0}, -static_cast<long>(v.back().m1)});
  return n;
}

std::array<std::array<long, 2>, 2> NewtonPolyhedron::dual_cone(std::size_t i) const {
  if (i >= vertices_.size()) throw std::out_of_range("vertex index");
  return {facets_[i].normal, facets_[i + 1].normal};
}

std::size_t NewtonPolyhedron::dual_face_of(long j1, long j2) const {
  if (j1 < 0 || j2 < 0) throw std::invalid_argument("dyadic index must be non-negative");
  std::size_t best = 0;
  long best_val = j1 * vertices_[0].m1 + j2 * vertices_[0].m2;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const long val = j1 * vertices_[i].m1 + j2 * vertices_[i].m2;
    if (val > best_val) {
      best = i;
      best_val = val;
    }
  }
  return best;
}

bool NewtonPolyhedron::contains(Exponent e) const {
  return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) {
    return f.normal[0] * e.m1 + f.normal[1] * e.m2 >= f.offset;
  });
}

BoundednessVerdict decide_boundedness(const NewtonPolyhedron& n) {
  for (const auto& v : n.vertices()) {
    if (v.m1 % 2 != 0 && v.m2 % 2 != 0) return {false, v};
  }
  return {true, std::nullopt};
}

DominationReport dominant_vertex_check(const Polynomial& p, const NewtonPolyhedron& n, long j1, long j2,
                                       int samples) {
  if (samples < 2) throw std::invalid_argument("need at least two samples per axis");
  const Exponent m = n.vertices()[n.dual_face_of(j1, j2)];
  const double jm = static_cast<double>(j1 * m.m1 + j2 * m.m2);

  // Terms are scaled by 2^{j.n - j.m} <= 1 so nothing overflows for large j.
  struct Scaled {
    double coeff;
    int m1, m2;
  };
  std::vector<Scaled> terms;
  double abs_sum = 0;
  for (const auto& t : p.terms()) {
    const double c = static_cast<double>(t.coefficient);
    const double w = std::ldexp(1.0, static_cast<int>(std::max(-1100.0, j1 * t.exponent.m1 + j2 * t.exponent.m2 - jm)));
    terms.push_back({c * w, t.exponent.m1, t.exponent.m2});
    abs_sum += std::abs(c);
  }
  double ratio = 0;
  for (int a = 0; a < samples; ++a) {
    const double x1 = 1.0 + static_cast<double>(a) / (samples - 1);
    for (int b = 0; b < samples; ++b) {
      const double x2 = 1.0 + static_cast<double>(b) / (samples - 1);
      double v = 0;
      for (const auto& t : terms) v += t.coeff * std::pow(x1, t.m1) * std::pow(x2, t.m2);
      ratio = std::max(ratio, std::abs(v));
    }
  }
  const double bracket = std::ldexp(1.0, std::max(1, p.degree())) * abs_sum;
  return {ratio >= 1.0 / bracket && ratio <= bracket, ratio, bracket};
}

}  // namespace polyhilbert
