#include "polyhilbert/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace polyhilbert {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json exponent_json(Exponent e) { return Json::array({e.m1, e.m2}); }

}  // namespace

Json polyhedron_json(const Polynomial& p, const NewtonPolyhedron& n, const BoundednessVerdict& v) {
  Json j;
  j["polynomial"] = render(p);
  j["vertices"] = Json::array();
  for (const auto& e : n.vertices()) j["vertices"].push_back(exponent_json(e));
  j["facets"] = Json::array();
  for (const auto& f : n.facets()) j["facets"].push_back({{"normal", {f.normal[0], f.normal[1]}}, {"offset", f.offset}});
  j["bounded"] = v.bounded;
  j["witness"] = v.witness ? exponent_json(*v.witness) : Json(nullptr);
  return j;
}

Json sum_json(const SumResult& r, const PhaseContext& xi) {
  Json j;
  j["value"] = complex_json(r.value);
  j["abs_error_bound"] = r.abs_error_bound;
  j["terms"] = r.terms;
  j["xi"] = Json::array();
  for (const auto& f : xi.xi()) j["xi"].push_back(f.exact_string());
  j["phase_exact"] = xi.exact();
  return j;
}

Json identity_json(const IdentityReport& r) {
  Json j;
  j["lhs"] = complex_json(r.lhs);
  j["rhs"] = complex_json(r.rhs);
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["class"] = std::string(to_string(r.klass));
  j["precondition_met"] = r.precondition_met;
  j["truncation"] = Json::object();
  for (const auto& [k, v] : r.truncation) j["truncation"][k] = v;
  return j;
}

Json minor_ray_json(const MinorRay& r) {
  Json j;
  j["rows"] = Json::array();
  for (const auto& row : r.rows) {
    j["rows"].push_back({{"j", {row.j1, row.j2}},
                         {"piece_abs", row.piece_abs},
                         {"weyl_ratio", row.weyl_ratio},
                         {"abel_bound", row.abel_bound < 0 ? Json(nullptr) : Json(row.abel_bound)},
                         {"within_bound", row.within_bound}});
  }
  j["fit"] = {{"exponent", r.fit.exponent}, {"constant", r.fit.constant}, {"r_squared", r.fit.r_squared}};
  j["decays"] = r.decays;
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["theorem"] = {{"bounded", v.theorem_says.bounded},
                  {"witness", v.theorem_says.witness ? exponent_json(*v.theorem_says.witness) : Json(nullptr)}};
  j["empirics"] = std::string(to_string(v.empirics_say));
  j["fit"] = {{"slope", v.fit.slope}, {"intercept", v.fit.intercept}, {"r_squared", v.fit.r_squared}};
  j["agree"] = v.agree;
  j["contradiction"] = v.contradiction;
  j["scan"] = Json::array();
  for (const auto& r : v.scan) j["scan"].push_back({{"N", r.n}, {"sup_abs", r.sup_abs}});
  return j;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "N,sup_abs\n";
  for (const auto& r : rows) os << r.n << ',' << format_double(r.sup_abs) << '\n';
  return os.str();
}

std::string arcs_csv(const ArcPartition& part) {
  std::ostringstream os;
  os << "j1,j2,class,q,beta_scaled\n";
  for (const auto& c : part.cells) {
    os << c.j1 << ',' << c.j2 << ',' << to_string(c.klass) << ',' << c.q << ','
       << format_double(static_cast<double>(c.beta_scaled)) << '\n';
  }
  return os.str();
}

std::string gauss_csv(const std::vector<GaussTableRow>& rows) {
  std::ostringstream os;
  os << "q,a,avg,magnitude\n";
  for (const auto& r : rows) {
    os << r.q << ',' << r.a << ',' << format_double(r.average) << ',' << format_double(r.magnitude) << '\n';
  }
  return os.str();
}

std::vector<ScanRow> parse_scan_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "N,sup_abs") throw std::invalid_argument("missing scan CSV header");
  std::vector<ScanRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("malformed scan CSV row: " + line);
    ScanRow r;
    r.n = std::stoll(line.substr(0, comma));
    r.sup_abs = std::stod(line.substr(comma + 1));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace polyhilbert
