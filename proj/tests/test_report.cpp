#include <doctest.h>

#include "polyhilbert/newton.hpp"
#include "polyhilbert/report.hpp"

using namespace polyhilbert;

TEST_SUITE("report") {

TEST_CASE("scan CSV round-trips exactly") {
  std::vector<ScanRow> rows{{16, 0.1, 0.5}, {64, 1.0 / 3.0, 0.25}, {1024, 6.02214076e23, 1e-300}};
  const std::string text = scan_csv(rows);
  CHECK(text.rfind("N,sup_abs\n", 0) == 0);
  const auto back = parse_scan_csv(text);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].n == rows[i].n);
    CHECK(back[i].sup_abs == rows[i].sup_abs);
  }
  CHECK_THROWS(parse_scan_csv("N,sup\n1,2\n"));
}

TEST_CASE("polyhedron JSON") {
  const Polynomial p = parse("t1^3*t2^2 + t1*t2^5");
  const auto n = NewtonPolyhedron::build(p);
  const auto j = polyhedron_json(p, n, decide_boundedness(n));
  CHECK(j["bounded"] == false);
  CHECK(j["witness"] == Json::array({1, 5}));
  CHECK(j["vertices"].size() == 2);
  CHECK(j["facets"].size() == 3);
  CHECK(j["facets"][0]["normal"] == Json::array({0, -1}));
  CHECK(j["polynomial"] == render(p));
}

TEST_CASE("sum JSON") {
  SumResult r{{0.25, -1.5}, 1e-15, 64};
  const auto j = sum_json(r, PhaseContext::xi3_only(Frequency::rational(1, 3)));
  CHECK(j["value"][0] == 0.25);
  CHECK(j["value"][1] == -1.5);
  CHECK(j["terms"] == 64);
  CHECK(j["xi"][2] == "1/3");
  CHECK(j["phase_exact"] == true);
}

TEST_CASE("doubles print round-trip") {
  for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456789.125}) CHECK(std::stod(format_double(v)) == v);
}

}  // TEST_SUITE
