#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polyhilbert/arcs.hpp"
#include "polyhilbert/expsum.hpp"
#include "polyhilbert/newton.hpp"
#include "polyhilbert/numtheory.hpp"
#include "polyhilbert/verify.hpp"

namespace polyhilbert {

using Json = nlohmann::ordered_json;

/// Round-trip decimal ("%.17g").
std::string format_double(double v);

Json polyhedron_json(const Polynomial& p, const NewtonPolyhedron& n, const BoundednessVerdict& v);
Json sum_json(const SumResult& r, const PhaseContext& xi);
Json identity_json(const IdentityReport& r);
Json minor_ray_json(const MinorRay& r);
Json verdict_json(const Verdict& v);

std::string scan_csv(const std::vector<ScanRow>& rows);
std::string arcs_csv(const ArcPartition& part);
std::string gauss_csv(const std::vector<GaussTableRow>& rows);

/// Parses "N,sup_abs" CSV back; used by round-trip tests and fixtures.
std::vector<ScanRow> parse_scan_csv(const std::string& text);

}  // namespace polyhilbert
