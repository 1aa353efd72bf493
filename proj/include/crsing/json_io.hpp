#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "crsing/approx.hpp"
#include "crsing/hull.hpp"
#include "crsing/pipeline.hpp"
#include "crsing/sheets.hpp"
#include "crsing/surface.hpp"

namespace crsing {

using Json = nlohmann::ordered_json;

/// Strict surface schema:
///   { "k": int, "coefficients": [{"j": int, "re": num, "im": num}],
///     "residual": [{"a": int, "b": int, "re": num, "im": num}],
///     "radius": num }
/// Unknown fields, out-of-range j, duplicate j, and residual terms of total
/// degree <= k are all rejected with std::invalid_argument.
CRSurface surface_from_json(const Json& j);
Json surface_to_json(const CRSurface& s);

Json to_json(const Certificate& cert);
Json to_json(const ScanReport& report);
Json to_json(const ApproxReport& report);
Json to_json(const HullProbeResult& result);
Json to_json(const ConvexityScan& scan);
Json to_json(const PipelineReport& report);
Json sheets_to_json(const SheetSystem& sys, double productResidual);

std::vector<std::string> demo_names();
CRSurface demo_surface(const std::string& name);

std::string read_file(const std::string& path);
/// Writes to a sibling temp file and renames it over the target, so a failed
/// run never leaves a partial report.
void write_file_atomic(const std::string& path, const std::string& content);
/// Parse with a "path:line: message" error on malformed input.
Json parse_json_file(const std::string& path);

}  // namespace crsing
