#pragma once

#include <string>

#include <json.hpp>

#include "mhlab/classifier.hpp"

namespace mhlab {

std::string version();

/// Region of the classified polynomial (theorem inequalities plus the unit square).
RegionPolygon region_of(const Classification& c);

/// Analysis report. Keys: tool, input, kappa, d_h, factorization, N, hessian, case, conditions,
/// vertices, endpoints, flags, notes (plus reason for excluded inputs). Rationals are "p/q" strings.
nlohmann::ordered_json analysis_report(const std::string& input, const Classification& c);

/// Plain-text summary of the same data.
std::string analysis_text(const std::string& input, const Classification& c);

/// Writes to a temporary sibling and renames it over path.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mhlab
