#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "deltaprime/curve.hpp"

namespace dp {

/// Parse a curve configuration:
///   {"family": "line"}
///   {"family": "gaussian_bump", "c": 0.5}
///   {"family": "two_bump", "c": 0.4, "s0": 3.0}
/// Optional fields: "window" (default 20), "decay_eps" (default 1e-12).
CurvatureProfile profile_from_json(const nlohmann::json& j);
CurvatureProfile profile_from_file(const std::string& path);
nlohmann::json profile_to_json(const CurvatureProfile& p);

/// Reproducibility manifest written alongside every output file.
struct ExperimentManifest {
  std::string subcommand;
  std::vector<std::string> argv;      ///< exact invocation
  nlohmann::json parameters;          ///< fully resolved parameter set
  nlohmann::json curve;               ///< resolved curve configuration
  std::string tool_version;
  std::string timestamp;              ///< ISO-8601 UTC; not part of any output
};

ExperimentManifest make_manifest(const std::string& subcommand,
                                 const std::vector<std::string>& argv,
                                 const nlohmann::json& parameters,
                                 const nlohmann::json& curve);

/// Writes `<output_path>.manifest.json`.
void write_manifest(const ExperimentManifest& m, const std::string& output_path);

/// Shortest round-trip decimal formatting; identical across runs.
std::string format_double(double v);

/// CSV writer: one header line, then rows; all numbers via format_double.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace dp
