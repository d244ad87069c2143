#include "deltaprime/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "deltaprime/version.hpp"

namespace dp {

CurvatureProfile profile_from_json(const nlohmann::json& j) {
  if (!j.contains("family"))
    throw ParameterError("curve config: missing \"family\"");
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "line") return CurvatureProfile::line();
  if (fam == "gaussian_bump") {
    if (!j.contains("c")) throw ParameterError("gaussian_bump: missing \"c\"");
    return CurvatureProfile::gaussian_bump(j.at("c").get<double>());
  }
  if (fam == "two_bump") {
    if (!j.contains("c") || !j.contains("s0"))
      throw ParameterError("two_bump: missing \"c\" or \"s0\"");
    return CurvatureProfile::two_bump(j.at("c").get<double>(), j.at("s0").get<double>());
  }
  throw ParameterError("curve config: unknown family \"" + fam + "\"");
}

CurvatureProfile profile_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open curve config: " + path);
  nlohmann::json j;
  in >> j;
  return profile_from_json(j);
}

nlohmann::json profile_to_json(const CurvatureProfile& p) {
  nlohmann::json j;
  j["family"] = p.family_name();
  switch (p.family()) {
    case CurvatureProfile::Family::GaussianBump:
      j["c"] = p.param_c();
      break;
    case CurvatureProfile::Family::TwoBump:
      j["c"] = p.param_c();
      j["s0"] = p.param_s0();
      break;
    default:
      break;
  }
  return j;
}

ExperimentManifest make_manifest(const std::string& subcommand,
                                 const std::vector<std::string>& argv,
                                 const nlohmann::json& parameters,
                                 const nlohmann::json& curve) {
  ExperimentManifest m;
  m.subcommand = subcommand;
  m.argv = argv;
  m.parameters = parameters;
  m.curve = curve;
  m.tool_version = kVersion;
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  m.timestamp = buf;
  return m;
}

void write_manifest(const ExperimentManifest& m, const std::string& output_path) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = m.tool_version;
  j["subcommand"] = m.subcommand;
  j["argv"] = m.argv;
  j["parameters"] = m.parameters;
  j["curve"] = m.curve;
  j["timestamp"] = m.timestamp;
  std::ofstream out(output_path + ".manifest.json");
  if (!out) throw Error("cannot write manifest for " + output_path);
  out << j.dump(2) << "\n";
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
}

}  // namespace dp
