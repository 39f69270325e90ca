#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyct/analysis.hpp"
#include "polyct/fcm.hpp"
#include "polyct/projector.hpp"

namespace polyct::cli {

struct PipelineConfig {
  int phantom_resolution = 256;
  double phantom_extent_mm = 16.0;
  Geometry geometry;
  double kvp = 140.0;
  std::optional<double> mono_kev;  // monochromatic acquisition when set
  // "paper" (bypass effective energies), "fit" (endpoint fit), or a path to
  // an INTERVALS file.
  std::string intervals = "paper";
  // Mean rescaling for the fit path: "auto" or a number ("1" = verbatim,
  // which overflows keV-scale intervals and trips the warning sink).
  std::string ee_mean_scale = "auto";
  double reference_energy_kev = 70.0;
  AnalysisOptions analysis;
  FcmOptions fcm;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";

  // Resolved configuration for manifests. Deliberately omits out_dir so the
  // same run into two directories produces identical trees.
  nlohmann::json to_json() const;

  void validate() const;
};

// Parse a JSON config over the given base (file values win). Unknown keys are
// rejected; an intervals path must exist at load time.
PipelineConfig load_config(const std::filesystem::path& path,
                           PipelineConfig base);

// Flag values captured by the parser; only set when the user passed them.
// Applied on top of the config file, which sits on top of the defaults.
struct FlagOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<double> kvp;
  std::optional<std::string> intervals;
  std::optional<std::vector<std::string>> measures;
  std::optional<double> mono_kev;
};

void apply_overrides(PipelineConfig& cfg, const FlagOverrides& flags);

}  // namespace polyct::cli
