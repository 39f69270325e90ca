#include "config.hpp"

#include <fstream>
#include <set>

#include "polyct/error.hpp"

namespace polyct::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!known.contains(key))
      throw ParseError("config: unknown key '" + key + "' in " + where);
}

template <typename T>
void take(const json& obj, const char* key, T& dst) {
  if (const auto it = obj.find(key); it != obj.end()) {
    try {
      dst = it->get<T>();
    } catch (const json::exception&) {
      throw ParseError(std::string("config: bad value type for '") + key + "'");
    }
  }
}

}  // namespace

json PipelineConfig::to_json() const {
  json j;
  j["phantom"] = {{"resolution", phantom_resolution},
                  {"extent_mm", phantom_extent_mm}};
  j["geometry"] = {
      {"mode", geometry.mode == BeamMode::parallel ? "parallel" : "fan"},
      {"n_angles", geometry.n_angles},
      {"angle_step_deg", geometry.angle_step_deg},
      {"n_detectors", geometry.n_detectors},
      {"detector_spacing_mm", geometry.detector_spacing_mm},
      {"fan_angle_deg", geometry.fan_angle_deg},
      {"source_distance_mm", geometry.source_distance_mm}};
  j["kvp"] = kvp;
  if (mono_kev)
    j["mono_kev"] = *mono_kev;
  else
    j["mono_kev"] = nullptr;
  j["intervals"] = intervals;
  j["ee_mean_scale"] = ee_mean_scale;
  j["reference_energy_kev"] = reference_energy_kev;
  j["analysis"] = {{"aligned_levels", analysis.aligned_levels},
                   {"entropy_series_limit", analysis.entropy_series_limit},
                   {"embed_dim", analysis.embed_dim},
                   {"r_factor", analysis.r_factor},
                   {"fuzzy_gradient", analysis.fuzzy_gradient},
                   {"perm_order", analysis.perm_order},
                   {"cce_bins", analysis.cce_bins},
                   {"cce_lmax", analysis.cce_lmax},
                   {"mr_thresholds", analysis.mr_thresholds},
                   {"bdm_levels", analysis.bdm.levels},
                   {"bdm_offset", analysis.bdm.offset},
                   {"bdm_fallback", analysis.bdm.fallback},
                   {"lowess_frac", analysis.lowess_frac},
                   {"measures", analysis.measures}};
  j["fcm"] = {{"clusters", fcm.clusters},
              {"fuzzifier", fcm.fuzzifier},
              {"tolerance", fcm.tolerance},
              {"max_iterations", fcm.max_iterations}};
  j["seed"] = seed;
  return j;
}

void PipelineConfig::validate() const {
  if (phantom_resolution < 16)
    throw ContractError("config: phantom resolution must be >= 16");
  if (!(phantom_extent_mm >= 12.0))
    throw ContractError("config: phantom extent must be >= 12 mm");
  geometry.validate();
  if (!(kvp > 10.0 && kvp <= 150.0))
    throw ContractError("config: kvp must lie in (10, 150]");
  if (mono_kev && !(*mono_kev >= 10.0 && *mono_kev <= 150.0))
    throw ContractError("config: mono energy must lie in [10, 150] keV");
  if (!(reference_energy_kev >= 10.0 && reference_energy_kev <= 150.0))
    throw ContractError("config: reference energy must lie in [10, 150] keV");
  if (ee_mean_scale != "auto") {
    try {
      (void)std::stod(ee_mean_scale);
    } catch (const std::exception&) {
      throw ContractError("config: ee_mean_scale must be 'auto' or a number");
    }
  }
  analysis.validate();
}

PipelineConfig load_config(const std::filesystem::path& path,
                           PipelineConfig cfg) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("config " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");

  reject_unknown(j,
                 {"phantom", "geometry", "kvp", "mono_kev", "intervals",
                  "ee_mean_scale", "reference_energy_kev", "analysis", "fcm",
                  "seed", "out_dir"},
                 "top level");

  if (j.contains("phantom")) {
    const json& p = j["phantom"];
    reject_unknown(p, {"resolution", "extent_mm"}, "phantom");
    take(p, "resolution", cfg.phantom_resolution);
    take(p, "extent_mm", cfg.phantom_extent_mm);
  }
  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    reject_unknown(g,
                   {"mode", "n_angles", "angle_step_deg", "n_detectors",
                    "detector_spacing_mm", "fan_angle_deg", "source_distance_mm"},
                   "geometry");
    std::string mode =
        cfg.geometry.mode == BeamMode::parallel ? "parallel" : "fan";
    take(g, "mode", mode);
    if (mode == "parallel")
      cfg.geometry.mode = BeamMode::parallel;
    else if (mode == "fan")
      cfg.geometry.mode = BeamMode::fan;
    else
      throw ParseError("config: geometry.mode must be 'parallel' or 'fan'");
    take(g, "n_angles", cfg.geometry.n_angles);
    take(g, "angle_step_deg", cfg.geometry.angle_step_deg);
    take(g, "n_detectors", cfg.geometry.n_detectors);
    take(g, "detector_spacing_mm", cfg.geometry.detector_spacing_mm);
    take(g, "fan_angle_deg", cfg.geometry.fan_angle_deg);
    take(g, "source_distance_mm", cfg.geometry.source_distance_mm);
  }
  take(j, "kvp", cfg.kvp);
  if (j.contains("mono_kev") && !j["mono_kev"].is_null()) {
    double e = 0.0;
    take(j, "mono_kev", e);
    cfg.mono_kev = e;
  }
  take(j, "intervals", cfg.intervals);
  if (j.contains("ee_mean_scale")) {
    const json& s = j["ee_mean_scale"];
    cfg.ee_mean_scale =
        s.is_string() ? s.get<std::string>() : std::to_string(s.get<double>());
  }
  take(j, "reference_energy_kev", cfg.reference_energy_kev);
  if (j.contains("analysis")) {
    const json& a = j["analysis"];
    reject_unknown(a,
                   {"aligned_levels", "entropy_series_limit", "embed_dim",
                    "r_factor", "fuzzy_gradient", "perm_order", "cce_bins",
                    "cce_lmax", "mr_thresholds", "bdm_levels", "bdm_offset",
                    "bdm_fallback", "lowess_frac", "measures"},
                   "analysis");
    take(a, "aligned_levels", cfg.analysis.aligned_levels);
    take(a, "entropy_series_limit", cfg.analysis.entropy_series_limit);
    take(a, "embed_dim", cfg.analysis.embed_dim);
    take(a, "r_factor", cfg.analysis.r_factor);
    take(a, "fuzzy_gradient", cfg.analysis.fuzzy_gradient);
    take(a, "perm_order", cfg.analysis.perm_order);
    take(a, "cce_bins", cfg.analysis.cce_bins);
    take(a, "cce_lmax", cfg.analysis.cce_lmax);
    take(a, "mr_thresholds", cfg.analysis.mr_thresholds);
    take(a, "bdm_levels", cfg.analysis.bdm.levels);
    take(a, "bdm_offset", cfg.analysis.bdm.offset);
    take(a, "bdm_fallback", cfg.analysis.bdm.fallback);
    take(a, "lowess_frac", cfg.analysis.lowess_frac);
    take(a, "measures", cfg.analysis.measures);
  }
  if (j.contains("fcm")) {
    const json& f = j["fcm"];
    reject_unknown(f, {"clusters", "fuzzifier", "tolerance", "max_iterations"},
                   "fcm");
    take(f, "clusters", cfg.fcm.clusters);
    take(f, "fuzzifier", cfg.fcm.fuzzifier);
    take(f, "tolerance", cfg.fcm.tolerance);
    take(f, "max_iterations", cfg.fcm.max_iterations);
  }
  take(j, "seed", cfg.seed);
  if (j.contains("out_dir")) {
    std::string dir;
    take(j, "out_dir", dir);
    cfg.out_dir = dir;
  }

  if (cfg.intervals != "paper" && cfg.intervals != "fit" &&
      !std::filesystem::exists(cfg.intervals))
    throw ParseError("config: intervals file does not exist: " + cfg.intervals);
  return cfg;
}

void apply_overrides(PipelineConfig& cfg, const FlagOverrides& flags) {
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.out_dir) cfg.out_dir = *flags.out_dir;
  if (flags.kvp) cfg.kvp = *flags.kvp;
  if (flags.intervals) cfg.intervals = *flags.intervals;
  if (flags.measures) cfg.analysis.measures = *flags.measures;
  if (flags.mono_kev) cfg.mono_kev = *flags.mono_kev;
}

}  // namespace polyct::cli
