#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace polyct::cli {

struct ReconstructArgs {
  std::filesystem::path sinogram;
  std::optional<int> size;  // defaults to the configured phantom resolution
  std::string filter = "ramp";
  bool pgm = false;
  std::optional<double> pgm_lo, pgm_hi;  // window; image min-max when unset
};

struct AnalyzeArgs {
  std::vector<std::filesystem::path> images;
  std::string reference;  // image id or path; "cct" among inputs by default
  std::optional<std::filesystem::path> manifest;  // energy lookup
};

struct SegmentArgs {
  std::vector<std::filesystem::path> images;
  std::string reference;
  std::optional<std::filesystem::path> manifest;
};

// Each command writes its artifacts into cfg.out_dir and returns 0. Failures
// throw: ParseError for data problems, ContractError for numeric ones.
int cmd_simulate(const PipelineConfig& cfg);
int cmd_reconstruct(const PipelineConfig& cfg, const ReconstructArgs& args);
int cmd_enhance(const PipelineConfig& cfg, const std::filesystem::path& pam);
int cmd_analyze(const PipelineConfig& cfg, const AnalyzeArgs& args);
int cmd_segment(const PipelineConfig& cfg, const SegmentArgs& args);
int cmd_pipeline(const PipelineConfig& cfg, const std::string& filter);

}  // namespace polyct::cli
