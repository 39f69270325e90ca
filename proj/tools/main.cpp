#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "polyct/error.hpp"

namespace {

using namespace polyct;
using namespace polyct::cli;

// Exit codes: 0 success, 1 usage, 2 data/parse, 3 numeric contract violation.
int run(int argc, char** argv) {
  CLI::App app{"Polychromatic CT simulation, enhancement, and analysis"};
  app.require_subcommand(1);
  // Global flags may trail the subcommand (pipeline --seed 7).
  app.fallthrough();

  std::string config_path;
  FlagOverrides flags;
  std::uint64_t seed_flag = 0;
  std::string out_flag, intervals_flag;
  std::vector<std::string> measures_flag;
  double kvp_flag = 0.0, mono_flag = 0.0;

  app.add_option("--config", config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  const auto* seed_opt =
      app.add_option("--seed", seed_flag, "RNG seed (fuzzy clustering init)");
  const auto* out_opt = app.add_option("--out", out_flag, "Output directory");
  const auto* kvp_opt = app.add_option("--kvp", kvp_flag, "Tube voltage (keV)");
  const auto* intervals_opt = app.add_option(
      "--intervals", intervals_flag, "Interval source: paper, fit, or a file");
  const auto* measures_opt =
      app.add_option("--measures", measures_flag, "Measures to run (or 'all')")
          ->delimiter(',');
  const auto* mono_opt = app.add_option(
      "--mono", mono_flag, "Monochromatic acquisition at this energy (keV)");

  CLI::App* simulate = app.add_subcommand("simulate", "Project the phantom");
  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "Filtered back-projection of a sinogram");
  ReconstructArgs rec_args;
  std::string rec_sino;
  int rec_size = 0;
  reconstruct->add_option("sinogram", rec_sino, "SINO file")->required();
  const auto* rec_size_opt =
      reconstruct->add_option("--size", rec_size, "Output image edge (pixels)");
  reconstruct->add_option("--filter", rec_args.filter,
                          "Projection filter: ramp (ramlak) or hamming");
  reconstruct->add_flag("--pgm", rec_args.pgm, "Also write an 8-bit preview");
  double pgm_lo = 0.0, pgm_hi = 0.0;
  const auto* pgm_lo_opt =
      reconstruct->add_option("--pgm-lo", pgm_lo, "Preview window low edge");
  const auto* pgm_hi_opt =
      reconstruct->add_option("--pgm-hi", pgm_hi, "Preview window high edge");

  CLI::App* enhance =
      app.add_subcommand("enhance", "Per-interval weighted HU stack from a PAM");
  std::string enh_pam;
  enhance->add_option("pam", enh_pam, "IMG file with attenuation values")
      ->required();

  CLI::App* analyze =
      app.add_subcommand("analyze", "Complexity measures over images");
  AnalyzeArgs an_args;
  std::vector<std::string> an_images;
  std::string an_reference, an_manifest;
  analyze->add_option("images", an_images, "IMG files")->required();
  analyze->add_option("--reference", an_reference,
                      "Baseline image id for the correlation measures");
  const auto* an_manifest_opt = analyze->add_option(
      "--manifest", an_manifest, "Enhancement manifest for energy lookup");

  CLI::App* segment =
      app.add_subcommand("segment", "Fuzzy clustering and quality metrics");
  SegmentArgs seg_args;
  std::vector<std::string> seg_images;
  std::string seg_reference, seg_manifest;
  segment->add_option("images", seg_images, "IMG files")->required();
  segment->add_option("--reference", seg_reference, "Metric reference image id");
  const auto* seg_manifest_opt = segment->add_option(
      "--manifest", seg_manifest, "Enhancement manifest for energy lookup");

  CLI::App* pipeline = app.add_subcommand("pipeline", "All stages in order");
  std::string pipeline_filter = "ramp";
  pipeline->add_option("--filter", pipeline_filter,
                       "Projection filter: ramp (ramlak) or hamming");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  PipelineConfig cfg;
  if (const char* env = std::getenv("POLYCT_OUT")) cfg.out_dir = env;
  if (!config_path.empty()) cfg = load_config(config_path, cfg);
  if (seed_opt->count()) flags.seed = seed_flag;
  if (out_opt->count()) flags.out_dir = out_flag;
  if (kvp_opt->count()) flags.kvp = kvp_flag;
  if (intervals_opt->count()) flags.intervals = intervals_flag;
  if (measures_opt->count()) flags.measures = measures_flag;
  if (mono_opt->count()) flags.mono_kev = mono_flag;
  apply_overrides(cfg, flags);

  if (*simulate) return cmd_simulate(cfg);
  if (*reconstruct) {
    rec_args.sinogram = rec_sino;
    if (rec_size_opt->count()) rec_args.size = rec_size;
    if (pgm_lo_opt->count()) rec_args.pgm_lo = pgm_lo;
    if (pgm_hi_opt->count()) rec_args.pgm_hi = pgm_hi;
    return cmd_reconstruct(cfg, rec_args);
  }
  if (*enhance) return cmd_enhance(cfg, enh_pam);
  if (*analyze) {
    for (const std::string& p : an_images) an_args.images.emplace_back(p);
    an_args.reference = an_reference;
    if (an_manifest_opt->count()) an_args.manifest = an_manifest;
    return cmd_analyze(cfg, an_args);
  }
  if (*segment) {
    for (const std::string& p : seg_images) seg_args.images.emplace_back(p);
    seg_args.reference = seg_reference;
    if (seg_manifest_opt->count()) seg_args.manifest = seg_manifest;
    return cmd_segment(cfg, seg_args);
  }
  if (*pipeline) return cmd_pipeline(cfg, pipeline_filter);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
