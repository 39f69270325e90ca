#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyct/bdm.hpp"
#include "polyct/image.hpp"

namespace polyct {

struct AnalysisOptions {
  // All series measures run on values quantized onto the family-wide min-max
  // window ("aligned" indexed values); correlation measures and mean/stddev
  // use the raw values.
  int aligned_levels = 256;

  // The quadratic-cost entropies decimate the series to at most this many
  // samples (uniform stride). 0 disables the cap.
  int entropy_series_limit = 2048;
  int embed_dim = 2;       // ApEn / SampEn m
  double r_factor = 0.2;   // r = r_factor * stddev(series)
  int fuzzy_gradient = 2;
  int perm_order = 4;
  int cce_bins = 6;
  int cce_lmax = 8;
  int mr_thresholds = 32;
  LayeredBdmOptions bdm;     // window fields are overwritten per family
  double lowess_frac = 0.9;  // smoothing span for plot-data emission

  std::vector<std::string> measures;  // empty = all

  void validate() const;
};

struct AnalyzedImage {
  std::string id;
  std::optional<double> energy_kev;  // plot x coordinate when known
  ImageGrid image;
};

struct MeasureRecord {
  std::string image;
  std::string family;
  std::optional<double> energy_kev;
  std::string measure;
  std::string parameters;
  std::optional<double> value;   // unset when the measure errored
  std::string error;             // contract violation text; run continues
  std::vector<double> series;    // profile measures (mr power spectrum, cce)
};

struct AnalysisReport {
  // family name -> shared quantization window
  std::map<std::string, std::pair<double, double>> windows;
  std::vector<MeasureRecord> records;
};

// Measure names accepted by resolve_measures / AnalysisOptions::measures.
const std::vector<std::string>& all_measure_names();

// Expands "all", validates names; throws listing the valid names on an
// unknown entry.
std::vector<std::string> resolve_measures(const std::vector<std::string>& requested);

// Family key used for window alignment; derived from value semantics.
std::string family_of(const ImageGrid& img);

// Quantize onto [lo, hi] with the given level count; values clamp to the
// window, output holds level indices as doubles. lo == hi maps to all zeros.
ImageGrid quantize_window(const ImageGrid& img, double lo, double hi, int levels);

// Runs every requested measure on every image. reference indexes the
// comparison baseline for the correlation measures (-1 disables them).
// Individual measure failures become error records; the run continues.
AnalysisReport analyze_images(const std::vector<AnalyzedImage>& images,
                              int reference, const AnalysisOptions& opt);

}  // namespace polyct
