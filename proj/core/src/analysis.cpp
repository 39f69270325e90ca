#include "polyct/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "polyct/entropy.hpp"
#include "polyct/error.hpp"
#include "polyct/fourier.hpp"
#include "polyct/lz.hpp"
#include "polyct/morphology.hpp"
#include "polyct/stats.hpp"

namespace polyct {

namespace {

const std::vector<std::string> kMeasures = {
    "mean",        "stddev",  "scott_bins", "baseline_pearson",
    "conditional_entropy",    "lz",         "lzw",
    "bdm",         "apen",    "sampen",     "fuzzyen",
    "permen",      "cce",     "mr_power",
};

bool wants(const std::vector<std::string>& measures, const std::string& name) {
  return std::find(measures.begin(), measures.end(), name) != measures.end();
}

std::vector<double> decimate(const std::vector<double>& xs, int limit) {
  if (limit <= 0 || xs.size() <= std::size_t(limit)) return xs;
  const std::size_t stride = (xs.size() + std::size_t(limit) - 1) / std::size_t(limit);
  std::vector<double> out;
  out.reserve(std::size_t(limit));
  for (std::size_t i = 0; i < xs.size(); i += stride) out.push_back(xs[i]);
  return out;
}

}  // namespace

void AnalysisOptions::validate() const {
  if (aligned_levels < 2 || aligned_levels > 256)
    throw ContractError("analysis: aligned_levels must lie in [2, 256]");
  if (entropy_series_limit < 0)
    throw ContractError("analysis: entropy_series_limit must be >= 0");
  if (embed_dim < 1) throw ContractError("analysis: embed_dim must be >= 1");
  if (!(r_factor > 0.0)) throw ContractError("analysis: r_factor must be positive");
  if (fuzzy_gradient < 1)
    throw ContractError("analysis: fuzzy_gradient must be >= 1");
  if (perm_order < 2 || perm_order > 7)
    throw ContractError("analysis: perm_order must lie in [2, 7]");
  if (cce_bins < 2) throw ContractError("analysis: cce_bins must be >= 2");
  if (cce_lmax < 2) throw ContractError("analysis: cce_lmax must be >= 2");
  if (mr_thresholds < 8)
    throw ContractError("analysis: mr_thresholds must be >= 8");
  if (!(lowess_frac > 0.0 && lowess_frac <= 1.0))
    throw ContractError("analysis: lowess_frac must lie in (0, 1]");
}

const std::vector<std::string>& all_measure_names() { return kMeasures; }

std::vector<std::string> resolve_measures(
    const std::vector<std::string>& requested) {
  if (requested.empty()) return kMeasures;
  std::vector<std::string> out;
  for (const std::string& name : requested) {
    if (name == "all") {
      for (const std::string& m : kMeasures)
        if (!wants(out, m)) out.push_back(m);
      continue;
    }
    if (std::find(kMeasures.begin(), kMeasures.end(), name) == kMeasures.end()) {
      std::string valid;
      for (const std::string& m : kMeasures) {
        if (!valid.empty()) valid += ", ";
        valid += m;
      }
      throw ParseError("unknown measure '" + name + "'; valid measures: all, " +
                       valid);
    }
    if (!wants(out, name)) out.push_back(name);
  }
  return out;
}

std::string family_of(const ImageGrid& img) {
  switch (img.semantics) {
    case ValueSemantics::linear_attenuation_per_cm: return "attenuation";
    case ValueSemantics::hounsfield: return "ct";
    case ValueSemantics::weighted_hounsfield: return "ect";
    case ValueSemantics::labels: return "labels";
  }
  throw ContractError("unknown image semantics");
}

ImageGrid quantize_window(const ImageGrid& img, double lo, double hi,
                          int levels) {
  img.validate();
  if (levels < 2) throw ContractError("quantize_window: levels must be >= 2");
  if (!(hi >= lo)) throw ContractError("quantize_window: empty window");
  ImageGrid out = img;
  if (hi > lo) {
    for (double& v : out.data) {
      const double u = (std::clamp(v, lo, hi) - lo) / (hi - lo);
      v = double(std::clamp(int(std::floor(u * levels)), 0, levels - 1));
    }
  } else {
    for (double& v : out.data) v = 0.0;
  }
  return out;
}

AnalysisReport analyze_images(const std::vector<AnalyzedImage>& images,
                              int reference, const AnalysisOptions& opt) {
  opt.validate();
  if (images.empty()) throw ContractError("analyze_images: no images");
  if (reference >= int(images.size()))
    throw ContractError("analyze_images: reference index out of range");
  const std::vector<std::string> measures = resolve_measures(opt.measures);

  AnalysisReport report;
  for (const AnalyzedImage& item : images) {
    item.image.validate();
    const std::string family = family_of(item.image);
    const auto [lo, hi] = value_range(item.image);
    const auto it = report.windows.find(family);
    if (it == report.windows.end()) {
      report.windows[family] = {lo, hi};
    } else {
      it->second.first = std::min(it->second.first, lo);
      it->second.second = std::max(it->second.second, hi);
    }
  }

  for (const AnalyzedImage& item : images) {
    const std::string family = family_of(item.image);
    const auto [win_lo, win_hi] = report.windows.at(family);
    const ImageGrid indexed =
        quantize_window(item.image, win_lo, win_hi, opt.aligned_levels);
    const std::vector<double>& raw = item.image.data;
    const std::vector<double>& aligned = indexed.data;

    auto emit = [&](const std::string& measure, const std::string& params,
                    auto&& compute) {
      if (!wants(measures, measure)) return;
      MeasureRecord rec;
      rec.image = item.id;
      rec.family = family;
      rec.energy_kev = item.energy_kev;
      rec.measure = measure;
      rec.parameters = params;
      try {
        compute(rec);
      } catch (const Error& e) {
        rec.value.reset();
        rec.series.clear();
        rec.error = e.what();
      }
      report.records.push_back(std::move(rec));
    };

    emit("mean", "raw", [&](MeasureRecord& r) { r.value = sample_mean(raw); });
    emit("stddev", "raw",
         [&](MeasureRecord& r) { r.value = sample_stddev(raw); });
    emit("scott_bins", "raw",
         [&](MeasureRecord& r) { r.value = double(scott_bins(raw)); });

    if (reference >= 0) {
      const ImageGrid& ref = images[std::size_t(reference)].image;
      emit("baseline_pearson", "raw vs " + images[std::size_t(reference)].id,
           [&](MeasureRecord& r) { r.value = pearson(raw, ref.data); });
      emit("conditional_entropy",
           "scott bins, conditioned on " + images[std::size_t(reference)].id,
           [&](MeasureRecord& r) {
             const std::vector<int> bx = scott_bin_indices(ref.data);
             const std::vector<int> by = scott_bin_indices(raw);
             const int nx = *std::max_element(bx.begin(), bx.end()) + 1;
             const int ny = *std::max_element(by.begin(), by.end()) + 1;
             std::vector<std::vector<std::size_t>> joint(
                 std::size_t(nx), std::vector<std::size_t>(std::size_t(ny), 0));
             for (std::size_t i = 0; i < bx.size(); ++i)
               ++joint[std::size_t(bx[i])][std::size_t(by[i])];
             r.value = conditional_entropy(joint);
           });
    }

    const std::string lv = "levels=" + std::to_string(opt.aligned_levels);
    emit("lz", lv + " mean-binarized", [&](MeasureRecord& r) {
      r.value = lz_complexity(binarize_by_mean(aligned));
    });
    emit("lzw", lv, [&](MeasureRecord& r) {
      std::vector<std::uint8_t> bytes(aligned.size());
      for (std::size_t i = 0; i < aligned.size(); ++i)
        bytes[i] = std::uint8_t(aligned[i]);
      r.value = double(lzw_compressed_length_bits(bytes));
    });
    emit("bdm",
         lv + " offset=" + std::to_string(opt.bdm.offset) +
             " bdm_levels=" + std::to_string(opt.bdm.levels),
         [&](MeasureRecord& r) {
           LayeredBdmOptions b = opt.bdm;
           b.window_lo = 0.0;
           b.window_hi = double(opt.aligned_levels - 1);
           r.value = layered_bdm(indexed, bundled_ctm2(), b);
         });

    const std::vector<double> series = decimate(aligned, opt.entropy_series_limit);
    std::string rf = std::to_string(opt.r_factor);
    rf.erase(rf.find_last_not_of('0') + 1);
    if (!rf.empty() && rf.back() == '.') rf.pop_back();
    const std::string ent_params =
        lv + " m=" + std::to_string(opt.embed_dim) + " r=" + rf + "*sd" +
        " limit=" + std::to_string(opt.entropy_series_limit);
    emit("apen", ent_params, [&](MeasureRecord& r) {
      const double sd = sample_stddev(series);
      if (!(sd > 0.0)) throw ContractError("apen: constant series");
      r.value = approximate_entropy(series, opt.embed_dim, opt.r_factor * sd);
    });
    emit("sampen", ent_params, [&](MeasureRecord& r) {
      const double sd = sample_stddev(series);
      // sd = 0 makes r = 0, under which no pair can match (d < r is strict).
      if (!(sd > 0.0))
        throw ContractError(
            "sampen: insufficient matches (constant series gives r = 0)");
      r.value = sample_entropy(series, opt.embed_dim, opt.r_factor * sd);
    });
    emit("fuzzyen", ent_params + " n=" + std::to_string(opt.fuzzy_gradient),
         [&](MeasureRecord& r) {
           const double sd = sample_stddev(series);
           if (!(sd > 0.0)) throw ContractError("fuzzyen: constant series");
           r.value = fuzzy_entropy(series, opt.embed_dim, opt.r_factor * sd,
                                   opt.fuzzy_gradient);
         });
    emit("permen", lv + " order=" + std::to_string(opt.perm_order),
         [&](MeasureRecord& r) {
           r.value = permutation_entropy(aligned, opt.perm_order);
         });
    emit("cce",
         lv + " bins=" + std::to_string(opt.cce_bins) +
             " lmax=" + std::to_string(opt.cce_lmax),
         [&](MeasureRecord& r) {
           const CceResult c =
               corrected_conditional_entropy(aligned, opt.cce_bins, opt.cce_lmax);
           r.value = c.min_cce;
           r.series = c.profile;
         });
    emit("mr_power",
         lv + " thresholds=" + std::to_string(opt.mr_thresholds),
         [&](MeasureRecord& r) {
           const std::vector<double> mr = mr_signal(indexed, opt.mr_thresholds);
           const std::vector<double> power = power_spectrum(mr);
           double ac = 0.0;
           for (std::size_t k = 1; k < power.size(); ++k) ac += power[k];
           r.value = ac;  // total power away from DC
           r.series = power;
         });
  }
  return report;
}

}  // namespace polyct
