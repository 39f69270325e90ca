#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "polyct/enhance.hpp"
#include "polyct/error.hpp"
#include "polyct/intervals.hpp"
#include "polyct/io.hpp"
#include "polyct/metrics.hpp"
#include "polyct/phantom.hpp"
#include "polyct/recon.hpp"
#include "polyct/stats.hpp"

namespace polyct::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

Spectrum build_spectrum(const PipelineConfig& cfg) {
  return kramers_spectrum(cfg.kvp, integer_grid(10.0, cfg.kvp));
}

void ensure_out_dir(const PipelineConfig& cfg) {
  if (cfg.out_dir.empty()) return;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec)
    throw ParseError("cannot create output directory " + cfg.out_dir.string() +
                     ": " + ec.message());
}

void write_json_file(const fs::path& path, const json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string energy_label(double kev) {
  std::string s = format_double(kev);
  for (char& ch : s)
    if (ch == '.') ch = 'p';  // keep file names dot-free before the suffix
  return s;
}

// INTERVALS file: header line "INTERVALS", then "lo hi" or "lo hi eff_kev"
// per line (all lines must agree on the form).
IntervalSet read_intervals_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open intervals file " + path.string());
  std::string line;
  int line_no = 0;
  IntervalSet set;
  int with_eff = 0, without_eff = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "INTERVALS")
        throw ParseError(path.string() + ":1: expected 'INTERVALS' header");
      continue;
    }
    if (line.empty()) continue;
    EnergyInterval iv;
    double eff = 0.0;
    const int got = std::sscanf(line.c_str(), "%lf %lf %lf", &iv.lo_kev,
                                &iv.hi_kev, &eff);
    if (got == 3) {
      iv.effective_energy_kev = eff;
      ++with_eff;
    } else if (got == 2) {
      ++without_eff;
    } else {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 'lo hi' or 'lo hi effective_energy'");
    }
    set.intervals.push_back(iv);
  }
  if (set.intervals.empty())
    throw ParseError(path.string() + ": no intervals");
  if (with_eff > 0 && without_eff > 0)
    throw ParseError(path.string() +
                     ": either every interval or none may carry an effective "
                     "energy");
  set.validate();
  return set;
}

struct IntervalSource {
  IntervalSet set;
  json desc;
};

IntervalSource load_interval_set(const PipelineConfig& cfg) {
  IntervalSource src;
  const auto run_fit = [&](IntervalSet& set) {
    const double scale = cfg.ee_mean_scale == "auto"
                             ? auto_mean_scale(set)
                             : std::stod(cfg.ee_mean_scale);
    const EndpointFit fit = fit_effective_energies(set, scale);
    src.desc["fit"] = {{"mean", fit.mean},
                       {"r", fit.r},
                       {"p", fit.p},
                       {"ks", fit.ks},
                       {"mean_scale", scale}};
  };

  if (cfg.intervals == "paper") {
    src.set = paper_interval_set();
    src.desc["source"] = "paper";
  } else if (cfg.intervals == "fit") {
    src.set = default_intervals();
    src.desc["source"] = "fit";
    run_fit(src.set);
  } else {
    src.set = read_intervals_file(cfg.intervals);
    src.desc["source"] = cfg.intervals;
    if (!src.set.intervals.front().effective_energy_kev) run_fit(src.set);
  }
  return src;
}

std::string stem_of(const fs::path& p) { return p.stem().string(); }

// Energy lookup by image id from an enhancement manifest.
std::map<std::string, double> energies_from_manifest(const fs::path& path) {
  std::map<std::string, double> out;
  const json j = read_json_file(path);
  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    if (o.contains("cct") && o.contains("cct_energy_kev"))
      out[stem_of(o["cct"].get<std::string>())] =
          o["cct_energy_kev"].get<double>();
    if (o.contains("images")) {
      for (const json& item : o["images"]) {
        const double e = item["energy_kev"].get<double>();
        out[stem_of(item["hu"].get<std::string>())] = e;
        out[stem_of(item["whu"].get<std::string>())] = e;
      }
    }
  }
  return out;
}

struct LoadedImages {
  std::vector<AnalyzedImage> images;
  int reference = -1;
};

LoadedImages load_images(const std::vector<fs::path>& paths,
                         const std::string& reference,
                         const std::optional<fs::path>& manifest) {
  if (paths.empty()) throw ContractError("no input images");

  std::map<std::string, double> energies;
  fs::path manifest_path;
  if (manifest) {
    manifest_path = *manifest;
  } else {
    const fs::path guess = paths.front().parent_path() / "enhance_manifest.json";
    if (fs::exists(guess)) manifest_path = guess;
  }
  if (!manifest_path.empty()) energies = energies_from_manifest(manifest_path);

  LoadedImages out;
  for (const fs::path& p : paths) {
    AnalyzedImage item;
    item.id = stem_of(p);
    item.image = read_image(p);
    if (const auto it = energies.find(item.id); it != energies.end())
      item.energy_kev = it->second;
    out.images.push_back(std::move(item));
  }

  const std::string want = reference.empty() ? "cct" : stem_of(reference);
  for (std::size_t i = 0; i < out.images.size(); ++i)
    if (out.images[i].id == want) out.reference = int(i);
  if (!reference.empty() && out.reference < 0)
    throw ContractError("reference image '" + reference +
                        "' is not among the inputs");
  return out;
}

json record_to_json(const MeasureRecord& rec) {
  json j;
  j["image"] = rec.image;
  j["family"] = rec.family;
  j["energy_kev"] = rec.energy_kev ? json(*rec.energy_kev) : json(nullptr);
  j["measure"] = rec.measure;
  j["parameters"] = rec.parameters;
  j["value"] = rec.value ? json(*rec.value) : json(nullptr);
  if (!rec.error.empty()) j["error"] = rec.error;
  if (!rec.series.empty()) j["series"] = rec.series;
  return j;
}

// One plot family: rows are images that carry an energy, columns the family's
// measures plus a lowess-smoothed twin per column.
void emit_plot_family(const fs::path& out_dir, const std::string& name,
                      const std::vector<std::string>& measures,
                      const AnalysisReport& report, double lowess_frac) {
  struct Row {
    std::string image, family;
    double energy = 0.0;
    std::map<std::string, double> values;
  };
  std::map<std::pair<std::string, std::string>, Row> rows;  // (family, image)
  for (const MeasureRecord& rec : report.records) {
    if (!rec.energy_kev || !rec.value) continue;
    if (std::find(measures.begin(), measures.end(), rec.measure) ==
        measures.end())
      continue;
    Row& row = rows[{rec.family, rec.image}];
    row.image = rec.image;
    row.family = rec.family;
    row.energy = *rec.energy_kev;
    row.values[rec.measure] = *rec.value;
  }
  if (rows.empty()) return;

  std::vector<Row> sorted;
  for (auto& [key, row] : rows) sorted.push_back(std::move(row));
  std::sort(sorted.begin(), sorted.end(), [](const Row& a, const Row& b) {
    return std::tie(a.family, a.energy, a.image) <
           std::tie(b.family, b.energy, b.image);
  });

  // Smooth each measure over energy within a family.
  std::map<std::pair<std::string, std::string>, double> smooth;
  std::set<std::string> families;
  for (const Row& r : sorted) families.insert(r.family);
  for (const std::string& fam : families) {
    for (const std::string& m : measures) {
      std::vector<double> xs, ys;
      std::vector<const Row*> members;
      for (const Row& r : sorted) {
        if (r.family != fam) continue;
        const auto it = r.values.find(m);
        if (it == r.values.end()) continue;
        xs.push_back(r.energy);
        ys.push_back(it->second);
        members.push_back(&r);
      }
      if (xs.size() < 3) continue;
      const std::vector<double> fit = lowess(xs, ys, lowess_frac);
      for (std::size_t i = 0; i < members.size(); ++i)
        smooth[{fam + "\x1f" + members[i]->image, m}] = fit[i];
    }
  }

  std::string text = "# image\tfamily\tenergy_kev";
  for (const std::string& m : measures) text += "\t" + m + "\t" + m + "_smooth";
  text += "\n";
  for (const Row& r : sorted) {
    text += r.image + "\t" + r.family + "\t" + format_double(r.energy);
    for (const std::string& m : measures) {
      const auto it = r.values.find(m);
      text += "\t";
      text += it == r.values.end() ? "-" : format_double(it->second);
      const auto st = smooth.find({r.family + "\x1f" + r.image, m});
      text += "\t";
      text += st == smooth.end() ? "-" : format_double(st->second);
    }
    text += "\n";
  }
  write_text_atomic(out_dir / ("plot_" + name + ".tsv"), text);
}

}  // namespace

int cmd_simulate(const PipelineConfig& cfg) {
  cfg.validate();
  ensure_out_dir(cfg);
  const Phantom ph = build_phantom(cfg.phantom_resolution, cfg.phantom_extent_mm);

  Sinogram sino;
  if (cfg.mono_kev) {
    sino = mono_projection(ph, cfg.geometry, *cfg.mono_kev);
  } else {
    sino = poly_projection(ph, cfg.geometry, build_spectrum(cfg));
  }
  const bool rebinned = sino.geometry.mode == BeamMode::fan;
  if (rebinned) sino = fan_to_parallel_rebin(sino);

  write_sinogram(cfg.out_dir / "sinogram.sino", sino);

  json manifest;
  manifest["command"] = "simulate";
  manifest["config"] = cfg.to_json();
  manifest["mono_kev"] = cfg.mono_kev ? json(*cfg.mono_kev) : json(nullptr);
  manifest["fan_rebinned"] = rebinned;
  manifest["outputs"] = {{"sinogram", "sinogram.sino"}};
  write_json_file(cfg.out_dir / "simulate_manifest.json", manifest);
  return 0;
}

int cmd_reconstruct(const PipelineConfig& cfg, const ReconstructArgs& args) {
  cfg.validate();
  ensure_out_dir(cfg);
  FilterWindow window;
  if (args.filter == "ramp" || args.filter == "ramlak")
    window = FilterWindow::ramp;
  else if (args.filter == "hamming")
    window = FilterWindow::hamming;
  else
    throw ContractError("unknown filter '" + args.filter +
                        "'; expected ramp or hamming");

  const Sinogram sino = read_sinogram(args.sinogram);
  const int size = args.size.value_or(cfg.phantom_resolution);
  const ImageGrid pam = inverse_radon(sino, size, window);
  write_image(cfg.out_dir / "pam.img", pam);

  if (args.pgm) {
    auto [lo, hi] = value_range(pam);
    if (args.pgm_lo) lo = *args.pgm_lo;
    if (args.pgm_hi) hi = *args.pgm_hi;
    if (!(hi > lo)) hi = lo + 1.0;
    write_pgm(cfg.out_dir / "pam.pgm", pam, lo, hi);
  }

  json manifest;
  manifest["command"] = "reconstruct";
  manifest["config"] = cfg.to_json();
  manifest["input"] = args.sinogram.filename().string();
  manifest["filter"] = args.filter;
  manifest["size"] = size;
  manifest["outputs"] = {{"pam", "pam.img"}};
  write_json_file(cfg.out_dir / "reconstruct_manifest.json", manifest);
  return 0;
}

int cmd_enhance(const PipelineConfig& cfg, const std::filesystem::path& pam_path) {
  cfg.validate();
  ensure_out_dir(cfg);
  const ImageGrid pam = read_image(pam_path);
  IntervalSource src = load_interval_set(cfg);
  const EnhancedStack stack =
      enhance_pipeline(pam, src.set, build_spectrum(cfg), cfg.reference_energy_kev);

  write_image(cfg.out_dir / "cct.img", stack.conventional);

  json intervals = json::array();
  json outputs = json::array();
  double weight_sum = 0.0;
  for (const EnhancedImage& e : stack.images) {
    const std::string label = energy_label(*e.interval.effective_energy_kev);
    const std::string hu_name = "hu_" + label + "kev.img";
    const std::string whu_name = "whu_" + label + "kev.img";
    write_image(cfg.out_dir / hu_name, e.hu);
    write_image(cfg.out_dir / whu_name, e.weighted);
    intervals.push_back({{"lo_kev", e.interval.lo_kev},
                         {"hi_kev", e.interval.hi_kev},
                         {"effective_energy_kev", *e.interval.effective_energy_kev},
                         {"mu_w", *e.interval.mu_w},
                         {"q", *e.interval.weight_q}});
    outputs.push_back({{"hu", hu_name},
                       {"whu", whu_name},
                       {"energy_kev", *e.interval.effective_energy_kev}});
    weight_sum += *e.interval.weight_q;
  }

  json manifest;
  manifest["command"] = "enhance";
  manifest["config"] = cfg.to_json();
  manifest["input"] = pam_path.filename().string();
  manifest["intervals"] = intervals;
  manifest["interval_source"] = src.desc;
  manifest["weight_sum"] = weight_sum;
  manifest["reference"] = {{"energy_kev", stack.reference_energy_kev},
                           {"mu_w", stack.reference_mu_w}};
  manifest["outputs"] = {{"cct", "cct.img"},
                         {"cct_energy_kev", stack.reference_energy_kev},
                         {"images", outputs}};
  write_json_file(cfg.out_dir / "enhance_manifest.json", manifest);
  return 0;
}

int cmd_analyze(const PipelineConfig& cfg, const AnalyzeArgs& args) {
  cfg.validate();
  ensure_out_dir(cfg);
  (void)resolve_measures(cfg.analysis.measures);  // fail fast on bad names
  const LoadedImages loaded =
      load_images(args.images, args.reference, args.manifest);
  const AnalysisReport report =
      analyze_images(loaded.images, loaded.reference, cfg.analysis);

  json j;
  j["command"] = "analyze";
  j["config"] = cfg.to_json();
  json imgs = json::array();
  for (const AnalyzedImage& item : loaded.images)
    imgs.push_back({{"id", item.id},
                    {"family", family_of(item.image)},
                    {"energy_kev",
                     item.energy_kev ? json(*item.energy_kev) : json(nullptr)}});
  j["images"] = imgs;
  j["reference"] =
      loaded.reference >= 0
          ? json(loaded.images[std::size_t(loaded.reference)].id)
          : json(nullptr);
  json windows;
  for (const auto& [family, window] : report.windows)
    windows[family] = {{"lo", window.first},
                       {"hi", window.second},
                       {"levels", cfg.analysis.aligned_levels}};
  j["windows"] = windows;
  json records = json::array();
  for (const MeasureRecord& rec : report.records)
    records.push_back(record_to_json(rec));
  j["records"] = records;
  write_json_file(cfg.out_dir / "report.json", j);

  const double frac = cfg.analysis.lowess_frac;
  emit_plot_family(cfg.out_dir, "entropies",
                   {"apen", "sampen", "fuzzyen", "permen", "cce"}, report, frac);
  emit_plot_family(cfg.out_dir, "bdm", {"bdm"}, report, frac);
  emit_plot_family(cfg.out_dir, "lzw", {"lzw", "lz"}, report, frac);
  emit_plot_family(cfg.out_dir, "correlations",
                   {"baseline_pearson", "conditional_entropy"}, report, frac);
  emit_plot_family(cfg.out_dir, "mr_power", {"mr_power"}, report, frac);

  for (const MeasureRecord& rec : report.records) {
    if (rec.measure != "mr_power" || rec.series.empty()) continue;
    std::string text = "# frequency_index\tpower\n";
    for (std::size_t k = 0; k < rec.series.size(); ++k)
      text += std::to_string(k) + "\t" + format_double(rec.series[k]) + "\n";
    write_text_atomic(cfg.out_dir / ("mr_spectrum_" + rec.image + ".tsv"), text);
  }
  return 0;
}

int cmd_segment(const PipelineConfig& cfg, const SegmentArgs& args) {
  cfg.validate();
  ensure_out_dir(cfg);
  const LoadedImages loaded =
      load_images(args.images, args.reference, args.manifest);
  if (loaded.reference < 0)
    throw ContractError(
        "segment needs a reference image (an input named cct, or --reference)");
  const AnalyzedImage& ref_item = loaded.images[std::size_t(loaded.reference)];
  // One window for every comparison: the reference's value range. Per-image
  // min-max would map any affine relative of the reference onto the reference
  // itself and saturate every metric.
  const auto [ref_lo, ref_hi] = value_range(ref_item.image);
  if (!(ref_hi > ref_lo))
    throw ContractError("segment: reference image is constant");
  const ImageGrid ref_unit = normalize_to_window(ref_item.image, ref_lo, ref_hi);

  const fs::path report_path = cfg.out_dir / "report.json";
  json report;
  if (fs::exists(report_path)) {
    report = read_json_file(report_path);
  } else {
    report["command"] = "segment";
    report["config"] = cfg.to_json();
  }

  json seg_records = json::array();
  json fcm_records = json::array();
  std::string plot = "# image\tfamily\tenergy_kev\tmse\tpsnr_db\tssim\tfsim\n";

  for (const AnalyzedImage& item : loaded.images) {
    FcmOptions opt = cfg.fcm;
    opt.seed = cfg.seed;
    const FcmResult res = fcm(item.image, opt);

    ImageGrid labels = item.image;
    labels.semantics = ValueSemantics::labels;
    for (std::size_t i = 0; i < labels.data.size(); ++i)
      labels.data[i] = double(res.labels[i]);
    write_image(cfg.out_dir / ("labels_" + item.id + ".img"), labels);

    std::vector<std::size_t> sizes(std::size_t(opt.clusters), 0);
    for (int lab : res.labels) ++sizes[std::size_t(lab)];

    fcm_records.push_back(
        {{"image", item.id},
         {"clusters", opt.clusters},
         {"fuzzifier", opt.fuzzifier},
         {"tolerance", opt.tolerance},
         {"max_iterations", opt.max_iterations},
         {"seed", opt.seed},
         {"iterations", res.iterations},
         {"converged", res.converged},
         {"objective", res.objective_trace.back()},
         {"centers", res.centers},
         {"cluster_sizes", sizes},
         {"labels_file", "labels_" + item.id + ".img"}});

    const ImageGrid unit = normalize_to_window(item.image, ref_lo, ref_hi);
    const double v_mse = mse(unit, ref_unit);
    const double v_psnr = std::min(psnr(unit, ref_unit, 1.0), kPsnrReportCapDb);
    const double v_ssim = ssim(unit, ref_unit);
    const double v_fsim = fsim(unit, ref_unit);
    const std::string family = family_of(item.image);

    seg_records.push_back(
        {{"image", item.id},
         {"family", family},
         {"energy_kev", item.energy_kev ? json(*item.energy_kev) : json(nullptr)},
         {"reference", ref_item.id},
         {"mse", v_mse},
         {"psnr_db", v_psnr},
         {"ssim", v_ssim},
         {"fsim", v_fsim}});

    if (item.energy_kev)
      plot += item.id + "\t" + family + "\t" + format_double(*item.energy_kev) +
              "\t" + format_double(v_mse) + "\t" + format_double(v_psnr) +
              "\t" + format_double(v_ssim) + "\t" + format_double(v_fsim) + "\n";
  }

  report["segmentation"] = seg_records;
  report["fcm"] = fcm_records;
  write_json_file(report_path, report);
  write_text_atomic(cfg.out_dir / "plot_segmentation.tsv", plot);
  return 0;
}

int cmd_pipeline(const PipelineConfig& cfg, const std::string& filter) {
  cfg.validate();
  ensure_out_dir(cfg);
  cmd_simulate(cfg);

  ReconstructArgs rec;
  rec.sinogram = cfg.out_dir / "sinogram.sino";
  rec.filter = filter;
  cmd_reconstruct(cfg, rec);

  cmd_enhance(cfg, cfg.out_dir / "pam.img");

  const json manifest = read_json_file(cfg.out_dir / "enhance_manifest.json");
  std::vector<fs::path> analyze_set, segment_set;
  analyze_set.push_back(cfg.out_dir / "cct.img");
  segment_set.push_back(cfg.out_dir / "cct.img");
  for (const json& item : manifest["outputs"]["images"]) {
    analyze_set.push_back(cfg.out_dir / item["hu"].get<std::string>());
    analyze_set.push_back(cfg.out_dir / item["whu"].get<std::string>());
    segment_set.push_back(cfg.out_dir / item["whu"].get<std::string>());
  }

  AnalyzeArgs an;
  an.images = analyze_set;
  cmd_analyze(cfg, an);

  SegmentArgs seg;
  seg.images = segment_set;
  cmd_segment(cfg, seg);

  json pm;
  pm["command"] = "pipeline";
  pm["config"] = cfg.to_json();
  pm["stages"] = {"simulate", "reconstruct", "enhance", "analyze", "segment"};
  write_json_file(cfg.out_dir / "pipeline_manifest.json", pm);
  return 0;
}

}  // namespace polyct::cli
