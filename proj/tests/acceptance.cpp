// Acceptance gate: one timed pass/fail line per criterion, exit 1 on any
// failure. Tolerances are pinned here, next to the checks they guard.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "polyct/analysis.hpp"
#include "polyct/enhance.hpp"
#include "polyct/entropy.hpp"
#include "polyct/fcm.hpp"
#include "polyct/fourier.hpp"
#include "polyct/image.hpp"
#include "polyct/intervals.hpp"
#include "polyct/lz.hpp"
#include "polyct/material.hpp"
#include "polyct/metrics.hpp"
#include "polyct/morphology.hpp"
#include "polyct/phantom.hpp"
#include "polyct/projector.hpp"
#include "polyct/recon.hpp"
#include "polyct/stats.hpp"

namespace {

using namespace polyct;
namespace fs = std::filesystem;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Shared polychromatic pipeline state: 140 kVp tube, default phantom and
// geometry, Hamming-filtered reconstruction, enhancement over the merged
// 11-interval set with its bypass effective energies.
struct Fixture {
  Phantom phantom;
  Spectrum spectrum;
  ImageGrid pam;
  EnhancedStack stack;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture r;
    r.phantom = build_phantom(256, 16.0);
    r.spectrum = kramers_spectrum(140.0, integer_grid(10.0, 140.0));
    Geometry g;
    Sinogram sino = poly_projection(r.phantom, g, r.spectrum);
    r.pam = inverse_radon(sino, 256, FilterWindow::hamming);
    r.stack = enhance_pipeline(r.pam, paper_interval_set(), r.spectrum, 70.0);
    return r;
  }();
  return f;
}

// ---- 01: Hounsfield anchors -------------------------------------------

void check_hu_anchors() {
  const double mu_w = 0.192;
  ImageGrid pam = make_image(3, 1, 1.0, ValueSemantics::linear_attenuation_per_cm);
  pam.data = {mu_w, 0.0, 2.0 * mu_w};
  ImageGrid hu = hounsfield(pam, mu_w);
  expect(hu.data[0] == 0.0, "hu(mu_w) = " + num(hu.data[0]) + ", want 0");
  expect(hu.data[1] == -1000.0, "hu(0) = " + num(hu.data[1]) + ", want -1000");
  expect(hu.data[2] == 1000.0, "hu(2 mu_w) = " + num(hu.data[2]) + ", want 1000");
}

// ---- 02: water attenuation table --------------------------------------

void check_water_table() {
  const std::vector<std::pair<double, double>> anchors = {
      {10.0, 5.329},  {15.0, 1.673},  {20.0, 0.8096}, {30.0, 0.3756},
      {40.0, 0.2683}, {50.0, 0.2269}, {60.0, 0.2059}, {80.0, 0.1837},
      {100.0, 0.1707}, {150.0, 0.1505}};
  const MaterialTable& water = water_table();
  for (const auto& [e, v] : anchors) {
    double got = mass_attenuation(water, e);
    expect(got == v, "mass attenuation at " + num(e) + " keV = " + num(got) +
                         ", want exactly " + num(v));
  }
  double v70 = mass_attenuation(water, 70.0);
  expect(v70 > 0.1837 && v70 < 0.2059,
         "70 keV interpolation " + num(v70) + " outside (0.1837, 0.2059)");
}

// ---- 03: filtered back-projection round trip ---------------------------

// Cells whose radius-`erode` neighborhood is all the same material; keeps
// the mask clear of boundary partial volume and edge ringing.
std::vector<std::size_t> eroded_mask(const Phantom& ph, Material m, int erode) {
  std::vector<std::size_t> idx;
  for (int r = erode; r < ph.size - erode; ++r)
    for (int c = erode; c < ph.size - erode; ++c) {
      bool inside = true;
      for (int dr = -erode; dr <= erode && inside; ++dr)
        for (int dc = -erode; dc <= erode && inside; ++dc)
          inside = ph.at(r + dr, c + dc) == m;
      if (inside) idx.push_back(std::size_t(r) * std::size_t(ph.size) + c);
    }
  return idx;
}

double mask_mean(const ImageGrid& img, const std::vector<std::size_t>& idx) {
  double s = 0.0;
  for (std::size_t i : idx) s += img.data[i];
  return s / double(idx.size());
}

void check_fbp_round_trip() {
  Phantom ph = build_phantom(256, 16.0);
  Geometry g;
  Sinogram sino = mono_projection(ph, g, 70.0);
  ImageGrid pam = inverse_radon(sino, 256, FilterWindow::hamming);
  const double mu_w = linear_attenuation(material_table(Material::water), 70.0);

  auto water = eroded_mask(ph, Material::water, 4);
  expect(!water.empty(), "empty water mask");
  double sq = 0.0;
  for (std::size_t i : water) {
    double d = pam.data[i] - mu_w;
    sq += d * d;
  }
  double rmse = std::sqrt(sq / double(water.size()));
  expect(rmse < 0.07 * mu_w, "water interior rmse " + num(rmse) + " = " +
                                 num(rmse / mu_w * 100.0) + "% of mu_w, want < 7%");

  auto lung = eroded_mask(ph, Material::lung, 2);
  auto skull = eroded_mask(ph, Material::skull, 2);
  auto rib = eroded_mask(ph, Material::rib_bone, 2);
  expect(!lung.empty() && !skull.empty() && !rib.empty(), "empty tissue mask");
  double m_lung = mask_mean(pam, lung);
  double m_water = mask_mean(pam, water);
  double m_skull = mask_mean(pam, skull);
  double m_rib = mask_mean(pam, rib);
  expect(m_lung < m_water && m_water < m_skull && m_skull < m_rib,
         "tissue means not ordered: lung " + num(m_lung) + ", water " +
             num(m_water) + ", skull " + num(m_skull) + ", rib " + num(m_rib));
}

// ---- 04: flux weighting identity and interval ordering ------------------

void check_weighting_identity() {
  const EnhancedStack& stack = fixture().stack;
  expect(stack.images.size() == 11,
         "expected 11 enhanced images, got " + std::to_string(stack.images.size()));

  double q_sum = 0.0;
  for (const EnhancedImage& im : stack.images) {
    expect(im.interval.weight_q.has_value(), "interval missing weight");
    expect(im.interval.effective_energy_kev.has_value(),
           "interval missing effective energy");
    double q = *im.interval.weight_q;
    q_sum += q;
    double worst = 0.0;
    for (std::size_t k = 0; k < im.hu.data.size(); ++k)
      worst = std::max(worst, std::abs(im.weighted.data[k] - q * im.hu.data[k]));
    expect(worst <= 1e-9, "wHU deviates from q*HU by " + num(worst) + " at " +
                              num(*im.interval.effective_energy_kev) + " keV");
  }
  expect(std::abs(q_sum - 1.0) <= 1e-12,
         "weights sum to " + num(q_sum) + ", want 1 within 1e-12");

  std::vector<std::size_t> order(stack.images.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return *stack.images[a].interval.effective_energy_kev <
           *stack.images[b].interval.effective_energy_kev;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    double lo = mean_value(stack.images[order[i - 1]].hu);
    double hi = mean_value(stack.images[order[i]].hu);
    expect(lo < hi, "mean HU not increasing: " + num(lo) + " at " +
                        num(*stack.images[order[i - 1]].interval.effective_energy_kev) +
                        " keV vs " + num(hi) + " at " +
                        num(*stack.images[order[i]].interval.effective_energy_kev) +
                        " keV");
  }
}

// ---- 05: correlation unchanged by flux weighting ------------------------

void check_correlation_invariance() {
  const EnhancedStack& stack = fixture().stack;
  const std::vector<double>& ref = stack.conventional.data;
  for (const EnhancedImage& im : stack.images) {
    if (!(*im.interval.weight_q > 0.0)) continue;
    double d = pearson(im.hu.data, ref);
    double g = pearson(im.weighted.data, ref);
    expect(std::abs(d - g) <= 1e-9,
           "pearson differs by " + num(std::abs(d - g)) + " at " +
               num(*im.interval.effective_energy_kev) + " keV");
  }
}

// ---- 06: entropy baselines on degenerate series --------------------------

void check_entropy_baselines() {
  std::vector<double> flat(100, 3.7);
  expect(std::abs(approximate_entropy(flat, 2, 0.5)) <= 1e-15, "ApEn(const) != 0");
  expect(std::abs(sample_entropy(flat, 2, 0.5)) <= 1e-15, "SampEn(const) != 0");
  expect(std::abs(fuzzy_entropy(flat, 2, 0.5, 2)) <= 1e-15, "FuzzyEn(const) != 0");
  expect(std::abs(permutation_entropy(flat, 3)) <= 1e-15, "PermEn(const) != 0");

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> noise(500);
  for (double& v : noise) v = uni(rng);
  double h = permutation_entropy(noise, 4);
  double cap = std::log(24.0);
  expect(h <= cap + 1e-12, "PermEn " + num(h) + " above ln(4!) = " + num(cap));

  // y = f(x): each row of the joint table has a single nonzero column.
  std::vector<std::vector<std::size_t>> joint = {{5, 0, 0}, {0, 7, 0}, {0, 0, 2}};
  double ce = conditional_entropy(joint);
  expect(std::abs(ce) <= 1e-15, "H(Y|X) of deterministic map = " + num(ce));

  std::vector<double> period2(4096);
  for (std::size_t i = 0; i < period2.size(); ++i) period2[i] = double(i % 2);
  CceResult cce = corrected_conditional_entropy(period2, 2, 8);
  expect(cce.min_cce <= 0.05,
         "period-2 min CCE " + num(cce.min_cce) + " above 0.05 nats");
}

// ---- 07: entropy estimators vs exhaustive counting ----------------------

double apen_oracle(const std::vector<double>& xs, int m, double r) {
  auto phi = [&](int mm) {
    int n = int(xs.size()) - mm + 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      int cnt = 0;
      for (int j = 0; j < n; ++j) {
        double d = 0.0;
        for (int k = 0; k < mm; ++k)
          d = std::max(d, std::abs(xs[i + k] - xs[j + k]));
        if (d <= r) ++cnt;
      }
      acc += std::log(double(cnt) / double(n));
    }
    return acc / double(n);
  };
  return phi(m) - phi(m + 1);
}

double sampen_oracle(const std::vector<double>& xs, int m, double r) {
  int n = int(xs.size()) - m;  // aligned template count for both orders
  long long a = 0, b = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = 0.0;
      for (int k = 0; k < m; ++k)
        d = std::max(d, std::abs(xs[i + k] - xs[j + k]));
      if (d < r) ++b;
      d = std::max(d, std::abs(xs[i + m] - xs[j + m]));
      if (d < r) ++a;
    }
  return -std::log(double(a) / double(b));
}

void check_entropy_oracle() {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> xs(200);
    for (double& v : xs) v = uni(rng);
    double r = 0.2 * sample_stddev(xs);
    double ap = approximate_entropy(xs, 2, r);
    double ap_ref = apen_oracle(xs, 2, r);
    expect(std::abs(ap - ap_ref) <= 1e-10,
           "ApEn mismatch " + num(std::abs(ap - ap_ref)) + " at seed " +
               std::to_string(seed));
    double sp = sample_entropy(xs, 2, r);
    double sp_ref = sampen_oracle(xs, 2, r);
    expect(std::abs(sp - sp_ref) <= 1e-10,
           "SampEn mismatch " + num(std::abs(sp - sp_ref)) + " at seed " +
               std::to_string(seed));
  }
}

// ---- 08: layered BDM tracks LZW across the stack -------------------------

std::map<std::string, double> measure_values(const AnalysisReport& rep,
                                             const std::string& measure) {
  std::map<std::string, double> out;
  for (const MeasureRecord& r : rep.records) {
    if (r.measure != measure) continue;
    expect(r.error.empty(), measure + " errored on " + r.image + ": " + r.error);
    expect(r.value.has_value(), measure + " has no value on " + r.image);
    out[r.image] = *r.value;
  }
  return out;
}

void check_bdm_tracks_lzw() {
  const EnhancedStack& stack = fixture().stack;
  AnalysisOptions opt;
  opt.measures = {"bdm", "lzw"};

  // Spearman over the weighted stack plus the conventional image.
  std::vector<AnalyzedImage> ect;
  ect.push_back({"cct", 70.0, stack.conventional});
  for (const EnhancedImage& im : stack.images) {
    double e = *im.interval.effective_energy_kev;
    ect.push_back({"whu_" + num(e), e, im.weighted});
  }
  AnalysisReport rep = analyze_images(ect, -1, opt);
  auto bdm = measure_values(rep, "bdm");
  auto lzw = measure_values(rep, "lzw");
  std::vector<double> xs, ys;
  for (const AnalyzedImage& im : ect) {
    expect(bdm.count(im.id) == 1 && lzw.count(im.id) == 1,
           "missing bdm/lzw record for " + im.id);
    xs.push_back(bdm[im.id]);
    ys.push_back(lzw[im.id]);
  }
  expect(xs.size() == 12, "expected 12 images in the correlation set");
  double rho = spearman(xs, ys);
  expect(rho >= 0.8, "spearman(bdm, lzw) = " + num(rho) + ", want >= 0.8");

  // Endpoint trend on the unweighted HU family, where the image width grows
  // with energy; the weighted endpoints are reported for reference.
  std::vector<AnalyzedImage> ct;
  ct.push_back({"cct", 70.0, stack.conventional});
  const EnhancedImage* first = nullptr;
  const EnhancedImage* last = nullptr;
  for (const EnhancedImage& im : stack.images) {
    double e = *im.interval.effective_energy_kev;
    ct.push_back({"hu_" + num(e), e, im.hu});
    if (!first || e < *first->interval.effective_energy_kev) first = &im;
    if (!last || e > *last->interval.effective_energy_kev) last = &im;
  }
  AnalysisReport ct_rep = analyze_images(ct, -1, opt);
  auto ct_bdm = measure_values(ct_rep, "bdm");
  double lo_e = *first->interval.effective_energy_kev;
  double hi_e = *last->interval.effective_energy_kev;
  double bdm_lo = ct_bdm["hu_" + num(lo_e)];
  double bdm_hi = ct_bdm["hu_" + num(hi_e)];
  std::printf("       note: bdm(hu %g keV) = %.1f, bdm(hu %g keV) = %.1f; "
              "weighted endpoints %.1f / %.1f\n",
              lo_e, bdm_lo, hi_e, bdm_hi, bdm["whu_" + num(lo_e)],
              bdm["whu_" + num(hi_e)]);
  expect(bdm_hi > bdm_lo, "bdm at " + num(hi_e) + " keV (" + num(bdm_hi) +
                              ") not above bdm at " + num(lo_e) + " keV (" +
                              num(bdm_lo) + ")");
}

// ---- 09: LZ complexity calibration --------------------------------------

void check_lz_calibration() {
  const std::size_t n = std::size_t(1) << 14;
  std::vector<std::uint8_t> alt(n);
  for (std::size_t i = 0; i < n; ++i) alt[i] = std::uint8_t(i % 2);
  double c_alt = lz_complexity(alt);
  expect(c_alt < 0.01, "alternating C = " + num(c_alt) + ", want < 0.01");

  std::mt19937_64 rng(1234);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> noise(n);
  for (auto& b : noise) b = coin(rng) ? 1 : 0;
  double c_noise = lz_complexity(noise);
  expect(c_noise >= 0.8 && c_noise <= 1.2,
         "random C = " + num(c_noise) + ", want in [0.8, 1.2]");
}

// ---- 10: FCM convergence and center recovery ----------------------------

std::vector<double> kmeans_oracle(const std::vector<double>& data, int k) {
  auto [lo, hi] = std::minmax_element(data.begin(), data.end());
  std::vector<double> centers(k);
  for (int j = 0; j < k; ++j)
    centers[j] = *lo + (*hi - *lo) * double(j) / double(k - 1);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> sum(k, 0.0);
    std::vector<int> cnt(k, 0);
    for (double v : data) {
      int best = 0;
      for (int j = 1; j < k; ++j)
        if (std::abs(v - centers[j]) < std::abs(v - centers[best])) best = j;
      sum[best] += v;
      ++cnt[best];
    }
    for (int j = 0; j < k; ++j)
      if (cnt[j] > 0) centers[j] = sum[j] / cnt[j];
  }
  std::sort(centers.begin(), centers.end());
  return centers;
}

void check_fcm() {
  ImageGrid img = make_image(16, 8, 1.0, ValueSemantics::hounsfield);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> lo_blob(10.0, 0.3);
  std::normal_distribution<double> hi_blob(50.0, 0.4);
  for (std::size_t i = 0; i < img.data.size(); ++i)
    img.data[i] = i < img.data.size() / 2 ? lo_blob(rng) : hi_blob(rng);

  std::vector<double> truth = kmeans_oracle(img.data, 2);

  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    FcmOptions opt;
    opt.clusters = 2;
    opt.seed = seed;
    FcmResult res = fcm(img, opt);

    for (std::size_t t = 1; t < res.objective_trace.size(); ++t)
      expect(res.objective_trace[t] <=
                 res.objective_trace[t - 1] * (1.0 + 1e-12) + 1e-12,
             "objective rose at iteration " + std::to_string(t) + " (seed " +
                 std::to_string(seed) + ")");

    std::vector<double> centers = res.centers;
    std::sort(centers.begin(), centers.end());
    for (int j = 0; j < 2; ++j)
      expect(std::abs(centers[j] - truth[j]) <= 0.5,
             "center " + num(centers[j]) + " vs k-means " + num(truth[j]) +
                 " (seed " + std::to_string(seed) + ")");

    std::size_t n = img.data.size();
    for (std::size_t i = 0; i < n; ++i) {
      double s = res.memberships[i * 2] + res.memberships[i * 2 + 1];
      expect(std::abs(s - 1.0) <= 1e-9,
             "membership row " + std::to_string(i) + " sums to " + num(s));
    }
  }
}

// ---- 11: image metric identities ----------------------------------------

ImageGrid textured(int n, std::uint64_t seed, double noise_amp) {
  ImageGrid img = make_image(n, n, 1.0, ValueSemantics::hounsfield);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, noise_amp);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      double dr = r - n / 2.0, dc = c - n / 2.0;
      double v = 0.6 * std::exp(-(dr * dr + dc * dc) / 40.0) +
                 0.3 * double(r) / n + noise(rng);
      img.at(r, c) = std::clamp(v, 0.0, 1.0);
    }
  return img;
}

void check_metric_identities() {
  ImageGrid a2 = make_image(2, 2, 1.0, ValueSemantics::hounsfield);
  ImageGrid b2 = a2;
  b2.data[0] = 1.0;
  expect(mse(a2, b2) == 0.25, "2x2 mse = " + num(mse(a2, b2)) + ", want 0.25");

  ImageGrid a = textured(32, 5, 0.05);
  expect(std::abs(ssim(a, a) - 1.0) <= 1e-12, "ssim(a,a) != 1");
  expect(std::abs(fsim(a, a) - 1.0) <= 1e-12, "fsim(a,a) != 1");

  ImageGrid mild = a, strong = a;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> d1(0.0, 0.02), d2(0.0, 0.2);
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    mild.data[i] += d1(rng);
    strong.data[i] += d2(rng);
  }
  double mse_mild = mse(a, mild), mse_strong = mse(a, strong);
  expect(mse_mild < mse_strong, "perturbation ordering broke");
  double p_mild = psnr(a, mild, 1.0), p_strong = psnr(a, strong, 1.0);
  expect(p_mild > p_strong, "psnr not decreasing in mse: " + num(p_mild) +
                                " vs " + num(p_strong));
}

// ---- 12: richness anchors and spectrum energy balance --------------------

void check_parseval(const std::vector<double>& xs, const std::string& label) {
  std::vector<double> ps = power_spectrum(xs);
  double direct = 0.0;
  for (double v : xs) direct += v * v;
  double from_ps = ps.front();
  if (xs.size() % 2 == 0) from_ps += ps.back();
  std::size_t interior_end = ps.size() - (xs.size() % 2 == 0 ? 1 : 0);
  for (std::size_t k = 1; k < interior_end; ++k) from_ps += 2.0 * ps[k];
  expect(std::abs(direct - from_ps) <= 1e-9 * std::max(1.0, direct),
         label + ": energy balance off by " + num(std::abs(direct - from_ps)));
}

void check_morphology() {
  ImageGrid zeros = make_image(8, 8, 1.0, ValueSemantics::labels);
  expect(morphological_richness(zeros) == 1.0 / 512.0, "all-zero richness != 1/512");

  ImageGrid checker = make_image(8, 8, 1.0, ValueSemantics::labels);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) checker.at(r, c) = double((r + c) % 2);
  expect(morphological_richness(checker) == 2.0 / 512.0,
         "checkerboard richness != 2/512");

  check_parseval(mr_signal(textured(16, 11, 0.1), 32), "textured");
  ImageGrid rnd = make_image(12, 12, 1.0, ValueSemantics::hounsfield);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (double& v : rnd.data) v = uni(rng);
  check_parseval(mr_signal(rnd, 32), "random");
  check_parseval(mr_signal(rnd, 33), "odd-length");
}

// ---- 13: effective energy arithmetic and overflow warning ----------------

void check_effective_energy() {
  std::ostringstream warn;
  std::ostream* prev = set_warning_stream(&warn);

  double a = effective_energy(12.0, 17.0, 0.06);
  expect(a == 15.0, "effective_energy(12,17,0.06) = " + num(a) + ", want 15");
  double b = effective_energy(58.0, 67.0, 0.1);
  expect(b == 67.0, "effective_energy(58,67,0.1) = " + num(b) + ", want 67");
  expect(warn.str().empty(), "warning emitted for in-range results");

  double c = effective_energy(60.0, 72.0, 0.5);  // 60 + 60 = 120 > 72
  expect(c == 120.0, "overflow case = " + num(c) + ", want 120");
  expect(warn.str().find("exceeds interval upper bound") != std::string::npos,
         "no warning for result above the interval");

  warn.str("");
  effective_energy(10.0, 11.0, 0.02);  // 10 + 0 = 10 <= 11
  expect(warn.str().empty(), "warning emitted though result <= hi");

  set_warning_stream(prev);
}

// ---- 14: pipeline reruns are byte-identical -------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  expect(bool(in), "cannot open " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void run_pipeline_into(const fs::path& out_dir, const fs::path& log) {
  fs::create_directories(out_dir);
  std::string cmd = std::string(POLYCT_CLI_PATH) + " pipeline --seed 7 --out " +
                    out_dir.string() + " > " + log.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  expect(rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0,
         "pipeline run failed, see " + log.string());
}

std::vector<std::string> relative_files(const fs::path& root) {
  std::vector<std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file())
      files.push_back(fs::relative(e.path(), root).generic_string());
  std::sort(files.begin(), files.end());
  return files;
}

void check_pipeline_determinism() {
  fs::path base = fs::temp_directory_path() /
                  ("polyct_accept_" + std::to_string(::getpid()));
  fs::remove_all(base);
  fs::path dir_a = base / "a", dir_b = base / "b";
  run_pipeline_into(dir_a, base / "log_a.txt");
  run_pipeline_into(dir_b, base / "log_b.txt");

  std::vector<std::string> fa = relative_files(dir_a);
  std::vector<std::string> fb = relative_files(dir_b);
  expect(fa == fb, "file sets differ between runs");
  expect(fa.size() > 10, "suspiciously few artifacts: " + std::to_string(fa.size()));
  expect(std::find(fa.begin(), fa.end(), "pipeline_manifest.json") != fa.end(),
         "pipeline_manifest.json missing");
  for (const std::string& rel : fa)
    expect(slurp(dir_a / rel) == slurp(dir_b / rel), rel + " differs between runs");

  fs::remove_all(base);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void()> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "hounsfield anchor values", check_hu_anchors},
      {2, "water attenuation table round trip", check_water_table},
      {3, "filtered back-projection recovers the phantom", check_fbp_round_trip},
      {4, "flux weighting identity and interval ordering", check_weighting_identity},
      {5, "correlation unchanged by flux weighting", check_correlation_invariance},
      {6, "entropy baselines on degenerate series", check_entropy_baselines},
      {7, "entropy estimators match exhaustive counting", check_entropy_oracle},
      {8, "layered bdm tracks lzw across the stack", check_bdm_tracks_lzw},
      {9, "lz complexity calibration", check_lz_calibration},
      {10, "fcm convergence and center recovery", check_fcm},
      {11, "image metric identities", check_metric_identities},
      {12, "richness anchors and spectrum energy balance", check_morphology},
      {13, "effective energy arithmetic and overflow warning", check_effective_energy},
      {14, "pipeline reruns are byte-identical", check_pipeline_determinism},
  };

  bool ok = true;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.fn();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (error.empty()) {
      std::printf("[PASS] %02d %s (%.2f s)\n", c.id, c.name, secs);
    } else {
      std::printf("[FAIL] %02d %s (%.2f s): %s\n", c.id, c.name, secs,
                  error.c_str());
      ok = false;
    }
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
