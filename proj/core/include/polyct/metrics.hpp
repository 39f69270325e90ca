#pragma once

#include "polyct/image.hpp"

namespace polyct {

// Mean squared pixel difference. Dimensions must match.
double mse(const ImageGrid& a, const ImageGrid& b);

// Report cap for the infinite-PSNR sentinel.
inline constexpr double kPsnrReportCapDb = 99.0;

// 10 log10(max_value^2 / MSE) in dB; identical images return +infinity
// (reports cap it at kPsnrReportCapDb).
double psnr(const ImageGrid& a, const ImageGrid& b, double max_value);

struct SsimOptions {
  int window = 8;  // uniform square window, stride 1
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;  // L; callers normalize inputs to [0, 1]
};

// Mean structural similarity over all fully interior windows, population
// moments. window must not exceed either dimension.
double ssim(const ImageGrid& a, const ImageGrid& b, const SsimOptions& opt = {});

struct FsimOptions {
  int scales = 4;  // log-Gabor bank
  int orientations = 4;
  double min_wavelength = 6.0;  // pixels
  double scale_mult = 2.0;
  double sigma_log = 0.55;          // radial bandwidth (ratio)
  double theta_sigma_ratio = 1.2;   // angular sigma = (pi/orientations)/ratio
  double t_pc = 0.85;               // phase-congruency similarity constant
  double t_grad = 0.0025;           // gradient constant, tuned for [0,1] inputs
};

// Feature similarity: phase congruency from the log-Gabor bank (local energy
// over summed amplitude, no noise compensation) combined with Scharr gradient
// magnitude, weighted by max(PC_a, PC_b). Requires dims >= 32; errors when
// both images are flat (zero phase congruency everywhere).
double fsim(const ImageGrid& a, const ImageGrid& b, const FsimOptions& opt = {});

// Min-max rescale to [0, 1]; a constant image maps to all zeros.
ImageGrid normalize_unit(const ImageGrid& img);

// Affine map sending [lo, hi] to [0, 1], no clamping: values outside the
// window land outside [0, 1]. Comparing two images through one shared window
// keeps their scale and offset differences visible to the metrics (per-image
// min-max would erase them). Requires hi > lo.
ImageGrid normalize_to_window(const ImageGrid& img, double lo, double hi);

}  // namespace polyct
