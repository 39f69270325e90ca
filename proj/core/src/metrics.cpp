#include "polyct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "polyct/error.hpp"
#include "polyct/fourier.hpp"

namespace polyct {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_same_dims(const ImageGrid& a, const ImageGrid& b, const char* who) {
  a.validate();
  b.validate();
  if (a.width != b.width || a.height != b.height)
    throw ContractError(std::string(who) + ": image dimensions differ");
}

}  // namespace

double mse(const ImageGrid& a, const ImageGrid& b) {
  check_same_dims(a, b, "mse");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    acc += d * d;
  }
  return acc / double(a.data.size());
}

double psnr(const ImageGrid& a, const ImageGrid& b, double max_value) {
  if (!(max_value > 0.0)) throw ContractError("psnr: max_value must be positive");
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(max_value * max_value / err);
}

double ssim(const ImageGrid& a, const ImageGrid& b, const SsimOptions& opt) {
  check_same_dims(a, b, "ssim");
  const int w = opt.window;
  if (w < 2) throw ContractError("ssim: window must be >= 2");
  if (w > a.width || w > a.height)
    throw ContractError("ssim: window exceeds image size");

  const double c1 = (opt.k1 * opt.dynamic_range) * (opt.k1 * opt.dynamic_range);
  const double c2 = (opt.k2 * opt.dynamic_range) * (opt.k2 * opt.dynamic_range);
  const double nw = double(w) * double(w);

  // Summed-area tables make each window O(1).
  const int sw = a.width + 1, sh = a.height + 1;
  std::vector<double> sa(std::size_t(sw) * std::size_t(sh), 0.0);
  std::vector<double> sb = sa, saa = sa, sbb = sa, sab = sa;
  for (int r = 0; r < a.height; ++r) {
    for (int c = 0; c < a.width; ++c) {
      const double va = a.at(r, c), vb = b.at(r, c);
      const std::size_t cur = std::size_t(r + 1) * std::size_t(sw) + std::size_t(c + 1);
      const std::size_t up = cur - std::size_t(sw);
      sa[cur] = va + sa[cur - 1] + sa[up] - sa[up - 1];
      sb[cur] = vb + sb[cur - 1] + sb[up] - sb[up - 1];
      saa[cur] = va * va + saa[cur - 1] + saa[up] - saa[up - 1];
      sbb[cur] = vb * vb + sbb[cur - 1] + sbb[up] - sbb[up - 1];
      sab[cur] = va * vb + sab[cur - 1] + sab[up] - sab[up - 1];
    }
  }
  auto box = [&](const std::vector<double>& s, int r, int c) {
    const std::size_t r0 = std::size_t(r), c0 = std::size_t(c);
    const std::size_t r1 = r0 + std::size_t(w), c1 = c0 + std::size_t(w);
    return s[r1 * std::size_t(sw) + c1] - s[r0 * std::size_t(sw) + c1] -
           s[r1 * std::size_t(sw) + c0] + s[r0 * std::size_t(sw) + c0];
  };

  double acc = 0.0;
  std::size_t windows = 0;
  for (int r = 0; r + w <= a.height; ++r) {
    for (int c = 0; c + w <= a.width; ++c) {
      const double ma = box(sa, r, c) / nw;
      const double mb = box(sb, r, c) / nw;
      const double va = box(saa, r, c) / nw - ma * ma;
      const double vb = box(sbb, r, c) / nw - mb * mb;
      const double cov = box(sab, r, c) / nw - ma * mb;
      const double num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
      const double den = (ma * ma + mb * mb + c1) * (va + vb + c2);
      acc += num / den;
      ++windows;
    }
  }
  return acc / double(windows);
}

namespace {

// Phase congruency: sum over orientations of |sum_s e_so| divided by the
// summed response amplitudes. No noise compensation.
std::vector<double> phase_congruency(const ImageGrid& img,
                                     const FsimOptions& opt) {
  const int w = img.width, h = img.height;
  const std::size_t npix = img.data.size();

  std::vector<std::complex<double>> spectrum(npix);
  for (std::size_t i = 0; i < npix; ++i) spectrum[i] = {img.data[i], 0.0};
  fft2(spectrum, w, h, false);

  std::vector<double> radius(npix), angle(npix);
  for (int r = 0; r < h; ++r) {
    const double fy = (r <= h / 2 ? r : r - h) / double(h);
    for (int c = 0; c < w; ++c) {
      const double fx = (c <= w / 2 ? c : c - w) / double(w);
      const std::size_t i = std::size_t(r) * std::size_t(w) + std::size_t(c);
      radius[i] = std::sqrt(fx * fx + fy * fy);
      angle[i] = std::atan2(fy, fx);
    }
  }
  radius[0] = 1.0;  // avoid log(0) at DC; the filter zeroes DC anyway

  const double log_sigma = std::log(opt.sigma_log);
  const double denom_r = 2.0 * log_sigma * log_sigma;
  const double sigma_theta = (kPi / double(opt.orientations)) / opt.theta_sigma_ratio;
  const double denom_t = 2.0 * sigma_theta * sigma_theta;

  std::vector<double> lowpass(npix);
  for (std::size_t i = 0; i < npix; ++i)
    lowpass[i] = 1.0 / (1.0 + std::pow(radius[i] / 0.45, 30.0));

  std::vector<double> pc_num(npix, 0.0), pc_den(npix, 0.0);
  std::vector<std::complex<double>> band(npix), resp(npix);
  std::vector<double> sum_re(npix), sum_im(npix), sum_amp(npix);

  for (int o = 0; o < opt.orientations; ++o) {
    const double theta = double(o) * kPi / double(opt.orientations);
    const double ct = std::cos(theta), st = std::sin(theta);
    std::fill(sum_re.begin(), sum_re.end(), 0.0);
    std::fill(sum_im.begin(), sum_im.end(), 0.0);
    std::fill(sum_amp.begin(), sum_amp.end(), 0.0);

    for (int s = 0; s < opt.scales; ++s) {
      const double f0 = 1.0 / (opt.min_wavelength * std::pow(opt.scale_mult, s));
      for (std::size_t i = 0; i < npix; ++i) {
        const double lr = std::log(radius[i] / f0);
        double g = std::exp(-lr * lr / denom_r) * lowpass[i];
        const double ds = std::sin(angle[i]) * ct - std::cos(angle[i]) * st;
        const double dc = std::cos(angle[i]) * ct + std::sin(angle[i]) * st;
        const double dtheta = std::abs(std::atan2(ds, dc));
        g *= std::exp(-dtheta * dtheta / denom_t);
        band[i] = spectrum[i] * g;
      }
      band[0] = {0.0, 0.0};
      resp = band;
      fft2(resp, w, h, true);
      for (std::size_t i = 0; i < npix; ++i) {
        sum_re[i] += resp[i].real();
        sum_im[i] += resp[i].imag();
        sum_amp[i] += std::abs(resp[i]);
      }
    }
    for (std::size_t i = 0; i < npix; ++i) {
      pc_num[i] += std::sqrt(sum_re[i] * sum_re[i] + sum_im[i] * sum_im[i]);
      pc_den[i] += sum_amp[i];
    }
  }

  std::vector<double> pc(npix);
  for (std::size_t i = 0; i < npix; ++i)
    pc[i] = pc_num[i] / (pc_den[i] + 1e-8);
  return pc;
}

// Scharr gradient magnitude, replicated borders.
std::vector<double> gradient_magnitude(const ImageGrid& img) {
  const int w = img.width, h = img.height;
  std::vector<double> g(img.data.size());
  auto px = [&](int r, int c) {
    return img.at(std::clamp(r, 0, h - 1), std::clamp(c, 0, w - 1));
  };
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double gx = (3.0 * (px(r - 1, c + 1) - px(r - 1, c - 1)) +
                         10.0 * (px(r, c + 1) - px(r, c - 1)) +
                         3.0 * (px(r + 1, c + 1) - px(r + 1, c - 1))) /
                        16.0;
      const double gy = (3.0 * (px(r + 1, c - 1) - px(r - 1, c - 1)) +
                         10.0 * (px(r + 1, c) - px(r - 1, c)) +
                         3.0 * (px(r + 1, c + 1) - px(r - 1, c + 1))) /
                        16.0;
      g[std::size_t(r) * std::size_t(w) + std::size_t(c)] =
          std::sqrt(gx * gx + gy * gy);
    }
  }
  return g;
}

}  // namespace

double fsim(const ImageGrid& a, const ImageGrid& b, const FsimOptions& opt) {
  check_same_dims(a, b, "fsim");
  if (a.width < 32 || a.height < 32)
    throw ContractError("fsim: images must be at least 32x32");
  if (opt.scales < 1 || opt.orientations < 1)
    throw ContractError("fsim: need at least one scale and orientation");

  const std::vector<double> pc_a = phase_congruency(a, opt);
  const std::vector<double> pc_b = phase_congruency(b, opt);
  const std::vector<double> g_a = gradient_magnitude(a);
  const std::vector<double> g_b = gradient_magnitude(b);

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < pc_a.size(); ++i) {
    const double s_pc = (2.0 * pc_a[i] * pc_b[i] + opt.t_pc) /
                        (pc_a[i] * pc_a[i] + pc_b[i] * pc_b[i] + opt.t_pc);
    const double s_g = (2.0 * g_a[i] * g_b[i] + opt.t_grad) /
                       (g_a[i] * g_a[i] + g_b[i] * g_b[i] + opt.t_grad);
    const double pc_m = std::max(pc_a[i], pc_b[i]);
    num += s_pc * s_g * pc_m;
    den += pc_m;
  }
  if (!(den > 0.0))
    throw ContractError("fsim: zero phase congruency everywhere (flat images)");
  return num / den;
}

ImageGrid normalize_unit(const ImageGrid& img) {
  img.validate();
  const auto [lo, hi] = value_range(img);
  ImageGrid out = img;
  if (hi > lo) {
    for (double& v : out.data) v = (v - lo) / (hi - lo);
  } else {
    for (double& v : out.data) v = 0.0;
  }
  return out;
}

ImageGrid normalize_to_window(const ImageGrid& img, double lo, double hi) {
  img.validate();
  if (!(hi > lo))
    throw ContractError("normalize_to_window: window must have hi > lo");
  ImageGrid out = img;
  for (double& v : out.data) v = (v - lo) / (hi - lo);
  return out;
}

}  // namespace polyct
