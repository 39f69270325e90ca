#include "polyct/recon.hpp"

#include <cmath>
#include <vector>

#include "polyct/error.hpp"

namespace polyct {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> ramp_filter(const std::vector<double>& row, double delta,
                                FilterWindow window) {
  if (row.empty()) throw ContractError("ramp_filter: empty row");
  if (!(delta > 0.0)) throw ContractError("ramp_filter: delta must be positive");
  const int n = int(row.size());

  // h(k) over the full support |k| <= n-1.
  std::vector<double> h(std::size_t(2 * n - 1), 0.0);
  auto H = [&](int k) -> double& { return h[std::size_t(k + n - 1)]; };
  H(0) = 1.0 / (4.0 * delta * delta);
  for (int k = 1; k < n; k += 2) {
    const double v = -1.0 / (kPi * kPi * double(k) * double(k) * delta * delta);
    H(k) = v;
    H(-k) = v;
  }
  if (window == FilterWindow::hamming && n > 1) {
    for (int k = -(n - 1); k <= n - 1; ++k)
      H(k) *= 0.54 + 0.46 * std::cos(kPi * double(k) / double(n - 1));
  }

  std::vector<double> out(row.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += row[std::size_t(k)] * H(i - k);
    out[std::size_t(i)] = acc;
  }
  return out;
}

ImageGrid inverse_radon(const Sinogram& sino, int out_size,
                        FilterWindow window) {
  sino.validate();
  if (sino.geometry.mode != BeamMode::parallel)
    throw ContractError(
        "inverse_radon expects a parallel sinogram; rebin fan data first "
        "(fan_to_parallel_rebin)");
  if (out_size < 16) throw ContractError("inverse_radon: out_size must be >= 16");

  const Geometry& g = sino.geometry;
  const int na = g.n_angles, nd = g.n_detectors;
  const double delta_cm = g.detector_spacing_mm / 10.0;
  const double extent_mm = nd * g.detector_spacing_mm;
  const double px = extent_mm / out_size;
  const double half = extent_mm / 2.0;
  const double det_center = (nd - 1) / 2.0;
  const double step = g.angle_step_deg * kPi / 180.0;

  std::vector<std::vector<double>> filtered;
  filtered.resize(std::size_t(na));
  for (int a = 0; a < na; ++a) {
    std::vector<double> row(std::size_t(nd), 0.0);
    for (int d = 0; d < nd; ++d) row[std::size_t(d)] = sino.at(a, d);
    filtered[std::size_t(a)] = ramp_filter(row, delta_cm, window);
  }

  ImageGrid img = make_image(out_size, out_size, px,
                             ValueSemantics::linear_attenuation_per_cm);
  const double scale = kPi / double(na) * delta_cm;
  for (int a = 0; a < na; ++a) {
    const double theta = a * step;
    const double c = std::cos(theta), s = std::sin(theta);
    const std::vector<double>& q = filtered[std::size_t(a)];
    for (int row = 0; row < out_size; ++row) {
      const double y = -half + (row + 0.5) * px;
      for (int col = 0; col < out_size; ++col) {
        const double x = -half + (col + 0.5) * px;
        const double f = (x * c + y * s) / g.detector_spacing_mm + det_center;
        if (f < 0.0 || f > nd - 1) continue;
        const int i0 = std::min(int(f), nd - 2 >= 0 ? nd - 2 : 0);
        const double w = f - i0;
        const double v = nd > 1
                             ? (1.0 - w) * q[std::size_t(i0)] + w * q[std::size_t(i0 + 1)]
                             : q[0];
        img.at(row, col) += v * scale;
      }
    }
  }
  img.validate();
  return img;
}

}  // namespace polyct
