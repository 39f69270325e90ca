#include "polyct/projector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyct/error.hpp"

namespace polyct {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }

void require_normalized(const Spectrum& s) {
  s.validate();
  if (std::abs(s.total_flux() - 1.0) > 1e-9)
    throw ContractError("spectrum must be normalized to unit total flux");
}

void require_fan_source_outside(const Phantom& ph, const Geometry& g) {
  const double half_diag = ph.extent_mm * std::sqrt(2.0) / 2.0;
  if (!(g.source_distance_mm > half_diag))
    throw ContractError("fan source distance must exceed the phantom half-diagonal");
}

struct Ray {
  double ox, oy;  // mm
  double dx, dy;  // unit
};

// Ray through the parallel-beam sample (theta, s): offset s along the normal
// (cos t, sin t), direction (-sin t, cos t).
Ray parallel_ray(double theta, double s, double start_back) {
  const double c = std::cos(theta), sn = std::sin(theta);
  return {s * c + start_back * sn, s * sn - start_back * c, -sn, c};
}

// Fan ray for source angular position beta and in-fan angle gamma. The source
// sits at D (sin b, -cos b); the ray is the parallel ray (b - g, D sin g).
Ray fan_ray(double beta, double gamma, double source_distance) {
  const double ang = beta - gamma;
  return {source_distance * std::sin(beta), -source_distance * std::cos(beta),
          -std::sin(ang), std::cos(ang)};
}

template <typename PerRay>
Sinogram project(const Phantom& ph, const Geometry& g, PerRay&& per_ray) {
  g.validate();
  Sinogram sino;
  sino.geometry = g;
  sino.data.assign(std::size_t(g.n_angles) * std::size_t(g.n_detectors), 0.0);
  const double step = deg2rad(g.angle_step_deg);
  const double center = (g.n_detectors - 1) / 2.0;
  const double start_back = ph.extent_mm;  // outside the grid; clipping trims
  const double fan_step =
      g.n_detectors > 1 ? deg2rad(g.fan_angle_deg) / (g.n_detectors - 1) : 0.0;
  for (int a = 0; a < g.n_angles; ++a) {
    const double ang = a * step;
    for (int d = 0; d < g.n_detectors; ++d) {
      Ray ray{};
      if (g.mode == BeamMode::parallel) {
        ray = parallel_ray(ang, (d - center) * g.detector_spacing_mm, start_back);
      } else {
        ray = fan_ray(ang, (d - center) * fan_step, g.source_distance_mm);
      }
      const auto lengths = ray_path_lengths(ph, ray.ox, ray.oy, ray.dx, ray.dy);
      sino.at(a, d) = per_ray(lengths);
    }
  }
  sino.validate();
  return sino;
}

}  // namespace

void Geometry::validate() const {
  if (n_angles < 1) throw ContractError("geometry: n_angles must be >= 1");
  if (!(angle_step_deg > 0.0))
    throw ContractError("geometry: angle_step_deg must be positive");
  if (n_detectors < 1) throw ContractError("geometry: n_detectors must be >= 1");
  if (!(detector_spacing_mm > 0.0))
    throw ContractError("geometry: detector_spacing_mm must be positive");
  if (mode == BeamMode::fan) {
    if (!(fan_angle_deg > 0.0 && fan_angle_deg < 180.0))
      throw ContractError("geometry: fan_angle_deg must lie in (0, 180)");
    if (!(source_distance_mm > 0.0))
      throw ContractError("geometry: source_distance_mm must be positive");
  }
}

void Sinogram::validate() const {
  geometry.validate();
  if (data.size() !=
      std::size_t(geometry.n_angles) * std::size_t(geometry.n_detectors))
    throw ContractError("sinogram data size does not match geometry");
  for (double v : data)
    if (!std::isfinite(v)) throw ContractError("sinogram contains non-finite entries");
}

std::array<double, kMaterialCount> ray_path_lengths(const Phantom& ph,
                                                    double ox_mm, double oy_mm,
                                                    double dx, double dy) {
  std::array<double, kMaterialCount> lengths{};
  const double norm = std::hypot(dx, dy);
  if (!(norm > 0.0)) throw ContractError("ray direction must be non-zero");
  dx /= norm;
  dy /= norm;

  const double half = ph.extent_mm / 2.0;
  const double px = ph.pixel_size_mm();

  // Clip to the grid bounding box (slab method).
  double tmin = -std::numeric_limits<double>::infinity();
  double tmax = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 2; ++axis) {
    const double o = axis == 0 ? ox_mm : oy_mm;
    const double d = axis == 0 ? dx : dy;
    if (d == 0.0) {
      if (o <= -half || o >= half) return lengths;
    } else {
      double t0 = (-half - o) / d;
      double t1 = (half - o) / d;
      if (t0 > t1) std::swap(t0, t1);
      tmin = std::max(tmin, t0);
      tmax = std::min(tmax, t1);
    }
  }
  if (!(tmin < tmax)) return lengths;

  // March cell boundaries, attributing each segment to its cell's material.
  double t = tmin;
  const double eps = 1e-9 * ph.extent_mm;
  double x = ox_mm + (t + eps) * dx;
  double y = oy_mm + (t + eps) * dy;
  int col = std::clamp(int(std::floor((x + half) / px)), 0, ph.size - 1);
  int row = std::clamp(int(std::floor((y + half) / px)), 0, ph.size - 1);
  const int step_col = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_row = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  const double inf = std::numeric_limits<double>::infinity();
  auto boundary_t = [&](int idx, int stp, double o, double d) {
    if (stp == 0) return inf;
    const double edge = -half + (stp > 0 ? (idx + 1) : idx) * px;
    return (edge - o) / d;
  };
  double t_next_col = boundary_t(col, step_col, ox_mm, dx);
  double t_next_row = boundary_t(row, step_row, oy_mm, dy);

  while (t < tmax - eps) {
    const double t_stop = std::min({t_next_col, t_next_row, tmax});
    const double seg = t_stop - t;
    if (seg > 0.0)
      lengths[std::size_t(ph.at(row, col))] += seg / 10.0;  // mm -> cm
    if (t_stop >= tmax) break;
    if (t_next_col <= t_next_row) {
      col += step_col;
      if (col < 0 || col >= ph.size) break;
      t_next_col = boundary_t(col, step_col, ox_mm, dx);
    } else {
      row += step_row;
      if (row < 0 || row >= ph.size) break;
      t_next_row = boundary_t(row, step_row, oy_mm, dy);
    }
    t = t_stop;
  }
  return lengths;
}

Sinogram mono_projection(const Phantom& ph, const Geometry& g,
                         double energy_kev) {
  if (g.mode == BeamMode::fan) require_fan_source_outside(ph, g);
  std::array<double, kMaterialCount> mu{};
  for (int m = 0; m < kMaterialCount; ++m)
    mu[m] = linear_attenuation(material_table(Material(m)), energy_kev);
  return project(ph, g, [&](const std::array<double, kMaterialCount>& len) {
    double sum = 0.0;
    for (int m = 0; m < kMaterialCount; ++m) sum += mu[m] * len[m];
    return sum;
  });
}

Sinogram poly_projection(const Phantom& ph, const Geometry& g,
                         const Spectrum& spectrum, double transmission_floor) {
  require_normalized(spectrum);
  if (!(transmission_floor > 0.0))
    throw ContractError("transmission floor must be positive");
  if (g.mode == BeamMode::fan) require_fan_source_outside(ph, g);
  const std::size_t nb = spectrum.bins.size();
  std::vector<std::array<double, kMaterialCount>> mu(nb);
  std::vector<double> flux(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    flux[b] = spectrum.bins[b].second;
    for (int m = 0; m < kMaterialCount; ++m)
      mu[b][m] =
          linear_attenuation(material_table(Material(m)), spectrum.bins[b].first);
  }
  return project(ph, g, [&](const std::array<double, kMaterialCount>& len) {
    double transmitted = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      if (flux[b] == 0.0) continue;
      double att = 0.0;
      for (int m = 0; m < kMaterialCount; ++m) att += mu[b][m] * len[m];
      transmitted += flux[b] * std::exp(-att);
    }
    return -std::log(std::max(transmitted, transmission_floor));
  });
}

Sinogram fan_to_parallel_rebin(const Sinogram& fan) {
  fan.validate();
  const Geometry& g = fan.geometry;
  if (g.mode != BeamMode::fan)
    throw ContractError("fan_to_parallel_rebin expects a fan sinogram");
  if (g.n_detectors < 2)
    throw ContractError("fan_to_parallel_rebin needs at least 2 detectors");

  const int na = g.n_angles, nd = g.n_detectors;
  const double step = deg2rad(g.angle_step_deg);
  const double fan_rad = deg2rad(g.fan_angle_deg);
  const double gamma_step = fan_rad / (nd - 1);
  const double center = (nd - 1) / 2.0;
  const double D = g.source_distance_mm;
  const double s_max = D * std::sin(fan_rad / 2.0);
  const bool full_circle = na * g.angle_step_deg >= 359.5;

  Geometry out = g;
  out.mode = BeamMode::parallel;
  out.detector_spacing_mm = 2.0 * s_max / (nd - 1);

  Sinogram par;
  par.geometry = out;
  par.data.assign(std::size_t(na) * std::size_t(nd), 0.0);

  auto sample = [&](double a_f, double g_f) {
    // Bilinear over (source angle index, in-fan angle index).
    g_f = std::clamp(g_f, 0.0, double(nd - 1));
    int g0 = std::min(int(std::floor(g_f)), nd - 2);
    const double wg = g_f - g0;
    double row_val[2];
    for (int k = 0; k < 2; ++k) {
      double af = a_f;
      if (full_circle) {
        af = std::fmod(af, double(na));
        if (af < 0) af += na;
        const int a0 = int(std::floor(af)) % na;
        const int a1 = (a0 + 1) % na;
        const double wa = af - std::floor(af);
        row_val[k] =
            (1 - wa) * fan.at(a0, g0 + k) + wa * fan.at(a1, g0 + k);
      } else {
        af = std::clamp(af, 0.0, double(na - 1));
        int a0 = std::min(int(std::floor(af)), na - 2 >= 0 ? na - 2 : 0);
        const double wa = na > 1 ? af - a0 : 0.0;
        row_val[k] = (1 - wa) * fan.at(a0, g0 + k) +
                     (na > 1 ? wa * fan.at(a0 + 1, g0 + k) : 0.0);
      }
    }
    return (1 - wg) * row_val[0] + wg * row_val[1];
  };

  for (int a = 0; a < na; ++a) {
    const double theta = a * step;
    for (int d = 0; d < nd; ++d) {
      const double s = (d - center) * out.detector_spacing_mm;
      const double gamma = std::asin(std::clamp(s / D, -1.0, 1.0));
      const double beta = theta + gamma;
      par.at(a, d) = sample(beta / step, gamma / gamma_step + center);
    }
  }
  par.validate();
  return par;
}

}  // namespace polyct
