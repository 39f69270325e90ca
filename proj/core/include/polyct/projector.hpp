#pragma once

#include <array>
#include <vector>

#include "polyct/material.hpp"
#include "polyct/phantom.hpp"

namespace polyct {

enum class BeamMode { parallel, fan };

struct Geometry {
  BeamMode mode = BeamMode::parallel;
  int n_angles = 360;
  double angle_step_deg = 1.0;
  int n_detectors = 256;
  // Parallel mode: detector pitch (mm) at the isocenter. Fan mode: ignored
  // for ray layout (rays are equiangular across fan_angle_deg).
  double detector_spacing_mm = 0.0625;
  double fan_angle_deg = 6.8;         // full fan opening
  double source_distance_mm = 150.0;  // source to isocenter

  void validate() const;
};

struct Sinogram {
  Geometry geometry;
  std::vector<double> data;  // n_angles x n_detectors, row-major

  double& at(int angle, int det) {
    return data[std::size_t(angle) * std::size_t(geometry.n_detectors) +
                std::size_t(det)];
  }
  double at(int angle, int det) const {
    return data[std::size_t(angle) * std::size_t(geometry.n_detectors) +
                std::size_t(det)];
  }
  void validate() const;  // size match, finite entries
};

// Intersection lengths (cm) of the ray (origin + t * dir, mm frame) with each
// material region of the phantom. dir need not be normalized.
std::array<double, kMaterialCount> ray_path_lengths(const Phantom& ph,
                                                    double ox_mm, double oy_mm,
                                                    double dx, double dy);

// Line integrals mu * L (dimensionless) at a single energy.
Sinogram mono_projection(const Phantom& ph, const Geometry& g,
                         double energy_kev);

// Polychromatic Beer-Lambert: entry = -ln(sum_E flux(E) exp(-sum_m mu_m(E) L_m)).
// spectrum must be normalized (total flux 1); each bin's transmission factor
// is floored at transmission_floor before the log.
Sinogram poly_projection(const Phantom& ph, const Geometry& g,
                         const Spectrum& spectrum,
                         double transmission_floor = 1e-12);

// Resample a fan sinogram onto parallel (theta, s) coordinates using
// beta = theta + gamma, s = D sin(gamma), bilinear in (beta, gamma).
// Output spans the fan's s-range with the same angle/detector counts.
Sinogram fan_to_parallel_rebin(const Sinogram& fan);

}  // namespace polyct
