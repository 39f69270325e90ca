#pragma once

#include <vector>

#include "polyct/image.hpp"
#include "polyct/intervals.hpp"

namespace polyct {

// HU = (v - mu_w) / mu_w * 1000 pixelwise. Input must be a linear-attenuation
// image; mu_w must be positive.
ImageGrid hounsfield(const ImageGrid& pam, double mu_w);

// wHU = q * HU pixelwise. Input must be a Hounsfield image; q in [0, 1].
ImageGrid weight_hu(const ImageGrid& hu, double q);

struct EnhancedImage {
  EnergyInterval interval;
  ImageGrid hu;
  ImageGrid weighted;
};

struct EnhancedStack {
  double reference_energy_kev = 70.0;
  double reference_mu_w = 0.0;
  ImageGrid conventional;  // HU at the reference energy
  std::vector<EnhancedImage> images;

  void validate() const;
};

// Full per-interval enhancement of a reconstructed attenuation image:
// assigns flux weights to the set, resolves water mu at each effective
// energy, then HU_i = hounsfield(pam, mu_w_i) and wHU_i = q_i * HU_i, plus
// the conventional image at the reference energy. Intervals must carry
// effective energies (bypass set or fit path).
EnhancedStack enhance_pipeline(const ImageGrid& pam, IntervalSet set,
                               const Spectrum& spectrum,
                               double reference_energy_kev = 70.0);

}  // namespace polyct
