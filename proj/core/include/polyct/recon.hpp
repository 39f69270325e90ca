#pragma once

#include <vector>

#include "polyct/image.hpp"
#include "polyct/projector.hpp"

namespace polyct {

enum class FilterWindow { ramp, hamming };

// Spatial-domain ramp (Ram-Lak) filtering of one detector row:
//   h(0) = 1/(4 delta^2), h(k) = 0 for even k != 0, h(k) = -1/(pi k delta)^2
// for odd k, optionally Hamming-apodized. delta is the detector spacing in
// the unit the reconstruction works in (cm). Returns the plain convolution
// (a unit impulse comes back as the kernel itself).
std::vector<double> ramp_filter(const std::vector<double>& row, double delta,
                                FilterWindow window = FilterWindow::ramp);

// Filtered back-projection of a parallel sinogram onto an out_size^2 grid
// covering the detector span. Output values are linear attenuation (1/cm);
// negative values are kept. Fan sinograms are rejected (rebin first).
ImageGrid inverse_radon(const Sinogram& sino, int out_size,
                        FilterWindow window = FilterWindow::ramp);

}  // namespace polyct
