#pragma once

#include <vector>

#include "polyct/image.hpp"

namespace polyct {

// Distinct 3x3 neighborhoods (sliding window, fully inside) of a binary image
// divided by 512. Pixels must be exactly 0 or 1; image at least 3x3.
double morphological_richness(const ImageGrid& binary);

// Richness signal over n thresholds t_k = min + k*(max-min)/n, k = 0..n-1
// (so the first threshold binarizes everything to 1). Errors on constant
// images.
std::vector<double> mr_signal(const ImageGrid& img, int n_thresholds);

}  // namespace polyct
