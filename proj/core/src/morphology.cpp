#include "polyct/morphology.hpp"

#include <algorithm>
#include <bitset>

#include "polyct/error.hpp"

namespace polyct {

double morphological_richness(const ImageGrid& binary) {
  binary.validate();
  if (binary.width < 3 || binary.height < 3)
    throw ContractError("morphological_richness: image must be at least 3x3");
  for (double v : binary.data)
    if (v != 0.0 && v != 1.0)
      throw ContractError("morphological_richness: image is not binary");

  std::bitset<512> seen;
  for (int r = 0; r + 3 <= binary.height; ++r) {
    for (int c = 0; c + 3 <= binary.width; ++c) {
      unsigned pattern = 0;
      for (int dr = 0; dr < 3; ++dr)
        for (int dc = 0; dc < 3; ++dc)
          pattern = (pattern << 1) | unsigned(binary.at(r + dr, c + dc) != 0.0);
      seen.set(pattern);
    }
  }
  return double(seen.count()) / 512.0;
}

std::vector<double> mr_signal(const ImageGrid& img, int n_thresholds) {
  img.validate();
  if (n_thresholds < 8)
    throw ContractError("mr_signal: need at least 8 thresholds");
  const auto [lo, hi] = value_range(img);
  if (!(hi > lo)) throw ContractError("mr_signal: constant image");

  std::vector<double> signal(std::size_t(n_thresholds), 0.0);
  ImageGrid bin = img;
  for (int k = 0; k < n_thresholds; ++k) {
    const double t = lo + double(k) * (hi - lo) / double(n_thresholds);
    for (std::size_t i = 0; i < img.data.size(); ++i)
      bin.data[i] = img.data[i] >= t ? 1.0 : 0.0;
    signal[std::size_t(k)] = morphological_richness(bin);
  }
  return signal;
}

}  // namespace polyct
