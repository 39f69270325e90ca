#include "polyct/image.hpp"

#include <algorithm>
#include <cmath>

#include "polyct/error.hpp"

namespace polyct {

const char* semantics_name(ValueSemantics s) {
  switch (s) {
    case ValueSemantics::linear_attenuation_per_cm: return "mu";
    case ValueSemantics::hounsfield: return "hu";
    case ValueSemantics::weighted_hounsfield: return "whu";
    case ValueSemantics::labels: return "labels";
  }
  throw ContractError("unknown value semantics");
}

ValueSemantics semantics_from_name(const std::string& name) {
  if (name == "mu") return ValueSemantics::linear_attenuation_per_cm;
  if (name == "hu") return ValueSemantics::hounsfield;
  if (name == "whu") return ValueSemantics::weighted_hounsfield;
  if (name == "labels") return ValueSemantics::labels;
  throw ParseError("unknown image semantics: " + name);
}

void ImageGrid::validate() const {
  if (width <= 0 || height <= 0)
    throw ContractError("image dimensions must be positive");
  if (!(pixel_size_mm > 0.0)) throw ContractError("pixel size must be positive");
  if (data.size() != std::size_t(width) * std::size_t(height))
    throw ContractError("image data size does not match dimensions");
  for (double v : data)
    if (!std::isfinite(v)) throw ContractError("image contains non-finite values");
}

ImageGrid make_image(int width, int height, double pixel_size_mm,
                     ValueSemantics semantics, double fill) {
  ImageGrid img;
  img.width = width;
  img.height = height;
  img.pixel_size_mm = pixel_size_mm;
  img.semantics = semantics;
  img.data.assign(std::size_t(width) * std::size_t(height), fill);
  img.validate();
  return img;
}

std::pair<double, double> value_range(const ImageGrid& img) {
  if (img.data.empty()) throw ContractError("empty image");
  auto [lo, hi] = std::minmax_element(img.data.begin(), img.data.end());
  return {*lo, *hi};
}

double mean_value(const ImageGrid& img) {
  if (img.data.empty()) throw ContractError("empty image");
  double sum = 0.0;
  for (double v : img.data) sum += v;
  return sum / double(img.data.size());
}

double stddev_value(const ImageGrid& img) {
  const std::size_t n = img.data.size();
  if (n < 2) throw ContractError("stddev needs at least 2 pixels");
  const double m = mean_value(img);
  double ss = 0.0;
  for (double v : img.data) ss += (v - m) * (v - m);
  return std::sqrt(ss / double(n - 1));
}

}  // namespace polyct
