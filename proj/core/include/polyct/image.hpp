#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace polyct {

enum class ValueSemantics {
  linear_attenuation_per_cm,
  hounsfield,
  weighted_hounsfield,
  labels,
};

const char* semantics_name(ValueSemantics s);
ValueSemantics semantics_from_name(const std::string& name);

// Row-major scalar image. Row 0 is the y = -extent/2 edge, matching the
// Phantom frame; PGM export flips vertically for display.
struct ImageGrid {
  int width = 0;
  int height = 0;
  double pixel_size_mm = 0.0;
  ValueSemantics semantics = ValueSemantics::linear_attenuation_per_cm;
  std::vector<double> data;

  double& at(int row, int col) {
    return data[std::size_t(row) * std::size_t(width) + std::size_t(col)];
  }
  double at(int row, int col) const {
    return data[std::size_t(row) * std::size_t(width) + std::size_t(col)];
  }
  std::size_t pixel_count() const { return data.size(); }

  // Throws ContractError on dimension/data mismatch or non-finite values.
  void validate() const;
};

ImageGrid make_image(int width, int height, double pixel_size_mm,
                     ValueSemantics semantics, double fill = 0.0);

// min and max over pixels.
std::pair<double, double> value_range(const ImageGrid& img);

double mean_value(const ImageGrid& img);
// Sample standard deviation (n-1 denominator).
double stddev_value(const ImageGrid& img);

}  // namespace polyct
