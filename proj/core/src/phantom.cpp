#include "polyct/phantom.hpp"

#include <cmath>

#include "polyct/error.hpp"

namespace polyct {

namespace {

struct TissueSquare {
  double cx, cy;  // center, mm
  Material mat;
};

// 1x1 mm tissue inserts inside the 5 mm water cylinder.
constexpr TissueSquare kSquares[] = {
    {2.0, 2.0, Material::rib_bone},
    {0.0, 2.0, Material::lung},
    {-2.0, 2.0, Material::skull},
};

constexpr double kCylinderRadiusMm = 5.0;

Material classify(double x, double y) {
  for (const auto& sq : kSquares) {
    if (std::abs(x - sq.cx) <= 0.5 && std::abs(y - sq.cy) <= 0.5) return sq.mat;
  }
  if (x * x + y * y <= kCylinderRadiusMm * kCylinderRadiusMm)
    return Material::water;
  return Material::air;
}

}  // namespace

Material Phantom::material_at(double x_mm, double y_mm) const {
  const double px = pixel_size_mm();
  const double half = extent_mm / 2.0;
  const int col = int(std::floor((x_mm + half) / px));
  const int row = int(std::floor((y_mm + half) / px));
  if (col < 0 || col >= size || row < 0 || row >= size) return Material::air;
  return at(row, col);
}

Phantom build_phantom(int resolution, double extent_mm) {
  if (resolution < 16) throw ContractError("phantom resolution must be >= 16");
  if (!(extent_mm >= 12.0))
    throw ContractError("phantom extent must be >= 12 mm (5 mm cylinder must fit)");
  Phantom ph;
  ph.size = resolution;
  ph.extent_mm = extent_mm;
  ph.cells.resize(std::size_t(resolution) * std::size_t(resolution));
  const double px = ph.pixel_size_mm();
  const double half = extent_mm / 2.0;
  for (int row = 0; row < resolution; ++row) {
    const double y = -half + (row + 0.5) * px;
    for (int col = 0; col < resolution; ++col) {
      const double x = -half + (col + 0.5) * px;
      ph.cells[std::size_t(row) * resolution + col] = classify(x, y);
    }
  }
  return ph;
}

}  // namespace polyct
