#pragma once

#include <cstddef>
#include <vector>

#include "polyct/material.hpp"

namespace polyct {

// Square material-ID grid. Row-major; the center of cell (row, col) sits at
//   x = -extent/2 + (col + 0.5) * pixel_size
//   y = -extent/2 + (row + 0.5) * pixel_size   (mm)
struct Phantom {
  int size = 0;
  double extent_mm = 0.0;
  std::vector<Material> cells;

  double pixel_size_mm() const { return extent_mm / size; }
  Material at(int row, int col) const {
    return cells[std::size_t(row) * std::size_t(size) + std::size_t(col)];
  }
  // Material of the cell containing the point; air outside the grid.
  Material material_at(double x_mm, double y_mm) const;
};

// Water cylinder (radius 5 mm, centered) holding three 1x1 mm tissue squares:
// rib bone centered at (2, 2) mm, lung at (0, 2), skull at (-2, 2); air
// elsewhere. resolution >= 16 and extent_mm >= 12 (cylinder must fit).
Phantom build_phantom(int resolution, double extent_mm);

}  // namespace polyct
