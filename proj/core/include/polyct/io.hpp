#pragma once

#include <filesystem>
#include <string>

#include "polyct/bdm.hpp"
#include "polyct/image.hpp"
#include "polyct/projector.hpp"

namespace polyct {

// Shortest decimal that round-trips the exact double. Every text format here
// uses it, which makes write -> read -> write byte-identical.
std::string format_double(double v);

// Write via <path>.tmp + rename so readers never see a partial file.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

// Sinogram text format. Header line:
//   SINO <n_angles> <n_detectors> <angle_step_deg> <detector_spacing_mm>
// then one line of detector values per angle. The format carries no beam
// mode, so only parallel sinograms are accepted; rebin fan data first.
void write_sinogram(const std::filesystem::path& path, const Sinogram& sino);
Sinogram read_sinogram(const std::filesystem::path& path);

// Image text format. Header line:
//   IMG <width> <height> <pixel_size_mm> <semantics>
// then one line per row.
void write_image(const std::filesystem::path& path, const ImageGrid& img);
ImageGrid read_image(const std::filesystem::path& path);

// 8-bit PGM (P2) preview; values windowed to [lo, hi] and flipped vertically
// so row 0 renders at the bottom, matching the phantom frame.
void write_pgm(const std::filesystem::path& path, const ImageGrid& img,
               double window_lo, double window_hi);

// Complexity-table text format. Header "CTM <block_edge>", then one line per
// pattern: <row-major bit string> <value>.
void write_ctm_table(const std::filesystem::path& path, const CtmTable& table);
CtmTable read_ctm_table(const std::filesystem::path& path);

}  // namespace polyct
