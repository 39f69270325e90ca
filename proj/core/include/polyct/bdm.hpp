#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "polyct/image.hpp"

namespace polyct {

// Complexity values for small binary blocks. Patterns are encoded row-major,
// first pixel in the most significant bit.
struct CtmTable {
  int block_edge = 2;
  std::unordered_map<std::uint32_t, double> values;

  void validate() const;           // positive values, sane edge
  bool complete() const;           // covers all 2^(edge^2) patterns
  double max_value() const;
  static std::uint32_t encode(const char* bits, int edge);  // "0110" -> id
};

// Bundled 2x2 table. The values are in-project estimates (symmetric under
// complement/rotation, constants lowest); research-grade tables can be loaded
// from file with read_ctm_table().
const CtmTable& bundled_ctm2();

struct LayeredBdmOptions {
  int levels = 256;       // quantization levels
  int offset = 2;         // block origin stride, 1 <= offset <= block edge
  bool fallback = false;  // substitute the table max for unknown blocks
  // Quantization window override; image min-max when unset. Lets a stack of
  // images share one scale.
  std::optional<double> window_lo;
  std::optional<double> window_hi;
};

// Layered block decomposition: quantize to `levels` over the image min-max,
// take the binary layer (pixel >= l) for each level l = 1..levels-1, cut every
// layer into ctm.block_edge blocks at the given stride (partial edge blocks
// discarded), then sum CTM(block) + log2(occurrences) over distinct blocks.
double layered_bdm(const ImageGrid& img, const CtmTable& ctm,
                   const LayeredBdmOptions& opt = {});

}  // namespace polyct
