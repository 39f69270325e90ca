#include "polyct/bdm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "polyct/error.hpp"

namespace polyct {

void CtmTable::validate() const {
  if (block_edge < 1 || block_edge > 5)
    throw ContractError("ctm table: block edge must lie in [1, 5]");
  if (values.empty()) throw ContractError("ctm table: no entries");
  const std::uint32_t limit = 1u << (block_edge * block_edge);
  for (const auto& [id, v] : values) {
    if (id >= limit) throw ContractError("ctm table: pattern id out of range");
    if (!(v > 0.0) || !std::isfinite(v))
      throw ContractError("ctm table: values must be positive and finite");
  }
}

bool CtmTable::complete() const {
  const std::uint32_t limit = 1u << (block_edge * block_edge);
  if (values.size() != limit) return false;
  for (std::uint32_t id = 0; id < limit; ++id)
    if (!values.contains(id)) return false;
  return true;
}

double CtmTable::max_value() const {
  if (values.empty()) throw ContractError("ctm table: no entries");
  double best = 0.0;
  for (const auto& [id, v] : values) best = std::max(best, v);
  return best;
}

std::uint32_t CtmTable::encode(const char* bits, int edge) {
  const auto need = std::size_t(edge) * std::size_t(edge);
  if (bits == nullptr || std::strlen(bits) != need)
    throw ContractError("ctm encode: bit string length must equal edge^2");
  std::uint32_t id = 0;
  for (std::size_t i = 0; i < need; ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw ContractError("ctm encode: bit string must be 0s and 1s");
    id = (id << 1) | std::uint32_t(bits[i] == '1');
  }
  return id;
}

const CtmTable& bundled_ctm2() {
  // In-project estimates, grouped by structure class: uniform blocks lowest,
  // then half-plane edges, single-cell blocks, diagonal pairs. Symmetric
  // under complement and rotation by construction.
  static const CtmTable table = [] {
    CtmTable t;
    t.block_edge = 2;
    const auto put = [&](std::uint32_t id, double v) { t.values[id] = v; };
    put(0b0000, 22.0);
    put(0b1111, 22.0);
    for (std::uint32_t id : {0b0011u, 0b1100u, 0b0101u, 0b1010u}) put(id, 24.2);
    for (std::uint32_t id : {0b0001u, 0b0010u, 0b0100u, 0b1000u}) put(id, 24.8);
    for (std::uint32_t id : {0b1110u, 0b1101u, 0b1011u, 0b0111u}) put(id, 24.8);
    put(0b0110, 25.0);
    put(0b1001, 25.0);
    t.validate();
    return t;
  }();
  return table;
}

double layered_bdm(const ImageGrid& img, const CtmTable& ctm,
                   const LayeredBdmOptions& opt) {
  img.validate();
  ctm.validate();
  if (opt.levels < 2) throw ContractError("layered_bdm: levels must be >= 2");
  const int edge = ctm.block_edge;
  if (opt.offset < 1 || opt.offset > edge)
    throw ContractError("layered_bdm: offset must lie in [1, block edge]");
  if (img.width < edge || img.height < edge)
    throw ContractError("layered_bdm: image smaller than one block");
  if (opt.window_lo.has_value() != opt.window_hi.has_value())
    throw ContractError("layered_bdm: window needs both endpoints");

  double lo, hi;
  if (opt.window_lo) {
    lo = *opt.window_lo;
    hi = *opt.window_hi;
    if (!(hi >= lo)) throw ContractError("layered_bdm: empty window");
  } else {
    std::tie(lo, hi) = value_range(img);
  }

  std::vector<int> level(img.data.size(), 0);
  if (hi > lo) {
    for (std::size_t i = 0; i < img.data.size(); ++i) {
      const double u = (img.data[i] - lo) / (hi - lo);
      level[i] = std::clamp(int(std::floor(u * opt.levels)), 0, opt.levels - 1);
    }
  }

  std::unordered_map<std::uint32_t, std::uint64_t> counts;
  const auto w = std::size_t(img.width);
  for (int layer = 1; layer < opt.levels; ++layer) {
    for (int r = 0; r + edge <= img.height; r += opt.offset) {
      for (int c = 0; c + edge <= img.width; c += opt.offset) {
        std::uint32_t pattern = 0;
        for (int dr = 0; dr < edge; ++dr) {
          const std::size_t base = std::size_t(r + dr) * w + std::size_t(c);
          for (int dc = 0; dc < edge; ++dc)
            pattern = (pattern << 1) | std::uint32_t(level[base + std::size_t(dc)] >= layer);
        }
        ++counts[pattern];
      }
    }
  }

  double total = 0.0;
  for (const auto& [pattern, count] : counts) {
    const auto it = ctm.values.find(pattern);
    double v;
    if (it != ctm.values.end()) {
      v = it->second;
    } else if (opt.fallback) {
      v = ctm.max_value();
    } else {
      throw ContractError("layered_bdm: block pattern missing from ctm table");
    }
    total += v + std::log2(double(count));
  }
  return total;
}

}  // namespace polyct
