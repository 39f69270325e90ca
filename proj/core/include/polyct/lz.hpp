#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace polyct {

// Threshold at the mean: value >= mean maps to 1.
std::vector<std::uint8_t> binarize_by_mean(std::span<const double> xs);

// Lempel-Ziv 1976 phrase count c(N) of a binary sequence.
std::size_t lz76_phrase_count(std::span<const std::uint8_t> bits);

// Normalized LZ complexity C = c(N) * log2(N) / N. Values near 1 for random
// sequences; may exceed 1.
double lz_complexity(std::span<const std::uint8_t> bits);

// LZW compressed size in bits: 256-entry initial dictionary, fixed 12-bit
// codes, dictionary reset (not emitted as a code) when it reaches 4096
// entries. Deterministic.
std::size_t lzw_compressed_length_bits(std::span<const std::uint8_t> bytes);

}  // namespace polyct
