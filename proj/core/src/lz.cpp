#include "polyct/lz.hpp"

#include <cmath>
#include <unordered_map>

#include "polyct/error.hpp"

namespace polyct {

std::vector<std::uint8_t> binarize_by_mean(std::span<const double> xs) {
  if (xs.empty()) throw ContractError("binarize_by_mean: empty series");
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= double(xs.size());
  std::vector<std::uint8_t> bits(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    bits[i] = xs[i] >= mean ? 1 : 0;
  return bits;
}

std::size_t lz76_phrase_count(std::span<const std::uint8_t> bits) {
  const std::size_t n = bits.size();
  if (n == 0) throw ContractError("lz76_phrase_count: empty sequence");
  if (n == 1) return 1;

  // Kaspar-Schuster production parsing; s(k) below is 1-based.
  auto s = [&](std::size_t k) { return bits[k - 1]; };
  std::size_t c = 1, l = 1, i = 0, k = 1, k_max = 1;
  while (true) {
    if (s(i + k) == s(l + k)) {
      ++k;
      if (l + k > n) {
        ++c;
        break;
      }
    } else {
      if (k > k_max) k_max = k;
      ++i;
      if (i == l) {
        ++c;
        l += k_max;
        if (l + 1 > n) break;
        i = 0;
        k = 1;
        k_max = 1;
      } else {
        k = 1;
      }
    }
  }
  return c;
}

double lz_complexity(std::span<const std::uint8_t> bits) {
  if (bits.size() < 2) throw ContractError("lz_complexity: need at least 2 bits");
  const double n = double(bits.size());
  return double(lz76_phrase_count(bits)) * std::log2(n) / n;
}

std::size_t lzw_compressed_length_bits(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw ContractError("lzw_compressed_length_bits: empty input");
  constexpr std::size_t kCodeBits = 12;
  constexpr std::uint32_t kDictLimit = 4096;

  // Dictionary entry = (code of prefix string, appended byte). Single bytes
  // are codes 0..255 implicitly.
  std::unordered_map<std::uint64_t, std::uint32_t> dict;
  auto key = [](std::uint32_t prefix, std::uint8_t b) {
    return (std::uint64_t(prefix) << 8) | b;
  };

  std::uint32_t next_code = 256;
  std::size_t emitted = 0;
  std::uint32_t w = bytes[0];
  for (std::size_t i = 1; i < bytes.size(); ++i) {
    const std::uint8_t b = bytes[i];
    const auto it = dict.find(key(w, b));
    if (it != dict.end()) {
      w = it->second;
      continue;
    }
    ++emitted;  // code for w
    if (next_code == kDictLimit) {
      // Restart parsing outright. Adding (w, b) across the reset would key it
      // by a code number the fresh dictionary is about to reuse.
      dict.clear();
      next_code = 256;
    } else {
      dict.emplace(key(w, b), next_code++);
    }
    w = b;
  }
  ++emitted;  // final pending string
  return emitted * kCodeBits;
}

}  // namespace polyct
