#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace polyct {

double sample_mean(std::span<const double> xs);
// Sample standard deviation (n-1 denominator).
double sample_stddev(std::span<const double> xs);

// Scott's normal-reference bin width: 3.5 sigma / n^(1/3).
double scott_width(double sigma, std::size_t n);

struct Histogram {
  std::vector<double> edges;          // k+1 ascending edges
  std::vector<std::size_t> counts;    // k bins; last edge inclusive
};

// Scott-binned histogram; errors on constant input (sigma = 0).
Histogram scott_histogram(std::span<const double> xs);
std::size_t scott_bins(std::span<const double> xs);
// Scott bin index per element.
std::vector<int> scott_bin_indices(std::span<const double> xs);

// Pearson correlation; errors when either side is constant.
double pearson(std::span<const double> x, std::span<const double> y);

// Ranks with ties averaged (midranks).
std::vector<double> midranks(std::span<const double> x);

// Spearman rank correlation (midranks, then Pearson).
double spearman(std::span<const double> x, std::span<const double> y);

// Locally weighted linear regression: tricube weights over the frac*n nearest
// neighbors, one pass (no robustness iterations). Reproduces exactly linear
// data. frac in (0, 1].
std::vector<double> lowess(std::span<const double> x, std::span<const double> y,
                           double frac);

}  // namespace polyct
