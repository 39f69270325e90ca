#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace polyct {

// Approximate entropy (regularity statistic): phi^m - phi^(m+1) with
// self-matches included and Chebyshev distance d <= r. Constant series give
// exactly 0.
double approximate_entropy(std::span<const double> xs, int m, double r);

// Sample entropy: -ln(A/B) over template pairs (self-matches excluded,
// d < r strictly). Errors when no m- or (m+1)-template pair matches.
double sample_entropy(std::span<const double> xs, int m, double r);

// Fuzzy entropy: templates are baseline-centered (own mean removed),
// membership D = exp(-d^n_grad / r), result ln(phi^m) - ln(phi^(m+1)).
double fuzzy_entropy(std::span<const double> xs, int m, double r, int n_grad);

// Ordinal-pattern entropy in nats over windows of `order` samples, ties
// broken by index order. 0 <= H <= ln(order!).
double permutation_entropy(std::span<const double> xs, int order);

// H(Y|X) = sum_xy p(x,y) ln(p(x)/p(x,y)) from a joint count table joint[x][y].
double conditional_entropy(const std::vector<std::vector<std::size_t>>& joint);

struct CceResult {
  double min_cce = 0.0;
  int best_length = 0;             // L attaining the minimum
  std::vector<double> profile;     // CCE(L) for L = 1..l_max
};

// Corrected conditional entropy over uniformly quantized symbols:
// CE(L) = E(L) - E(L-1) from overlapping L-word Shannon entropies (nats) and
// CCE(L) = CE(L) + perc(L) * E(1), where perc(L) is the fraction of L-words
// occurring exactly once. Returns the minimum over L and the profile.
CceResult corrected_conditional_entropy(std::span<const double> xs, int bins,
                                        int l_max);

}  // namespace polyct
