#include "polyct/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "polyct/error.hpp"

namespace polyct {

namespace {

// max_{0<=t<m} |x[i+t] - x[j+t]|
double cheb(std::span<const double> xs, std::size_t i, std::size_t j, int m) {
  double d = 0.0;
  for (int t = 0; t < m; ++t)
    d = std::max(d, std::abs(xs[i + std::size_t(t)] - xs[j + std::size_t(t)]));
  return d;
}

void check_series(std::span<const double> xs, int m, double r) {
  if (m < 1) throw ContractError("embedding dimension must be >= 1");
  if (xs.size() <= std::size_t(m) + 1)
    throw ContractError("series too short for embedding dimension");
  if (!(r > 0.0)) throw ContractError("tolerance r must be positive");
}

// Pincus phi^m: mean over i of ln(C_i), C_i = (# j with d <= r) / count,
// self-matches included. count = n - m + 1 templates.
double apen_phi(std::span<const double> xs, int m, double r) {
  const std::size_t count = xs.size() - std::size_t(m) + 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t matches = 0;
    for (std::size_t j = 0; j < count; ++j)
      if (cheb(xs, i, j, m) <= r) ++matches;
    acc += std::log(double(matches) / double(count));
  }
  return acc / double(count);
}

}  // namespace

double approximate_entropy(std::span<const double> xs, int m, double r) {
  check_series(xs, m, r);
  return apen_phi(xs, m, r) - apen_phi(xs, m + 1, r);
}

double sample_entropy(std::span<const double> xs, int m, double r) {
  check_series(xs, m, r);
  // Both template lengths run over i = 0..n-m-1 so every m-template has an
  // (m+1)-length extension; matches are strict (d < r), self-pairs excluded.
  const std::size_t count = xs.size() - std::size_t(m);
  std::size_t a = 0, b = 0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (cheb(xs, i, j, m) < r) {
        ++b;
        if (std::abs(xs[i + std::size_t(m)] - xs[j + std::size_t(m)]) < r) ++a;
      }
    }
  }
  if (b == 0) throw ContractError("sample_entropy: insufficient matches (B = 0)");
  if (a == 0) throw ContractError("sample_entropy: insufficient matches (A = 0)");
  return -std::log(double(a) / double(b));
}

double fuzzy_entropy(std::span<const double> xs, int m, double r, int n_grad) {
  check_series(xs, m, r);
  if (n_grad < 1) throw ContractError("fuzzy_entropy: gradient must be >= 1");

  auto phi = [&](int dim) {
    const std::size_t count = xs.size() - std::size_t(m);  // aligned with m+1
    std::vector<double> centered(count * std::size_t(dim));
    for (std::size_t i = 0; i < count; ++i) {
      double mean = 0.0;
      for (int t = 0; t < dim; ++t) mean += xs[i + std::size_t(t)];
      mean /= double(dim);
      for (int t = 0; t < dim; ++t)
        centered[i * std::size_t(dim) + std::size_t(t)] =
            xs[i + std::size_t(t)] - mean;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        double d = 0.0;
        for (int t = 0; t < dim; ++t)
          d = std::max(d, std::abs(centered[i * std::size_t(dim) + std::size_t(t)] -
                                   centered[j * std::size_t(dim) + std::size_t(t)]));
        acc += std::exp(-std::pow(d, double(n_grad)) / r);
      }
    }
    const double pairs = double(count) * double(count - 1) / 2.0;
    return acc / pairs;
  };
  return std::log(phi(m)) - std::log(phi(m + 1));
}

double permutation_entropy(std::span<const double> xs, int order) {
  if (order < 2 || order > 7)
    throw ContractError("permutation_entropy: order must lie in [2, 7]");
  if (xs.size() < std::size_t(order) + 1)
    throw ContractError("permutation_entropy: series shorter than order + 1");

  const std::size_t windows = xs.size() - std::size_t(order) + 1;
  std::unordered_map<std::size_t, std::size_t> freq;
  std::vector<int> perm(std::size_t(order), 0);
  for (std::size_t w = 0; w < windows; ++w) {
    for (int t = 0; t < order; ++t) perm[std::size_t(t)] = t;
    // Ties resolved by index order via stable sort on values only.
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
      return xs[w + std::size_t(a)] < xs[w + std::size_t(b)];
    });
    std::size_t code = 0;
    for (int t = 0; t < order; ++t)
      code = code * std::size_t(order) + std::size_t(perm[std::size_t(t)]);
    ++freq[code];
  }
  double h = 0.0;
  for (const auto& [code, c] : freq) {
    const double p = double(c) / double(windows);
    h -= p * std::log(p);
  }
  return std::max(h, 0.0);
}

double conditional_entropy(const std::vector<std::vector<std::size_t>>& joint) {
  double total = 0.0;
  for (const auto& row : joint)
    for (std::size_t c : row) total += double(c);
  if (!(total > 0.0)) throw ContractError("conditional_entropy: empty table");

  double h = 0.0;
  for (const auto& row : joint) {
    double row_sum = 0.0;
    for (std::size_t c : row) row_sum += double(c);
    if (row_sum == 0.0) continue;
    for (std::size_t c : row) {
      if (c == 0) continue;
      const double pxy = double(c) / total;
      h += pxy * std::log(row_sum / double(c));
    }
  }
  return std::max(h, 0.0);
}

CceResult corrected_conditional_entropy(std::span<const double> xs, int bins,
                                        int l_max) {
  if (bins < 2) throw ContractError("corrected_conditional_entropy: bins must be >= 2");
  if (l_max < 2) throw ContractError("corrected_conditional_entropy: l_max must be >= 2");
  if (xs.size() < std::size_t(l_max) * std::size_t(bins))
    throw ContractError("corrected_conditional_entropy: series too short");

  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const double lo = *lo_it, range = *hi_it - *lo_it;
  std::vector<char> sym(xs.size(), 0);
  if (range > 0.0) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      auto b = int(std::floor((xs[i] - lo) / range * double(bins)));
      sym[i] = char(std::min(b, bins - 1));
    }
  }

  // Shannon entropy (nats) of overlapping L-words and the singleton fraction.
  auto word_stats = [&](int len) {
    const std::size_t words = xs.size() - std::size_t(len) + 1;
    std::unordered_map<std::string, std::size_t> freq;
    std::string key(std::size_t(len), 0);
    for (std::size_t w = 0; w < words; ++w) {
      key.assign(sym.begin() + long(w), sym.begin() + long(w) + len);
      ++freq[key];
    }
    double h = 0.0;
    std::size_t singles = 0;
    for (const auto& [k, c] : freq) {
      const double p = double(c) / double(words);
      h -= p * std::log(p);
      if (c == 1) ++singles;
    }
    return std::pair<double, double>{std::max(h, 0.0),
                                     double(singles) / double(words)};
  };

  CceResult out;
  const double e1 = word_stats(1).first;
  double prev_e = 0.0;
  for (int len = 1; len <= l_max; ++len) {
    const auto [e, perc] = word_stats(len);
    const double cce = (e - prev_e) + perc * e1;
    out.profile.push_back(cce);
    if (len == 1 || cce < out.min_cce) {
      out.min_cce = cce;
      out.best_length = len;
    }
    prev_e = e;
  }
  return out;
}

}  // namespace polyct
