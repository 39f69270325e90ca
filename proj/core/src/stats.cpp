#include "polyct/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polyct/error.hpp"

namespace polyct {

double sample_mean(std::span<const double> xs) {
  if (xs.empty()) throw ContractError("mean of empty series");
  double sum = 0.0;
  for (double v : xs) sum += v;
  return sum / double(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) throw ContractError("stddev needs at least 2 samples");
  const double m = sample_mean(xs);
  double ss = 0.0;
  for (double v : xs) ss += (v - m) * (v - m);
  return std::sqrt(ss / double(xs.size() - 1));
}

double scott_width(double sigma, std::size_t n) {
  if (!(sigma > 0.0)) throw ContractError("scott_width: sigma must be positive");
  if (n < 2) throw ContractError("scott_width: need at least 2 samples");
  return 3.5 * sigma / std::cbrt(double(n));
}

Histogram scott_histogram(std::span<const double> xs) {
  const double sigma = sample_stddev(xs);
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const double lo = *lo_it, hi = *hi_it;
  // sigma alone is no constant-series test: rounding in the mean can leave it
  // a few ulps above zero while the range is exactly empty.
  if (!(sigma > 0.0) || !(hi > lo))
    throw ContractError("scott_histogram: constant series");
  const double h = scott_width(sigma, xs.size());
  const auto k = std::size_t(std::ceil((hi - lo) / h));

  Histogram out;
  out.edges.resize(k + 1);
  for (std::size_t i = 0; i <= k; ++i) out.edges[i] = lo + double(i) * h;
  out.counts.assign(k, 0);
  for (double v : xs) {
    auto b = std::size_t((v - lo) / h);
    if (b >= k) b = k - 1;  // top edge inclusive
    ++out.counts[b];
  }
  return out;
}

std::size_t scott_bins(std::span<const double> xs) {
  return scott_histogram(xs).counts.size();
}

std::vector<int> scott_bin_indices(std::span<const double> xs) {
  const Histogram hist = scott_histogram(xs);
  const double lo = hist.edges.front();
  const double h = hist.edges[1] - hist.edges[0];
  const auto k = hist.counts.size();
  std::vector<int> idx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto b = std::size_t((xs[i] - lo) / h);
    if (b >= k) b = k - 1;
    idx[i] = int(b);
  }
  return idx;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("pearson: length mismatch");
  if (x.size() < 2) throw ContractError("pearson: need at least 2 samples");
  const double mx = sample_mean(x), my = sample_mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0))
    throw ContractError("pearson: constant input");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> midranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = (double(i) + double(j)) / 2.0 + 1.0;  // 1-based midrank
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("spearman: length mismatch");
  if (x.size() < 3) throw ContractError("spearman: need at least 3 samples");
  const std::vector<double> rx = midranks(x), ry = midranks(y);
  return pearson(rx, ry);
}

std::vector<double> lowess(std::span<const double> x, std::span<const double> y,
                           double frac) {
  const std::size_t n = x.size();
  if (n != y.size()) throw ContractError("lowess: length mismatch");
  if (n < 3) throw ContractError("lowess: need at least 3 points");
  if (!(frac > 0.0 && frac <= 1.0))
    throw ContractError("lowess: frac must lie in (0, 1]");

  const auto r = std::max<std::size_t>(2, std::size_t(std::ceil(frac * double(n))));
  std::vector<double> fit(n);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[j] = std::abs(x[j] - x[i]);
    std::vector<double> d = dist;
    std::nth_element(d.begin(), d.begin() + long(r - 1), d.end());
    const double span_d = d[r - 1];

    if (!(span_d > 0.0)) {
      // All nearest neighbors coincide with x[i]; average their y.
      double sw = 0.0, sy = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (dist[j] == 0.0) { sw += 1.0; sy += y[j]; }
      fit[i] = sy / sw;
      continue;
    }

    double sw = 0.0, swx = 0.0, swy = 0.0;
    std::vector<double> w(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double u = dist[j] / span_d;
      if (u >= 1.0) continue;
      const double t = 1.0 - u * u * u;
      w[j] = t * t * t;
      sw += w[j];
      swx += w[j] * x[j];
      swy += w[j] * y[j];
    }
    const double xb = swx / sw, yb = swy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (w[j] == 0.0) continue;
      sxx += w[j] * (x[j] - xb) * (x[j] - xb);
      sxy += w[j] * (x[j] - xb) * (y[j] - yb);
    }
    const double slope = sxx > 1e-300 ? sxy / sxx : 0.0;
    fit[i] = yb + slope * (x[i] - xb);
  }
  return fit;
}

}  // namespace polyct
