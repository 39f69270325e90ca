#include "polyct/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "polyct/error.hpp"

namespace polyct {

std::vector<double> fcm_memberships(std::span<const double> data,
                                    std::span<const double> centers,
                                    double fuzzifier) {
  if (centers.empty()) throw ContractError("fcm_memberships: no centers");
  if (!(fuzzifier > 1.0))
    throw ContractError("fcm_memberships: fuzzifier must exceed 1");
  const std::size_t n = data.size(), c = centers.size();
  const double expo = 2.0 / (fuzzifier - 1.0);

  std::vector<double> w(n * c, 0.0);
  std::vector<double> d(c);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t zero_at = c;
    for (std::size_t j = 0; j < c; ++j) {
      d[j] = std::abs(data[i] - centers[j]);
      if (d[j] == 0.0 && zero_at == c) zero_at = j;
    }
    if (zero_at < c) {
      // Point sits on a center: indicator row (lowest such center).
      w[i * c + zero_at] = 1.0;
      continue;
    }
    for (std::size_t j = 0; j < c; ++j) {
      double denom = 0.0;
      for (std::size_t k = 0; k < c; ++k)
        denom += std::pow(d[j] / d[k], expo);
      w[i * c + j] = 1.0 / denom;
    }
  }
  return w;
}

std::vector<int> defuzzify(const std::vector<double>& memberships, int clusters) {
  if (clusters < 1) throw ContractError("defuzzify: clusters must be >= 1");
  if (memberships.empty() || memberships.size() % std::size_t(clusters) != 0)
    throw ContractError("defuzzify: membership matrix shape mismatch");
  const std::size_t n = memberships.size() / std::size_t(clusters);
  std::vector<int> labels(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    for (int j = 1; j < clusters; ++j)
      if (memberships[i * std::size_t(clusters) + std::size_t(j)] >
          memberships[i * std::size_t(clusters) + std::size_t(best)])
        best = j;  // strict >, so ties keep the lowest index
    labels[i] = best;
  }
  return labels;
}

FcmResult fcm(const ImageGrid& img, const FcmOptions& opt) {
  img.validate();
  const std::size_t c = std::size_t(opt.clusters);
  if (opt.clusters < 2) throw ContractError("fcm: need at least 2 clusters");
  if (!(opt.fuzzifier > 1.0)) throw ContractError("fcm: fuzzifier must exceed 1");
  if (!(opt.tolerance >= 0.0)) throw ContractError("fcm: tolerance must be >= 0");
  if (opt.max_iterations < 1)
    throw ContractError("fcm: max_iterations must be >= 1");
  const std::span<const double> data(img.data);
  const std::size_t n = data.size();
  // n == c is the degenerate fit: one center per value, objective 0.
  if (n < c) throw ContractError("fcm: need at least as many pixels as clusters");
  {
    std::vector<double> distinct(data.begin(), data.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < c)
      throw ContractError("fcm: fewer distinct values than clusters");
  }

  FcmResult res;
  res.centers.assign(c, 0.0);
  res.memberships.assign(n * c, 0.0);

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      const double u = uni(rng) + 1e-12;
      res.memberships[i * c + j] = u;
      row_sum += u;
    }
    for (std::size_t j = 0; j < c; ++j) res.memberships[i * c + j] /= row_sum;
  }

  const double m = opt.fuzzifier;
  std::vector<double> prev_centers(c, 0.0);
  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    for (std::size_t j = 0; j < c; ++j) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double wm = std::pow(res.memberships[i * c + j], m);
        num += wm * data[i];
        den += wm;
      }
      // A cluster every point has left keeps its previous center.
      if (den > 0.0) res.centers[j] = num / den;
    }

    res.memberships = fcm_memberships(data, res.centers, m);

    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        const double d = data[i] - res.centers[j];
        objective += std::pow(res.memberships[i * c + j], m) * d * d;
      }
    res.objective_trace.push_back(objective);
    res.iterations = iter;

    if (iter > 1) {
      double shift = 0.0;
      for (std::size_t j = 0; j < c; ++j)
        shift = std::max(shift, std::abs(res.centers[j] - prev_centers[j]));
      if (shift < opt.tolerance) {
        res.converged = true;
        break;
      }
    }
    prev_centers = res.centers;
  }

  res.labels = defuzzify(res.memberships, opt.clusters);
  return res;
}

}  // namespace polyct
