#include "polyct/nbfit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polyct/error.hpp"

namespace polyct {

double digamma(double x) {
  if (!(x > 0.0)) throw ContractError("digamma requires x > 0");
  double acc = 0.0;
  while (x < 6.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double f = 1.0 / (x * x);
  return acc + std::log(x) - 0.5 / x -
         f * (1.0 / 12 - f * (1.0 / 120 - f * (1.0 / 252 - f * (1.0 / 240 - f / 132))));
}

namespace {

struct Counts {
  std::map<long long, std::size_t> hist;
  double n = 0.0;
  double mean = 0.0;
};

Counts summarize(const std::vector<long long>& samples) {
  if (samples.size() < 2)
    throw ContractError("negative binomial fit needs at least 2 samples");
  Counts c;
  double sum = 0.0, ss = 0.0;
  for (long long v : samples) {
    if (v < 0) throw ContractError("negative binomial samples must be >= 0");
    ++c.hist[v];
    sum += double(v);
  }
  c.n = double(samples.size());
  c.mean = sum / c.n;
  for (long long v : samples) ss += (double(v) - c.mean) * (double(v) - c.mean);
  const double var = ss / (c.n - 1.0);
  if (!(var > c.mean))
    throw ContractError(
        "negative binomial fit requires sample variance > sample mean "
        "(overdispersion)");
  return c;
}

// Profile log-likelihood gradient in r with p(r) = mean / (r + mean).
double profile_gradient(const Counts& c, double r) {
  double g = 0.0;
  for (const auto& [k, cnt] : c.hist) g += double(cnt) * digamma(double(k) + r);
  g -= c.n * digamma(r);
  g += c.n * std::log(r / (r + c.mean));
  return g;
}

double profile_loglik(const Counts& c, double r) {
  const double m = c.mean;
  double ll = 0.0;
  for (const auto& [k, cnt] : c.hist)
    ll += double(cnt) *
          (std::lgamma(double(k) + r) - std::lgamma(r) - std::lgamma(double(k) + 1.0));
  ll += c.n * r * std::log(r / (r + m));
  ll += c.n * m * std::log(m / (r + m));
  return ll;
}

}  // namespace

NegBinomialFit fit_negative_binomial(const std::vector<long long>& samples) {
  const Counts c = summarize(samples);

  // Method-of-moments start, then bracket the root of the profile gradient.
  double ss = 0.0;
  for (const auto& [k, cnt] : c.hist)
    ss += double(cnt) * (double(k) - c.mean) * (double(k) - c.mean);
  const double var = ss / (c.n - 1.0);
  double r = std::max(c.mean * c.mean / (var - c.mean), 1e-6);

  double lo = r, hi = r;
  // g -> +inf as r -> 0+, g < 0 past the root for overdispersed data.
  while (profile_gradient(c, lo) < 0.0 && lo > 1e-12) lo /= 2.0;
  while (profile_gradient(c, hi) > 0.0 && hi < 1e12) hi *= 2.0;
  if (!(lo < hi))
    throw ContractError("negative binomial fit failed to bracket the optimum");

  double g_mid = 0.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    g_mid = profile_gradient(c, mid);
    if (std::abs(g_mid) < 1e-8 || (hi - lo) < 1e-15 * mid) {
      lo = hi = mid;
      break;
    }
    if (g_mid > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  r = 0.5 * (lo + hi);

  NegBinomialFit fit;
  fit.r = r;
  fit.mean = c.mean;
  fit.p = c.mean / (r + c.mean);
  fit.log_likelihood = profile_loglik(c, r);
  return fit;
}

double nb_mean(const NegBinomialFit& f) {
  if (!(f.p > 0.0 && f.p < 1.0) || !(f.r > 0.0))
    throw ContractError("nb_mean: invalid fit parameters");
  return f.p * f.r / (1.0 - f.p);
}

double nb_cdf(const NegBinomialFit& f, double k) {
  if (k < 0.0) return 0.0;
  const long long kk = (long long)(std::floor(k));
  const double log_1mp = std::log(1.0 - f.p);
  const double log_p = std::log(f.p);
  const double lg_r = std::lgamma(f.r);
  double acc = 0.0;
  for (long long i = 0; i <= kk; ++i) {
    const double lp = std::lgamma(double(i) + f.r) - lg_r -
                      std::lgamma(double(i) + 1.0) + f.r * log_1mp +
                      double(i) * log_p;
    acc += std::exp(lp);
  }
  return std::min(acc, 1.0);
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw ContractError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = double(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    if (!(F >= 0.0 && F <= 1.0))
      throw ContractError("ks_statistic: CDF returned a value outside [0, 1]");
    d = std::max(d, std::abs(double(i + 1) / n - F));
    d = std::max(d, std::abs(double(i) / n - F));
  }
  return d;
}

}  // namespace polyct
