#pragma once

#include <functional>
#include <vector>

namespace polyct {

// Negative binomial with pmf P(X=k) = C(k+r-1, k) (1-p)^r p^k,
// mean = p r / (1 - p).
struct NegBinomialFit {
  double r = 0.0;
  double p = 0.0;
  double mean = 0.0;  // equals the sample mean by the profile construction
  double log_likelihood = 0.0;
};

// Profile-likelihood MLE over non-negative integer samples: p(r) is closed
// form, r solves d(logL)/dr = 0 (converged when |gradient| < 1e-8). Requires
// n >= 2 and sample variance > sample mean.
NegBinomialFit fit_negative_binomial(const std::vector<long long>& samples);

double nb_mean(const NegBinomialFit& f);

// P(X <= k).
double nb_cdf(const NegBinomialFit& f, double k);

// Two-sided Kolmogorov-Smirnov statistic against an arbitrary CDF:
// D = max_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|) over the sorted samples.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

double digamma(double x);

}  // namespace polyct
