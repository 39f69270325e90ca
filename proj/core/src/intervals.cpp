#include "polyct/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <iostream>

#include "polyct/error.hpp"

namespace polyct {

namespace {

std::ostream* g_warn = &std::cerr;

IntervalSet from_bounds(std::initializer_list<std::pair<double, double>> bounds) {
  IntervalSet set;
  for (const auto& [lo, hi] : bounds) {
    EnergyInterval iv;
    iv.lo_kev = lo;
    iv.hi_kev = hi;
    set.intervals.push_back(iv);
  }
  set.validate();
  return set;
}

}  // namespace

void EnergyInterval::validate() const {
  if (!(lo_kev < hi_kev))
    throw ContractError("energy interval must satisfy lo < hi");
  if (!(lo_kev >= 10.0))
    throw ContractError("energy interval lower bound must be >= 10 keV");
  if (mu_w && !(*mu_w > 0.0))
    throw ContractError("interval water attenuation must be positive");
  if (weight_q && !(*weight_q >= 0.0 && *weight_q <= 1.0))
    throw ContractError("interval weight must lie in [0, 1]");
}

void IntervalSet::validate() const {
  if (intervals.empty()) throw ContractError("interval set is empty");
  for (const auto& iv : intervals) iv.validate();
}

double IntervalSet::total_weight() const {
  double sum = 0.0;
  for (const auto& iv : intervals) {
    if (!iv.weight_q) throw ContractError("interval weights not assigned");
    sum += *iv.weight_q;
  }
  return sum;
}

IntervalSet default_intervals() {
  return from_bounds({{12, 17},
                      {18, 27},
                      {28, 37},
                      {38, 47},
                      {48, 57},
                      {58, 67},
                      {60, 72},
                      {68, 80},
                      {78, 87},
                      {81, 95},
                      {88, 100},
                      {98, 105},
                      {130, 150}});
}

std::vector<double> paper_effective_energies() {
  return {15, 25, 35, 45, 55, 65, 70, 85, 95, 100, 135};
}

IntervalSet paper_interval_set() {
  IntervalSet set = from_bounds({{12, 17},
                                 {18, 27},
                                 {28, 37},
                                 {38, 47},
                                 {48, 57},
                                 {58, 67},
                                 {60, 80},    // (60,72) + (68,80)
                                 {78, 87},
                                 {81, 100},   // (81,95) + (88,100)
                                 {98, 105},
                                 {130, 150}});
  const auto energies = paper_effective_energies();
  if (energies.size() != set.intervals.size())
    throw ContractError("bypass energies do not match merged interval count");
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (energies[i] < set.intervals[i].lo_kev ||
        energies[i] > set.intervals[i].hi_kev)
      throw ContractError("bypass energy falls outside its interval");
    set.intervals[i].effective_energy_kev = energies[i];
  }
  set.validate();
  return set;
}

std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(
    const IntervalSet& set) {
  set.validate();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < set.intervals.size(); ++i)
    for (std::size_t j = i + 1; j < set.intervals.size(); ++j) {
      const auto& a = set.intervals[i];
      const auto& b = set.intervals[j];
      if (a.lo_kev <= b.hi_kev && b.lo_kev <= a.hi_kev) pairs.emplace_back(i, j);
    }
  return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs_at(
    const IntervalSet& set, double energy_kev) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [i, j] : overlapping_pairs(set)) {
    const double lo = std::max(set.intervals[i].lo_kev, set.intervals[j].lo_kev);
    const double hi = std::min(set.intervals[i].hi_kev, set.intervals[j].hi_kev);
    if (energy_kev >= lo && energy_kev <= hi) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::ostream* set_warning_stream(std::ostream* os) {
  std::ostream* prev = g_warn;
  g_warn = os;
  return prev;
}

double effective_energy(double lo_kev, double hi_kev, double mean) {
  if (!(lo_kev < hi_kev)) throw ContractError("effective_energy: lo >= hi");
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw ContractError("effective_energy: mean must be finite and >= 0");
  const double value = std::floor((hi_kev - lo_kev) * mean * 10.0) + lo_kev;
  if (value > hi_kev && g_warn)
    *g_warn << "warning: effective energy " << value
            << " keV exceeds interval upper bound " << hi_kev << " keV\n";
  return value;
}

void assign_weights(IntervalSet& set, const Spectrum& spectrum) {
  set.validate();
  spectrum.validate();
  std::vector<double> flux(set.intervals.size());
  double total = 0.0;
  for (std::size_t i = 0; i < set.intervals.size(); ++i) {
    flux[i] =
        flux_in_interval(spectrum, set.intervals[i].lo_kev, set.intervals[i].hi_kev);
    total += flux[i];
  }
  if (!(total > 0.0))
    throw ContractError("assign_weights: every interval receives zero flux");
  for (std::size_t i = 0; i < set.intervals.size(); ++i)
    set.intervals[i].weight_q = flux[i] / total;
}

void resolve_water_mu(IntervalSet& set) {
  set.validate();
  for (auto& iv : set.intervals) {
    if (!iv.effective_energy_kev)
      throw ContractError("resolve_water_mu: interval has no effective energy");
    iv.mu_w = linear_attenuation(water_table(), *iv.effective_energy_kev);
  }
}

namespace {

std::vector<long long> integer_endpoints(const IntervalSet& set) {
  std::vector<long long> eps;
  for (const auto& iv : set.intervals) {
    for (double v : {iv.lo_kev, iv.hi_kev}) {
      const double r = std::round(v);
      if (std::abs(v - r) > 1e-9)
        throw ContractError("endpoint fit requires integer interval bounds");
      eps.push_back((long long)(r));
    }
  }
  return eps;
}

}  // namespace

double auto_mean_scale(const IntervalSet& set) {
  const auto eps = integer_endpoints(set);
  const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
  if (*hi == *lo) throw ContractError("auto_mean_scale: degenerate endpoints");
  return 1.0 / (10.0 * double(*hi - *lo));
}

EndpointFit fit_effective_energies(IntervalSet& set, double mean_scale) {
  if (!(mean_scale > 0.0))
    throw ContractError("fit_effective_energies: mean_scale must be positive");
  auto eps = integer_endpoints(set);
  const long long shift = *std::min_element(eps.begin(), eps.end());
  for (auto& e : eps) e -= shift;

  const NegBinomialFit fit = fit_negative_binomial(eps);
  const double scaled = fit.mean * mean_scale;
  for (auto& iv : set.intervals)
    iv.effective_energy_kev = effective_energy(iv.lo_kev, iv.hi_kev, scaled);

  std::vector<double> as_double(eps.begin(), eps.end());
  EndpointFit out;
  out.mean = fit.mean;
  out.r = fit.r;
  out.p = fit.p;
  out.ks = ks_statistic(as_double, [&](double k) { return nb_cdf(fit, k); });
  return out;
}

}  // namespace polyct
