#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "polyct/material.hpp"
#include "polyct/nbfit.hpp"

namespace polyct {

struct EnergyInterval {
  double lo_kev = 0.0;
  double hi_kev = 0.0;
  std::optional<double> effective_energy_kev;
  std::optional<double> mu_w;      // water mu at the effective energy (1/cm)
  std::optional<double> weight_q;  // normalized flux weight

  void validate() const;
};

struct IntervalSet {
  std::vector<EnergyInterval> intervals;

  void validate() const;
  // Sum of assigned weights (throws if none assigned).
  double total_weight() const;
};

// The 13 acquisition energy intervals of the quantization stage.
IntervalSet default_intervals();

// Figure-style set: the 13 intervals with the two overlapping pairs merged
// ((60,72)+(68,80) -> (60,80), (81,95)+(88,100) -> (81,100)), carrying the 11
// bypass effective energies.
IntervalSet paper_interval_set();

// {15, 25, 35, 45, 55, 65, 70, 85, 95, 100, 135} keV.
std::vector<double> paper_effective_energies();

// Index pairs (i, j), i < j, of overlapping intervals.
std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs(
    const IntervalSet& set);

// Overlapping pairs whose shared region contains energy_kev.
std::vector<std::pair<std::size_t, std::size_t>> overlapping_pairs_at(
    const IntervalSet& set, double energy_kev);

// Sink for effective-energy overflow warnings. Defaults to stderr; pass
// nullptr to silence. Returns the previous sink.
std::ostream* set_warning_stream(std::ostream* os);

// floor((hi - lo) * mean * 10) + lo, in keV. Emits a warning through the
// warning stream whenever the result exceeds hi.
double effective_energy(double lo_kev, double hi_kev, double mean);

// q_i = flux(lo_i..hi_i) / sum_j flux(lo_j..hi_j). Errors when every interval
// receives zero flux. Weights sum to 1 afterwards.
void assign_weights(IntervalSet& set, const Spectrum& spectrum);

// Fill mu_w from the water table at each interval's effective energy.
void resolve_water_mu(IntervalSet& set);

struct EndpointFit {
  double mean = 0.0;  // fitted NB mean, before any rescaling
  double r = 0.0;
  double p = 0.0;
  double ks = 0.0;  // KS statistic of the endpoints against the fit
};

// Fit a negative binomial to the set's interval endpoints (shifted down by the
// minimum endpoint; endpoints must be integers) and derive each interval's
// effective energy via effective_energy(lo, hi, fitted_mean * mean_scale).
// mean_scale = 1 applies the fitted mean verbatim, which overflows keV-scale
// intervals and trips the overflow warning; callers wanting in-range energies
// rescale the mean into [0, 0.1] (see auto_mean_scale).
EndpointFit fit_effective_energies(IntervalSet& set, double mean_scale = 1.0);

// 1 / (10 * (max_endpoint - min_endpoint)): maps the fitted mean of the
// shifted endpoints into [0, 0.1] so derived energies land inside their
// intervals.
double auto_mean_scale(const IntervalSet& set);

}  // namespace polyct
