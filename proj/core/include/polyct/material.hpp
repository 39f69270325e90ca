#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace polyct {

enum class Material : std::uint8_t { air = 0, water, lung, rib_bone, skull };

inline constexpr int kMaterialCount = 5;

const char* material_name(Material m);
Material material_from_name(const std::string& name);

// Mass attenuation table: (energy keV, mu/rho cm^2/g) samples, strictly
// increasing in energy, positive values. density in g/cm^3.
struct MaterialTable {
  std::string name;
  double density = 0.0;
  std::vector<std::pair<double, double>> samples;

  void validate() const;
};

// Bundled water mass attenuation (NIST/ICRU tabulation, 10-150 keV).
const MaterialTable& water_table();

// Phantom material tables. Tissues are density-scaled water: they share the
// water sample list and differ only in density (air has density 0).
const MaterialTable& material_table(Material m);

// log-log interpolated mass attenuation (cm^2/g). energy_kev must lie inside
// [10, 150] and inside the table's sampled range; there is no extrapolation.
double mass_attenuation(const MaterialTable& table, double energy_kev);

// mu (1/cm) = mass_attenuation(E) * density
double linear_attenuation(const MaterialTable& table, double energy_kev);

// Emission spectrum as (energy keV, flux) bins. Flux is non-negative, zero
// below 10 keV, and sums to 1 once normalized.
struct Spectrum {
  std::vector<std::pair<double, double>> bins;

  void validate() const;
  double total_flux() const;
};

// Bremsstrahlung-shaped tube spectrum: flux ~ (kvp - E)/E for 10 <= E <= kvp,
// evaluated on grid_kev (each entry within [10, kvp]) and normalized to unit
// total flux. Default tube setting is 140 kVp.
Spectrum kramers_spectrum(double kvp, const std::vector<double>& grid_kev);

// {lo, lo+1, ..., hi} as doubles.
std::vector<double> integer_grid(double lo_kev, double hi_kev);

// Sum of flux over bins with lo <= E <= hi.
double flux_in_interval(const Spectrum& s, double lo_kev, double hi_kev);

}  // namespace polyct
