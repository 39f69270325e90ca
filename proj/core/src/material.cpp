#include "polyct/material.hpp"

#include <cmath>
#include <sstream>

#include "polyct/error.hpp"

namespace polyct {

const char* material_name(Material m) {
  switch (m) {
    case Material::air: return "air";
    case Material::water: return "water";
    case Material::lung: return "lung";
    case Material::rib_bone: return "rib_bone";
    case Material::skull: return "skull";
  }
  throw ContractError("unknown material id");
}

Material material_from_name(const std::string& name) {
  if (name == "air") return Material::air;
  if (name == "water") return Material::water;
  if (name == "lung") return Material::lung;
  if (name == "rib_bone") return Material::rib_bone;
  if (name == "skull") return Material::skull;
  throw ParseError("unknown material name: " + name);
}

void MaterialTable::validate() const {
  if (name.empty()) throw ContractError("material table has no name");
  if (!(density >= 0.0) || !std::isfinite(density))
    throw ContractError("material density must be finite and >= 0");
  if (samples.empty())
    throw ContractError("material table '" + name + "' has no samples");
  double prev = 0.0;
  for (const auto& [e, mu] : samples) {
    if (!std::isfinite(e) || !std::isfinite(mu))
      throw ContractError("material table '" + name + "' has non-finite samples");
    if (e <= prev)
      throw ContractError("material table '" + name +
                          "' energies must be strictly increasing");
    if (mu <= 0.0)
      throw ContractError("material table '" + name +
                          "' attenuation values must be positive");
    prev = e;
  }
}

namespace {

// Water mass attenuation mu/rho (cm^2/g) vs energy (keV), NIST/ICRU
// tabulation over the diagnostic range.
MaterialTable make_water() {
  MaterialTable t;
  t.name = "water";
  t.density = 1.0;
  t.samples = {
      {10.0, 5.329},  {15.0, 1.673},  {20.0, 0.8096}, {30.0, 0.3756},
      {40.0, 0.2683}, {50.0, 0.2269}, {60.0, 0.2059}, {80.0, 0.1837},
      {100.0, 0.1707}, {150.0, 0.1505},
  };
  t.validate();
  return t;
}

MaterialTable scaled_water(const char* name, double density) {
  MaterialTable t = water_table();
  t.name = name;
  t.density = density;
  return t;
}

}  // namespace

const MaterialTable& water_table() {
  static const MaterialTable t = make_water();
  return t;
}

const MaterialTable& material_table(Material m) {
  static const MaterialTable air = scaled_water("air", 0.0);
  static const MaterialTable lung = scaled_water("lung", 0.26);
  static const MaterialTable rib = scaled_water("rib_bone", 1.92);
  static const MaterialTable skull = scaled_water("skull", 1.61);
  switch (m) {
    case Material::air: return air;
    case Material::water: return water_table();
    case Material::lung: return lung;
    case Material::rib_bone: return rib;
    case Material::skull: return skull;
  }
  throw ContractError("unknown material id");
}

double mass_attenuation(const MaterialTable& table, double energy_kev) {
  table.validate();
  if (!(energy_kev >= 10.0 && energy_kev <= 150.0)) {
    std::ostringstream os;
    os << "energy " << energy_kev << " keV outside supported range [10, 150]";
    throw ContractError(os.str());
  }
  const auto& s = table.samples;
  if (energy_kev < s.front().first || energy_kev > s.back().first) {
    std::ostringstream os;
    os << "energy " << energy_kev << " keV outside table '" << table.name
       << "' range [" << s.front().first << ", " << s.back().first << "]";
    throw ContractError(os.str());
  }
  // Exact hits short-circuit so tabulated anchors come back verbatim.
  std::size_t hi = 1;
  while (hi < s.size() && s[hi].first < energy_kev) ++hi;
  if (energy_kev == s[hi - 1].first) return s[hi - 1].second;
  if (hi < s.size() && energy_kev == s[hi].first) return s[hi].second;
  const auto& [e0, m0] = s[hi - 1];
  const auto& [e1, m1] = s[hi];
  const double t = (std::log(energy_kev) - std::log(e0)) / (std::log(e1) - std::log(e0));
  return std::exp(std::log(m0) + t * (std::log(m1) - std::log(m0)));
}

double linear_attenuation(const MaterialTable& table, double energy_kev) {
  if (table.density == 0.0) {
    table.validate();  // still reject malformed tables and bad energies
    if (!(energy_kev >= 10.0 && energy_kev <= 150.0))
      throw ContractError("energy outside supported range [10, 150]");
    return 0.0;
  }
  return mass_attenuation(table, energy_kev) * table.density;
}

void Spectrum::validate() const {
  if (bins.empty()) throw ContractError("spectrum has no bins");
  for (const auto& [e, f] : bins) {
    if (!std::isfinite(e) || !std::isfinite(f))
      throw ContractError("spectrum has non-finite bins");
    if (f < 0.0) throw ContractError("spectrum flux must be non-negative");
    if (e < 10.0 && f != 0.0)
      throw ContractError("spectrum flux must vanish below 10 keV");
  }
}

double Spectrum::total_flux() const {
  double sum = 0.0;
  for (const auto& [e, f] : bins) sum += f;
  return sum;
}

Spectrum kramers_spectrum(double kvp, const std::vector<double>& grid_kev) {
  if (!(kvp > 10.0)) throw ContractError("kvp must exceed 10 keV");
  if (grid_kev.empty()) throw ContractError("kramers_spectrum: empty energy grid");
  Spectrum s;
  s.bins.reserve(grid_kev.size());
  double total = 0.0;
  for (double e : grid_kev) {
    if (!(e >= 10.0 && e <= kvp))
      throw ContractError("kramers_spectrum: grid energy outside [10, kvp]");
    const double f = (kvp - e) / e;
    total += f;
    s.bins.emplace_back(e, f);
  }
  if (total <= 0.0)
    throw ContractError("kramers_spectrum: spectrum has zero total flux");
  for (auto& [e, f] : s.bins) f /= total;
  s.validate();
  return s;
}

std::vector<double> integer_grid(double lo_kev, double hi_kev) {
  if (!(lo_kev <= hi_kev)) throw ContractError("integer_grid: lo > hi");
  std::vector<double> g;
  for (double e = std::ceil(lo_kev); e <= hi_kev; e += 1.0) g.push_back(e);
  if (g.empty()) throw ContractError("integer_grid: empty grid");
  return g;
}

double flux_in_interval(const Spectrum& s, double lo_kev, double hi_kev) {
  if (!(lo_kev <= hi_kev)) throw ContractError("flux_in_interval: lo > hi");
  double sum = 0.0;
  for (const auto& [e, f] : s.bins)
    if (e >= lo_kev && e <= hi_kev) sum += f;
  return sum;
}

}  // namespace polyct
