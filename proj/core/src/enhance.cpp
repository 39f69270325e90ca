#include "polyct/enhance.hpp"

#include <cmath>

#include "polyct/error.hpp"

namespace polyct {

ImageGrid hounsfield(const ImageGrid& pam, double mu_w) {
  pam.validate();
  if (pam.semantics != ValueSemantics::linear_attenuation_per_cm)
    throw ContractError("hounsfield expects a linear-attenuation image");
  if (!(mu_w > 0.0) || !std::isfinite(mu_w))
    throw ContractError("hounsfield: mu_w must be positive and finite");
  ImageGrid out = pam;
  out.semantics = ValueSemantics::hounsfield;
  for (double& v : out.data) v = (v - mu_w) / mu_w * 1000.0;
  return out;
}

ImageGrid weight_hu(const ImageGrid& hu, double q) {
  hu.validate();
  if (hu.semantics != ValueSemantics::hounsfield)
    throw ContractError("weight_hu expects a Hounsfield image");
  if (!(q >= 0.0 && q <= 1.0))
    throw ContractError("weight_hu: weight must lie in [0, 1]");
  ImageGrid out = hu;
  out.semantics = ValueSemantics::weighted_hounsfield;
  for (double& v : out.data) v *= q;
  return out;
}

void EnhancedStack::validate() const {
  conventional.validate();
  if (conventional.semantics != ValueSemantics::hounsfield)
    throw ContractError("enhanced stack: conventional image must be HU");
  if (!(reference_mu_w > 0.0))
    throw ContractError("enhanced stack: reference mu_w must be positive");
  for (const auto& e : images) {
    e.interval.validate();
    e.hu.validate();
    e.weighted.validate();
    if (e.hu.width != conventional.width || e.hu.height != conventional.height ||
        e.weighted.width != conventional.width ||
        e.weighted.height != conventional.height)
      throw ContractError("enhanced stack: image dimensions differ");
    if (e.hu.semantics != ValueSemantics::hounsfield ||
        e.weighted.semantics != ValueSemantics::weighted_hounsfield)
      throw ContractError("enhanced stack: wrong image semantics");
  }
}

EnhancedStack enhance_pipeline(const ImageGrid& pam, IntervalSet set,
                               const Spectrum& spectrum,
                               double reference_energy_kev) {
  pam.validate();
  if (pam.semantics != ValueSemantics::linear_attenuation_per_cm)
    throw ContractError("enhance_pipeline expects a linear-attenuation image");
  assign_weights(set, spectrum);
  resolve_water_mu(set);

  EnhancedStack stack;
  stack.reference_energy_kev = reference_energy_kev;
  stack.reference_mu_w = linear_attenuation(water_table(), reference_energy_kev);
  stack.conventional = hounsfield(pam, stack.reference_mu_w);

  for (const auto& iv : set.intervals) {
    EnhancedImage e;
    e.interval = iv;
    e.hu = hounsfield(pam, *iv.mu_w);
    e.weighted = weight_hu(e.hu, *iv.weight_q);
    stack.images.push_back(std::move(e));
  }
  stack.validate();
  return stack;
}

}  // namespace polyct
