#include "ptbilayer/observables.hpp"

#include <cmath>

#include "ptbilayer/errors.hpp"

namespace ptbilayer {

void SqueezedCoherentInput::validate() const {
  if (!(xi >= 0.0)) throw InvalidArgument("squeeze strength must be >= 0");
  if (!(coherent_weight >= 0.0)) throw InvalidArgument("coherent weight must be >= 0");
  if (!std::isfinite(phi_xi) || !std::isfinite(phi_rho)) throw InvalidArgument("phases must be finite");
}

double homodyne_variance(const ScatteringAmplitudes& s, double flux_right,
                         const SqueezedCoherentInput& in, const HomodyneConfig& h) {
  const double sh = std::sinh(in.xi);
  const double angle = 2.0 * h.phi_lo - 2.0 * s.phase_t() - in.phi_xi;
  return 1.0 + 2.0 * flux_right +
         s.transmittance() * (2.0 * sh * sh - std::cos(angle) * std::sinh(2.0 * in.xi));
}

MandelForm parse_mandel_form(std::string_view name) {
  if (name == "flux" || name == "flux-consistent") return MandelForm::kFluxConsistent;
  if (name == "printed" || name == "as-printed") return MandelForm::kAsPrinted;
  throw InvalidArgument("unknown Mandel form '" + std::string(name) + "'");
}

std::string to_string(MandelForm form) {
  return form == MandelForm::kFluxConsistent ? "flux" : "printed";
}

double mandel_q(const ScatteringAmplitudes& s, double flux_right, const SqueezedCoherentInput& in,
                MandelForm form) {
  const double T = s.transmittance();
  const double w = in.coherent_weight;
  const double s2 = std::sinh(in.xi) * std::sinh(in.xi);
  const double sinh2 = std::sinh(2.0 * in.xi);
  const double cos_rho = std::cos(2.0 * in.phi_rho - in.phi_xi);
  const double den = T * (s2 + w) + flux_right;
  if (!(den > 0.0)) throw DegenerateDenominator("Mandel denominator vanishes");

  double num = 0.0;
  if (form == MandelForm::kAsPrinted) {
    const double a = 1.0 - s.reflectance_right();
    num = a * a + T * T * (1.0 + s2 * (std::cosh(2.0 * in.xi) - 2.0) + w * (2.0 * s2 + sinh2 * cos_rho - 2.0)) +
          2.0 * T * a * (s2 + w - 1.0);
  } else {
    const double mean_noise = T * s2 + flux_right;  // non-coherent photon number
    num = mean_noise * mean_noise + T * T * s2 * (1.0 + s2) + 2.0 * mean_noise * T * w +
          T * T * w * sinh2 * cos_rho;
  }
  return num / den;
}

InputReference input_reference(const SqueezedCoherentInput& in, const HomodyneConfig& h) {
  const ScatteringAmplitudes identity{};
  return {homodyne_variance(identity, 0.0, in, h), mandel_q(identity, 0.0, in)};
}

}  // namespace ptbilayer
