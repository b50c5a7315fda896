#pragma once

#include <string>
#include <string_view>

#include "ptbilayer/constants.hpp"
#include "ptbilayer/scattering.hpp"

namespace ptbilayer {

/// Squeezed coherent state incident from the left; vacuum on the right.
/// Defaults: xi = 0.2, w = 25, squeeze phase offset of 5 rad against the LO,
/// and 2 phi_rho - phi_xi = pi.
struct SqueezedCoherentInput {
  double xi = 0.2;
  double phi_xi = -5.0;
  double coherent_weight = 25.0;  // w = 2 sigma_H sqrt(pi) |rho|^2
  double phi_rho = (constants::kPi - 5.0) / 2.0;

  void validate() const;
};

struct HomodyneConfig {
  double phi_lo = 0.0;
  double omega_lo = 0.0;  // rad/s; informational, the caller evaluates s at it
};

/// 1 + 2 flux + T (2 sinh^2 xi - cos(2 phi_LO - 2 phi_t - phi_xi) sinh 2 xi).
/// The reflected term carries the right-side vacuum and vanishes.
double homodyne_variance(const ScatteringAmplitudes& s, double flux_right,
                         const SqueezedCoherentInput& in, const HomodyneConfig& h);

/// Which noise-photon number enters the Mandel numerator.
///  kFluxConsistent  the noise flux itself
///  kAsPrinted       1 - R_R - T, the closed form quoted with the result
enum class MandelForm { kFluxConsistent, kAsPrinted };

MandelForm parse_mandel_form(std::string_view name);  // "flux" | "printed"
std::string to_string(MandelForm form);

/// Normalized Mandel parameter Q/Q0 of the transmitted light. Throws
/// DegenerateDenominator when T (sinh^2 xi + w) + flux <= 0.
double mandel_q(const ScatteringAmplitudes& s, double flux_right, const SqueezedCoherentInput& in,
                MandelForm form = MandelForm::kFluxConsistent);

struct InputReference {
  double variance_in = 1.0;
  double q_in = 0.0;
};

/// Both observables through the identity channel (T = 1, R = 0, no noise).
InputReference input_reference(const SqueezedCoherentInput& in, const HomodyneConfig& h);

}  // namespace ptbilayer
