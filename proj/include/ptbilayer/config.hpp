#pragma once

#include <string>

#include "ptbilayer/sweep.hpp"

namespace ptbilayer {

/// Parse a JSON run description. Recognised keys:
///   preset ("set1" | "set2") or materials {gain: {...}, loss: {...}} (or a
///   two-element array gain, loss) with eps_b, alpha, omega0_trad, gamma_trad;
///   gain_law, thickness_nm, theory, mode, mandel_form, threads,
///   sweep {variable, start, stop, count, spacing},
///   fixed {omega_trad | omega_ratio, alpha_l, temperature_k},
///   input_state {xi, phi_xi, w, phi_rho, phi_lo}, observables [...].
/// Unknown keys and malformed values throw ConfigError.
SweepSpec parse_config(const std::string& json_text);

/// parse_config on the contents of `path`.
SweepSpec load_config(const std::string& path);

/// Bilayer family for user-supplied media. The reference frequency is the
/// upper balance frequency for the given background offset when one exists,
/// otherwise the gain resonance.
Context custom_context(const LorentzMedium& gain, const LorentzMedium& loss, double thickness_m,
                       GainLaw law);

}  // namespace ptbilayer
