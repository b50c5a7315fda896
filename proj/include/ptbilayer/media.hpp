#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ptbilayer/constants.hpp"

namespace ptbilayer {

/// One-resonance Lorentz medium. alpha > 0 absorbs, alpha < 0 amplifies.
/// Frequencies in rad/s.
struct LorentzMedium {
  double eps_b = 1.0;
  double alpha = 0.0;
  double omega0 = 1.0;
  double gamma = 1.0;

  /// Throws InvalidArgument unless omega0 > 0 and gamma > 0.
  void validate() const;
};

/// vacuum | gain on [-l, 0] | loss on [0, l] | vacuum
struct Bilayer {
  LorentzMedium gain;
  LorentzMedium loss;
  double layer_thickness = 10e-9;  // m

  void validate() const;

  double interface_position(int j) const;  // z_1 = -l, z_2 = 0, z_3 = +l
};

struct ComplexPermittivity {
  cplx value;
};

/// Complex refractive index on the Re n >= 0 branch.
struct RefractiveIndex {
  cplx value;

  double real() const { return value.real(); }
  double imag() const { return value.imag(); }
};

ComplexPermittivity permittivity(const LorentzMedium& m, double omega);

/// Principal square root; Re n >= 0. Throws InvalidArgument for eps == 0.
RefractiveIndex refractive_index(ComplexPermittivity eps);

inline RefractiveIndex refractive_index(const LorentzMedium& m, double omega) {
  return refractive_index(permittivity(m, omega));
}

/// |alpha_g| that balances the imaginary parts of the two permittivities at
/// omega. Only the resonance and linewidth of `gain_template` are read.
double pt_balanced_gain(const LorentzMedium& loss, const LorentzMedium& gain_template,
                        double omega);

/// Background offset eps_bl - eps_bg needed to balance the real parts at
/// omega once the imaginary parts are balanced.
double pt_delta_epsilon(const LorentzMedium& loss, const LorentzMedium& gain_template,
                        double omega);

/// Closed-form balance frequency for zero background offset.
double pt_frequency_closed_form(const LorentzMedium& loss, const LorentzMedium& gain_template);

enum class RootSearch { kAuto, kScan };

/// Positive frequencies where pt_delta_epsilon equals delta_eps, ascending.
/// delta_eps == 0 uses the closed form unless kScan is requested. The scan
/// covers [0.01, 100] * max(omega0) on 2048 log-spaced points.
std::vector<double> pt_frequency(const LorentzMedium& loss, const LorentzMedium& gain_template,
                                 double delta_eps, RootSearch search = RootSearch::kAuto);

/// True iff both balance conditions hold to `tol` at omega.
bool verify_pt(const Bilayer& bilayer, double omega, double tol);

// ---------------------------------------------------------------------------
// Presets

enum class PresetId { kSet1, kSet2 };

PresetId parse_preset(std::string_view name);  // "set1" | "set2"
std::string to_string(PresetId id);

/// How the gain coefficient follows the loss coefficient in a sweep.
enum class GainLaw {
  kMirror,    // |alpha_g| = alpha_l
  kFixed,     // alpha_g stays at its configured value
  kBalanced,  // |alpha_g| = pt_balanced_gain(loss, gain, balance_omega)
};

GainLaw parse_gain_law(std::string_view name);  // "mirror" | "fixed" | "balanced"
std::string to_string(GainLaw law);

/// A bilayer parametrised by the loss coefficient.
struct BilayerFamily {
  LorentzMedium gain;  // alpha used only under GainLaw::kFixed
  LorentzMedium loss;  // alpha ignored; supplied by at()
  double layer_thickness = 10e-9;
  GainLaw gain_law = GainLaw::kFixed;
  double balance_omega = 0.0;  // used by GainLaw::kBalanced
  double reference_omega = 0.0;  // natural operating frequency (rad/s)
  double frequency_unit = 0.0;   // omega_0g; sweeps in omega/omega_0g use it

  Bilayer at(double alpha_l) const;
};

/// Balance data of a preset at its reference loss coefficient.
struct PtSolution {
  double omega_pt = 0.0;        // rad/s
  double gain_alpha_abs = 0.0;  // |alpha_g|
  double delta_eps = 0.0;       // eps_bl - eps_bg
  double reference_alpha_l = 0.0;
  std::vector<double> all_roots;  // every balance frequency found, rad/s
};

/// Balance frequency and gain for a preset. Set 1 balances at omega_0g for
/// any alpha_l; Set 2 uses the upper root of the background-offset condition
/// at alpha_l = 2.
PtSolution preset_pt_solution(PresetId id);

BilayerFamily preset_family(PresetId id);

/// Table bilayer at the given loss coefficient, 10 nm layers.
Bilayer preset(PresetId id, double alpha_l);

}  // namespace ptbilayer
