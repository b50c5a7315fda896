#pragma once

#include "ptbilayer/media.hpp"
#include "ptbilayer/scattering.hpp"

namespace ptbilayer {

/// Record of how the arccos branch was taken.
struct BranchInfo {
  cplx rhs{1.0};              // cos(2 n_eff k l) as evaluated from the layers
  bool snapped_real = false;  // roundoff imaginary part of rhs was dropped
  bool negated = false;       // result flipped to Re n_eff >= 0
  double bloch_phase = 0.0;   // |2 n_eff k l|
};

struct EffectiveIndex {
  cplx n_eff{1.0};
  BranchInfo branch;
};

/// Long-wavelength Bloch index of the gain/loss period:
///   cos(2 n_eff k l) = cos(n_g k l) cos(n_l k l) - (n_g/n_l + n_l/n_g) sin(n_g k l) sin(n_l k l) / 2
/// Principal arccos. A real right-hand side (up to roundoff) is taken with a +0
/// imaginary part, so above 1 the index is -i acosh(rhs) / (2 k l). Throws
/// BranchAmbiguity when |2 n_eff k l| > pi/2.
EffectiveIndex bloch_index(RefractiveIndex n_g, RefractiveIndex n_l, double omega, double l);

/// Amplitudes of a homogeneous slab of index n_eff on [-l, l]; r_L = r_R.
/// Throws LasingPole when |(n+1)^2 - (n-1)^2 exp(4 i k n l)| < 1e-12.
ScatteringAmplitudes effective_amplitudes(const EffectiveIndex& n, double omega, double l);

struct RoundTrip {
  cplx eta{0.0};

  bool linear() const { return std::abs(eta) < 1.0; }
  /// |eta| = 1 and arg eta = 0, both to `tol`.
  bool pole(double tol = 1e-9) const {
    return std::abs(std::abs(eta) - 1.0) <= tol && std::abs(std::arg(eta)) <= tol;
  }
};

/// eta = ((n-1)/(n+1))^2 exp(4 i k n l). Throws InvalidArgument for n = -1.
RoundTrip round_trip(const EffectiveIndex& n, double omega, double l);

struct EffectiveNoise {
  double n_eff_distribution = 0.0;  // +inf when Im n_eff^2 = 0
  double flux = 0.0;                // per side
  double deficit = 0.0;             // 1 - |r|^2 - |t|^2
  double field_integral = 0.0;      // k * integral of |E|^2 over the slab
  double im_n_eff_sq = 0.0;
  double source_strength = 0.0;     // sum_j p_j |Im n_j^2| (2 N_th + 1)
};

/// Effective noise photon distribution and flux, p_g = p_l = 1/2. The flux is
/// evaluated as (k I / 2) [sum_j p_j |Im n_j^2| (2 N_th + 1) - Im n_eff^2]
/// with I the field intensity integral, finite at exact balance.
EffectiveNoise effective_noise(RefractiveIndex n_g, RefractiveIndex n_l, const EffectiveIndex& n_eff,
                               const ScatteringAmplitudes& s, double omega, double theta_kelvin,
                               double l);

/// Flux written through the deficit and N_eff with the step-function selection
/// on sign(Im n_eff^2). Undefined (NaN) when Im n_eff^2 = 0.
double effective_flux_direct(const EffectiveNoise& noise);

}  // namespace ptbilayer
