#pragma once

#include "ptbilayer/matrix2.hpp"
#include "ptbilayer/media.hpp"
#include "ptbilayer/scattering.hpp"

namespace ptbilayer {

/// Bose-Einstein occupation 1/(exp(hbar omega / k_B theta) - 1); exactly 0 at theta = 0.
double thermal_occupation(double omega, double theta_kelvin);

/// Delta-normalized commutators of the layer noise operators c_R, c_L'.
/// With x = n'' omega l / c and y = n' omega l / c:
///   [c_R, c_R^+]  = 2 e^{-x} sinh x
///   [c_L', c_L'^+] = 2 e^{+x} sinh x
///   [c_R, c_L'^+] = -2 (n''/n') e^{iy} sin y
struct CommutatorCoefficients {
  double same_side_right = 0.0;
  double same_side_left = 0.0;
  cplx cross{0.0};
};

CommutatorCoefficients c_commutator_coefficients(RefractiveIndex n, double omega, double l);

/// Noise injected by one layer and how it reaches the two output ports.
struct LayerNoise {
  ComplexMatrix2 d;     // row 1 -> left output, row 2 -> right output
  ComplexMatrix2 kernel;  // commutator matrix of the injected sources, basis-scaled
  double commutator_left = 0.0;   // contribution to [F_L, F_L^+]
  double commutator_right = 0.0;  // contribution to [F_R, F_R^+]
  bool amplifying = false;        // Im eps < 0
};

struct NoiseCoupling {
  LayerNoise gain;
  LayerNoise loss;
  ScatteringAmplitudes amplitudes;
};

/// Coupling matrices from the partial chains B(2) = T3 R3 T2 and B(3) = T3.
NoiseCoupling noise_couplings(const Bilayer& bilayer, double omega,
                              TransferMode mode = TransferMode::kFullComplex);

struct NoiseFluxDensity {
  double s_right = 0.0;
  double s_left = 0.0;
  // |t|^2 + |r|^2 + sum of layer commutators - 1, per side
  double sum_rule_right = 0.0;
  double sum_rule_left = 0.0;
};

/// Absolute tolerance used by the commutator sum-rule check, scaled by the
/// size of the terms being summed.
double sum_rule_tolerance(const NoiseCoupling& coupling);

/// Loss layers are weighted by N_th, gain layers by N_th + 1. With
/// `check_sum_rule` a breach of the commutator sum rule throws
/// ConsistencyError; the check is skipped in paper mode.
NoiseFluxDensity noise_flux(const NoiseCoupling& coupling, double omega, double theta_kelvin,
                            bool check_sum_rule = false);

NoiseFluxDensity noise_flux(const Bilayer& bilayer, double omega, double theta_kelvin,
                            TransferMode mode = TransferMode::kFullComplex,
                            bool check_sum_rule = false);

struct UnitarityDeficit {
  double left = 0.0;   // 1 - |r_L|^2 - |t|^2
  double right = 0.0;  // 1 - |r_R|^2 - |t|^2
};

UnitarityDeficit unitarity_deficit(const ScatteringAmplitudes& s);

}  // namespace ptbilayer
