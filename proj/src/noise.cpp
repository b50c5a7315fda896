#include "ptbilayer/noise.hpp"

#include <algorithm>
#include <cmath>

#include "ptbilayer/errors.hpp"

namespace ptbilayer {

double thermal_occupation(double omega, double theta_kelvin) {
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
  if (theta_kelvin < 0.0) throw InvalidArgument("temperature must be >= 0");
  if (theta_kelvin == 0.0) return 0.0;
  const double x = constants::kHbar * omega / (constants::kBoltzmann * theta_kelvin);
  return 1.0 / std::expm1(x);
}

CommutatorCoefficients c_commutator_coefficients(RefractiveIndex n, double omega, double l) {
  if (!(l > 0.0)) throw InvalidArgument("layer thickness must be positive");
  const double kl = vacuum_wavenumber(omega) * l;
  const double x = n.imag() * kl;
  const double y = n.real() * kl;
  CommutatorCoefficients c;
  c.same_side_right = 2.0 * std::exp(-x) * std::sinh(x);
  c.same_side_left = 2.0 * std::exp(x) * std::sinh(x);
  if (n.imag() != 0.0) {
    c.cross = -2.0 * (n.imag() / n.real()) * std::polar(1.0, y) * std::sin(y);
  }
  return c;
}

namespace {

// Quadratic form sum_ab row_a row_b^* K_ab.
double quadratic(cplx r1, cplx r2, const ComplexMatrix2& k) {
  const cplx v = r1 * std::conj(r1) * k.m11 + r1 * std::conj(r2) * k.m12 +
                 r2 * std::conj(r1) * k.m21 + r2 * std::conj(r2) * k.m22;
  return v.real();
}

LayerNoise layer_noise(const ComplexMatrix2& a, const ComplexMatrix2& b, RefractiveIndex n,
                       double omega, double l, double z_right, TransferMode mode,
                       bool amplifying) {
  LayerNoise out;
  out.amplifying = amplifying;
  out.d = {-b.m21 / a.m22, -b.m22 / a.m22, (b.m11 * a.m22 - a.m12 * b.m21) / a.m22,
           (b.m12 * a.m22 - a.m12 * b.m22) / a.m22};

  // The source enters the local basis as sigma_a (i sqrt(n')/n) c_a, sigma
  // carrying the sqrt(n) normalization and the n' phase at the right face.
  const double kz = vacuum_wavenumber(omega) * z_right;
  const cplx root = mode == TransferMode::kFullComplex ? std::sqrt(n.value) : cplx{std::sqrt(n.real())};
  const cplx s1 = root * std::polar(1.0, -n.real() * kz);
  const cplx s2 = root * std::polar(1.0, n.real() * kz);
  const double n_abs_sq = std::norm(n.value);

  const CommutatorCoefficients c = c_commutator_coefficients(n, omega, l);
  const double scale = n.real() / n_abs_sq;
  const double kl = vacuum_wavenumber(omega) * l;
  // Cross entry written without the 1/n' of the bare commutator.
  const cplx cross = -2.0 * n.imag() / n_abs_sq * std::polar(1.0, n.real() * kl) * std::sin(n.real() * kl);
  out.kernel.m11 = scale * std::norm(s1) * c.same_side_right;
  out.kernel.m22 = scale * std::norm(s2) * c.same_side_left;
  out.kernel.m12 = s1 * std::conj(s2) * cross;
  out.kernel.m21 = std::conj(out.kernel.m12);

  out.commutator_left = quadratic(out.d.m11, out.d.m12, out.kernel);
  out.commutator_right = quadratic(out.d.m21, out.d.m22, out.kernel);
  return out;
}

}  // namespace

NoiseCoupling noise_couplings(const Bilayer& bilayer, double omega, TransferMode mode) {
  const TransferFactors f = transfer_factors(bilayer, omega, mode);
  const ComplexMatrix2 a = f.product();
  NoiseCoupling out;
  out.amplitudes = scattering_from_transfer(a);
  const RefractiveIndex ng = refractive_index(bilayer.gain, omega);
  const RefractiveIndex nl = refractive_index(bilayer.loss, omega);
  const double l = bilayer.layer_thickness;
  out.gain = layer_noise(a, f.t3 * f.r3 * f.t2, ng, omega, l, bilayer.interface_position(2), mode,
                         permittivity(bilayer.gain, omega).value.imag() < 0.0);
  out.loss = layer_noise(a, f.t3, nl, omega, l, bilayer.interface_position(3), mode,
                         permittivity(bilayer.loss, omega).value.imag() < 0.0);
  return out;
}

double sum_rule_tolerance(const NoiseCoupling& coupling) {
  const ScatteringAmplitudes& s = coupling.amplitudes;
  const double size = s.transmittance() + std::max(s.reflectance_left(), s.reflectance_right()) +
                      std::abs(coupling.gain.commutator_right) + std::abs(coupling.gain.commutator_left) +
                      std::abs(coupling.loss.commutator_right) + std::abs(coupling.loss.commutator_left);
  return 1e-10 * std::max(1.0, size);
}

NoiseFluxDensity noise_flux(const NoiseCoupling& coupling, double omega, double theta_kelvin,
                            bool check_sum_rule) {
  const double n_th = thermal_occupation(omega, theta_kelvin);
  const ScatteringAmplitudes& s = coupling.amplitudes;
  NoiseFluxDensity out;
  for (const LayerNoise* layer : {&coupling.gain, &coupling.loss}) {
    const double weight = layer->amplifying ? n_th + 1.0 : n_th;
    out.s_right += std::abs(layer->commutator_right) * weight;
    out.s_left += std::abs(layer->commutator_left) * weight;
  }
  out.sum_rule_right = s.transmittance() + s.reflectance_right() + coupling.gain.commutator_right +
                       coupling.loss.commutator_right - 1.0;
  out.sum_rule_left = s.transmittance() + s.reflectance_left() + coupling.gain.commutator_left +
                      coupling.loss.commutator_left - 1.0;
  if (check_sum_rule) {
    const double tol = sum_rule_tolerance(coupling);
    if (std::abs(out.sum_rule_right) > tol || std::abs(out.sum_rule_left) > tol) {
      throw ConsistencyError("commutator sum rule violated: right residual " +
                             std::to_string(out.sum_rule_right) + ", left residual " +
                             std::to_string(out.sum_rule_left));
    }
  }
  return out;
}

NoiseFluxDensity noise_flux(const Bilayer& bilayer, double omega, double theta_kelvin,
                            TransferMode mode, bool check_sum_rule) {
  return noise_flux(noise_couplings(bilayer, omega, mode), omega, theta_kelvin,
                    check_sum_rule && mode == TransferMode::kFullComplex);
}

UnitarityDeficit unitarity_deficit(const ScatteringAmplitudes& s) {
  return {1.0 - s.reflectance_left() - s.transmittance(),
          1.0 - s.reflectance_right() - s.transmittance()};
}

}  // namespace ptbilayer
