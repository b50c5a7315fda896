#include "ptbilayer/effective.hpp"

#include <cmath>
#include <limits>

#include "ptbilayer/errors.hpp"
#include "ptbilayer/noise.hpp"

namespace ptbilayer {

EffectiveIndex bloch_index(RefractiveIndex n_g, RefractiveIndex n_l, double omega, double l) {
  if (!(l > 0.0)) throw InvalidArgument("layer thickness must be positive");
  const cplx ng = n_g.value;
  const cplx nl = n_l.value;
  if (ng == 0.0 || nl == 0.0) throw InvalidArgument("Bloch index needs nonzero layer indices");
  const double kl = vacuum_wavenumber(omega) * l;
  EffectiveIndex out;
  cplx rhs = std::cos(ng * kl) * std::cos(nl * kl) -
             0.5 * (ng / nl + nl / ng) * std::sin(ng * kl) * std::sin(nl * kl);
  out.branch.rhs = rhs;
  if (std::abs(rhs.imag()) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(rhs))) {
    rhs = {rhs.real(), 0.0};
    out.branch.snapped_real = true;
  }
  cplx n = std::acos(rhs) / (2.0 * kl);
  if (n.real() < 0.0) {
    n = -n;
    out.branch.negated = true;
  }
  out.n_eff = n;
  out.branch.bloch_phase = std::abs(2.0 * n * kl);
  if (out.branch.bloch_phase > constants::kPi / 2.0) {
    throw BranchAmbiguity("Bloch phase " + std::to_string(out.branch.bloch_phase) +
                          " is outside the long-wavelength window");
  }
  return out;
}

ScatteringAmplitudes effective_amplitudes(const EffectiveIndex& eff, double omega, double l) {
  const cplx n = eff.n_eff;
  const double k = vacuum_wavenumber(omega);
  const cplx i{0.0, 1.0};
  const cplx e = std::exp(4.0 * i * k * n * l);
  const cplx den = (n + 1.0) * (n + 1.0) - (n - 1.0) * (n - 1.0) * e;
  if (std::abs(den) < 1e-12) throw LasingPole("effective slab sits on a lasing pole");
  ScatteringAmplitudes s;
  s.r_l = std::exp(-2.0 * i * k * l) * (n * n - 1.0) * (e - 1.0) / den;
  s.r_r = s.r_l;
  s.t = 4.0 * n * std::exp(2.0 * i * k * (n - 1.0) * l) / den;
  return s;
}

RoundTrip round_trip(const EffectiveIndex& eff, double omega, double l) {
  const cplx n = eff.n_eff;
  if (n == cplx{-1.0, 0.0}) throw InvalidArgument("round trip undefined for n_eff = -1");
  const cplx ratio = (n - 1.0) / (n + 1.0);
  const cplx i{0.0, 1.0};
  return {ratio * ratio * std::exp(4.0 * i * vacuum_wavenumber(omega) * n * l)};
}

namespace {

// integral of exp(2 a z) over [-l, l], a real
double exp_integral(double a, double l) {
  const double x = 2.0 * a * l;
  if (std::abs(x) < 1e-8) return 2.0 * l * (1.0 + x * x / 6.0);
  return std::sinh(x) / a;
}

// integral of cos(2 b z) over [-l, l]
double cos_integral(double b, double l) {
  const double x = 2.0 * b * l;
  if (std::abs(x) < 1e-8) return 2.0 * l * (1.0 - x * x / 6.0);
  return std::sin(x) / b;
}

}  // namespace

EffectiveNoise effective_noise(RefractiveIndex n_g, RefractiveIndex n_l, const EffectiveIndex& n_eff,
                               const ScatteringAmplitudes& s, double omega, double theta_kelvin,
                               double l) {
  const double k = vacuum_wavenumber(omega);
  const cplx n = n_eff.n_eff;
  const cplx i{0.0, 1.0};
  // Field inside the slab, E = A e^{inkz} + B e^{-inkz}, matched to t e^{ikz} at z = l.
  const cplx a = s.t * std::exp(i * k * l) * std::exp(-i * n * k * l) * (1.0 + 1.0 / n) / 2.0;
  const cplx b = s.t * std::exp(i * k * l) * std::exp(i * n * k * l) * (1.0 - 1.0 / n) / 2.0;
  const double np = n.real();
  const double npp = n.imag();
  // |E|^2 = |A|^2 e^{-2n''kz} + |B|^2 e^{2n''kz} + 2 Re(A B^* e^{2in'kz})
  const double integral = std::norm(a) * exp_integral(-npp * k, l) + std::norm(b) * exp_integral(npp * k, l) +
                          2.0 * (a * std::conj(b)).real() * cos_integral(np * k, l);

  EffectiveNoise out;
  const double n_th = thermal_occupation(omega, theta_kelvin);
  const double im_g = (n_g.value * n_g.value).imag();
  const double im_l = (n_l.value * n_l.value).imag();
  out.source_strength = 0.5 * (std::abs(im_g) + std::abs(im_l)) * (2.0 * n_th + 1.0);
  out.im_n_eff_sq = (n * n).imag();
  out.field_integral = k * integral;
  out.deficit = 1.0 - std::norm(s.t) - std::norm(s.r_r);
  out.flux = 0.5 * out.field_integral * (out.source_strength - out.im_n_eff_sq);
  out.n_eff_distribution = out.im_n_eff_sq == 0.0
                               ? std::numeric_limits<double>::infinity()
                               : -0.5 + 0.5 * out.source_strength / std::abs(out.im_n_eff_sq);
  return out;
}

double effective_flux_direct(const EffectiveNoise& noise) {
  if (noise.im_n_eff_sq == 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (noise.im_n_eff_sq > 0.0) return noise.deficit * noise.n_eff_distribution;
  return -noise.deficit * (noise.n_eff_distribution + 1.0);
}

}  // namespace ptbilayer
