#include "ptbilayer/media.hpp"

#include <algorithm>
#include <cmath>

#include "ptbilayer/errors.hpp"
#include "ptbilayer/roots.hpp"

namespace ptbilayer {

namespace {

// |omega^2 - omega0^2 + i omega gamma|^2
double lorentz_denominator_sq(double omega, double omega0, double gamma) {
  const double detuning = omega * omega - omega0 * omega0;
  return detuning * detuning + gamma * gamma * omega * omega;
}

constexpr double kSet1Alpha = 2.0;  // nominal; set 1 balances for every alpha_l
constexpr double kSet2ReferenceAlpha = 2.0;

LorentzMedium table_gain(PresetId) {
  return {2.0, 0.0, units::trad_to_rad(1000.0), units::trad_to_rad(67.0)};
}

LorentzMedium table_loss(PresetId id) {
  if (id == PresetId::kSet1) return {2.0, 0.0, units::trad_to_rad(1000.0), units::trad_to_rad(67.0)};
  return {3.22, 0.0, units::trad_to_rad(1200.0), units::trad_to_rad(140.0)};
}

}  // namespace

void LorentzMedium::validate() const {
  if (!(omega0 > 0.0) || !(gamma > 0.0)) {
    throw InvalidArgument("Lorentz medium needs omega0 > 0 and gamma > 0");
  }
  if (!std::isfinite(eps_b) || !std::isfinite(alpha)) {
    throw InvalidArgument("Lorentz medium parameters must be finite");
  }
}

void Bilayer::validate() const {
  gain.validate();
  loss.validate();
  if (!(layer_thickness > 0.0)) throw InvalidArgument("layer thickness must be positive");
  if (gain.alpha > 0.0) throw InvalidArgument("gain layer needs alpha <= 0");
  if (loss.alpha < 0.0) throw InvalidArgument("loss layer needs alpha >= 0");
}

double Bilayer::interface_position(int j) const {
  switch (j) {
    case 1: return -layer_thickness;
    case 2: return 0.0;
    case 3: return layer_thickness;
    default: throw InvalidArgument("interface index must be 1, 2 or 3");
  }
}

ComplexPermittivity permittivity(const LorentzMedium& m, double omega) {
  const cplx denominator{omega * omega - m.omega0 * m.omega0, omega * m.gamma};
  return {m.eps_b - m.alpha * m.omega0 * m.gamma / denominator};
}

RefractiveIndex refractive_index(ComplexPermittivity eps) {
  if (eps.value == cplx{0.0, 0.0}) throw InvalidArgument("refractive index of zero permittivity");
  if (!std::isfinite(eps.value.real()) || !std::isfinite(eps.value.imag())) {
    throw InvalidArgument("permittivity must be finite");
  }
  // std::sqrt uses the principal branch, Re >= 0. A negative real eps with a
  // -0 imaginary part would land on -i|n|; fold it back onto +i|n|.
  cplx n = std::sqrt(eps.value);
  if (n.real() == 0.0 && n.imag() < 0.0 && eps.value.imag() == 0.0) n = -n;
  return {n};
}

double pt_balanced_gain(const LorentzMedium& loss, const LorentzMedium& gain_template,
                        double omega) {
  const double numerator = loss.omega0 * loss.gamma * loss.gamma *
                           lorentz_denominator_sq(omega, gain_template.omega0, gain_template.gamma);
  const double denominator = gain_template.omega0 * gain_template.gamma * gain_template.gamma *
                             lorentz_denominator_sq(omega, loss.omega0, loss.gamma);
  return loss.alpha * numerator / denominator;
}

double pt_delta_epsilon(const LorentzMedium& loss, const LorentzMedium& gain_template,
                        double omega) {
  const double w2 = omega * omega;
  const double bracket = w2 - loss.omega0 * loss.omega0 +
                         (loss.gamma / gain_template.gamma) * (w2 - gain_template.omega0 * gain_template.omega0);
  return loss.alpha * loss.omega0 * loss.gamma * bracket /
         lorentz_denominator_sq(omega, loss.omega0, loss.gamma);
}

double pt_frequency_closed_form(const LorentzMedium& loss, const LorentzMedium& gain_template) {
  const double gl = loss.gamma;
  const double gg = gain_template.gamma;
  return std::sqrt((loss.omega0 * loss.omega0 * gg + gain_template.omega0 * gain_template.omega0 * gl) /
                   (gg + gl));
}

std::vector<double> pt_frequency(const LorentzMedium& loss, const LorentzMedium& gain_template,
                                 double delta_eps, RootSearch search) {
  loss.validate();
  gain_template.validate();
  if (delta_eps == 0.0 && search == RootSearch::kAuto) {
    return {pt_frequency_closed_form(loss, gain_template)};
  }
  const double top = std::max(loss.omega0, gain_template.omega0);
  const std::vector<double> grid = logspace(0.01 * top, 100.0 * top, 2048);
  auto residual = [&](double omega) {
    // (A2) scaled so that alpha_l = 0 still has the closed-form root.
    if (loss.alpha == 0.0) {
      LorentzMedium unit = loss;
      unit.alpha = 1.0;
      return pt_delta_epsilon(unit, gain_template, omega) - delta_eps;
    }
    return pt_delta_epsilon(loss, gain_template, omega) - delta_eps;
  };
  return find_roots(residual, grid, 1e-12);
}

bool verify_pt(const Bilayer& bilayer, double omega, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("verify_pt needs tol > 0");
  const cplx eg = permittivity(bilayer.gain, omega).value;
  const cplx el = permittivity(bilayer.loss, omega).value;
  return std::abs(eg.real() - el.real()) <= tol && std::abs(eg.imag() + el.imag()) <= tol;
}

// ---------------------------------------------------------------------------

PresetId parse_preset(std::string_view name) {
  if (name == "set1") return PresetId::kSet1;
  if (name == "set2") return PresetId::kSet2;
  throw InvalidArgument("unknown preset '" + std::string(name) + "' (expected set1 or set2)");
}

std::string to_string(PresetId id) { return id == PresetId::kSet1 ? "set1" : "set2"; }

GainLaw parse_gain_law(std::string_view name) {
  if (name == "mirror") return GainLaw::kMirror;
  if (name == "fixed") return GainLaw::kFixed;
  if (name == "balanced") return GainLaw::kBalanced;
  throw InvalidArgument("unknown gain law '" + std::string(name) + "'");
}

std::string to_string(GainLaw law) {
  switch (law) {
    case GainLaw::kMirror: return "mirror";
    case GainLaw::kFixed: return "fixed";
    case GainLaw::kBalanced: return "balanced";
  }
  return "fixed";
}

Bilayer BilayerFamily::at(double alpha_l) const {
  if (alpha_l < 0.0) throw InvalidArgument("alpha_l must be >= 0");
  Bilayer b{gain, loss, layer_thickness};
  b.loss.alpha = alpha_l;
  switch (gain_law) {
    case GainLaw::kMirror: b.gain.alpha = -alpha_l; break;
    case GainLaw::kFixed: break;
    case GainLaw::kBalanced: b.gain.alpha = -pt_balanced_gain(b.loss, gain, balance_omega); break;
  }
  return b;
}

PtSolution preset_pt_solution(PresetId id) {
  const LorentzMedium gain = table_gain(id);
  LorentzMedium loss = table_loss(id);
  PtSolution out;
  out.delta_eps = loss.eps_b - gain.eps_b;
  out.reference_alpha_l = id == PresetId::kSet1 ? kSet1Alpha : kSet2ReferenceAlpha;
  loss.alpha = out.reference_alpha_l;
  out.all_roots = pt_frequency(loss, gain, out.delta_eps);
  if (out.all_roots.empty()) throw Error("preset has no balance frequency");
  out.omega_pt = out.all_roots.back();
  out.gain_alpha_abs = pt_balanced_gain(loss, gain, out.omega_pt);
  return out;
}

BilayerFamily preset_family(PresetId id) {
  const PtSolution pt = preset_pt_solution(id);
  BilayerFamily family;
  family.gain = table_gain(id);
  family.loss = table_loss(id);
  family.layer_thickness = units::nm_to_m(10.0);
  family.reference_omega = pt.omega_pt;
  family.frequency_unit = family.gain.omega0;
  family.balance_omega = pt.omega_pt;
  if (id == PresetId::kSet1) {
    family.gain_law = GainLaw::kMirror;
  } else {
    // The gain layer is fixed at its alpha_l = 2 balance; sweeping alpha_l
    // varies the loss layer only.
    family.gain_law = GainLaw::kFixed;
    family.gain.alpha = -pt.gain_alpha_abs;
  }
  return family;
}

Bilayer preset(PresetId id, double alpha_l) { return preset_family(id).at(alpha_l); }

}  // namespace ptbilayer
