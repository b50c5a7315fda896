#include "ptbilayer/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "ptbilayer/errors.hpp"

namespace ptbilayer {

TransferMode parse_transfer_mode(std::string_view name) {
  if (name == "full-complex" || name == "full_complex") return TransferMode::kFullComplex;
  if (name == "paper" || name == "paper_real_part") return TransferMode::kPaperRealPart;
  throw InvalidArgument("unknown transfer mode '" + std::string(name) + "'");
}

std::string to_string(TransferMode mode) {
  return mode == TransferMode::kFullComplex ? "full-complex" : "paper";
}

ComplexMatrix2 interface_matrix(RefractiveIndex n_from, RefractiveIndex n_to, double omega,
                                double z_j, TransferMode mode) {
  const double a = n_from.real();
  const double b = n_to.real();
  if (a == 0.0 || b == 0.0) throw InvalidArgument("interface index with zero real part");
  cplx nj = n_from.value;
  cplx nk = n_to.value;
  if (mode == TransferMode::kPaperRealPart) {
    nj = a;
    nk = b;
  }
  const double kz = vacuum_wavenumber(omega) * z_j;
  const cplx prefactor = std::sqrt(nj) / std::sqrt(nk);
  const cplx same = prefactor * (nk + nj) / (2.0 * nj);
  const cplx flip = prefactor * (nk - nj) / (2.0 * nj);
  const cplx i{0.0, 1.0};
  return {same * std::exp(i * (a - b) * kz), flip * std::exp(-i * (a + b) * kz),
          flip * std::exp(i * (a + b) * kz), same * std::exp(-i * (a - b) * kz)};
}

ComplexMatrix2 propagation_matrix(RefractiveIndex n, double omega, double l) {
  if (!(l > 0.0)) throw InvalidArgument("propagation length must be positive");
  const double x = n.imag() * vacuum_wavenumber(omega) * l;
  return ComplexMatrix2::diagonal(std::exp(-x), std::exp(x));
}

TransferFactors transfer_factors(const Bilayer& bilayer, double omega, TransferMode mode) {
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
  const RefractiveIndex vacuum{cplx{1.0, 0.0}};
  const RefractiveIndex ng = refractive_index(bilayer.gain, omega);
  const RefractiveIndex nl = refractive_index(bilayer.loss, omega);
  const double l = bilayer.layer_thickness;
  return {interface_matrix(vacuum, ng, omega, bilayer.interface_position(1), mode),
          propagation_matrix(ng, omega, l),
          interface_matrix(ng, nl, omega, bilayer.interface_position(2), mode),
          propagation_matrix(nl, omega, l),
          interface_matrix(nl, vacuum, omega, bilayer.interface_position(3), mode)};
}

ComplexMatrix2 transfer_chain(const Bilayer& bilayer, double omega, TransferMode mode) {
  return transfer_factors(bilayer, omega, mode).product();
}

ScatteringAmplitudes scattering_from_transfer(const ComplexMatrix2& a) {
  if (!a.is_finite()) throw SingularTransfer("transfer matrix is not finite");
  if (std::abs(a.m22) < 1e-300) throw SingularTransfer("A22 vanishes: lasing pole");
  ScatteringAmplitudes s;
  s.r_l = -a.m21 / a.m22;
  s.r_r = a.m12 / a.m22;
  s.t = 1.0 / a.m22;
  const cplx t_det = a.determinant() / a.m22;
  if (std::abs(t_det - s.t) > 1e-8 * std::abs(s.t)) {
    throw ConsistencyError("transmission from det A disagrees with 1/A22");
  }
  return s;
}

namespace {

EigenPair ordered(cplx a, cplx b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  // Unimodular pairs differ in modulus only by rounding; order those by arg.
  bool swap = mb > ma;
  if (std::abs(ma - mb) <= 1e-12 * std::max(ma, mb)) swap = std::arg(b) < std::arg(a);
  return swap ? EigenPair{b, a} : EigenPair{a, b};
}

}  // namespace

EigenPair eigenvalues(const ScatteringAmplitudes& s) {
  const auto roots = s.matrix().eigenvalues();
  return ordered(roots[0], roots[1]);
}

EigenPair eigenvalues_from_transfer(const ComplexMatrix2& a) {
  const cplx b = a.m12 - a.m21;
  const cplx disc = std::sqrt(b * b + 4.0 * a.m11 * a.m22);
  return ordered((b + disc) / (2.0 * a.m22), (b - disc) / (2.0 * a.m22));
}

std::string to_string(PhaseTag tag) {
  switch (tag) {
    case PhaseTag::kExact: return "exact";
    case PhaseTag::kBroken: return "broken";
    case PhaseTag::kExceptional: return "exceptional";
    case PhaseTag::kUnbalanced: return "unbalanced";
  }
  return "unbalanced";
}

PhaseClass classify_phase(const EigenPair& e, double tol, bool require_pt) {
  if (!(tol > 0.0)) throw InvalidArgument("classification tolerance must be positive");
  const double m1 = std::abs(e.lambda1);
  const double m2 = std::abs(e.lambda2);
  PhaseClass out;
  out.unimodularity_residual = std::max(std::abs(m1 - 1.0), std::abs(m2 - 1.0));
  out.product_residual = std::abs(m1 * m2 - 1.0);
  if (std::abs(e.lambda1 - e.lambda2) <= tol * (m1 + m2)) {
    out.tag = PhaseTag::kExceptional;
  } else if (out.unimodularity_residual <= tol) {
    out.tag = PhaseTag::kExact;
  } else if (out.product_residual <= tol) {
    out.tag = PhaseTag::kBroken;
  } else {
    out.tag = PhaseTag::kUnbalanced;
    if (require_pt) {
      throw ConsistencyError("eigenvalue moduli are not inverse at a balanced frequency");
    }
  }
  return out;
}

double wrap_phase(double angle) {
  double w = std::remainder(angle, 2.0 * constants::kPi);
  if (w <= -constants::kPi) w += 2.0 * constants::kPi;
  return w;
}

ConservationResiduals conservation_residuals(const ScatteringAmplitudes& s) {
  ConservationResiduals out;
  const double T = s.transmittance();
  out.generalized = std::abs(std::abs(T - 1.0) - std::sqrt(s.reflectance_left() * s.reflectance_right()));
  constexpr double kFloor = 1e-14;
  if (std::abs(s.r_l) < kFloor || std::abs(s.r_r) < kFloor) return out;
  const double pl = s.phase_left();
  const double pr = s.phase_right();
  if (T < 1.0) {
    out.phase = std::abs(wrap_phase(pl - pr));
  } else {
    if (std::abs(s.t) < kFloor) return out;
    out.phase = std::max(std::abs(wrap_phase(pl - pr + constants::kPi)),
                         std::abs(wrap_phase(pl - s.phase_t() + constants::kPi / 2.0)));
  }
  return out;
}

}  // namespace ptbilayer
