#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ptbilayer/matrix2.hpp"
#include "ptbilayer/media.hpp"

namespace ptbilayer {

/// How the interface matrices treat the complex refractive index.
///  kFullComplex   complex n in the amplitude factors, n' in the phases (exact)
///  kPaperRealPart only n' anywhere in the interface matrices
enum class TransferMode { kFullComplex, kPaperRealPart };

TransferMode parse_transfer_mode(std::string_view name);  // "full-complex" | "paper"
std::string to_string(TransferMode mode);

/// Interface matrix between region `n_from` (left) and `n_to` (right) at z_j.
/// Throws InvalidArgument when either index has zero real part.
ComplexMatrix2 interface_matrix(RefractiveIndex n_from, RefractiveIndex n_to, double omega,
                                double z_j, TransferMode mode = TransferMode::kFullComplex);

/// diag(exp(-n'' omega l / c), exp(+n'' omega l / c))
ComplexMatrix2 propagation_matrix(RefractiveIndex n, double omega, double l);

/// The five factors of the chain, in the order they are applied.
struct TransferFactors {
  ComplexMatrix2 t1, r2, t2, r3, t3;

  ComplexMatrix2 product() const { return t3 * r3 * t2 * r2 * t1; }
};

TransferFactors transfer_factors(const Bilayer& bilayer, double omega,
                                 TransferMode mode = TransferMode::kFullComplex);

ComplexMatrix2 transfer_chain(const Bilayer& bilayer, double omega,
                              TransferMode mode = TransferMode::kFullComplex);

struct ScatteringAmplitudes {
  cplx t{1.0};
  cplx r_l{0.0};
  cplx r_r{0.0};

  double transmittance() const { return std::norm(t); }
  double reflectance_left() const { return std::norm(r_l); }
  double reflectance_right() const { return std::norm(r_r); }
  double phase_t() const { return std::arg(t); }
  double phase_left() const { return std::arg(r_l); }
  double phase_right() const { return std::arg(r_r); }

  /// (r_L, t; t, r_R)
  ComplexMatrix2 matrix() const { return {r_l, t, t, r_r}; }
};

/// r_L = -A21/A22, t = 1/A22, r_R = A12/A22. Also forms t = det A / A22 and
/// throws ConsistencyError when the two disagree beyond 1e-8 relative.
/// Throws SingularTransfer when |A22| < 1e-300.
ScatteringAmplitudes scattering_from_transfer(const ComplexMatrix2& a);

inline ScatteringAmplitudes scatter(const Bilayer& bilayer, double omega,
                                    TransferMode mode = TransferMode::kFullComplex) {
  return scattering_from_transfer(transfer_chain(bilayer, omega, mode));
}

struct EigenPair {
  cplx lambda1;
  cplx lambda2;
};

/// Eigenvalues of the scattering matrix, descending modulus, ties by ascending arg.
EigenPair eigenvalues(const ScatteringAmplitudes& s);

/// Same roots from the transfer-matrix entries directly.
EigenPair eigenvalues_from_transfer(const ComplexMatrix2& a);

enum class PhaseTag { kExact, kBroken, kExceptional, kUnbalanced };

std::string to_string(PhaseTag tag);

struct PhaseClass {
  PhaseTag tag = PhaseTag::kExact;
  double unimodularity_residual = 0.0;  // max ||lambda_i| - 1|
  double product_residual = 0.0;        // ||lambda1 lambda2| - 1|
};

/// Coalescence is tested first, then unimodularity, then inverse moduli.
/// kUnbalanced means none of the three holds; with `require_pt` that case
/// throws ConsistencyError instead.
PhaseClass classify_phase(const EigenPair& e, double tol = 1e-4, bool require_pt = false);

/// Principal value in (-pi, pi].
double wrap_phase(double angle);

struct ConservationResiduals {
  double generalized = 0.0;     // ||T - 1| - sqrt(R_L R_R)|
  std::optional<double> phase;  // empty when a needed amplitude is below 1e-14
};

ConservationResiduals conservation_residuals(const ScatteringAmplitudes& s);

}  // namespace ptbilayer
