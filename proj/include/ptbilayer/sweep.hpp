#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ptbilayer/effective.hpp"
#include "ptbilayer/media.hpp"
#include "ptbilayer/noise.hpp"
#include "ptbilayer/observables.hpp"
#include "ptbilayer/scattering.hpp"

namespace ptbilayer {

inline constexpr const char* kVersion = "0.1.0";

enum class Theory { kExact, kEffective, kBoth };
enum class SweepVariable { kAlphaL, kOmegaTrad, kOmegaRatio, kTemperature };
enum class Spacing { kLinear, kLog };
enum class Observable { kScattering, kEigenvalues, kNoise, kVariance, kMandel, kEta };

Theory parse_theory(std::string_view name);  // exact | effective | both
std::string to_string(Theory t);
SweepVariable parse_variable(std::string_view name);  // alpha_l | omega_trad | omega_ratio | temperature_k
std::string to_string(SweepVariable v);
Spacing parse_spacing(std::string_view name);  // linear | log
std::string to_string(Spacing s);
Observable parse_observable(std::string_view name);
std::string to_string(Observable o);

/// Everything except the bilayer and operating point that feeds an evaluation.
struct ModelOptions {
  TransferMode mode = TransferMode::kFullComplex;
  MandelForm mandel_form = MandelForm::kFluxConsistent;
  SqueezedCoherentInput input;
  double phi_lo = 0.0;
  bool check_sum_rule = true;  // full-complex mode only
  double phase_tol = 1e-4;
};

struct OperatingPoint {
  double alpha_l = 2.0;
  double omega = 0.0;  // rad/s
  double temperature_k = 0.0;
};

/// A family plus fixed parameters; sweeps and threshold searches vary one
/// coordinate of `fixed`.
struct Context {
  BilayerFamily family;
  std::string source = "set1";  // preset name or "custom"
  OperatingPoint fixed;
  ModelOptions options;

  /// Operating point with `variable` set to x (omega_ratio in units of omega_0g).
  OperatingPoint at(SweepVariable variable, double x) const;
};

/// Preset family at its reference frequency and alpha_l = 2.
Context preset_context(PresetId id);

struct ExactPoint {
  ScatteringAmplitudes s;
  EigenPair eig;
  PhaseClass phase;
  ConservationResiduals conservation;
  NoiseFluxDensity flux;
  UnitarityDeficit deficit;
  double variance = 0.0;
  double mandel = 0.0;
};

struct EffectivePoint {
  EffectiveIndex n;
  ScatteringAmplitudes s;
  RoundTrip eta;
  EffectiveNoise noise;
  double variance = 0.0;
  double mandel = 0.0;
};

ExactPoint evaluate_exact(const Bilayer& b, double omega, double theta, const ModelOptions& o);
EffectivePoint evaluate_effective(const Bilayer& b, double omega, double theta, const ModelOptions& o);

inline ExactPoint evaluate_exact(const Context& c, const OperatingPoint& p) {
  return evaluate_exact(c.family.at(p.alpha_l), p.omega, p.temperature_k, c.options);
}
inline EffectivePoint evaluate_effective(const Context& c, const OperatingPoint& p) {
  return evaluate_effective(c.family.at(p.alpha_l), p.omega, p.temperature_k, c.options);
}

/// Round-trip parameter only (no amplitudes, so no pole check).
RoundTrip evaluate_eta(const Context& c, const OperatingPoint& p);

struct SweepSpec {
  Context context;
  SweepVariable variable = SweepVariable::kAlphaL;
  double start = 1.0;
  double stop = 1000.0;
  int count = 500;
  Spacing spacing = Spacing::kLog;
  Theory theory = Theory::kExact;
  std::vector<Observable> observables{Observable::kScattering};
  int threads = 0;  // 0 = hardware concurrency
  bool reproducible = false;

  /// Throws ConfigError on count < 2, start >= stop or a nonpositive log range.
  void validate() const;
  std::vector<double> grid() const;
  bool wants(Observable o) const;
};

/// Default spacing: log when the range spans at least two decades.
Spacing default_spacing(double start, double stop);

using Cell = std::variant<double, std::string>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t column_index(std::string_view name) const;  // throws InvalidArgument
  std::vector<double> numeric_column(std::string_view name) const;
  std::string status(std::size_t row) const;
};

/// One row per grid point, in grid order. Failed points keep NaN cells and a
/// non-"ok" status. Rows are independent of thread count.
ResultTable run_sweep(const SweepSpec& spec);

/// run_sweep with both theories and relative-deviation columns.
ResultTable compare_theories(SweepSpec spec);

enum class ThresholdKind {
  kAtr,                   // T - 1
  kAccidentalDegeneracy,  // R_R - R_L
  kExceptionalPoint,      // ||lambda1| - 1| - level
  kEtaUnity,              // |eta| - 1
  kSqueezeCrossing,       // variance - 1
  kMandelCrossing,        // Q/Q0
};

ThresholdKind parse_threshold_kind(std::string_view name);
std::string to_string(ThresholdKind k);

struct ThresholdQuery {
  ThresholdKind kind = ThresholdKind::kAtr;
  SweepVariable variable = SweepVariable::kAlphaL;
  double lo = 0.0;
  double hi = 0.0;
  double tol = 1e-10;     // relative bracket width
  double level = 1e-6;    // eigenvalue-modulus offset for kExceptionalPoint
  Theory theory = Theory::kExact;  // kEffective for variance or Mandel crossings
};

/// Signed scalar whose zero is the threshold.
double threshold_scalar(const ThresholdQuery& q, const Context& c, double x);

/// Bisection on [lo, hi]; throws NoSignChange when the bracket does not straddle.
double locate_threshold(const ThresholdQuery& q, const Context& c);

/// Every crossing visible on `count` linearly spaced points of [lo, hi].
std::vector<double> locate_all(const ThresholdQuery& q, const Context& c, int count = 400);

}  // namespace ptbilayer
