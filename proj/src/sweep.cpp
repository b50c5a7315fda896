#include "ptbilayer/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "ptbilayer/errors.hpp"
#include "ptbilayer/roots.hpp"

namespace ptbilayer {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class E>
E parse_enum(std::string_view name, std::initializer_list<std::pair<const char*, E>> table,
             const char* what) {
  for (const auto& [key, value] : table) {
    if (name == key) return value;
  }
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(name) + "'");
}

}  // namespace

Theory parse_theory(std::string_view name) {
  return parse_enum<Theory>(name, {{"exact", Theory::kExact}, {"effective", Theory::kEffective}, {"both", Theory::kBoth}},
                            "theory");
}

std::string to_string(Theory t) {
  switch (t) {
    case Theory::kExact: return "exact";
    case Theory::kEffective: return "effective";
    case Theory::kBoth: return "both";
  }
  return "exact";
}

SweepVariable parse_variable(std::string_view name) {
  return parse_enum<SweepVariable>(name,
                                   {{"alpha_l", SweepVariable::kAlphaL},
                                    {"omega_trad", SweepVariable::kOmegaTrad},
                                    {"omega", SweepVariable::kOmegaTrad},
                                    {"omega_ratio", SweepVariable::kOmegaRatio},
                                    {"temperature_k", SweepVariable::kTemperature},
                                    {"temperature", SweepVariable::kTemperature}},
                                   "sweep variable");
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kAlphaL: return "alpha_l";
    case SweepVariable::kOmegaTrad: return "omega_trad";
    case SweepVariable::kOmegaRatio: return "omega_ratio";
    case SweepVariable::kTemperature: return "temperature_k";
  }
  return "alpha_l";
}

Spacing parse_spacing(std::string_view name) {
  return parse_enum<Spacing>(name, {{"linear", Spacing::kLinear}, {"log", Spacing::kLog}}, "spacing");
}

std::string to_string(Spacing s) { return s == Spacing::kLinear ? "linear" : "log"; }

Observable parse_observable(std::string_view name) {
  return parse_enum<Observable>(name,
                                {{"scattering", Observable::kScattering},
                                 {"eigenvalues", Observable::kEigenvalues},
                                 {"noise", Observable::kNoise},
                                 {"variance", Observable::kVariance},
                                 {"mandel", Observable::kMandel},
                                 {"eta", Observable::kEta}},
                                "observable");
}

std::string to_string(Observable o) {
  switch (o) {
    case Observable::kScattering: return "scattering";
    case Observable::kEigenvalues: return "eigenvalues";
    case Observable::kNoise: return "noise";
    case Observable::kVariance: return "variance";
    case Observable::kMandel: return "mandel";
    case Observable::kEta: return "eta";
  }
  return "scattering";
}

OperatingPoint Context::at(SweepVariable variable, double x) const {
  OperatingPoint p = fixed;
  switch (variable) {
    case SweepVariable::kAlphaL: p.alpha_l = x; break;
    case SweepVariable::kOmegaTrad: p.omega = units::trad_to_rad(x); break;
    case SweepVariable::kOmegaRatio: p.omega = x * family.frequency_unit; break;
    case SweepVariable::kTemperature: p.temperature_k = x; break;
  }
  return p;
}

Context preset_context(PresetId id) {
  Context c;
  c.family = preset_family(id);
  c.source = to_string(id);
  c.fixed.alpha_l = 2.0;
  c.fixed.omega = c.family.reference_omega;
  c.fixed.temperature_k = 0.0;
  return c;
}

// ---------------------------------------------------------------------------

ExactPoint evaluate_exact(const Bilayer& b, double omega, double theta, const ModelOptions& o) {
  ExactPoint p;
  const NoiseCoupling coupling = noise_couplings(b, omega, o.mode);
  p.s = coupling.amplitudes;
  p.eig = eigenvalues(p.s);
  p.phase = classify_phase(p.eig, o.phase_tol);
  p.conservation = conservation_residuals(p.s);
  p.flux = noise_flux(coupling, omega, theta, o.check_sum_rule && o.mode == TransferMode::kFullComplex);
  p.deficit = unitarity_deficit(p.s);
  const HomodyneConfig h{o.phi_lo, omega};
  p.variance = homodyne_variance(p.s, p.flux.s_right, o.input, h);
  p.mandel = mandel_q(p.s, p.flux.s_right, o.input, o.mandel_form);
  return p;
}

EffectivePoint evaluate_effective(const Bilayer& b, double omega, double theta, const ModelOptions& o) {
  EffectivePoint p;
  const RefractiveIndex ng = refractive_index(b.gain, omega);
  const RefractiveIndex nl = refractive_index(b.loss, omega);
  const double l = b.layer_thickness;
  p.n = bloch_index(ng, nl, omega, l);
  p.eta = round_trip(p.n, omega, l);
  p.s = effective_amplitudes(p.n, omega, l);
  p.noise = effective_noise(ng, nl, p.n, p.s, omega, theta, l);
  const HomodyneConfig h{o.phi_lo, omega};
  p.variance = homodyne_variance(p.s, p.noise.flux, o.input, h);
  p.mandel = mandel_q(p.s, p.noise.flux, o.input, o.mandel_form);
  return p;
}

RoundTrip evaluate_eta(const Context& c, const OperatingPoint& p) {
  const Bilayer b = c.family.at(p.alpha_l);
  const RefractiveIndex ng = refractive_index(b.gain, p.omega);
  const RefractiveIndex nl = refractive_index(b.loss, p.omega);
  return round_trip(bloch_index(ng, nl, p.omega, b.layer_thickness), p.omega, b.layer_thickness);
}

// ---------------------------------------------------------------------------

Spacing default_spacing(double start, double stop) {
  return (start > 0.0 && stop / start >= 100.0) ? Spacing::kLog : Spacing::kLinear;
}

void SweepSpec::validate() const {
  if (count < 2) throw ConfigError("sweep count must be at least 2");
  if (!(start < stop)) throw ConfigError("sweep start must be below stop");
  if (spacing == Spacing::kLog && !(start > 0.0)) throw ConfigError("log spacing needs start > 0");
  if (variable == SweepVariable::kAlphaL && start < 0.0) throw ConfigError("alpha_l must be >= 0");
  if ((variable == SweepVariable::kOmegaTrad || variable == SweepVariable::kOmegaRatio) && !(start > 0.0)) {
    throw ConfigError("frequency sweep must stay positive");
  }
  if (variable == SweepVariable::kTemperature && start < 0.0) throw ConfigError("temperature must be >= 0");
  if (variable != SweepVariable::kOmegaTrad && variable != SweepVariable::kOmegaRatio &&
      !(context.fixed.omega > 0.0)) {
    throw ConfigError("fixed frequency must be positive");
  }
  if (observables.empty()) throw ConfigError("no observables requested");
}

std::vector<double> SweepSpec::grid() const {
  return spacing == Spacing::kLog ? logspace(start, stop, count) : linspace(start, stop, count);
}

bool SweepSpec::wants(Observable o) const {
  return std::find(observables.begin(), observables.end(), o) != observables.end();
}

std::size_t ResultTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw InvalidArgument("no column named '" + std::string(name) + "'");
}

std::vector<double> ResultTable::numeric_column(std::string_view name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const double* v = std::get_if<double>(&row[j]);
    out.push_back(v ? *v : kNaN);
  }
  return out;
}

std::string ResultTable::status(std::size_t row) const {
  return std::get<std::string>(rows.at(row).back());
}

namespace {

std::string failure_name(const std::exception& e) {
  if (dynamic_cast<const LasingPole*>(&e)) return "lasing_pole";
  if (dynamic_cast<const SingularTransfer*>(&e)) return "singular_transfer";
  if (dynamic_cast<const BranchAmbiguity*>(&e)) return "branch_ambiguity";
  if (dynamic_cast<const DegenerateDenominator*>(&e)) return "degenerate_denominator";
  if (dynamic_cast<const ConsistencyError*>(&e)) return "consistency_error";
  return "error";
}

double rel_dev(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

// Column layout decided once per spec; each row fills a fixed-size buffer.
class Layout {
 public:
  explicit Layout(const SweepSpec& spec) : spec_(spec) {
    exact_ = spec.theory != Theory::kEffective;
    effective_ = spec.theory != Theory::kExact;
    for (const char* c : {"alpha_l", "alpha_g", "omega_trad", "omega_ratio", "temperature_k"}) add(c);
    if (exact_) {
      if (spec.wants(Observable::kScattering)) {
        for (const char* c : {"t_re", "t_im", "r_l_re", "r_l_im", "r_r_re", "r_r_im", "T", "R_L", "R_R", "phi_t",
                              "phi_L", "phi_R", "phi_t_unwrapped", "phi_L_unwrapped", "phi_R_unwrapped",
                              "conservation_residual", "phase_residual"}) {
          add(c);
        }
      }
      if (spec.wants(Observable::kEigenvalues)) {
        for (const char* c : {"lambda1_abs", "lambda1_arg", "lambda2_abs", "lambda2_arg", "lambda_product_residual",
                              "phase_class"}) {
          add(c);
        }
      }
      if (spec.wants(Observable::kNoise)) {
        for (const char* c : {"flux_right", "flux_left", "sum_rule_right", "sum_rule_left", "deficit_right",
                              "deficit_left"}) {
          add(c);
        }
      }
      if (spec.wants(Observable::kVariance)) add("variance");
      if (spec.wants(Observable::kMandel)) add("mandel_q");
    }
    if (spec.wants(Observable::kEta)) {
      for (const char* c : {"n_eff_re", "n_eff_im", "eta_abs", "eta_arg"}) add(c);
    }
    if (effective_) {
      if (spec.wants(Observable::kScattering)) {
        for (const char* c : {"eff_t_re", "eff_t_im", "eff_T", "eff_R", "eff_phi_t"}) add(c);
      }
      if (spec.wants(Observable::kNoise)) {
        for (const char* c : {"eff_flux", "eff_n_noise", "eff_deficit"}) add(c);
      }
      if (spec.wants(Observable::kVariance)) add("eff_variance");
      if (spec.wants(Observable::kMandel)) add("eff_mandel_q");
    }
    if (exact_ && effective_) {
      if (spec.wants(Observable::kScattering)) add("dev_t");
      if (spec.wants(Observable::kNoise)) add("dev_flux");
      if (spec.wants(Observable::kVariance)) add("dev_variance");
      if (spec.wants(Observable::kMandel)) add("dev_mandel_q");
    }
    add("status");
  }

  const std::vector<std::string>& columns() const { return columns_; }

  std::vector<Cell> row(double x) const {
    std::vector<Cell> r(columns_.size(), Cell{kNaN});
    auto put = [&](const char* name, Cell v) {
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i] == name) {
          r[i] = std::move(v);
          return;
        }
      }
    };
    const Context& ctx = spec_.context;
    const OperatingPoint p = ctx.at(spec_.variable, x);
    std::string status = "ok";
    auto fail = [&](const char* theory, const std::exception& e) {
      const std::string tag = std::string(theory) + ":" + failure_name(e);
      status = status == "ok" ? tag : status + ";" + tag;
    };

    put("alpha_l", p.alpha_l);
    put("omega_trad", units::rad_to_trad(p.omega));
    put("omega_ratio", p.omega / ctx.family.frequency_unit);
    put("temperature_k", p.temperature_k);

    std::optional<ExactPoint> ex;
    std::optional<EffectivePoint> ef;
    try {
      const Bilayer b = ctx.family.at(p.alpha_l);
      put("alpha_g", b.gain.alpha);
      if (exact_) {
        try {
          ex = evaluate_exact(b, p.omega, p.temperature_k, ctx.options);
        } catch (const Error& e) {
          fail("exact", e);
        }
      }
      if (spec_.wants(Observable::kEta)) {
        try {
          const RefractiveIndex ng = refractive_index(b.gain, p.omega);
          const RefractiveIndex nl = refractive_index(b.loss, p.omega);
          const EffectiveIndex n = bloch_index(ng, nl, p.omega, b.layer_thickness);
          const RoundTrip eta = round_trip(n, p.omega, b.layer_thickness);
          put("n_eff_re", n.n_eff.real());
          put("n_eff_im", n.n_eff.imag());
          put("eta_abs", std::abs(eta.eta));
          put("eta_arg", std::arg(eta.eta));
        } catch (const Error& e) {
          fail("eta", e);
        }
      }
      if (effective_) {
        try {
          ef = evaluate_effective(b, p.omega, p.temperature_k, ctx.options);
        } catch (const Error& e) {
          fail("effective", e);
        }
      }
    } catch (const Error& e) {
      fail("input", e);
    }

    if (ex) {
      const ScatteringAmplitudes& s = ex->s;
      put("t_re", s.t.real());
      put("t_im", s.t.imag());
      put("r_l_re", s.r_l.real());
      put("r_l_im", s.r_l.imag());
      put("r_r_re", s.r_r.real());
      put("r_r_im", s.r_r.imag());
      put("T", s.transmittance());
      put("R_L", s.reflectance_left());
      put("R_R", s.reflectance_right());
      put("phi_t", s.phase_t());
      put("phi_L", s.phase_left());
      put("phi_R", s.phase_right());
      put("conservation_residual", ex->conservation.generalized);
      put("phase_residual", ex->conservation.phase.value_or(kNaN));
      put("lambda1_abs", std::abs(ex->eig.lambda1));
      put("lambda1_arg", std::arg(ex->eig.lambda1));
      put("lambda2_abs", std::abs(ex->eig.lambda2));
      put("lambda2_arg", std::arg(ex->eig.lambda2));
      put("lambda_product_residual", ex->phase.product_residual);
      put("phase_class", to_string(ex->phase.tag));
      put("flux_right", ex->flux.s_right);
      put("flux_left", ex->flux.s_left);
      put("sum_rule_right", ex->flux.sum_rule_right);
      put("sum_rule_left", ex->flux.sum_rule_left);
      put("deficit_right", ex->deficit.right);
      put("deficit_left", ex->deficit.left);
      put("variance", ex->variance);
      put("mandel_q", ex->mandel);
    }
    if (ef) {
      put("eff_t_re", ef->s.t.real());
      put("eff_t_im", ef->s.t.imag());
      put("eff_T", ef->s.transmittance());
      put("eff_R", ef->s.reflectance_right());
      put("eff_phi_t", ef->s.phase_t());
      put("eff_flux", ef->noise.flux);
      put("eff_n_noise", ef->noise.n_eff_distribution);
      put("eff_deficit", ef->noise.deficit);
      put("eff_variance", ef->variance);
      put("eff_mandel_q", ef->mandel);
    }
    if (ex && ef) {
      put("dev_t", std::abs(ef->s.t - ex->s.t) / std::abs(ex->s.t));
      put("dev_flux", rel_dev(ef->noise.flux, ex->flux.s_right));
      put("dev_variance", rel_dev(ef->variance, ex->variance));
      put("dev_mandel_q", rel_dev(ef->mandel, ex->mandel));
    }
    put("status", status);
    return r;
  }

 private:
  void add(const char* name) { columns_.emplace_back(name); }

  const SweepSpec& spec_;
  bool exact_ = true;
  bool effective_ = false;
  std::vector<std::string> columns_;
};

void unwrap_column(ResultTable& table, const char* wrapped, const char* unwrapped) {
  const auto it = std::find(table.columns.begin(), table.columns.end(), unwrapped);
  if (it == table.columns.end()) return;
  const std::size_t out = static_cast<std::size_t>(it - table.columns.begin());
  const std::size_t in = table.column_index(wrapped);
  double previous = kNaN;
  double accumulated = kNaN;
  for (auto& row : table.rows) {
    const double phi = std::get<double>(row[in]);
    if (std::isnan(phi)) continue;
    accumulated = std::isnan(previous) ? phi : accumulated + wrap_phase(phi - previous);
    previous = phi;
    row[out] = accumulated;
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string number_text(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

ResultTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> grid = spec.grid();
  const Layout layout(spec);
  ResultTable table;
  table.columns = layout.columns();
  table.rows.resize(grid.size());

  unsigned workers = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(grid.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) table.rows[i] = layout.row(grid[i]);
  } else {
    // Strided assignment; every slot is written by exactly one worker.
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < grid.size(); i += workers) table.rows[i] = layout.row(grid[i]);
      });
    }
    for (auto& t : pool) t.join();
  }

  unwrap_column(table, "phi_t", "phi_t_unwrapped");
  unwrap_column(table, "phi_L", "phi_L_unwrapped");
  unwrap_column(table, "phi_R", "phi_R_unwrapped");

  const Context& c = spec.context;
  auto& m = table.metadata;
  m.emplace_back("source", c.source);
  m.emplace_back("gain_law", to_string(c.family.gain_law));
  m.emplace_back("variable", to_string(spec.variable));
  m.emplace_back("spacing", to_string(spec.spacing));
  m.emplace_back("theory", to_string(spec.theory));
  m.emplace_back("transfer_mode", to_string(c.options.mode));
  m.emplace_back("mandel_form", to_string(c.options.mandel_form));
  m.emplace_back("fixed_alpha_l", number_text(c.fixed.alpha_l));
  m.emplace_back("fixed_omega_trad", number_text(units::rad_to_trad(c.fixed.omega)));
  m.emplace_back("fixed_temperature_k", number_text(c.fixed.temperature_k));
  m.emplace_back("omega_0g_trad", number_text(units::rad_to_trad(c.family.frequency_unit)));
  m.emplace_back("thickness_nm", number_text(c.family.layer_thickness / units::kNanometre));
  m.emplace_back("xi", number_text(c.options.input.xi));
  m.emplace_back("phi_xi", number_text(c.options.input.phi_xi));
  m.emplace_back("w", number_text(c.options.input.coherent_weight));
  m.emplace_back("phi_rho", number_text(c.options.input.phi_rho));
  m.emplace_back("phi_lo", number_text(c.options.phi_lo));
  m.emplace_back("units", "omega_trad in 1e12 rad/s; omega_ratio = omega/omega_0g; phases in rad");
  m.emplace_back("version", kVersion);
  if (!spec.reproducible) m.emplace_back("timestamp", utc_timestamp());
  return table;
}

ResultTable compare_theories(SweepSpec spec) {
  spec.theory = Theory::kBoth;
  return run_sweep(spec);
}

// ---------------------------------------------------------------------------

ThresholdKind parse_threshold_kind(std::string_view name) {
  return parse_enum<ThresholdKind>(name,
                                   {{"atr", ThresholdKind::kAtr},
                                    {"accidental_degeneracy", ThresholdKind::kAccidentalDegeneracy},
                                    {"exceptional_point", ThresholdKind::kExceptionalPoint},
                                    {"eta_unity", ThresholdKind::kEtaUnity},
                                    {"squeeze_crossing", ThresholdKind::kSqueezeCrossing},
                                    {"mandel_crossing", ThresholdKind::kMandelCrossing}},
                                   "threshold kind");
}

std::string to_string(ThresholdKind k) {
  switch (k) {
    case ThresholdKind::kAtr: return "atr";
    case ThresholdKind::kAccidentalDegeneracy: return "accidental_degeneracy";
    case ThresholdKind::kExceptionalPoint: return "exceptional_point";
    case ThresholdKind::kEtaUnity: return "eta_unity";
    case ThresholdKind::kSqueezeCrossing: return "squeeze_crossing";
    case ThresholdKind::kMandelCrossing: return "mandel_crossing";
  }
  return "atr";
}

double threshold_scalar(const ThresholdQuery& q, const Context& c, double x) {
  const OperatingPoint p = c.at(q.variable, x);
  if (q.kind == ThresholdKind::kEtaUnity) return std::abs(evaluate_eta(c, p).eta) - 1.0;
  const bool effective = q.theory == Theory::kEffective &&
                         (q.kind == ThresholdKind::kSqueezeCrossing || q.kind == ThresholdKind::kMandelCrossing);
  if (effective) {
    const EffectivePoint e = evaluate_effective(c, p);
    return q.kind == ThresholdKind::kSqueezeCrossing ? e.variance - 1.0 : e.mandel;
  }
  const Bilayer b = c.family.at(p.alpha_l);
  switch (q.kind) {
    case ThresholdKind::kAtr: return scatter(b, p.omega, c.options.mode).transmittance() - 1.0;
    case ThresholdKind::kAccidentalDegeneracy: {
      const ScatteringAmplitudes s = scatter(b, p.omega, c.options.mode);
      return s.reflectance_right() - s.reflectance_left();
    }
    case ThresholdKind::kExceptionalPoint: {
      const EigenPair e = eigenvalues(scatter(b, p.omega, c.options.mode));
      return std::abs(std::abs(e.lambda1) - 1.0) - q.level;
    }
    case ThresholdKind::kSqueezeCrossing:
      return evaluate_exact(b, p.omega, p.temperature_k, c.options).variance - 1.0;
    case ThresholdKind::kMandelCrossing:
      return evaluate_exact(b, p.omega, p.temperature_k, c.options).mandel;
    case ThresholdKind::kEtaUnity: break;
  }
  return kNaN;
}

double locate_threshold(const ThresholdQuery& q, const Context& c) {
  if (!(q.lo < q.hi)) throw InvalidArgument("threshold bracket must satisfy lo < hi");
  if (!(q.tol > 0.0)) throw InvalidArgument("threshold tolerance must be positive");
  return bisect([&](double x) { return threshold_scalar(q, c, x); }, q.lo, q.hi, q.tol);
}

std::vector<double> locate_all(const ThresholdQuery& q, const Context& c, int count) {
  const std::vector<double> grid = linspace(q.lo, q.hi, count);
  auto f = [&](double x) {
    try {
      return threshold_scalar(q, c, x);
    } catch (const Error&) {
      return kNaN;
    }
  };
  return find_roots(f, grid, q.tol);
}

}  // namespace ptbilayer
