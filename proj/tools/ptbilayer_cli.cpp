// Command-line front end: sweeps, threshold searches and balance solving.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptbilayer/config.hpp"
#include "ptbilayer/errors.hpp"
#include "ptbilayer/report.hpp"
#include "ptbilayer/sweep.hpp"
#include "ptbilayer/table_io.hpp"

using namespace ptbilayer;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kNoSignChange = 3, kConsistency = 4 };

struct GlobalOptions {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::optional<double> temperature_k;
  std::string theory;
  std::string mode;
  std::string mandel_form;
  bool reproducible = false;
  bool no_checks = false;
};

struct PointOptions {
  std::string preset;
  std::optional<double> omega_trad;
  std::optional<double> omega_ratio;
  std::optional<double> alpha_l;
};

struct SweepOptions {
  std::string variable;
  std::string range;  // start:stop[:count]
  bool log = false;
  bool linear = false;
  std::vector<std::string> observables;
  int threads = 0;
};

struct LocateOptions {
  std::string kind;
  std::string bracket;  // lo:hi
  std::string variable = "alpha_l";
  double tol = 1e-10;
  double level = 1e-6;
  int scan = 0;
};

std::vector<double> split_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ConfigError(std::string("malformed ") + what + " '" + text + "'");
    }
  }
  return out;
}

// Config file first, then command-line overrides.
SweepSpec base_spec(const GlobalOptions& g, const PointOptions& p) {
  SweepSpec spec;
  if (!g.config.empty()) {
    spec = load_config(g.config);
    if (!p.preset.empty()) spec.context = preset_context(parse_preset(p.preset));
  } else {
    spec.context = preset_context(parse_preset(p.preset.empty() ? "set1" : p.preset));
  }
  Context& c = spec.context;
  if (p.omega_trad && p.omega_ratio) throw ConfigError("give --omega-trad or --omega-ratio, not both");
  if (p.omega_trad) c.fixed.omega = units::trad_to_rad(*p.omega_trad);
  if (p.omega_ratio) c.fixed.omega = *p.omega_ratio * c.family.frequency_unit;
  if (p.alpha_l) c.fixed.alpha_l = *p.alpha_l;
  if (g.temperature_k) c.fixed.temperature_k = *g.temperature_k;
  if (c.fixed.temperature_k < 0.0) throw ConfigError("temperature must be >= 0");
  if (c.fixed.alpha_l < 0.0) throw ConfigError("alpha_l must be >= 0");
  if (!(c.fixed.omega > 0.0)) throw ConfigError("frequency must be positive");
  if (!g.theory.empty()) spec.theory = parse_theory(g.theory);
  if (!g.mode.empty()) c.options.mode = parse_transfer_mode(g.mode);
  if (!g.mandel_form.empty()) c.options.mandel_form = parse_mandel_form(g.mandel_form);
  if (g.no_checks) c.options.check_sum_rule = false;
  spec.reproducible = g.reproducible;
  return spec;
}

void apply_sweep_options(SweepSpec& spec, const SweepOptions& s) {
  if (!s.variable.empty()) spec.variable = parse_variable(s.variable);
  if (!s.range.empty()) {
    const std::vector<double> r = split_numbers(s.range, "--range");
    if (r.size() < 2 || r.size() > 3) throw ConfigError("--range expects start:stop[:count]");
    spec.start = r[0];
    spec.stop = r[1];
    if (r.size() == 3) {
      if (r[2] != std::floor(r[2])) throw ConfigError("--range count must be an integer");
      spec.count = static_cast<int>(r[2]);
    }
    spec.spacing = default_spacing(spec.start, spec.stop);
  }
  if (s.log && s.linear) throw ConfigError("--log and --linear are exclusive");
  if (s.log) spec.spacing = Spacing::kLog;
  if (s.linear) spec.spacing = Spacing::kLinear;
  if (!s.observables.empty()) {
    spec.observables.clear();
    for (const std::string& o : s.observables) spec.observables.push_back(parse_observable(o));
  }
  if (s.threads > 0) spec.threads = s.threads;
}

void emit(const std::string& out_path, const std::function<void(std::ostream&)>& body) {
  if (out_path.empty() || out_path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw ConfigError("cannot open output file '" + out_path + "'");
  body(os);
}

void emit_table(const ResultTable& table, const GlobalOptions& g) {
  const TableFormat format = parse_table_format(g.format);
  emit(g.out, [&](std::ostream& os) { write_table(table, format, os); });
  if (format == TableFormat::kCsv && !g.out.empty() && g.out != "-") {
    emit(g.out + ".meta.json", [&](std::ostream& os) { write_metadata_json(table, os); });
  }
}

nlohmann::ordered_json medium_json(const LorentzMedium& m) {
  return {{"eps_b", m.eps_b},
          {"alpha", m.alpha},
          {"omega0_trad", units::rad_to_trad(m.omega0)},
          {"gamma_trad", units::rad_to_trad(m.gamma)}};
}

int run_pt_solve(const GlobalOptions& g, const PointOptions& p) {
  const SweepSpec spec = base_spec(g, p);
  const BilayerFamily& f = spec.context.family;
  LorentzMedium loss = f.loss;
  loss.alpha = p.alpha_l.value_or(2.0);
  const double delta_eps = loss.eps_b - f.gain.eps_b;
  LorentzMedium probe = loss;
  if (probe.alpha == 0.0) probe.alpha = 1.0;
  const std::vector<double> roots = pt_frequency(probe, f.gain, delta_eps);
  if (roots.empty()) throw NoSignChange("no balance frequency in the search window");
  const double omega = roots.back();
  nlohmann::ordered_json doc;
  doc["source"] = spec.context.source;
  doc["alpha_l"] = loss.alpha;
  doc["delta_eps"] = delta_eps;
  doc["omega_pt_trad"] = units::rad_to_trad(omega);
  doc["omega_pt_ratio"] = omega / f.frequency_unit;
  doc["gain_alpha_abs"] = pt_balanced_gain(loss, f.gain, omega);
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (double r : roots) all.push_back(r / f.frequency_unit);
  doc["all_roots_ratio"] = all;
  emit(g.out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
  return kOk;
}

int run_presets(const GlobalOptions& g) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (PresetId id : {PresetId::kSet1, PresetId::kSet2}) {
    const BilayerFamily f = preset_family(id);
    const PtSolution pt = preset_pt_solution(id);
    const Bilayer b = f.at(pt.reference_alpha_l);
    doc[to_string(id)] = {{"gain", medium_json(b.gain)},
                          {"loss", medium_json(b.loss)},
                          {"thickness_nm", f.layer_thickness / units::kNanometre},
                          {"gain_law", to_string(f.gain_law)},
                          {"omega_pt_trad", units::rad_to_trad(pt.omega_pt)},
                          {"omega_pt_ratio", pt.omega_pt / f.frequency_unit},
                          {"gain_alpha_abs", pt.gain_alpha_abs},
                          {"delta_eps", pt.delta_eps}};
  }
  emit(g.out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
  return kOk;
}

int run_locate(const GlobalOptions& g, const PointOptions& p, const LocateOptions& l) {
  const SweepSpec spec = base_spec(g, p);
  ThresholdQuery q;
  q.kind = parse_threshold_kind(l.kind);
  q.variable = parse_variable(l.variable);
  const std::vector<double> b = split_numbers(l.bracket, "--bracket");
  if (b.size() != 2) throw ConfigError("--bracket expects lo:hi");
  q.lo = b[0];
  q.hi = b[1];
  q.tol = l.tol;
  q.level = l.level;
  q.theory = spec.theory == Theory::kEffective ? Theory::kEffective : Theory::kExact;
  if (!(q.lo < q.hi)) throw ConfigError("--bracket needs lo < hi");
  std::vector<double> roots;
  if (l.scan > 1) {
    roots = locate_all(q, spec.context, l.scan);
    if (roots.empty()) throw NoSignChange("no crossing found on the scan grid");
  } else {
    roots.push_back(locate_threshold(q, spec.context));
  }
  emit(g.out, [&](std::ostream& os) {
    os.precision(17);
    for (double r : roots) os << r << '\n';
  });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-optical scattering of a dispersive gain/loss bilayer"};
  app.require_subcommand(1);
  GlobalOptions g;
  PointOptions p;
  SweepOptions s;
  LocateOptions l;

  auto add_globals = [&](CLI::App* a) {
    a->add_option("--config", g.config, "JSON run description");
    a->add_option("--out", g.out, "output path (default stdout)");
    a->add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    a->add_option("--temperature-k", g.temperature_k, "temperature in kelvin (default 0)");
    a->add_option("--theory", g.theory, "exact | effective | both")->check(CLI::IsMember({"exact", "effective", "both"}));
    a->add_option("--mode", g.mode, "full-complex | paper")->check(CLI::IsMember({"full-complex", "paper"}));
    a->add_option("--mandel-form", g.mandel_form, "flux | printed")->check(CLI::IsMember({"flux", "printed"}));
    a->add_flag("--reproducible", g.reproducible, "omit the timestamp from metadata");
    a->add_flag("--no-checks", g.no_checks, "skip the commutator sum-rule check");
  };
  auto add_point = [&](CLI::App* a) {
    a->add_option("--preset", p.preset, "set1 | set2");
    a->add_option("--omega-trad", p.omega_trad, "fixed frequency in Trad/s");
    a->add_option("--omega-ratio", p.omega_ratio, "fixed frequency in units of omega_0g");
    a->add_option("--alpha-l", p.alpha_l, "fixed loss coefficient");
  };
  auto add_sweep = [&](CLI::App* a) {
    a->add_option("--var", s.variable, "alpha_l | omega_trad | omega_ratio | temperature_k");
    a->add_option("--range", s.range, "start:stop[:count]");
    a->add_flag("--log", s.log, "logarithmic grid");
    a->add_flag("--linear", s.linear, "linear grid");
    a->add_option("--obs", s.observables, "scattering eigenvalues noise variance mandel eta")->delimiter(',');
    a->add_option("--threads", s.threads, "worker threads (0 = all cores)");
  };

  CLI::App* sweep = app.add_subcommand("sweep", "evaluate observables on a grid");
  CLI::App* compare = app.add_subcommand("compare", "exact and effective theories side by side");
  CLI::App* locate = app.add_subcommand("locate", "bisect for a threshold");
  CLI::App* pt = app.add_subcommand("pt-solve", "balance frequency and gain");
  CLI::App* presets = app.add_subcommand("presets", "print the built-in bilayers");
  CLI::App* gaps = app.add_subcommand("gaps", "quoted reference values against computed ones");
  for (CLI::App* a : {sweep, compare, locate, pt, presets, gaps}) add_globals(a);
  for (CLI::App* a : {sweep, compare, locate, pt}) add_point(a);
  add_sweep(sweep);
  add_sweep(compare);
  locate->add_option("--kind", l.kind, "atr | accidental_degeneracy | exceptional_point | eta_unity | "
                                       "squeeze_crossing | mandel_crossing")
      ->required();
  locate->add_option("--bracket", l.bracket, "lo:hi")->required();
  locate->add_option("--var", l.variable, "alpha_l | omega_trad | omega_ratio | temperature_k");
  locate->add_option("--tol", l.tol, "relative bracket width");
  locate->add_option("--level", l.level, "eigenvalue-modulus offset for exceptional_point");
  locate->add_option("--scan", l.scan, "report every crossing on this many grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (sweep->parsed() || compare->parsed()) {
      SweepSpec spec = base_spec(g, p);
      apply_sweep_options(spec, s);
      const ResultTable table = compare->parsed() ? compare_theories(spec) : run_sweep(spec);
      emit_table(table, g);
      return kOk;
    }
    if (locate->parsed()) return run_locate(g, p, l);
    if (pt->parsed()) return run_pt_solve(g, p);
    if (presets->parsed()) return run_presets(g);
    if (gaps->parsed()) {
      emit(g.out, [](std::ostream& os) { write_reference_gaps_json(reference_gaps(), os); });
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const NoSignChange& e) {
    std::cerr << "no sign change: " << e.what() << '\n';
    return kNoSignChange;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << '\n';
    return kConsistency;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
