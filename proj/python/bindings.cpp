#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ptbilayer/config.hpp"
#include "ptbilayer/errors.hpp"
#include "ptbilayer/report.hpp"
#include "ptbilayer/sweep.hpp"
#include "ptbilayer/table_io.hpp"

namespace py = pybind11;
using namespace ptbilayer;

namespace {

Context context_for(const std::string& preset, std::optional<double> omega_ratio, double temperature_k,
                    const std::string& mode) {
  Context c = preset_context(parse_preset(preset));
  if (omega_ratio) c.fixed.omega = *omega_ratio * c.family.frequency_unit;
  c.fixed.temperature_k = temperature_k;
  c.options.mode = parse_transfer_mode(mode);
  return c;
}

py::dict table_to_dict(const ResultTable& t) {
  py::dict columns;
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    py::list values;
    for (const auto& row : t.rows) {
      if (const double* v = std::get_if<double>(&row[j])) {
        values.append(*v);
      } else {
        values.append(std::get<std::string>(row[j]));
      }
    }
    columns[py::str(t.columns[j])] = values;
  }
  return columns;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Scattering, noise and photon statistics of a dispersive gain/loss bilayer";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<NoSignChange>(m, "NoSignChange");
  py::register_exception<ConsistencyError>(m, "ConsistencyError");
  py::register_exception<LasingPole>(m, "LasingPole");
  py::register_exception<BranchAmbiguity>(m, "BranchAmbiguity");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  py::class_<LorentzMedium>(m, "LorentzMedium")
      .def(py::init([](double eps_b, double alpha, double omega0, double gamma) {
             return LorentzMedium{eps_b, alpha, omega0, gamma};
           }),
           py::arg("eps_b"), py::arg("alpha"), py::arg("omega0"), py::arg("gamma"))
      .def_readwrite("eps_b", &LorentzMedium::eps_b)
      .def_readwrite("alpha", &LorentzMedium::alpha)
      .def_readwrite("omega0", &LorentzMedium::omega0)
      .def_readwrite("gamma", &LorentzMedium::gamma);

  py::class_<Bilayer>(m, "Bilayer")
      .def_readwrite("gain", &Bilayer::gain)
      .def_readwrite("loss", &Bilayer::loss)
      .def_readwrite("layer_thickness", &Bilayer::layer_thickness);

  py::class_<ScatteringAmplitudes>(m, "ScatteringAmplitudes")
      .def_readonly("t", &ScatteringAmplitudes::t)
      .def_readonly("r_l", &ScatteringAmplitudes::r_l)
      .def_readonly("r_r", &ScatteringAmplitudes::r_r)
      .def_property_readonly("T", &ScatteringAmplitudes::transmittance)
      .def_property_readonly("R_L", &ScatteringAmplitudes::reflectance_left)
      .def_property_readonly("R_R", &ScatteringAmplitudes::reflectance_right);

  m.def("permittivity", [](const LorentzMedium& md, double omega) { return permittivity(md, omega).value; },
        py::arg("medium"), py::arg("omega"));
  m.def("refractive_index", [](std::complex<double> eps) { return refractive_index({eps}).value; }, py::arg("eps"));
  m.def("preset", [](const std::string& name, double alpha_l) { return preset(parse_preset(name), alpha_l); },
        py::arg("name"), py::arg("alpha_l"));
  m.def(
      "pt_solution",
      [](const std::string& name) {
        const PtSolution s = preset_pt_solution(parse_preset(name));
        const double unit = preset_family(parse_preset(name)).frequency_unit;
        py::dict d;
        d["omega_pt"] = s.omega_pt;
        d["omega_pt_ratio"] = s.omega_pt / unit;
        d["gain_alpha_abs"] = s.gain_alpha_abs;
        d["delta_eps"] = s.delta_eps;
        return d;
      },
      py::arg("name"));
  m.def(
      "scatter",
      [](const Bilayer& b, double omega, const std::string& mode) {
        return scatter(b, omega, parse_transfer_mode(mode));
      },
      py::arg("bilayer"), py::arg("omega"), py::arg("mode") = "full-complex");
  m.def(
      "eigenvalues",
      [](const ScatteringAmplitudes& s) {
        const EigenPair e = eigenvalues(s);
        return py::make_tuple(e.lambda1, e.lambda2);
      },
      py::arg("amplitudes"));
  m.def(
      "noise_flux",
      [](const Bilayer& b, double omega, double temperature_k) {
        const NoiseFluxDensity f = noise_flux(b, omega, temperature_k, TransferMode::kFullComplex, true);
        py::dict d;
        d["right"] = f.s_right;
        d["left"] = f.s_left;
        d["sum_rule_right"] = f.sum_rule_right;
        d["sum_rule_left"] = f.sum_rule_left;
        return d;
      },
      py::arg("bilayer"), py::arg("omega"), py::arg("temperature_k") = 0.0);
  m.def("thermal_occupation", &thermal_occupation, py::arg("omega"), py::arg("temperature_k"));
  m.def(
      "bloch_index",
      [](std::complex<double> ng, std::complex<double> nl, double omega, double l) {
        return bloch_index({ng}, {nl}, omega, l).n_eff;
      },
      py::arg("n_g"), py::arg("n_l"), py::arg("omega"), py::arg("l"));
  m.def(
      "evaluate",
      [](const std::string& preset_name, double alpha_l, std::optional<double> omega_ratio, double temperature_k,
         const std::string& mode) {
        const Context c = context_for(preset_name, omega_ratio, temperature_k, mode);
        OperatingPoint p = c.fixed;
        p.alpha_l = alpha_l;
        const ExactPoint e = evaluate_exact(c, p);
        py::dict d;
        d["T"] = e.s.transmittance();
        d["R_L"] = e.s.reflectance_left();
        d["R_R"] = e.s.reflectance_right();
        d["lambda1"] = e.eig.lambda1;
        d["lambda2"] = e.eig.lambda2;
        d["phase"] = to_string(e.phase.tag);
        d["flux"] = e.flux.s_right;
        d["variance"] = e.variance;
        d["mandel_q"] = e.mandel;
        d["eta"] = evaluate_eta(c, p).eta;
        return d;
      },
      py::arg("preset"), py::arg("alpha_l"), py::arg("omega_ratio") = py::none(), py::arg("temperature_k") = 0.0,
      py::arg("mode") = "full-complex");
  m.def(
      "homodyne_variance",
      [](std::complex<double> t, double flux, double xi, double phi_xi, double phi_lo) {
        ScatteringAmplitudes s;
        s.t = t;
        SqueezedCoherentInput in;
        in.xi = xi;
        in.phi_xi = phi_xi;
        return homodyne_variance(s, flux, in, HomodyneConfig{phi_lo, 0.0});
      },
      py::arg("t"), py::arg("flux"), py::arg("xi") = 0.2, py::arg("phi_xi") = -5.0, py::arg("phi_lo") = 0.0);
  m.def(
      "mandel_q",
      [](std::complex<double> t, std::complex<double> r_r, double flux, double xi, double w, double phi_xi,
         double phi_rho, const std::string& form) {
        ScatteringAmplitudes s;
        s.t = t;
        s.r_r = r_r;
        return mandel_q(s, flux, SqueezedCoherentInput{xi, phi_xi, w, phi_rho}, parse_mandel_form(form));
      },
      py::arg("t"), py::arg("r_r"), py::arg("flux"), py::arg("xi") = 0.2, py::arg("w") = 25.0,
      py::arg("phi_xi") = -5.0, py::arg("phi_rho") = (constants::kPi - 5.0) / 2.0, py::arg("form") = "flux");
  m.def(
      "locate_threshold",
      [](const std::string& kind, const std::string& preset_name, double lo, double hi, const std::string& variable,
         std::optional<double> alpha_l, std::optional<double> omega_ratio, double tol) {
        Context c = context_for(preset_name, omega_ratio, 0.0, "full-complex");
        if (alpha_l) c.fixed.alpha_l = *alpha_l;
        ThresholdQuery q;
        q.kind = parse_threshold_kind(kind);
        q.variable = parse_variable(variable);
        q.lo = lo;
        q.hi = hi;
        q.tol = tol;
        return locate_threshold(q, c);
      },
      py::arg("kind"), py::arg("preset"), py::arg("lo"), py::arg("hi"), py::arg("variable") = "alpha_l",
      py::arg("alpha_l") = py::none(), py::arg("omega_ratio") = py::none(), py::arg("tol") = 1e-10);
  m.def(
      "run_sweep",
      [](const std::string& config_json) {
        SweepSpec spec = parse_config(config_json);
        spec.reproducible = true;
        ResultTable t;
        {
          py::gil_scoped_release release;
          t = run_sweep(spec);
        }
        return table_to_dict(t);
      },
      py::arg("config_json"), "Run a sweep described by a JSON config; returns {column: values}.");
  m.def("reference_gaps", [] {
    py::list out;
    for (const ReferenceGap& g : reference_gaps()) {
      py::dict d;
      d["quantity"] = g.quantity;
      d["quoted"] = g.quoted;
      d["computed"] = g.computed;
      d["relative_gap"] = g.relative_gap;
      out.append(d);
    }
    return out;
  });
  m.attr("__version__") = kVersion;
}
