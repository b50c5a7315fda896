#include "ptbilayer/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "ptbilayer/errors.hpp"

namespace ptbilayer {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError("missing '" + std::string(key) + "' in " + where);
  if (!it->is_number()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a number");
  return it->get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::string text(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a string");
  return v.get<std::string>();
}

LorentzMedium medium(const json& obj, const std::string& where) {
  check_keys(obj, {"eps_b", "alpha", "omega0_trad", "gamma_trad"}, where);
  LorentzMedium m{number(obj, "eps_b", where), number(obj, "alpha", where),
                  units::trad_to_rad(number(obj, "omega0_trad", where)),
                  units::trad_to_rad(number(obj, "gamma_trad", where))};
  try {
    m.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return m;
}

}  // namespace

Context custom_context(const LorentzMedium& gain, const LorentzMedium& loss, double thickness_m,
                       GainLaw law) {
  Context c;
  c.source = "custom";
  c.family.gain = gain;
  c.family.loss = loss;
  c.family.layer_thickness = thickness_m;
  c.family.gain_law = law;
  c.family.frequency_unit = gain.omega0;
  LorentzMedium probe = loss;
  if (probe.alpha == 0.0) probe.alpha = 1.0;
  const std::vector<double> roots = pt_frequency(probe, gain, loss.eps_b - gain.eps_b);
  c.family.reference_omega = roots.empty() ? gain.omega0 : roots.back();
  c.family.balance_omega = c.family.reference_omega;
  c.fixed.alpha_l = loss.alpha;
  c.fixed.omega = c.family.reference_omega;
  return c;
}

SweepSpec parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    check_keys(doc,
               {"preset", "materials", "gain_law", "thickness_nm", "sweep", "fixed", "input_state", "observables",
                "theory", "mode", "mandel_form", "threads"},
               "config");
    SweepSpec spec;
    if (doc.contains("preset") && doc.contains("materials")) {
      throw ConfigError("config gives both 'preset' and 'materials'");
    }
    if (doc.contains("materials")) {
      const json& mats = doc["materials"];
      LorentzMedium gain;
      LorentzMedium loss;
      if (mats.is_array()) {
        if (mats.size() != 2) throw ConfigError("materials array must hold gain and loss");
        gain = medium(mats[0], "materials[0]");
        loss = medium(mats[1], "materials[1]");
      } else {
        check_keys(mats, {"gain", "loss"}, "materials");
        if (!mats.contains("gain") || !mats.contains("loss")) throw ConfigError("materials needs gain and loss");
        gain = medium(mats["gain"], "materials.gain");
        loss = medium(mats["loss"], "materials.loss");
      }
      if (gain.alpha > 0.0 || loss.alpha < 0.0) throw ConfigError("gain alpha must be <= 0 and loss alpha >= 0");
      const double thickness = units::nm_to_m(number_or(doc, "thickness_nm", 10.0, "config"));
      if (!(thickness > 0.0)) throw ConfigError("thickness_nm must be positive");
      const GainLaw law = doc.contains("gain_law") ? parse_gain_law(text(doc, "gain_law", "config")) : GainLaw::kFixed;
      spec.context = custom_context(gain, loss, thickness, law);
    } else {
      const std::string name = doc.contains("preset") ? text(doc, "preset", "config") : "set1";
      spec.context = preset_context(parse_preset(name));
      if (doc.contains("thickness_nm")) {
        const double t = units::nm_to_m(number(doc, "thickness_nm", "config"));
        if (!(t > 0.0)) throw ConfigError("thickness_nm must be positive");
        spec.context.family.layer_thickness = t;
      }
      if (doc.contains("gain_law")) spec.context.family.gain_law = parse_gain_law(text(doc, "gain_law", "config"));
    }

    if (doc.contains("fixed")) {
      const json& f = doc["fixed"];
      check_keys(f, {"omega_trad", "omega_ratio", "alpha_l", "temperature_k"}, "fixed");
      if (f.contains("omega_trad") && f.contains("omega_ratio")) {
        throw ConfigError("fixed gives both omega_trad and omega_ratio");
      }
      if (f.contains("omega_trad")) spec.context.fixed.omega = units::trad_to_rad(number(f, "omega_trad", "fixed"));
      if (f.contains("omega_ratio")) {
        spec.context.fixed.omega = number(f, "omega_ratio", "fixed") * spec.context.family.frequency_unit;
      }
      spec.context.fixed.alpha_l = number_or(f, "alpha_l", spec.context.fixed.alpha_l, "fixed");
      spec.context.fixed.temperature_k = number_or(f, "temperature_k", 0.0, "fixed");
      if (spec.context.fixed.temperature_k < 0.0) throw ConfigError("temperature_k must be >= 0");
      if (spec.context.fixed.alpha_l < 0.0) throw ConfigError("alpha_l must be >= 0");
    }

    if (doc.contains("input_state")) {
      const json& in = doc["input_state"];
      check_keys(in, {"xi", "phi_xi", "w", "phi_rho", "phi_lo"}, "input_state");
      auto& s = spec.context.options.input;
      s.xi = number_or(in, "xi", s.xi, "input_state");
      s.phi_xi = number_or(in, "phi_xi", s.phi_xi, "input_state");
      s.coherent_weight = number_or(in, "w", s.coherent_weight, "input_state");
      s.phi_rho = number_or(in, "phi_rho", s.phi_rho, "input_state");
      spec.context.options.phi_lo = number_or(in, "phi_lo", spec.context.options.phi_lo, "input_state");
      try {
        s.validate();
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("input_state: ") + e.what());
      }
    }

    if (doc.contains("sweep")) {
      const json& sw = doc["sweep"];
      check_keys(sw, {"variable", "start", "stop", "count", "spacing"}, "sweep");
      if (sw.contains("variable")) spec.variable = parse_variable(text(sw, "variable", "sweep"));
      spec.start = number(sw, "start", "sweep");
      spec.stop = number(sw, "stop", "sweep");
      spec.count = sw.contains("count") ? sw.at("count").get<int>() : 500;
      spec.spacing = sw.contains("spacing") ? parse_spacing(text(sw, "spacing", "sweep"))
                                            : default_spacing(spec.start, spec.stop);
    }
    if (doc.contains("observables")) {
      const json& obs = doc["observables"];
      if (!obs.is_array()) throw ConfigError("observables must be a list");
      spec.observables.clear();
      for (const json& o : obs) {
        if (!o.is_string()) throw ConfigError("observables entries must be strings");
        spec.observables.push_back(parse_observable(o.get<std::string>()));
      }
    }
    if (doc.contains("theory")) spec.theory = parse_theory(text(doc, "theory", "config"));
    if (doc.contains("mode")) spec.context.options.mode = parse_transfer_mode(text(doc, "mode", "config"));
    if (doc.contains("mandel_form")) {
      spec.context.options.mandel_form = parse_mandel_form(text(doc, "mandel_form", "config"));
    }
    if (doc.contains("threads")) spec.threads = doc.at("threads").get<int>();
    return spec;
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace ptbilayer
