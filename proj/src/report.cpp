#include "ptbilayer/report.hpp"

#include <cmath>
#include <json.hpp>

#include "ptbilayer/media.hpp"
#include "ptbilayer/observables.hpp"

namespace ptbilayer {

namespace {

ReferenceGap gap(std::string quantity, double quoted, double computed, std::string note) {
  return {std::move(quantity), quoted, computed, (computed - quoted) / std::abs(quoted), std::move(note)};
}

}  // namespace

std::vector<ReferenceGap> reference_gaps() {
  const SqueezedCoherentInput in;
  const InputReference ref = input_reference(in, HomodyneConfig{});
  const PtSolution pt = preset_pt_solution(PresetId::kSet2);
  const BilayerFamily set2 = preset_family(PresetId::kSet2);
  LorentzMedium loss = set2.loss;
  loss.alpha = pt.reference_alpha_l;
  const double omega_quoted = 1.58 * set2.frequency_unit;

  std::vector<ReferenceGap> out;
  out.push_back(gap("input_variance", 0.926, ref.variance_in,
                    "identity channel, xi = 0.2, 2 phi_LO - phi_xi = 5 rad"));
  out.push_back(gap("input_mandel_q", -0.33, ref.q_in, "identity channel, xi = 0.2, w = 25, 2 phi_rho - phi_xi = pi"));
  out.push_back(gap("set2_gain_alpha_abs", 20.86, pt.gain_alpha_abs,
                    "imaginary-part balance at the computed balance frequency, alpha_l = 2"));
  out.push_back(gap("set2_gain_alpha_abs_at_1.58", 20.86, pt_balanced_gain(loss, set2.gain, omega_quoted),
                    "imaginary-part balance at exactly 1.58 omega_0g"));
  out.push_back(gap("set2_omega_pt_ratio", 1.58, pt.omega_pt / set2.frequency_unit,
                    "upper root of the real-part balance with delta eps = 1.22"));
  out.push_back(gap("set2_delta_eps_at_1.58", 1.22, pt_delta_epsilon(loss, set2.gain, omega_quoted),
                    "background offset required at exactly 1.58 omega_0g"));
  return out;
}

void write_reference_gaps_json(const std::vector<ReferenceGap>& gaps, std::ostream& os) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const ReferenceGap& g : gaps) {
    doc.push_back({{"quantity", g.quantity},
                   {"quoted", g.quoted},
                   {"computed", g.computed},
                   {"relative_gap", g.relative_gap},
                   {"note", g.note}});
  }
  os << doc.dump(1) << '\n';
}

}  // namespace ptbilayer
