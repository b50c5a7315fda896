#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ptbilayer {

/// A published figure set against the value this library computes for the
/// same inputs.
struct ReferenceGap {
  std::string quantity;
  double quoted = 0.0;
  double computed = 0.0;
  double relative_gap = 0.0;  // (computed - quoted) / |quoted|
  std::string note;
};

/// Input variance, input Mandel parameter, and the Set 2 balance triple.
std::vector<ReferenceGap> reference_gaps();

void write_reference_gaps_json(const std::vector<ReferenceGap>& gaps, std::ostream& os);

}  // namespace ptbilayer
