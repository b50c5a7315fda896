#include "ptbilayer/roots.hpp"

#include <cmath>

namespace ptbilayer {

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 2) throw InvalidArgument("linspace needs at least two points");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
  out.back() = stop;
  return out;
}

std::vector<double> logspace(double start, double stop, int count) {
  if (!(start > 0.0) || !(stop > 0.0)) throw InvalidArgument("logspace needs positive endpoints");
  std::vector<double> out = linspace(std::log(start), std::log(stop), count);
  for (double& v : out) v = std::exp(v);
  out.front() = start;
  out.back() = stop;
  return out;
}

}  // namespace ptbilayer
