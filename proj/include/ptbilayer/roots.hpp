#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ptbilayer/errors.hpp"

namespace ptbilayer {

/// `count` evenly spaced points on [start, stop], endpoints included.
std::vector<double> linspace(double start, double stop, int count);

/// `count` geometrically spaced points on [start, stop]; both must be > 0.
std::vector<double> logspace(double start, double stop, int count);

inline bool opposite_signs(double a, double b) {
  return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0);
}

/// Plain bisection on [lo, hi] until the bracket width drops below
/// rel_tol * max(|lo|, |hi|) (or abs_floor). Throws NoSignChange when f(lo)
/// and f(hi) share a sign.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol, double abs_floor = 0.0) {
  if (lo > hi) std::swap(lo, hi);
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (!opposite_signs(f_lo, f_hi)) {
    throw NoSignChange("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "]: f(lo) = " + std::to_string(f_lo) + ", f(hi) = " + std::to_string(f_hi));
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double width = hi - lo;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (width <= std::max(rel_tol * scale, abs_floor)) break;
    const double mid = lo + 0.5 * width;
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (opposite_signs(f_lo, f_mid)) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

/// Adjacent grid pairs over which f changes sign. Points where f is NaN are
/// skipped; an exact zero at a grid point yields a degenerate bracket.
template <class F>
std::vector<std::pair<double, double>> sign_change_brackets(F&& f, std::span<const double> grid) {
  std::vector<std::pair<double, double>> brackets;
  if (grid.size() < 2) return brackets;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = values[i];
    const double b = values[i + 1];
    if (std::isnan(a) || std::isnan(b)) continue;
    if (a == 0.0) {
      brackets.emplace_back(grid[i], grid[i]);
    } else if (opposite_signs(a, b)) {
      brackets.emplace_back(grid[i], grid[i + 1]);
    }
  }
  if (values.back() == 0.0) brackets.emplace_back(grid.back(), grid.back());
  return brackets;
}

/// All roots of f visible as sign changes on `grid`, each refined by bisection.
template <class F>
std::vector<double> find_roots(F&& f, std::span<const double> grid, double rel_tol) {
  std::vector<double> roots;
  for (const auto& [lo, hi] : sign_change_brackets(f, grid)) {
    roots.push_back(lo == hi ? lo : bisect(f, lo, hi, rel_tol));
  }
  return roots;
}

}  // namespace ptbilayer
