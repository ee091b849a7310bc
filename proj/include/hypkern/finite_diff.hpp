#pragma once

#include <algorithm>
#include <cmath>

// Central differences with one Richardson step (fourth order).

namespace hypkern::fd {

/// Default step for a function of x: max(1e-4, 1e-4 |x|).
inline double default_step(double x) { return std::max(1e-4, 1e-4 * std::abs(x)); }

template <class F>
double first_derivative(F&& f, double x, double h) {
  auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
  return (4.0 * d(h) - d(2.0 * h)) / 3.0;
}

template <class F>
double second_derivative(F&& f, double x, double h) {
  const double fx = f(x);
  auto d = [&](double s) { return (f(x + s) - 2.0 * fx + f(x - s)) / (s * s); };
  return (4.0 * d(h) - d(2.0 * h)) / 3.0;
}

}  // namespace hypkern::fd
