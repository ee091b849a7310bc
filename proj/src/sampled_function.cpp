#include "hypkern/sampled_function.hpp"

#include <algorithm>
#include <cmath>

#include "hypkern/errors.hpp"

namespace hypkern {

SampledFunction::SampledFunction(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  const std::size_t n = nodes_.size();
  if (n < 2) throw DomainError("SampledFunction: need at least two nodes");
  if (values_.size() != n) throw DomainError("SampledFunction: nodes and values differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(nodes_[i]) || !std::isfinite(values_[i])) {
      throw DomainError("SampledFunction: non-finite node or value");
    }
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw DomainError("SampledFunction: nodes must be strictly increasing");
    }
  }

  // Tridiagonal solve for the natural spline (zero second derivative at ends).
  second_.assign(n, 0.0);
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double sig = (nodes_[i] - nodes_[i - 1]) / (nodes_[i + 1] - nodes_[i - 1]);
    const double p = sig * second_[i - 1] + 2.0;
    second_[i] = (sig - 1.0) / p;
    const double slope = (values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]) -
                         (values_[i] - values_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
    u[i] = (6.0 * slope / (nodes_[i + 1] - nodes_[i - 1]) - sig * u[i - 1]) / p;
  }
  second_[n - 1] = 0.0;
  for (std::size_t k = n - 1; k-- > 0;) second_[k] = second_[k] * second_[k + 1] + u[k];
  second_[0] = 0.0;
}

double SampledFunction::operator()(double x) const {
  if (!(x >= nodes_.front() && x <= nodes_.back())) return 0.0;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
  if (hi >= nodes_.size()) hi = nodes_.size() - 1;
  const std::size_t lo = hi - 1;
  const double h = nodes_[hi] - nodes_[lo];
  const double a = (nodes_[hi] - x) / h;
  const double b = (x - nodes_[lo]) / h;
  return a * values_[lo] + b * values_[hi] +
         ((a * a * a - a) * second_[lo] + (b * b * b - b) * second_[hi]) * (h * h) / 6.0;
}

SampledFunction SampledFunction::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return SampledFunction(nodes_, std::move(v));
}

}  // namespace hypkern
