#pragma once

#include <vector>

namespace hypkern {

/// Natural cubic spline through (nodes, values), identically zero outside
/// [nodes.front(), nodes.back()].
class SampledFunction {
 public:
  /// Throws DomainError unless nodes are strictly increasing, finite, at
  /// least two, and the same length as values.
  SampledFunction(std::vector<double> nodes, std::vector<double> values);

  double operator()(double x) const;

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  double support_min() const { return nodes_.front(); }
  double support_max() const { return nodes_.back(); }

  SampledFunction scaled(double factor) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> second_;  // spline second derivatives at the nodes
};

}  // namespace hypkern
