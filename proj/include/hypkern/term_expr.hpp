#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Exact symbolic sums of terms
//   c * rho^p * coth(rho)^q * csch(rho)^r * t^{-k}
// with rational c. Every expression implicitly multiplies e^{-rho^2 / 4t};
// differentiation in rho accounts for that factor. The family is closed under
// d/drho and under division by sinh(rho).

namespace hypkern::hyperbolic {

using Rational = boost::multiprecision::cpp_rational;

struct TermKey {
  int rho_power = 0;
  int coth_power = 0;
  int csch_power = 0;
  int inv_t_power = 0;

  auto operator<=>(const TermKey&) const = default;
};

class TermExpr {
 public:
  TermExpr() = default;

  static TermExpr constant(const Rational& c);
  static TermExpr term(const Rational& c, TermKey key);

  /// d/drho of (expression * e^{-rho^2/4t}), divided again by e^{-rho^2/4t}.
  TermExpr derivative() const;
  TermExpr divided_by_sinh() const;
  TermExpr scaled(const Rational& factor) const;

  TermExpr operator+(const TermExpr& other) const;
  TermExpr operator-(const TermExpr& other) const;
  bool operator==(const TermExpr& other) const = default;

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<TermKey, Rational>& terms() const { return terms_; }

  /// Direct evaluation of the sum (without the Gaussian factor).
  double evaluate(double rho, double t) const;

  std::string to_string() const;

 private:
  void add(const TermKey& key, const Rational& c);

  std::map<TermKey, Rational> terms_;  // canonical order; no zero coefficients
};

/// A TermExpr prepared for repeated floating-point evaluation. Near rho = 0
/// the individual terms are singular while their sum is regular; there the
/// expression is evaluated from its exact Laurent expansion, whose negative
/// powers cancel identically.
class CompiledTermExpr {
 public:
  /// Below this rho the Laurent expansion is used.
  static constexpr double kSeriesSwitch = 0.5;
  /// Highest power of rho kept in the expansion.
  static constexpr int kSeriesOrder = 40;

  /// Throws std::logic_error if the expansion has a nonvanishing singular part.
  explicit CompiledTermExpr(const TermExpr& expr);

  /// Value of the expression (without the Gaussian factor).
  double operator()(double rho, double t) const;

  double evaluate_direct(double rho, double t) const;
  double evaluate_series(double rho, double t) const;

 private:
  struct Term {
    double c;
    int p, q, r, k;
  };
  std::vector<Term> direct_;
  // series_[k] holds coefficients of rho^0 .. rho^kSeriesOrder multiplying t^{-k}
  std::map<int, std::vector<double>> series_;
};

}  // namespace hypkern::hyperbolic
