#include "hypkern/term_expr.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hypkern::hyperbolic {
namespace {

// Truncated power series in rho^2.
using Series = std::vector<Rational>;

constexpr int kHalfOrder = 40;  // series kept to rho^(2 * kHalfOrder)

const std::vector<Rational>& bernoulli_even() {
  // B_0, B_2, B_4, ... up to B_{2 kHalfOrder}
  static const std::vector<Rational> table = [] {
    const int n = 2 * kHalfOrder;
    std::vector<Rational> b(n + 1);
    b[0] = 1;
    for (int m = 1; m <= n; ++m) {
      Rational sum = 0;
      boost::multiprecision::cpp_int binom = 1;  // C(m+1, k)
      for (int k = 0; k < m; ++k) {
        sum += Rational(binom) * b[k];
        binom = binom * (m + 1 - k) / (k + 1);
      }
      b[m] = -sum / (m + 1);
    }
    std::vector<Rational> even;
    for (int m = 0; m <= n; m += 2) even.push_back(b[m]);
    return even;
  }();
  return table;
}

// rho coth rho = sum 2^{2m} B_{2m} rho^{2m} / (2m)!
// rho csch rho = sum (2 - 2^{2m}) B_{2m} rho^{2m} / (2m)!
const Series& rho_coth_series() {
  static const Series s = [] {
    Series out(kHalfOrder + 1);
    boost::multiprecision::cpp_int fact = 1;
    boost::multiprecision::cpp_int pow4 = 1;
    for (int m = 0; m <= kHalfOrder; ++m) {
      if (m > 0) {
        fact *= (2 * m - 1) * (2 * m);
        pow4 *= 4;
      }
      out[m] = Rational(pow4) * bernoulli_even()[m] / Rational(fact);
    }
    return out;
  }();
  return s;
}

const Series& rho_csch_series() {
  static const Series s = [] {
    Series out(kHalfOrder + 1);
    boost::multiprecision::cpp_int fact = 1;
    boost::multiprecision::cpp_int pow4 = 1;
    for (int m = 0; m <= kHalfOrder; ++m) {
      if (m > 0) {
        fact *= (2 * m - 1) * (2 * m);
        pow4 *= 4;
      }
      out[m] = Rational(2 - pow4) * bernoulli_even()[m] / Rational(fact);
    }
    return out;
  }();
  return s;
}

Series multiply(const Series& a, const Series& b) {
  Series out(kHalfOrder + 1, Rational(0));
  for (int i = 0; i <= kHalfOrder; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= kHalfOrder; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series power(const Series& base, int exponent) {
  Series out(kHalfOrder + 1, Rational(0));
  out[0] = 1;
  for (int i = 0; i < exponent; ++i) out = multiply(out, base);
  return out;
}

}  // namespace

TermExpr TermExpr::constant(const Rational& c) { return term(c, TermKey{}); }

TermExpr TermExpr::term(const Rational& c, TermKey key) {
  TermExpr e;
  e.add(key, c);
  return e;
}

void TermExpr::add(const TermKey& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TermExpr TermExpr::derivative() const {
  TermExpr out;
  for (const auto& [k, c] : terms_) {
    // d rho^p = p rho^{p-1}
    if (k.rho_power > 0) {
      out.add({k.rho_power - 1, k.coth_power, k.csch_power, k.inv_t_power}, c * k.rho_power);
    }
    // d coth^q = -q coth^{q-1} csch^2
    if (k.coth_power > 0) {
      out.add({k.rho_power, k.coth_power - 1, k.csch_power + 2, k.inv_t_power},
              -c * k.coth_power);
    }
    // d csch^r = -r coth csch^r
    if (k.csch_power > 0) {
      out.add({k.rho_power, k.coth_power + 1, k.csch_power, k.inv_t_power}, -c * k.csch_power);
    }
    // d e^{-rho^2/4t} = -(rho / 2t) e^{-rho^2/4t}
    out.add({k.rho_power + 1, k.coth_power, k.csch_power, k.inv_t_power + 1}, -c / 2);
  }
  return out;
}

TermExpr TermExpr::divided_by_sinh() const {
  TermExpr out;
  for (const auto& [k, c] : terms_) {
    out.add({k.rho_power, k.coth_power, k.csch_power + 1, k.inv_t_power}, c);
  }
  return out;
}

TermExpr TermExpr::scaled(const Rational& factor) const {
  TermExpr out;
  for (const auto& [k, c] : terms_) out.add(k, c * factor);
  return out;
}

TermExpr TermExpr::operator+(const TermExpr& other) const {
  TermExpr out = *this;
  for (const auto& [k, c] : other.terms_) out.add(k, c);
  return out;
}

TermExpr TermExpr::operator-(const TermExpr& other) const { return *this + other.scaled(-1); }

double TermExpr::evaluate(double rho, double t) const {
  double sum = 0.0;
  for (const auto& [k, c] : terms_) {
    sum += static_cast<double>(c) * std::pow(rho, k.rho_power) *
           std::pow(1.0 / std::tanh(rho), k.coth_power) *
           std::pow(1.0 / std::sinh(rho), k.csch_power) * std::pow(t, -k.inv_t_power);
  }
  return sum;
}

std::string TermExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (k.rho_power) os << "*rho^" << k.rho_power;
    if (k.coth_power) os << "*coth^" << k.coth_power;
    if (k.csch_power) os << "*csch^" << k.csch_power;
    if (k.inv_t_power) os << "*t^-" << k.inv_t_power;
  }
  return os.str();
}

CompiledTermExpr::CompiledTermExpr(const TermExpr& expr) {
  // Laurent coefficients keyed by (t power, rho exponent).
  std::map<std::pair<int, int>, Rational> laurent;
  for (const auto& [k, c] : expr.terms()) {
    direct_.push_back({static_cast<double>(c), k.rho_power, k.coth_power, k.csch_power,
                       k.inv_t_power});
    const Series s =
        multiply(power(rho_coth_series(), k.coth_power), power(rho_csch_series(), k.csch_power));
    const int base = k.rho_power - k.coth_power - k.csch_power;
    for (int j = 0; j <= kHalfOrder; ++j) {
      const int e = base + 2 * j;
      if (e > kSeriesOrder || s[j] == 0) continue;
      laurent[{k.inv_t_power, e}] += c * s[j];
    }
  }
  for (const auto& [key, c] : laurent) {
    const auto [k, e] = key;
    if (e < 0) {
      if (c != 0) {
        throw std::logic_error("CompiledTermExpr: expression is singular at rho = 0");
      }
      continue;
    }
    auto& coeffs = series_[k];
    if (coeffs.empty()) coeffs.assign(kSeriesOrder + 1, 0.0);
    coeffs[e] = static_cast<double>(c);
  }
}

double CompiledTermExpr::evaluate_direct(double rho, double t) const {
  const double coth = 1.0 / std::tanh(rho);
  const double csch = 1.0 / std::sinh(rho);
  double sum = 0.0;
  for (const Term& term : direct_) {
    sum += term.c * std::pow(rho, term.p) * std::pow(coth, term.q) * std::pow(csch, term.r) *
           std::pow(t, -term.k);
  }
  return sum;
}

double CompiledTermExpr::evaluate_series(double rho, double t) const {
  double sum = 0.0;
  for (const auto& [k, coeffs] : series_) {
    double poly = 0.0;
    for (int e = kSeriesOrder; e >= 0; --e) poly = poly * rho + coeffs[e];
    sum += poly * std::pow(t, -k);
  }
  return sum;
}

double CompiledTermExpr::operator()(double rho, double t) const {
  return rho < kSeriesSwitch ? evaluate_series(rho, t) : evaluate_direct(rho, t);
}

}  // namespace hypkern::hyperbolic
