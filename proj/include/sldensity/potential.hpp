#pragma once

// Potentials q(x) = q0/x^2 + q1/x + tail(x) with a regular singular point at
// x = 0. The tail is analytic and supplies both closed-form values (with
// derivatives up to third order) and, where known, its Maclaurin coefficients
// for the Frobenius recurrence.

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sldensity/error.hpp"

namespace sld {

/// q and its first three derivatives at a point.
struct PotentialValue {
  double q = 0.0;
  double dq = 0.0;
  double d2q = 0.0;
  double d3q = 0.0;
};

struct ZeroTail {};

/// Polynomial tail sum_k coeffs[k] x^k, i.e. coeffs[k] = q_{k+2}.
/// Coefficients beyond the stored ones are zero.
struct PowerSeriesTail {
  std::vector<double> coeffs;
};

/// Named analytic term evaluated in closed form.
struct ClosedFormTail {
  using Evaluator = std::function<std::array<double, 4>(double)>;
  /// Coefficient of x^k in the Maclaurin expansion of the term.
  using CoefficientRule = std::function<double(int)>;

  std::string name;
  Evaluator eval;
  CoefficientRule coeff;  // may be empty
};

using PotentialTail = std::variant<ZeroTail, PowerSeriesTail, ClosedFormTail>;

class Potential {
 public:
  Potential(double q0, double q1, PotentialTail tail = ZeroTail{}, std::string label = {})
      : q0_(q0), q1_(q1), tail_(std::move(tail)), label_(std::move(label)) {
    if (!(q0 >= -0.25) || !std::isfinite(q0) || !std::isfinite(q1)) {
      std::ostringstream os;
      os << "invalid potential: q0 = " << q0 << " (need q0 >= -1/4, finite q1)";
      throw InvalidPotential(os.str());
    }
    if (const auto* ps = std::get_if<PowerSeriesTail>(&tail_)) {
      for (double c : ps->coeffs) {
        if (!std::isfinite(c)) throw InvalidPotential("invalid potential: non-finite series coefficient");
      }
    }
    if (const auto* cf = std::get_if<ClosedFormTail>(&tail_)) {
      if (!cf->eval) throw InvalidPotential("invalid potential: closed-form tail '" + cf->name + "' has no evaluator");
    }
  }

  double q0() const { return q0_; }
  double q1() const { return q1_; }
  const PotentialTail& tail() const { return tail_; }
  const std::string& label() const { return label_; }

  /// True when q = q1/x + q0/x^2 exactly (the form the asymptotic f^N family needs).
  bool is_rational() const {
    if (std::holds_alternative<ZeroTail>(tail_)) return true;
    if (const auto* ps = std::get_if<PowerSeriesTail>(&tail_)) {
      for (double c : ps->coeffs) {
        if (c != 0.0) return false;
      }
      return true;
    }
    return false;
  }

  /// Neither q0 nor q1 is nonzero; the endpoint x = 0 is then regular.
  bool is_regular_at_zero() const { return q0_ == 0.0 && q1_ == 0.0; }

  double operator()(double x) const { return derivatives(x).q; }

  PotentialValue derivatives(double x) const {
    const double r = 1.0 / x;
    const double r2 = r * r;
    const double r3 = r2 * r;
    const double r4 = r2 * r2;
    const double r5 = r4 * r;
    PotentialValue v;
    v.q = q0_ * r2 + q1_ * r;
    v.dq = -2.0 * q0_ * r3 - q1_ * r2;
    v.d2q = 6.0 * q0_ * r4 + 2.0 * q1_ * r3;
    v.d3q = -24.0 * q0_ * r5 - 6.0 * q1_ * r4;

    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, PowerSeriesTail>) {
            // Horner for the polynomial and its first three derivatives.
            double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
            for (auto it = t.coeffs.rbegin(); it != t.coeffs.rend(); ++it) {
              p3 = p3 * x + 3.0 * p2;
              p2 = p2 * x + 2.0 * p1;
              p1 = p1 * x + p0;
              p0 = p0 * x + *it;
            }
            v.q += p0;
            v.dq += p1;
            v.d2q += p2;
            v.d3q += p3;
          } else if constexpr (std::is_same_v<T, ClosedFormTail>) {
            const auto d = t.eval(x);
            v.q += d[0];
            v.dq += d[1];
            v.d2q += d[2];
            v.d3q += d[3];
          }
        },
        tail_);
    return v;
  }

  /// q_{k+2}: coefficient of x^k in the analytic part of q.
  double series_coeff(int k) const {
    if (k < 0) throw DomainError("series_coeff: k must be nonnegative");
    return std::visit(
        [&](const auto& t) -> double {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, ZeroTail>) {
            return 0.0;
          } else if constexpr (std::is_same_v<T, PowerSeriesTail>) {
            return static_cast<std::size_t>(k) < t.coeffs.size() ? t.coeffs[static_cast<std::size_t>(k)] : 0.0;
          } else {
            if (!t.coeff) {
              throw UnsupportedOperation("series_coeff: closed-form tail '" + t.name +
                                         "' has no Maclaurin coefficient rule");
            }
            return t.coeff(k);
          }
        },
        tail_);
  }

 private:
  double q0_;
  double q1_;
  PotentialTail tail_;
  std::string label_;
};

inline double series_coeff(const Potential& p, int k) { return p.series_coeff(k); }

namespace detail {
inline std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}
}  // namespace detail

/// q(x) = A/x + B/x^2.
inline Potential make_rational(double A, double B) {
  if (!(B >= -0.25)) {
    throw InvalidPotential("invalid potential: B = " + detail::format_number(B) +
                           " < -1/4 (oscillatory at x = 0)");
  }
  return Potential(B, A, ZeroTail{},
                   "rational:A=" + detail::format_number(A) + ",B=" + detail::format_number(B));
}

/// q(x) = ell(ell+1)/x^2 - a/x + 15 x^2 exp(-x).
inline Potential make_barrier(int ell, double a) {
  if (ell < 0) throw DomainError("make_barrier: ell must be nonnegative");
  ClosedFormTail bump;
  bump.name = "15x^2exp(-x)";
  bump.eval = [](double x) {
    const double e = 15.0 * std::exp(-x);
    const double x2 = x * x;
    return std::array<double, 4>{e * x2, e * (2.0 * x - x2), e * (2.0 - 4.0 * x + x2),
                                 e * (-6.0 + 6.0 * x - x2)};
  };
  // 15 x^2 e^{-x} = sum_{k>=2} (-1)^k 15/(k-2)! x^k
  bump.coeff = [](int k) {
    if (k < 2) return 0.0;
    const double mag = 15.0 / std::tgamma(static_cast<double>(k - 1));
    return (k % 2 == 0) ? mag : -mag;
  };
  const double l = static_cast<double>(ell);
  return Potential(l * (l + 1.0), -a, std::move(bump),
                   "barrier:ell=" + std::to_string(ell) + ",a=" + detail::format_number(a));
}

}  // namespace sld
