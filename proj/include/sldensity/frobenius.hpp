#pragma once

// Principal Frobenius solution phi(x, lambda) = sum_n a_n x^{n+nu}, a_0 = 1,
// built from the larger indicial root of r^2 - r - q0 = 0.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "sldensity/error.hpp"
#include "sldensity/potential.hpp"

namespace sld {

inline constexpr int kDefaultFrobeniusTerms = 200;

/// Larger root of r^2 - r - q0 = 0.
inline double indicial_root(double q0) {
  if (!(q0 >= -0.25)) throw DomainError("indicial_root: q0 < -1/4");
  return 0.5 + 0.5 * std::sqrt(1.0 + 4.0 * q0);
}

struct FrobeniusExpansion {
  double nu = 1.0;
  double lambda = 0.0;
  std::vector<double> coeffs;  // a_0 .. a_N, a_0 = 1
};

/// Value of the truncated series and its derivative.
struct PhiValue {
  double phi = 0.0;
  double dphi = 0.0;
  int n_used = 0;
  /// sum |a_n x^{n+nu}| / |phi|; large values mean the sum lost digits to cancellation.
  double cancellation = 1.0;
};

namespace detail {
inline double recurrence_denominator(double nu, int n, double q0) {
  return (nu + n - 1.0) * (nu + n) - q0;
}

/// Right-hand side of the recurrence for a_n (n >= 1) given a_0 .. a_{n-1}.
inline double recurrence_rhs(const std::vector<double>& a, const std::vector<double>& qs, double q1,
                             double lambda, int n) {
  double s = q1 * a[static_cast<std::size_t>(n - 1)];
  if (n >= 2) {
    s -= lambda * a[static_cast<std::size_t>(n - 2)];
    for (int k = 0; k <= n - 2; ++k) {
      const double qk = qs[static_cast<std::size_t>(k)];
      if (qk != 0.0) s += qk * a[static_cast<std::size_t>(n - 2 - k)];
    }
  }
  return s;
}
}  // namespace detail

inline FrobeniusExpansion build_coeffs(const Potential& p, double lambda, int n_max = kDefaultFrobeniusTerms) {
  if (n_max < 2) throw DomainError("build_coeffs: n_max must be at least 2");
  FrobeniusExpansion fe;
  fe.nu = indicial_root(p.q0());
  fe.lambda = lambda;
  fe.coeffs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  fe.coeffs[0] = 1.0;

  std::vector<double> qs(static_cast<std::size_t>(n_max) + 1);
  for (int k = 0; k <= n_max; ++k) qs[static_cast<std::size_t>(k)] = p.series_coeff(k);

  for (int n = 1; n <= n_max; ++n) {
    const double den = detail::recurrence_denominator(fe.nu, n, p.q0());
    if (den == 0.0) {
      std::ostringstream os;
      os << "build_coeffs: resonant recurrence at n = " << n << " (nu = " << fe.nu << ")";
      throw ResonanceError(os.str());
    }
    fe.coeffs[static_cast<std::size_t>(n)] = detail::recurrence_rhs(fe.coeffs, qs, p.q1(), lambda, n) / den;
  }
  return fe;
}

/// Residual of the recurrence at index n >= 1, for post-construction checks.
inline double recurrence_residual(const Potential& p, const FrobeniusExpansion& fe, int n) {
  std::vector<double> qs(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) qs[static_cast<std::size_t>(k)] = p.series_coeff(k);
  return detail::recurrence_denominator(fe.nu, n, p.q0()) * fe.coeffs[static_cast<std::size_t>(n)] -
         detail::recurrence_rhs(fe.coeffs, qs, p.q1(), fe.lambda, n);
}

/// End of the interval (0, x0] on which the truncated series is used:
/// |q0|/sqrt(lambda), or max(|q0|, |q1|, 1/2)/sqrt(lambda) when q0 = 0.
inline double series_cutoff(const Potential& p, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("series_cutoff: lambda must be positive");
  const double q0 = std::abs(p.q0());
  if (q0 != 0.0) return q0 / std::sqrt(lambda);
  return std::max({q0, std::abs(p.q1()), 0.5}) / std::sqrt(lambda);
}

/// Sums phi and phi' until three consecutive terms drop below 1e-16 of the partial sums.
inline PhiValue eval_phi(const FrobeniusExpansion& fe, double x) {
  if (!(x > 0.0)) throw DomainError("eval_phi: x must be positive");
  constexpr double kEps = 1e-16;
  double s = 0.0, ds = 0.0, abs_sum = 0.0;
  double xn = 1.0;  // x^n
  int small_run = 0;
  const int n_max = static_cast<int>(fe.coeffs.size()) - 1;
  for (int n = 0; n <= n_max; ++n) {
    const double t = fe.coeffs[static_cast<std::size_t>(n)] * xn;
    const double dt = (n + fe.nu) * t;
    s += t;
    ds += dt;
    abs_sum += std::abs(t);
    if (std::abs(t) < kEps * std::abs(s) && std::abs(dt) < kEps * std::abs(ds)) {
      if (++small_run == 3) {
        PhiValue v;
        const double xnu = std::pow(x, fe.nu);
        v.phi = xnu * s;
        v.dphi = xnu / x * ds;
        v.n_used = n + 1;
        v.cancellation = s != 0.0 ? abs_sum / std::abs(s) : INFINITY;
        return v;
      }
    } else {
      small_run = 0;
    }
    xn *= x;
  }
  std::ostringstream os;
  os << "eval_phi: Frobenius series not converged in " << n_max + 1 << " terms at x = " << x
     << " (lambda = " << fe.lambda << ")";
  throw SeriesNotConverged(os.str());
}

}  // namespace sld
