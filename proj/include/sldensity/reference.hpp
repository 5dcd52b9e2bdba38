#pragma once

// Closed-form reference problems: hydrogen (attractive Coulomb), repulsive
// Coulomb and Bessel potentials, together with the special functions their
// densities and principal solutions need. Everything here is independent of
// the shooting/approximant pipeline so it can serve as a test oracle.

#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <numbers>
#include <string>
#include <vector>

#include "sldensity/error.hpp"
#include "sldensity/potential.hpp"

namespace sld {

/// Gamma function for x > 0 (Lanczos, g = 7, nine terms; reflection below 1/2).
inline double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
  static constexpr std::array<double, 9> kLanczos = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double s = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) s += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + 7.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * s;
}

/// Bessel function of the first kind J_nu(z), nu >= 0, z >= 0: ascending
/// series for z < 12, Hankel asymptotic expansion beyond. Absolute accuracy is
/// about 1e-15 below the switch and 1e-12 just above it, where the asymptotic
/// series is cut at its smallest term.
inline double bessel_j(double nu, double z) {
  if (!(nu >= 0.0) || !(z >= 0.0)) throw DomainError("bessel_j: need nu >= 0 and z >= 0");
  if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (z < 12.0) {
    // Terms reach e^z / z before cancelling; extended precision keeps the digits.
    const long double h = 0.5L * z;
    long double term = std::pow(h, static_cast<long double>(nu)) / gamma_fn(nu + 1.0);
    long double sum = term;
    const long double h2 = h * h;
    for (int k = 1; k < 500; ++k) {
      term *= -h2 / (k * (k + static_cast<long double>(nu)));
      sum += term;
      if (std::abs(term) < 1e-20L * std::abs(sum)) break;
    }
    return static_cast<double>(sum);
  }
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double ak = 1.0;  // a_k(nu) / z^k
  double last = INFINITY;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    ak *= (mu - odd * odd) / (k * 8.0 * z);
    if (std::abs(ak) >= last) break;  // asymptotic series started diverging
    last = std::abs(ak);
    // k odd feeds Q with sign (-1)^{(k-1)/2}; k even feeds P with sign (-1)^{k/2}.
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * ak;
    } else {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * ak;
    }
    if (std::abs(ak) < 1e-17) break;
  }
  const double chi = z - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

/// k_ell(lambda) = prod_{j=1}^{ell} (4 lambda j^2 + a^2) / ((2 ell + 1)!)^2.
inline double k_ell(int ell, double a, double lambda) {
  if (ell < 0) throw DomainError("k_ell: ell must be nonnegative");
  double prod = 1.0;
  for (int j = 1; j <= ell; ++j) prod *= 4.0 * lambda * j * j + a * a;
  const double f = std::tgamma(2.0 * ell + 2.0);  // (2 ell + 1)!
  return prod / (f * f);
}

struct ExactExample {
  enum class Kind { Hydrogen, Coulomb, BesselFrac, BesselInt };

  Kind kind = Kind::Hydrogen;
  int ell = 0;      // hydrogen / Coulomb angular momentum, Bessel integer order
  double a = 1.0;   // Coulomb strength: q = ell(ell+1)/x^2 - a/x
  double nu = 0.0;  // Bessel order

  static ExactExample hydrogen(int ell, double a) {
    if (!(a > 0.0)) throw DomainError("hydrogen example needs a > 0");
    return {Kind::Hydrogen, ell, a, 0.0};
  }
  static ExactExample coulomb(int ell, double a) {
    if (!(a < 0.0)) throw DomainError("repulsive Coulomb example needs a < 0");
    return {Kind::Coulomb, ell, a, 0.0};
  }
  static ExactExample bessel(double nu) {
    if (!(nu >= 0.0)) throw DomainError("Bessel example needs nu >= 0");
    const double r = std::round(nu);
    if (nu == r) return {Kind::BesselInt, static_cast<int>(r), 0.0, nu};
    return {Kind::BesselFrac, 0, 0.0, nu};
  }

  Potential potential() const {
    switch (kind) {
      case Kind::Hydrogen:
      case Kind::Coulomb: return make_rational(-a, ell * (ell + 1.0));
      case Kind::BesselFrac:
      case Kind::BesselInt: return make_rational(0.0, nu * nu - 0.25);
    }
    throw DomainError("unknown example");
  }

  std::string name() const {
    switch (kind) {
      case Kind::Hydrogen: return "hydrogen(ell=" + std::to_string(ell) + ",a=" + detail::format_number(a) + ")";
      case Kind::Coulomb: return "coulomb(ell=" + std::to_string(ell) + ",a=" + detail::format_number(a) + ")";
      case Kind::BesselFrac:
      case Kind::BesselInt: {
        std::ostringstream os;
        os << "bessel(nu=" << std::setprecision(6) << nu << ")";
        return os.str();
      }
    }
    return "?";
  }
};

inline double exact_density(const ExactExample& ex, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("exact_density: lambda must be positive");
  switch (ex.kind) {
    case ExactExample::Kind::Hydrogen: {
      const double u = std::numbers::pi * ex.a / std::sqrt(lambda);
      return k_ell(ex.ell, ex.a, lambda) * ex.a / -std::expm1(-u);
    }
    case ExactExample::Kind::Coulomb: {
      const double aa = std::abs(ex.a);
      const double u = std::numbers::pi * aa / std::sqrt(lambda);
      return k_ell(ex.ell, ex.a, lambda) * aa / std::expm1(u);
    }
    case ExactExample::Kind::BesselFrac:
    case ExactExample::Kind::BesselInt: {
      const double g = gamma_fn(ex.nu + 1.0);
      return std::pow(lambda, ex.nu) / (std::pow(2.0, 2.0 * ex.nu + 1.0) * g * g);
    }
  }
  throw DomainError("unknown example");
}

/// phi(x, lambda) = 2^nu Gamma(nu+1) lambda^{-nu/2} x^{1/2} J_nu(sqrt(lambda) x).
inline double exact_phi_bessel(double nu, double lambda, double x) {
  if (!(lambda > 0.0) || !(x > 0.0)) throw DomainError("exact_phi_bessel: need lambda > 0 and x > 0");
  return std::pow(2.0, nu) * gamma_fn(nu + 1.0) * std::pow(lambda, -0.5 * nu) * std::sqrt(x) *
         bessel_j(nu, std::sqrt(lambda) * x);
}

namespace detail {

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
template <int Order>
struct GaussLegendre {
  std::array<double, Order> x{};
  std::array<double, Order> w{};

  GaussLegendre() {
    for (int i = 0; i < Order; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (Order + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int n = 2; n <= Order; ++n) {
          const double p2 = ((2.0 * n - 1.0) * z * p1 - (n - 1.0) * p0) / n;
          p0 = p1;
          p1 = p2;
        }
        dp = Order * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[static_cast<std::size_t>(i)] = z;
      w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

template <class F>
double composite_gauss_legendre(F&& f, double a, double b, int panels) {
  static const GaussLegendre<20> gl;
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h;
    double s = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * f(mid + 0.5 * h * gl.x[i]);
    sum += 0.5 * h * s;
  }
  return sum;
}

}  // namespace detail

/// rho(lambda) = int_0^lambda f(mu) dmu for the closed-form examples, with
/// rho(0) = 0 (discrete spectrum excluded). Bessel: exact antiderivative.
/// Coulomb-type: composite Gauss-Legendre in t = sqrt(mu), refined until two
/// panel counts agree to 1e-13.
inline double rho_closed_form_oracle(const ExactExample& ex, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("rho_closed_form_oracle: lambda must be positive");
  if (ex.kind == ExactExample::Kind::BesselFrac || ex.kind == ExactExample::Kind::BesselInt) {
    const double g = gamma_fn(ex.nu + 1.0);
    return std::pow(lambda, ex.nu + 1.0) / (std::pow(2.0, 2.0 * ex.nu + 1.0) * (ex.nu + 1.0) * g * g);
  }
  auto integrand = [&](double t) { return t > 0.0 ? 2.0 * t * exact_density(ex, t * t) : 0.0; };
  const double b = std::sqrt(lambda);
  double prev = detail::composite_gauss_legendre(integrand, 0.0, b, 16);
  for (int panels = 32; panels <= 8192; panels *= 2) {
    const double cur = detail::composite_gauss_legendre(integrand, 0.0, b, panels);
    if (std::abs(cur - prev) <= 1e-13 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace sld
