#pragma once

// Approximants to the solution (P, Q, R) of the Appell system
//
//   P' = (lambda - q) Q,   Q' = -2P + 2(lambda - q) R,   R' = -Q,
//
// normalised at infinity by (P, Q, R) -> (sqrt(lambda), 0, 1/sqrt(lambda)).
// Along any solution y of -y'' + q y = lambda y the form P y^2 + Q y y' + R y'^2
// is then constant in x.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "sldensity/error.hpp"
#include "sldensity/potential.hpp"

namespace sld {

enum class Method {
  F1,   ///< (sqrt(lambda), 0, 1/sqrt(lambda))
  F2,   ///< first WKB correction, needs q'
  F3,   ///< second correction exactly as printed in the source formulas
  F3R,  ///< second correction re-derived from the Appell system (gamma_0^2 gamma_2 in R_3)
  fN,   ///< asymptotic coefficients for q = A/x + B/x^2
};

inline std::string to_string(Method m) {
  switch (m) {
    case Method::F1: return "F1";
    case Method::F2: return "F2";
    case Method::F3: return "F3";
    case Method::F3R: return "F3R";
    case Method::fN: return "fN";
  }
  return "?";
}

inline Method method_from_string(const std::string& s) {
  if (s == "F1") return Method::F1;
  if (s == "F2") return Method::F2;
  if (s == "F3") return Method::F3;
  if (s == "F3R") return Method::F3R;
  if (s == "fN") return Method::fN;
  throw ParseError("unknown method '" + s + "' (expected F1, F2, F3, F3R or fN)");
}

struct AppellState {
  double P = 0.0;
  double Q = 0.0;
  double R = 0.0;
  double x = 0.0;
  double lambda = 0.0;
  Method method = Method::F1;
  int order = 0;  ///< N for fN, j for F^j
};

/// 4PR - Q^2 - 4; zero for the exact solution.
inline double conservation_defect(const AppellState& s) { return 4.0 * s.P * s.R - s.Q * s.Q - 4.0; }

inline AppellState f1(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("f1: lambda must be positive");
  const double r = std::sqrt(lambda);
  return {r, 0.0, 1.0 / r, INFINITY, lambda, Method::F1, 1};
}

namespace detail {

/// gamma_k = d^k/dx^k (lambda - q)^{-1/2} for k = 0..3.
struct Gammas {
  double g0, g1, g2, g3;
  double w;  // lambda - q
};

inline Gammas wkb_gammas(const Potential& p, double lambda, double x) {
  const PotentialValue v = p.derivatives(x);
  const double w = lambda - v.q;
  if (!(w > 0.0)) {
    std::ostringstream os;
    os << "turning point: lambda - q(x) = " << w << " <= 0 at x = " << x << " (lambda = " << lambda << ")";
    throw TurningPointError(os.str());
  }
  const double g0 = 1.0 / std::sqrt(w);
  const double w32 = g0 * g0 * g0;   // w^{-3/2}
  const double w52 = w32 / w;        // w^{-5/2}
  const double w72 = w52 / w;        // w^{-7/2}
  const double q1 = v.dq, q2 = v.d2q, q3 = v.d3q;
  return {g0, 0.5 * q1 * w32, 0.5 * q2 * w32 + 0.75 * q1 * q1 * w52,
          0.5 * q3 * w32 + 2.25 * q1 * q2 * w52 + 1.875 * q1 * q1 * q1 * w72, w};
}

}  // namespace detail

/// P = sqrt(lambda - q), Q = -q'/(2 (lambda - q)^{3/2}), R = 1/sqrt(lambda - q).
inline AppellState f2(const Potential& p, double lambda, double x) {
  const auto g = detail::wkb_gammas(p, lambda, x);
  return {1.0 / g.g0, -g.g1, g.g0, x, lambda, Method::F2, 2};
}

/// Second-order member as printed:
///   P3 = P2 + gamma2/4 + gamma1^2/(8 gamma0)
///   Q3 = Q2 - d/dx{ -gamma0^2 gamma2/4 + gamma0 gamma2^2/8 }
///   R3 = R2 - gamma2/4 + gamma0 gamma1^2/8
/// R3 and Q3 are not dimensionally homogeneous; see f3_reconstructed.
inline AppellState f3(const Potential& p, double lambda, double x) {
  const auto g = detail::wkb_gammas(p, lambda, x);
  const double P2 = 1.0 / g.g0, Q2 = -g.g1, R2 = g.g0;
  const double P = P2 + 0.25 * g.g2 + 0.125 * g.g1 * g.g1 / g.g0;
  const double dbrace = -0.25 * (2.0 * g.g0 * g.g1 * g.g2 + g.g0 * g.g0 * g.g3) +
                        0.125 * (g.g1 * g.g2 * g.g2 + 2.0 * g.g0 * g.g2 * g.g3);
  const double Q = Q2 - dbrace;
  const double R = R2 - 0.25 * g.g2 + 0.125 * g.g0 * g.g1 * g.g1;
  return {P, Q, R, x, lambda, Method::F3, 3};
}

/// Second-order member obtained by one Picard sweep of the third-order
/// equation R'''/2 + 2(lambda - q) R' - q' R = 0 about R = gamma0:
///   R3 = gamma0 - gamma0^2 gamma2/4 + gamma0 gamma1^2/8,  Q3 = -R3',
///   P3 = P2 + gamma2/4 + gamma1^2/(8 gamma0).
inline AppellState f3_reconstructed(const Potential& p, double lambda, double x) {
  const auto g = detail::wkb_gammas(p, lambda, x);
  const double P = 1.0 / g.g0 + 0.25 * g.g2 + 0.125 * g.g1 * g.g1 / g.g0;
  const double R = g.g0 - 0.25 * g.g0 * g.g0 * g.g2 + 0.125 * g.g0 * g.g1 * g.g1;
  const double dR = g.g1 - 0.25 * (2.0 * g.g0 * g.g1 * g.g2 + g.g0 * g.g0 * g.g3) +
                    0.125 * (g.g1 * g.g1 * g.g1 + 2.0 * g.g0 * g.g1 * g.g2);
  return {P, -dR, R, x, lambda, Method::F3R, 3};
}

/// Coefficients of P_N = sqrt(lambda) + sum a_j/x^j, Q_N = sum b_j/x^{j+1},
/// R_N = 1/sqrt(lambda) + sum c_j/x^j for q = A/x + B/x^2. Index 0 is unused
/// (stored as zero) so that a[j] is a_j.
struct AsymptoticCoeffs {
  double A = 0.0;
  double B = 0.0;
  double lambda = 0.0;
  int N = 0;
  std::vector<double> a, b, c;
};

inline AsymptoticCoeffs asymptotic_coeffs(double A, double B, double lambda, int N) {
  if (!(lambda > 0.0)) throw DomainError("asymptotic_coeffs: lambda must be positive");
  if (N < 1) throw DomainError("asymptotic_coeffs: N must be at least 1");
  AsymptoticCoeffs k{A, B, lambda, N, std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0),
                     std::vector<double>(N + 1, 0.0)};
  const double rs = std::sqrt(lambda);
  auto at = [](const std::vector<double>& v, int j) { return j >= 1 ? v[static_cast<std::size_t>(j)] : 0.0; };
  for (int j = 1; j <= N; ++j) {
    const double t1 = (A * at(k.b, j - 1) + B * at(k.b, j - 2)) / j;
    double t2 = 0.5 * (j - 1) * at(k.b, j - 2) - A * at(k.c, j - 1) - B * at(k.c, j - 2);
    if (j == 1) t2 -= A / rs;
    if (j == 2) t2 -= B / rs;
    const auto uj = static_cast<std::size_t>(j);
    k.a[uj] = 0.5 * (t1 + t2);
    k.c[uj] = (t1 - t2) / (2.0 * lambda);
    k.b[uj] = j * k.c[uj];
  }
  return k;
}

inline AppellState fN(const AsymptoticCoeffs& k, double x) {
  if (!(x > 0.0)) throw DomainError("fN: x must be positive");
  const double rs = std::sqrt(k.lambda);
  const double r = 1.0 / x;
  double P = 0.0, Q = 0.0, R = 0.0;
  // Horner in 1/x.
  for (int j = k.N; j >= 1; --j) {
    const auto uj = static_cast<std::size_t>(j);
    P = (P + k.a[uj]) * r;
    Q = (Q + k.b[uj]) * r;
    R = (R + k.c[uj]) * r;
  }
  P += rs;
  Q *= r;
  R += 1.0 / rs;
  if (!(R > 0.0)) {
    std::ostringstream os;
    os << "fN: R_N = " << R << " <= 0 at x = " << x << "; matching point too small";
    throw MatchingPointTooSmall(os.str());
  }
  return {P, Q, R, x, k.lambda, Method::fN, k.N};
}

struct AppellResiduals {
  double P = 0.0;
  double Q = 0.0;
  double R = 0.0;
};

/// Residuals of (P_N, Q_N, R_N) in the Appell system once the coefficient
/// conditions hold; only the tail terms beyond order N survive.
inline AppellResiduals residuals(const AsymptoticCoeffs& k, double x) {
  if (!(x > 0.0)) throw DomainError("residuals: x must be positive");
  const int N = k.N;
  auto at = [](const std::vector<double>& v, int j) { return j >= 1 ? v[static_cast<std::size_t>(j)] : 0.0; };
  const double bN = at(k.b, N), bN1 = at(k.b, N - 1);
  const double cN = at(k.c, N), cN1 = at(k.c, N - 1);
  const double xN1 = std::pow(x, N + 1);
  const double xN2 = xN1 * x;
  const double xN3 = xN2 * x;
  AppellResiduals out;
  out.P = (k.A * bN + k.B * bN1) / xN2 + k.B * bN / xN3;
  out.Q = (-N * bN1 + 2.0 * k.A * cN + 2.0 * k.B * cN1) / xN1 + (2.0 * k.B * cN - (N + 1) * bN) / xN2;
  // For N = 1 the B/x^2 part of 2 (lambda - q) / sqrt(lambda) is not absorbed by any coefficient.
  if (N == 1) out.Q += 2.0 * k.B / (std::sqrt(k.lambda) * x * x);
  out.R = 0.0;
  return out;
}

}  // namespace sld
