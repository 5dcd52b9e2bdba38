#pragma once

// rho(lambda_j) = rho(lambda_{j-1}) + int_{lambda_{j-1}}^{lambda_j} f(mu) dmu
// on an ordered grid, with rho(0) supplied by the caller.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "sldensity/density.hpp"
#include "sldensity/error.hpp"
#include "sldensity/potential.hpp"
#include "sldensity/quadrature.hpp"

namespace sld {

struct IntervalRecord {
  double lo = 0.0;
  double hi = 0.0;
  double integral = 0.0;
  double est_error = 0.0;
  int subintervals = 0;
  long evaluations = 0;
  bool converged = false;
  std::string failure;  // empty unless the density evaluation itself failed
};

struct SpectralGrid {
  std::vector<double> lambdas;
  double rho0 = 0.0;
  std::vector<double> rho;
  std::vector<IntervalRecord> intervals;  // intervals[j] ends at lambdas[j]

  bool ok() const {
    return std::all_of(intervals.begin(), intervals.end(),
                       [](const IntervalRecord& r) { return r.converged && r.failure.empty(); });
  }
};

struct RhoOptions {
  /// Overrides the auto_density method choice.
  std::optional<Method> method;
  std::optional<int> N;
  /// Evaluate the density at this fixed matching point instead of refining.
  std::optional<double> x_match;
  std::optional<double> ivp_tol;
  /// Worker threads for the independent interval integrals; 0 = hardware concurrency.
  unsigned threads = 0;
  int max_subintervals = 400;
};

namespace detail {

inline double density_for_quadrature(const Potential& p, double mu, double point_tol, const RhoOptions& opt) {
  if (opt.x_match) {
    const Method m = opt.method.value_or(p.is_rational() ? Method::fN : kGeneralPotentialMethod);
    const double ivp = opt.ivp_tol.value_or(auto_ivp_tol(point_tol));
    return density_at(p, mu, *opt.x_match, m, opt.N.value_or(auto_order(point_tol)), ivp).value;
  }
  AutoDensityOptions ao;
  ao.method = opt.method;
  ao.N = opt.N;
  ao.ivp_tol = opt.ivp_tol;
  return auto_density(p, mu, point_tol, ao).value;
}

inline IntervalRecord integrate_interval(const Potential& p, double lo, double hi, double tol, int m,
                                         const RhoOptions& opt) {
  IntervalRecord rec;
  rec.lo = lo;
  rec.hi = hi;
  const double point_tol = std::clamp(tol / 10.0, 1e-12, 1e-2);
  const double interval_tol = tol / m;
  try {
    QuadratureResult q;
    if (lo == 0.0) {
      // mu = t^2 softens the lambda^nu behaviour of f at the origin.
      auto g = [&](double t) { return 2.0 * t * density_for_quadrature(p, t * t, point_tol, opt); };
      q = integrate_adaptive(g, 0.0, std::sqrt(hi), interval_tol, interval_tol, opt.max_subintervals);
    } else {
      auto g = [&](double mu) { return density_for_quadrature(p, mu, point_tol, opt); };
      q = integrate_adaptive(g, lo, hi, interval_tol, interval_tol, opt.max_subintervals);
    }
    rec.integral = q.value;
    rec.est_error = q.error;
    rec.subintervals = q.subintervals;
    rec.evaluations = q.evaluations;
    rec.converged = q.converged;
  } catch (const Error& e) {
    rec.integral = std::numeric_limits<double>::quiet_NaN();
    rec.failure = e.what();
  }
  return rec;
}

}  // namespace detail

inline SpectralGrid rho_grid(const Potential& p, std::span<const double> grid, double rho0, double tol,
                             const RhoOptions& opt = {}) {
  if (grid.empty()) throw DomainError("rho_grid: empty grid");
  if (!(tol >= 1e-10 && tol <= 1e-3)) throw DomainError("rho_grid: tol must lie in [1e-10, 1e-3]");
  if (!(grid.front() > 0.0)) throw DomainError("rho_grid: grid points must be positive");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("rho_grid: grid must be strictly increasing");
  }
  const int m = static_cast<int>(grid.size());

  SpectralGrid out;
  out.lambdas.assign(grid.begin(), grid.end());
  out.rho0 = rho0;
  out.intervals.resize(grid.size());

  unsigned threads = opt.threads != 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(m));
  auto work = [&](std::size_t j) {
    const double lo = j == 0 ? 0.0 : grid[j - 1];
    out.intervals[j] = detail::integrate_interval(p, lo, grid[j], tol, m, opt);
  };
  if (threads <= 1) {
    for (std::size_t j = 0; j < grid.size(); ++j) work(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.push_back(std::async(std::launch::async, [&] {
        for (std::size_t j = next++; j < grid.size(); j = next++) work(j);
      }));
    }
    for (auto& f : pool) f.get();
  }

  out.rho.resize(grid.size());
  double acc = rho0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    acc += out.intervals[j].integral;
    out.rho[j] = acc;
  }
  return out;
}

}  // namespace sld
