#pragma once

// Shooting for -y'' + q(x) y = lambda y with coefficient approximation: q is
// frozen at the midpoint of each step and the resulting constant-coefficient
// problem is propagated exactly with trigonometric or hyperbolic kernels.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sldensity/error.hpp"
#include "sldensity/potential.hpp"

namespace sld {

/// (y, y') at x, stored as exp(log_scale) * (y, dy) so that solutions
/// growing through classically forbidden regions stay representable.
struct IvpState {
  double x = 0.0;
  double y = 0.0;
  double dy = 0.0;
  double lambda = 0.0;
  double log_scale = 0.0;
};

struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
  double h_min = INFINITY;
  double h_max = 0.0;
};

namespace detail {

/// Propagator [[c, s], [-w2 s, c]] for y'' = -w2 y over a step h.
struct Kernel {
  double c;
  double s;
  double w2;
};

inline Kernel constant_coefficient_kernel(double w2, double h) {
  const double z = w2 * h * h;
  if (std::abs(z) < 1e-8) {
    return {1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0,
            h * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0), w2};
  }
  if (w2 > 0.0) {
    const double w = std::sqrt(w2);
    return {std::cos(w * h), std::sin(w * h) / w, w2};
  }
  const double k = std::sqrt(-w2);
  return {std::cosh(k * h), std::sinh(k * h) / k, w2};
}

inline void apply_kernel(const Kernel& k, double& y, double& dy) {
  const double y1 = k.c * y + k.s * dy;
  const double dy1 = -k.w2 * k.s * y + k.c * dy;
  y = y1;
  dy = dy1;
}

}  // namespace detail

/// One step of length h with q replaced by q(x + h/2).
inline IvpState step_exact_kernel(const Potential& p, const IvpState& s, double h) {
  if (!(h > 0.0)) throw DomainError("step_exact_kernel: h must be positive");
  if (!(s.x >= 0.0)) throw DomainError("step_exact_kernel: x must be nonnegative");
  const double qbar = p(s.x + 0.5 * h);
  IvpState out = s;
  detail::apply_kernel(detail::constant_coefficient_kernel(s.lambda - qbar, h), out.y, out.dy);
  out.x = s.x + h;
  return out;
}

/// Resumable adaptive propagation. Local error is estimated by step doubling
/// (one step of h against two of h/2) and controlled relative to the local
/// amplitude sqrt(y^2 + (y'/k)^2), k = max(1, sqrt(lambda)). The accepted
/// value is the locally extrapolated (4 y_{h/2} - y_h)/3.
class Shooter {
 public:
  Shooter(const Potential& p, IvpState start, double tol) : p_(&p), state_(start), tol_(tol) {
    if (!(tol >= 1e-15 && tol <= 1e-1)) throw DomainError("Shooter: tolerance out of range");
    if (!std::isfinite(start.y) || !std::isfinite(start.dy) || (start.y == 0.0 && start.dy == 0.0)) {
      throw DomainError("Shooter: initial state must be finite and nontrivial");
    }
    k_ = std::max(1.0, std::sqrt(std::abs(start.lambda)));
  }

  const IvpState& state() const { return state_; }
  const IntegrationStats& stats() const { return stats_; }

  const IvpState& advance_to(double x_end) {
    if (!(x_end >= state_.x)) throw DomainError("Shooter: cannot integrate backwards");
    if (x_end == state_.x) return state_;
    if (h_ <= 0.0) {
      h_ = std::min(0.1, (x_end - state_.x) / 16.0) / (1.0 + std::sqrt(std::abs(state_.lambda)));
    }
    const double lambda = state_.lambda;
    while (state_.x < x_end) {
      const double remaining = x_end - state_.x;
      bool last = false;
      double h = h_;
      if (h >= remaining * (1.0 - 1e-12)) {
        h = remaining;
        last = true;
      }
      const double x = state_.x;
      if (h < 1e-12 * std::max(x, 1e-300)) {
        std::ostringstream os;
        os << "integrate: step size underflow (h = " << h << ") at x = " << x << ", lambda = " << lambda
           << " after " << stats_.accepted << " steps";
        throw StiffnessError(os.str());
      }

      double y1 = state_.y, dy1 = state_.dy;
      detail::apply_kernel(detail::constant_coefficient_kernel(lambda - (*p_)(x + 0.5 * h), h), y1, dy1);
      double y2 = state_.y, dy2 = state_.dy;
      const double hh = 0.5 * h;
      detail::apply_kernel(detail::constant_coefficient_kernel(lambda - (*p_)(x + 0.25 * h), hh), y2, dy2);
      detail::apply_kernel(detail::constant_coefficient_kernel(lambda - (*p_)(x + 0.75 * h), hh), y2, dy2);

      const double err = std::hypot(y2 - y1, (dy2 - dy1) / k_);
      const double scale = std::max(std::hypot(y2, dy2 / k_), 1e-300);
      const double ratio = err / (tol_ * scale);
      if (!std::isfinite(ratio)) {
        h_ = 0.25 * h;
        ++stats_.rejected;
        continue;
      }
      if (ratio <= 1.0) {
        state_.y = y2 + (y2 - y1) / 3.0;
        state_.dy = dy2 + (dy2 - dy1) / 3.0;
        state_.x = last ? x_end : x + h;
        renormalize();
        ++stats_.accepted;
        stats_.h_min = std::min(stats_.h_min, h);
        stats_.h_max = std::max(stats_.h_max, h);
        const double grow = ratio > 0.0 ? 0.9 * std::cbrt(1.0 / ratio) : 4.0;
        const double next = h * std::clamp(grow, 0.2, 4.0);
        // Keep the unclipped step size across a shortened final step.
        h_ = last ? std::max(h_, next) : next;
      } else {
        ++stats_.rejected;
        h_ = h * std::clamp(0.9 * std::cbrt(1.0 / ratio), 0.1, 0.9);
      }
    }
    return state_;
  }

 private:
  void renormalize() {
    const double amp = std::hypot(state_.y, state_.dy / k_);
    if (amp > 1e150 || (amp < 1e-150 && amp > 0.0)) {
      const int e = std::ilogb(amp);
      state_.y = std::scalbn(state_.y, -e);
      state_.dy = std::scalbn(state_.dy, -e);
      state_.log_scale += e * std::numbers::ln2;
    }
  }

  const Potential* p_;
  IvpState state_;
  double tol_;
  double k_ = 1.0;
  double h_ = -1.0;
  IntegrationStats stats_;
};

/// Propagates `from` to x_end at the given local tolerance.
inline IvpState integrate(const Potential& p, double lambda, IvpState from, double x_end, double tol,
                          IntegrationStats* stats = nullptr) {
  if (!(x_end > from.x)) throw DomainError("integrate: x_end must exceed the start point");
  if (!(tol >= 1e-14 && tol <= 1e-2)) throw DomainError("integrate: tol must lie in [1e-14, 1e-2]");
  from.lambda = lambda;
  Shooter shot(p, from, tol);
  const IvpState out = shot.advance_to(x_end);
  if (stats != nullptr) *stats = shot.stats();
  return out;
}

}  // namespace sld
