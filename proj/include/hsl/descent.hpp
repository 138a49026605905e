#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace hsl {

struct DescentOptions {
  double tol = 1e-6;       ///< relative KKT residual |g|_P / |u|_P
  int max_iter = 50000;
  double armijo = 1e-4;
  double step_max = 1.0;
  double step_min = 1e-10;
  /// Residual at which relax() is tried; the final stage still runs to tol.
  double relax_tol = 0.0;
  /// Relative resolution of the level below which Armijo is skipped.
  double value_noise = 1e-12;
  /// Consecutive noise-level steps without a new best residual before giving up.
  int noise_patience = 200;
  /// Called after every accepted step with the normalized iterate.
  std::function<void(int, std::span<const double>)> observer;
};

struct DescentResult {
  double level = 0.0;
  int iterations = 0;
  double kkt = INFINITY;
  bool converged = false;
};

/// A 0-homogeneous quotient minimized over the unit sphere of its
/// denominator, with a problem-specific metric P used to precondition the
/// gradient.
template <class P>
concept QuotientProblem = requires(P& prob, const P& cprob, std::span<const double> u,
                                   std::span<double> w, std::vector<double>& grad) {
  { cprob.value(u) } -> std::convertible_to<double>;
  { cprob.value_grad(u, grad) } -> std::convertible_to<double>;
  { prob.precondition(u, std::span<const double>(grad)) } -> std::same_as<std::vector<double>>;
  { prob.metric_norm_sq(u) } -> std::convertible_to<double>;
  { cprob.normalize(w) };
  { prob.relax() } -> std::same_as<bool>;
};

/// Preconditioned projected gradient descent with Armijo backtracking.
/// `u` is overwritten with the last normalized iterate.
template <QuotientProblem P>
DescentResult projected_descent(P& prob, std::vector<double>& u, const DescentOptions& opts) {
  DescentResult res;
  prob.normalize(u);
  std::vector<double> grad, trial(u.size());
  double step = 1.0;
  bool relaxable = true;
  double best_kkt = INFINITY;
  int noise_steps = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    const double level = prob.value_grad(u, grad);
    const auto g = prob.precondition(u, grad);
    double gg = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) gg += grad[k] * g[k];
    const double uu = prob.metric_norm_sq(u);
    res.level = level;
    res.iterations = it;
    res.kkt = std::sqrt(std::max(gg, 0.0) / uu);
    if (res.kkt <= std::max(opts.tol, opts.relax_tol) && relaxable) {
      if (prob.relax()) {
        best_kkt = INFINITY;
        noise_steps = 0;
        continue;
      }
      relaxable = false;
    }
    if (res.kkt <= opts.tol) {
      res.converged = true;
      return res;
    }

    // Stiffness products cancel several digits, so the level is only known
    // to about 1e-12 relative. Below that the sufficient-decrease test is
    // noise and the full step is taken as a plain fixed-point update.
    bool at_noise = opts.step_max * gg <= opts.value_noise * std::abs(level);
    if (!at_noise && opts.step_max * gg <= 1e-6 * std::abs(level)) {
      // On fine grids the cancellation is worse; the quotient is invariant
      // under scaling, so its spread over a few rescalings measures the noise.
      double spread = 0.0;
      for (double c : {0.7, 1.1, 1.3}) {
        for (std::size_t k = 0; k < u.size(); ++k) trial[k] = c * u[k];
        spread = std::max(spread, std::abs(prob.value(trial) - level));
      }
      at_noise = opts.step_max * gg <= 4.0 * spread;
    }
    if (at_noise) {
      if (res.kkt < 0.99 * best_kkt) {
        best_kkt = res.kkt;
        noise_steps = 0;
      } else if (++noise_steps >= opts.noise_patience) {
        return res;
      }
    }
    step = at_noise ? opts.step_max : std::min(2.0 * step, opts.step_max);
    bool accepted = false;
    while (step >= opts.step_min) {
      for (std::size_t k = 0; k < u.size(); ++k) trial[k] = u[k] - step * g[k];
      const double t = prob.value(trial);
      if (std::isfinite(t) && (at_noise || t <= level - opts.armijo * step * gg)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Stall: the problem may loosen a regularization and continue.
      if (relaxable && prob.relax()) {
        step = 1.0;
        continue;
      }
      return res;
    }
    prob.normalize(trial);
    std::swap(u, trial);
    if (opts.observer) opts.observer(it + 1, u);
  }
  res.level = prob.value(u);
  res.iterations = opts.max_iter;
  return res;
}

}  // namespace hsl
