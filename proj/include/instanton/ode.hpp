#pragma once

// Dormand-Prince 5(4) with step-size control and the 4th order continuous extension.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "instanton/errors.hpp"

namespace instanton {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0 picks |x1-x0|*1e-3
  std::size_t max_steps = 1000000;
};

template <class State>
struct Trajectory {
  std::vector<double> x;
  std::vector<State> y;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

namespace detail {
template <class State>
double inf_norm(const State& y) {
  return y.template lpNorm<Eigen::Infinity>();
}
}  // namespace detail

// Integrates y' = f(x, y) from x0 to x1 (either direction).  With an empty
// sample list every accepted step is recorded, otherwise exactly the samples.
template <class State, class Rhs>
Trajectory<State> ode_solve(Rhs&& f, double x0, double x1, const State& y0, const IntegratorConfig& cfg,
                            const std::vector<double>& samples = {}) {
  if (!(cfg.rel_tol > 0) || !(cfg.abs_tol > 0)) throw std::invalid_argument("tolerances must be positive");
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                   a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                   d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                   d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

  Trajectory<State> out;
  const double dir = x1 >= x0 ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);
  const bool keep_steps = samples.empty();
  std::size_t next = 0;
  auto before = [&](double a, double b) { return dir * (b - a) >= 0; };  // a at or before b

  double x = x0;
  State y = y0;
  if (keep_steps) {
    out.x.push_back(x);
    out.y.push_back(y);
  }
  while (next < samples.size() && samples[next] == x0) {
    out.x.push_back(x0);
    out.y.push_back(y0);
    ++next;
  }
  if (span == 0) return out;

  double h = cfg.initial_step > 0 ? cfg.initial_step : span * 1e-3;
  h = std::min({h, cfg.max_step, span});
  State k1 = f(x, y);

  while (before(x, x1) && x != x1) {
    if (out.accepted + out.rejected > cfg.max_steps) throw IntegrationError("step budget exhausted", x);
    const bool last = h >= std::abs(x1 - x);
    if (last) h = std::abs(x1 - x);
    const double hs = dir * h;
    const State k2 = f(x + c2 * hs, State(y + hs * (a21 * k1)));
    const State k3 = f(x + c3 * hs, State(y + hs * (a31 * k1 + a32 * k2)));
    const State k4 = f(x + c4 * hs, State(y + hs * (a41 * k1 + a42 * k2 + a43 * k3)));
    const State k5 = f(x + c5 * hs, State(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const State k6 = f(x + hs, State(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    const State ynew = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const double xnew = last ? x1 : x + hs;
    const State k7 = f(xnew, ynew);
    const State err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scale = cfg.abs_tol + cfg.rel_tol * std::max(detail::inf_norm(y), detail::inf_norm(ynew));
    double en = detail::inf_norm(err) / scale;
    if (!std::isfinite(en)) en = 1e10;

    if (en <= 1.0) {
      ++out.accepted;
      if (!keep_steps) {
        const State r2 = ynew - y;
        const State bspl = hs * k1 - r2;
        const State r4 = r2 - hs * k7 - bspl;
        const State r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        while (next < samples.size() && before(samples[next], xnew)) {
          const double th = (samples[next] - x) / hs;
          const double th1 = 1.0 - th;
          out.x.push_back(samples[next]);
          out.y.push_back(State(y + th * (r2 + th1 * (bspl + th * (r4 + th1 * r5)))));
          ++next;
        }
      }
      x = xnew;
      y = ynew;
      k1 = k7;
      if (keep_steps) {
        out.x.push_back(x);
        out.y.push_back(y);
      }
      if (last) break;
    } else {
      ++out.rejected;
    }
    const double fac = en == 0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    h = std::min(h * (en <= 1.0 ? fac : std::min(fac, 1.0)), cfg.max_step);
    if (h < 1e-14 * std::max(1.0, std::abs(x))) throw IntegrationError("step size underflow", x);
  }
  if (!keep_steps && next < samples.size()) throw std::invalid_argument("sample point outside integration range");
  return out;
}

}  // namespace instanton
