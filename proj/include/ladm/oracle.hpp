#pragma once

// Reference integration of the relativistic oscillator
//   x' = v,   v' = -(1 - v^2)^{3/2} x,   x(0) = 0, v(0) = beta
// with the Dormand-Prince 5(4) pair, PI step control and the standard
// fourth-order continuous extension for dense output.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ladm/errors.hpp"

namespace ladm {

struct oracle_config {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double t_end = 10.0;
  long max_steps = 1'000'000;
};

struct oracle_sample {
  double t = 0.0;
  double x = 0.0;
  double v = 0.0;
};

/// Relativistic energy (1 - v^2)^{-1/2} + x^2/2, conserved along solutions.
[[nodiscard]] inline double energy(double x, double v) {
  if (!(std::abs(v) < 1.0)) throw domain_error("energy: |v| must be below 1");
  return 1.0 / std::sqrt(1.0 - v * v) + 0.5 * x * x;
}

class oracle_trajectory;

[[nodiscard]] oracle_trajectory integrate_state(double x0, double v0, const oracle_config& cfg);

class oracle_trajectory {
 public:
  using state = std::array<double, 2>;

  // Per-step continuous extension: y(t_i + theta h) =
  // r1 + theta (r2 + (1-theta)(r3 + theta (r4 + (1-theta) r5))).
  struct dense_segment {
    std::array<state, 5> r{};
  };

  [[nodiscard]] const std::vector<oracle_sample>& samples() const noexcept { return samples_; }
  /// Initial velocity.
  [[nodiscard]] double beta() const noexcept { return samples_.front().v; }
  [[nodiscard]] double t_end() const noexcept { return samples_.back().t; }
  [[nodiscard]] double energy_drift() const noexcept { return energy_drift_; }
  [[nodiscard]] double max_speed() const noexcept { return max_speed_; }
  [[nodiscard]] long accepted_steps() const noexcept { return static_cast<long>(segments_.size()); }
  [[nodiscard]] long rejected_steps() const noexcept { return rejected_; }

  /// (x, v) at t via the dense output.
  [[nodiscard]] state state_at(double t) const {
    if (!(t >= samples_.front().t && t <= samples_.back().t)) {
      std::ostringstream msg;
      msg << "time " << t << " outside trajectory span [" << samples_.front().t << ", "
          << samples_.back().t << "]";
      throw range_error(msg.str());
    }
    // Last sample with sample.t <= t.
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double value, const oracle_sample& s) { return value < s.t; });
    const auto i = static_cast<std::size_t>(std::distance(samples_.begin(), it)) - 1;
    const auto& s = samples_[i];
    if (t == s.t || i == segments_.size()) return {s.x, s.v};
    const double h = samples_[i + 1].t - s.t;
    const double theta = (t - s.t) / h;
    const double theta1 = 1.0 - theta;
    const auto& r = segments_[i].r;
    state y{};
    for (std::size_t c = 0; c < 2; ++c) {
      y[c] = r[0][c] + theta * (r[1][c] + theta1 * (r[2][c] + theta * (r[3][c] + theta1 * r[4][c])));
    }
    return y;
  }

  [[nodiscard]] double position_at(double t) const { return state_at(t)[0]; }

 private:
  friend oracle_trajectory integrate_state(double x0, double v0, const oracle_config& cfg);

  std::vector<oracle_sample> samples_;
  std::vector<dense_segment> segments_;
  double energy_drift_ = 0.0;
  double max_speed_ = 0.0;
  long rejected_ = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau. The system is autonomous, so the nodes c_i
// never appear.
struct dopri5 {
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                          a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  // Error coefficients b - b*.
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  // Continuous extension.
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

inline std::string describe_state(double t, double x, double v) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "t=" << t << " x=" << x << " v=" << v;
  return msg.str();
}

}  // namespace detail

/// Integrates from (x0, v0) at t=0 to cfg.t_end.
[[nodiscard]] inline oracle_trajectory integrate_state(double x0, double v0,
                                                       const oracle_config& cfg) {
  using state = oracle_trajectory::state;
  using tab = detail::dopri5;

  if (!(std::abs(v0) < 1.0)) throw domain_error("initial speed must be below 1");
  if (!std::isfinite(x0)) throw domain_error("initial position must be finite");
  if (!(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0)) throw domain_error("tolerances must be positive");
  if (!(cfg.t_end > 0.0)) throw domain_error("t_end must be positive");

  // A stage with |v| >= 1 leaves the physical domain; the step is retried
  // with a smaller h and only step-size underflow is reported.
  struct off_domain {};
  auto rhs = [](const state& y) -> state {
    const double g = 1.0 - y[1] * y[1];
    if (!(g > 0.0)) throw off_domain{};
    return {y[1], -g * std::sqrt(g) * y[0]};
  };
  auto axpy = [](const state& y, double h, std::initializer_list<std::pair<double, const state*>> ks) {
    state out = y;
    for (const auto& [w, k] : ks) {
      out[0] += h * w * (*k)[0];
      out[1] += h * w * (*k)[1];
    }
    return out;
  };

  oracle_trajectory traj;
  traj.samples_.push_back({0.0, x0, v0});
  const double e0 = energy(x0, v0);
  traj.max_speed_ = std::abs(v0);

  double t = 0.0;
  state y{x0, v0};
  state k1 = rhs(y);

  const double tiny = 1e-300;
  // Initial step from the usual scaled-derivative heuristic.
  double h = 0.0;
  {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1 = std::max(d1, std::abs(k1[i]) / sc);
    }
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, cfg.t_end);
  }

  constexpr double safety = 0.9;
  constexpr double fac_min = 0.2;
  constexpr double fac_max = 10.0;
  constexpr double alpha = 0.7 / 5.0;  // PI exponents
  constexpr double beta_pi = 0.4 / 5.0;
  double err_prev = 1e-4;
  bool last_rejected = false;
  long attempts = 0;

  while (t < cfg.t_end) {
    if (++attempts > cfg.max_steps) {
      throw budget_error("step budget of " + std::to_string(cfg.max_steps) + " exhausted (" +
                         detail::describe_state(t, y[0], y[1]) + ")");
    }
    if (t + h > cfg.t_end) h = cfg.t_end - t;
    if (h <= std::abs(t) * 1e-15 + tiny) {
      throw integration_error("step size underflow (" + detail::describe_state(t, y[0], y[1]) + ")");
    }

    state k2, k3, k4, k5, k6, k7, y_new;
    try {
      k2 = rhs(axpy(y, h, {{tab::a21, &k1}}));
      k3 = rhs(axpy(y, h, {{tab::a31, &k1}, {tab::a32, &k2}}));
      k4 = rhs(axpy(y, h, {{tab::a41, &k1}, {tab::a42, &k2}, {tab::a43, &k3}}));
      k5 = rhs(axpy(y, h, {{tab::a51, &k1}, {tab::a52, &k2}, {tab::a53, &k3}, {tab::a54, &k4}}));
      k6 = rhs(axpy(y, h,
                    {{tab::a61, &k1}, {tab::a62, &k2}, {tab::a63, &k3}, {tab::a64, &k4},
                     {tab::a65, &k5}}));
      y_new = axpy(y, h,
                   {{tab::a71, &k1}, {tab::a73, &k3}, {tab::a74, &k4}, {tab::a75, &k5},
                    {tab::a76, &k6}});
      k7 = rhs(y_new);
    } catch (const off_domain&) {
      ++traj.rejected_;
      h *= 0.25;
      last_rejected = true;
      continue;
    }
    const double t_new = (t + h >= cfg.t_end) ? cfg.t_end : t + h;

    double err = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const double e = h * (tab::e1 * k1[i] + tab::e3 * k3[i] + tab::e4 * k4[i] + tab::e5 * k5[i] +
                            tab::e6 * k6[i] + tab::e7 * k7[i]);
      const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / sc);
    }

    if (err <= 1.0) {
      oracle_trajectory::dense_segment seg;
      for (std::size_t i = 0; i < 2; ++i) {
        const double ydiff = y_new[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        seg.r[0][i] = y[i];
        seg.r[1][i] = ydiff;
        seg.r[2][i] = bspl;
        seg.r[3][i] = ydiff - h * k7[i] - bspl;
        seg.r[4][i] = h * (tab::d1 * k1[i] + tab::d3 * k3[i] + tab::d4 * k4[i] + tab::d5 * k5[i] +
                           tab::d6 * k6[i] + tab::d7 * k7[i]);
      }
      traj.segments_.push_back(seg);
      t = t_new;
      y = y_new;
      k1 = k7;
      traj.samples_.push_back({t, y[0], y[1]});
      traj.max_speed_ = std::max(traj.max_speed_, std::abs(y[1]));
      traj.energy_drift_ = std::max(traj.energy_drift_, std::abs(energy(y[0], y[1]) - e0));

      const double e = std::max(err, 1e-10);
      double fac = safety * std::pow(e, -alpha) * std::pow(err_prev, beta_pi);
      fac = std::clamp(fac, fac_min, fac_max);
      if (last_rejected) fac = std::min(fac, 1.0);
      h *= fac;
      err_prev = e;
      last_rejected = false;
    } else {
      ++traj.rejected_;
      h *= std::max(fac_min, safety * std::pow(err, -0.2));
      last_rejected = true;
    }
  }
  return traj;
}

/// Integrates the oscillator x(0) = 0, x'(0) = beta from t=0 to cfg.t_end.
[[nodiscard]] inline oracle_trajectory integrate(double beta, const oracle_config& cfg) {
  if (!(beta > 0.0 && beta < 1.0)) throw domain_error("beta must lie strictly between 0 and 1");
  return integrate_state(0.0, beta, cfg);
}

/// Dense-output positions at each requested time.
[[nodiscard]] inline std::vector<double> sample_on_grid(const oracle_trajectory& traj,
                                                        std::span<const double> ts) {
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(traj.position_at(t));
  return out;
}

inline std::vector<double> sample_on_grid(const oracle_trajectory& traj,
                                          const std::vector<double>& ts) {
  return sample_on_grid(traj, std::span<const double>(ts));
}

/// Upward zero crossings of x(t) strictly after t=0, each refined by
/// bisection on the dense output until the bracket is below 1e-12.
[[nodiscard]] inline std::vector<double> upward_crossings(const oracle_trajectory& traj) {
  std::vector<double> out;
  const auto& s = traj.samples();
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!(s[i].x < 0.0 && s[i + 1].x >= 0.0)) continue;
    double lo = s[i].t;
    double hi = s[i + 1].t;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (traj.position_at(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

/// Oscillation period from the mean spacing of successive upward crossings.
[[nodiscard]] inline double period(const oracle_trajectory& traj) {
  const auto ups = upward_crossings(traj);
  if (ups.size() < 2) {
    throw horizon_error("fewer than two upward zero crossings before t=" +
                        std::to_string(traj.t_end()) + "; extend t_end");
  }
  return (ups.back() - ups.front()) / static_cast<double>(ups.size() - 1);
}

[[nodiscard]] inline double period(double beta, const oracle_config& cfg) {
  return period(integrate(beta, cfg));
}

/// A horizon long enough for `periods` oscillations, from the HBM estimate
/// with a safety margin (the true frequency is slightly below it).
[[nodiscard]] inline double horizon_for_periods(double beta, double periods) {
  const double b2 = beta * beta;
  const double w = std::sqrt(std::sqrt((2.0 - 2.0 * b2) / (2.0 - b2)));
  return 1.25 * periods * 2.0 * std::numbers::pi / w;
}

}  // namespace ladm
