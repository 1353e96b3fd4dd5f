#pragma once

// The LADM recurrence
//   x_0 = alpha + beta t,   x_{n+1} = -L^{-1}[ s^{-2} L{A_n} ],
// executed in the time domain: on polynomials the Laplace round trip is the
// double_integrate degree shift, so no transform is ever evaluated.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ladm/adomian.hpp"
#include "ladm/errors.hpp"
#include "ladm/series.hpp"

namespace ladm {

inline constexpr int default_terms = 14;

/// Marks the relativistic oscillator x'' + (1 - x'^2)^{3/2} x = 0, solved
/// with the frozen-coefficient sequence of oscillator_adomian.
struct oscillator_tag {};

template <typename Real>
struct basic_ivp_spec {
  Real alpha{0};
  Real beta{0};
  std::variant<basic_analytic_nonlinearity<Real>, oscillator_tag> nonlinearity;

  static basic_ivp_spec oscillator(Real beta) { return {Real(0), std::move(beta), oscillator_tag{}}; }

  [[nodiscard]] bool is_oscillator() const noexcept {
    return std::holds_alternative<oscillator_tag>(nonlinearity);
  }
};

using ivp_spec = basic_ivp_spec<double>;

template <typename Real>
struct basic_series_solution {
  std::vector<basic_time_polynomial<Real>> components;
  Real alpha{0};
  Real beta{0};
  // (1 - beta^2)^{3/2}; set only for oscillator solutions.
  std::optional<Real> kappa;

  [[nodiscard]] int n_terms() const noexcept { return static_cast<int>(components.size()); }
};

using series_solution = basic_series_solution<double>;

template <typename Real>
[[nodiscard]] basic_series_solution<Real> solve_ivp(const basic_ivp_spec<Real>& spec, int n_terms,
                                                    int max_degree) {
  if (n_terms < 1) throw precondition_error("solve_ivp: n_terms must be at least 1");
  if (max_degree < 1) throw precondition_error("solve_ivp: max_degree must be at least 1");

  basic_series_solution<Real> sol;
  sol.alpha = spec.alpha;
  sol.beta = spec.beta;
  if (spec.is_oscillator()) {
    if (spec.alpha != Real(0)) throw domain_error("oscillator initial position must be 0");
    sol.kappa = relativistic_kappa(spec.beta);
  }

  basic_time_polynomial<Real> x0;
  x0.accumulate(0, spec.alpha);
  x0.accumulate(1, spec.beta);
  sol.components.reserve(static_cast<std::size_t>(n_terms));
  sol.components.push_back(truncate(x0, max_degree));

  for (int n = 0; n + 1 < n_terms; ++n) {
    basic_time_polynomial<Real> a_n;
    if (spec.is_oscillator()) {
      a_n = oscillator_adomian(n, sol.components.back(), spec.beta);
    } else {
      const auto& nl = std::get<basic_analytic_nonlinearity<Real>>(spec.nonlinearity);
      a_n = adomian_polynomials(nl, std::span<const basic_time_polynomial<Real>>(sol.components),
                                n, max_degree)
                .polys[static_cast<std::size_t>(n)];
    }
    sol.components.push_back(truncate(scale(double_integrate(a_n), Real(-1)), max_degree));
  }
  return sol;
}

/// Same as above with enough degree headroom for n_terms odd monomials.
template <typename Real>
[[nodiscard]] basic_series_solution<Real> solve_ivp(const basic_ivp_spec<Real>& spec, int n_terms) {
  return solve_ivp(spec, n_terms, 2 * n_terms + 1);
}

/// Direct construction of x(t) = beta sum_n (-kappa)^n t^{2n+1}/(2n+1)!.
template <typename Real>
[[nodiscard]] basic_series_solution<Real> oscillator_series(const Real& beta,
                                                            int n_terms = default_terms) {
  using std::pow;
  if (n_terms < 1) throw precondition_error("oscillator_series: n_terms must be at least 1");
  const Real kappa = relativistic_kappa(beta);
  basic_series_solution<Real> sol;
  sol.beta = beta;
  sol.kappa = kappa;
  for (int n = 0; n < n_terms; ++n) {
    Real c = beta * pow(kappa, Real(n));
    if (n % 2 == 1) c = -c;
    sol.components.push_back(basic_time_polynomial<Real>::monomial(2 * n + 1, c));
  }
  return sol;
}

/// x_0 + ... + x_k.
template <typename Real>
[[nodiscard]] basic_time_polynomial<Real> partial_sum(const basic_series_solution<Real>& sol,
                                                      int k) {
  if (k < 0 || k >= sol.n_terms()) {
    throw precondition_error("partial_sum: index " + std::to_string(k) + " outside [0, " +
                             std::to_string(sol.n_terms()) + ")");
  }
  basic_time_polynomial<Real> out;
  for (int i = 0; i <= k; ++i) out = add(out, sol.components[static_cast<std::size_t>(i)]);
  return out;
}

template <typename Real>
[[nodiscard]] basic_time_polynomial<Real> partial_sum(const basic_series_solution<Real>& sol) {
  return partial_sum(sol, sol.n_terms() - 1);
}

template <typename Real>
struct basic_truncation_bound {
  Real value{0};
  // False when the omitted terms are not yet monotonically decreasing, in
  // which case `value` (the first omitted term) is only an estimate.
  bool rigorous = true;
};

using truncation_bound = basic_truncation_bound<double>;

/// First omitted term beta kappa^N |t|^{2N+1}/(2N+1)! of the oscillator
/// series. It bounds the remainder when kappa t^2 < (2N+2)(2N+3).
template <typename Real>
[[nodiscard]] basic_truncation_bound<Real> tail_bound(const basic_series_solution<Real>& sol,
                                                      const Real& t) {
  using std::abs;
  if (!sol.kappa) throw precondition_error("tail_bound: not an oscillator solution");
  const Real kappa = *sol.kappa;
  const int terms = sol.n_terms();
  const Real at = abs(t);
  Real v = abs(sol.beta) * at;
  for (int n = 1; n <= terms; ++n) {
    v *= kappa * at * at;
    v /= Real(2 * n) * Real(2 * n + 1);
  }
  const Real next_ratio_bound = Real(2 * terms + 2) * Real(2 * terms + 3);
  return {v, kappa * at * at < next_ratio_bound};
}

/// |x'' + (1 - x'^2)^{3/2} x| for the full partial sum, using the exact
/// nonlinear equation rather than the frozen coefficient.
template <typename Real>
[[nodiscard]] Real residual(const basic_series_solution<Real>& sol, const Real& t) {
  using std::abs;
  using std::sqrt;
  const auto x = partial_sum(sol);
  const auto dx = derivative(x);
  const auto ddx = derivative(dx);
  const Real pos = eval(x, t);
  const Real vel = eval(dx, t);
  const Real acc = eval(ddx, t);
  const Real g = Real(1) - vel * vel;
  if (!(g > Real(0))) return std::numeric_limits<Real>::infinity();
  return abs(acc + g * sqrt(g) * pos);
}

/// Fundamental frequency of the oscillator series, sqrt(kappa) = (1-beta^2)^{3/4}.
template <typename Real>
[[nodiscard]] Real series_frequency(const Real& beta) {
  using std::sqrt;
  return sqrt(relativistic_kappa(beta));
}

/// Smallest term count whose tail bound is rigorous and below `tol` on [0, t_max].
inline int terms_for_tolerance(double beta, double t_max, double tol, int max_terms = 200) {
  if (!(tol > 0.0)) throw precondition_error("terms_for_tolerance: tol must be positive");
  for (int n = 1; n <= max_terms; ++n) {
    const auto sol = oscillator_series(beta, n);
    const auto b = tail_bound(sol, t_max);
    if (b.rigorous && b.value < tol) return n;
  }
  throw precondition_error("terms_for_tolerance: no term count up to " +
                           std::to_string(max_terms) + " reaches the tolerance");
}

}  // namespace ladm
