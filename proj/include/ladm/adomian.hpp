#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ladm/errors.hpp"
#include "ladm/series.hpp"

namespace ladm {

/// A nonlinearity N(x) of the state alone, described by its derivatives.
/// deriv(u, 0) is N(u); deriv(u, j) is the j-th derivative at u.
template <typename Real>
struct basic_analytic_nonlinearity {
  static constexpr int unbounded = -1;

  std::string name;
  // Highest derivative order deriv() can produce, or `unbounded`.
  int max_order = unbounded;
  std::function<Real(const Real&, int)> deriv;

  [[nodiscard]] bool supports(int order) const noexcept {
    return max_order == unbounded || order <= max_order;
  }

  [[nodiscard]] Real operator()(const Real& u) const { return deriv(u, 0); }
};

using analytic_nonlinearity = basic_analytic_nonlinearity<double>;

namespace nonlinearities {

/// N(x) = x^degree. All derivatives are available (they vanish past `degree`).
template <typename Real = double>
basic_analytic_nonlinearity<Real> power(int degree) {
  if (degree < 0) throw domain_error("power nonlinearity needs a non-negative degree");
  return {"x^" + std::to_string(degree), basic_analytic_nonlinearity<Real>::unbounded,
          [degree](const Real& u, int j) -> Real {
            if (j > degree) return Real(0);
            Real falling(1);
            for (int i = 0; i < j; ++i) falling *= Real(degree - i);
            Real p(1);
            for (int i = 0; i < degree - j; ++i) p *= u;
            return falling * p;
          }};
}

template <typename Real = double>
basic_analytic_nonlinearity<Real> linear() {
  auto n = power<Real>(1);
  n.name = "x";
  return n;
}

template <typename Real = double>
basic_analytic_nonlinearity<Real> exponential() {
  return {"exp(x)", basic_analytic_nonlinearity<Real>::unbounded,
          [](const Real& u, int) -> Real {
            using std::exp;
            return exp(u);
          }};
}

template <typename Real = double>
basic_analytic_nonlinearity<Real> sine() {
  return {"sin(x)", basic_analytic_nonlinearity<Real>::unbounded,
          [](const Real& u, int j) -> Real {
            using std::cos;
            using std::sin;
            switch (j % 4) {
              case 0: return sin(u);
              case 1: return cos(u);
              case 2: return -sin(u);
              default: return -cos(u);
            }
          }};
}

}  // namespace nonlinearities

enum class adomian_source { generic, oscillator_closed_form };

template <typename Real>
struct basic_adomian_sequence {
  std::vector<basic_time_polynomial<Real>> polys;  // A_0 .. A_order
  adomian_source source = adomian_source::generic;
};

using adomian_sequence = basic_adomian_sequence<double>;

namespace detail {

// N^{(k)}(x0(t)) as a series in t, for k = 0..order. Expands around
// c = x0(0): N^{(k)}(c + d(t)) = sum_j N^{(k+j)}(c) d(t)^j / j!.
template <typename Real>
std::vector<basic_time_polynomial<Real>> composed_derivatives(
    const basic_analytic_nonlinearity<Real>& n, const basic_time_polynomial<Real>& x0, int order,
    int max_degree) {
  const Real c = x0.coefficient(0);
  basic_time_polynomial<Real> d = x0;
  d.accumulate(0, -c);

  // d^j / j!, truncated. d has no constant term, so d^j starts at degree >= j.
  std::vector<basic_time_polynomial<Real>> scaled_powers;
  scaled_powers.push_back(basic_time_polynomial<Real>::constant(Real(1)));
  if (!d.empty()) {
    for (int j = 1; j <= max_degree; ++j) {
      auto next = scale(mul_truncated(scaled_powers.back(), d, max_degree), Real(1) / Real(j));
      if (next.empty()) break;
      scaled_powers.push_back(std::move(next));
    }
  }

  const int needed = order + static_cast<int>(scaled_powers.size()) - 1;
  if (!n.supports(needed)) {
    throw capability_error("nonlinearity '" + n.name + "' supports derivatives up to order " +
                           std::to_string(n.max_order) + ", " + std::to_string(needed) +
                           " required");
  }

  std::vector<basic_time_polynomial<Real>> out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    basic_time_polynomial<Real> f;
    for (std::size_t j = 0; j < scaled_powers.size(); ++j) {
      f = add(f, scale(scaled_powers[j], n.deriv(c, k + static_cast<int>(j))));
    }
    out.push_back(truncate(f, max_degree));
  }
  return out;
}

}  // namespace detail

/// Adomian polynomials A_0..A_order of N for the given components, from the
/// definition A_n = (1/n!) d^n/dlambda^n N(sum_i x_i lambda^i) at lambda = 0.
///
/// The lambda-expansion is carried out as truncated series composition:
/// A_n = sum_{k=0}^{n} N^{(k)}(x_0)/k! * [lambda^n] (sum_{i>=1} x_i lambda^i)^k,
/// with every coefficient itself a time series truncated above `max_degree`.
/// Exact (up to rounding) for polynomial N once max_degree covers the degree.
template <typename Real>
[[nodiscard]] basic_adomian_sequence<Real> adomian_polynomials(
    const basic_analytic_nonlinearity<Real>& n,
    std::span<const basic_time_polynomial<Real>> components, int order, int max_degree) {
  if (components.empty()) throw precondition_error("adomian_polynomials: no components");
  if (order < 0 || static_cast<std::size_t>(order) >= components.size()) {
    throw precondition_error("adomian_polynomials: order " + std::to_string(order) +
                             " needs at least " + std::to_string(order + 1) + " components");
  }
  if (max_degree < 0) throw precondition_error("adomian_polynomials: negative max_degree");

  const auto derivs = detail::composed_derivatives(n, components[0], order, max_degree);

  // lambda_pow[k][m] = [lambda^m] S(lambda)^k with S = sum_{i>=1} x_i lambda^i.
  using poly = basic_time_polynomial<Real>;
  const auto width = static_cast<std::size_t>(order) + 1;
  std::vector<std::vector<poly>> lambda_pow(width, std::vector<poly>(width));
  lambda_pow[0][0] = poly::constant(Real(1));
  for (std::size_t k = 1; k < width; ++k) {
    for (std::size_t m = k; m < width; ++m) {
      poly acc;
      for (std::size_t i = 1; i <= m - (k - 1); ++i) {
        const auto& prev = lambda_pow[k - 1][m - i];
        if (prev.empty()) continue;
        acc = add(acc, mul_truncated(prev, components[i], max_degree));
      }
      lambda_pow[k][m] = std::move(acc);
    }
  }

  basic_adomian_sequence<Real> seq;
  seq.source = adomian_source::generic;
  seq.polys.reserve(width);
  for (std::size_t m = 0; m < width; ++m) {
    poly a;
    Real inv_fact(1);
    for (std::size_t k = 0; k <= m; ++k) {
      if (k > 0) inv_fact /= Real(static_cast<int>(k));
      if (lambda_pow[k][m].empty()) continue;
      a = add(a, scale(mul_truncated(derivs[k], lambda_pow[k][m], max_degree), inv_fact));
    }
    seq.polys.push_back(std::move(a));
  }
  return seq;
}

template <typename Real>
[[nodiscard]] basic_adomian_sequence<Real> adomian_polynomials(
    const basic_analytic_nonlinearity<Real>& n,
    const std::vector<basic_time_polynomial<Real>>& components, int order, int max_degree) {
  return adomian_polynomials(n, std::span<const basic_time_polynomial<Real>>(components), order,
                             max_degree);
}

/// (1 - beta^2)^{3/2}; requires 0 < beta < 1.
template <typename Real>
[[nodiscard]] Real relativistic_kappa(const Real& beta) {
  using std::sqrt;
  if (!(beta > Real(0) && beta < Real(1))) {
    throw domain_error("beta must lie strictly between 0 and 1");
  }
  const Real g = Real(1) - beta * beta;
  return g * sqrt(g);
}

/// The oscillator sequence A_m = x_m (1 - x_0'^2)^{3/2} with x_0' = beta:
/// a constant rescaling of the m-th component, the same for every m.
///
/// This is not the textbook Adomian expansion of x (1 - x'^2)^{3/2}, which
/// would also pick up terms from x_1', x_2', ...; it is the frozen-coefficient
/// sequence whose solution is the sine series in ladm/solver.hpp.
template <typename Real>
[[nodiscard]] basic_time_polynomial<Real> oscillator_adomian(int m,
                                                             const basic_time_polynomial<Real>& x_m,
                                                             const Real& beta) {
  if (m < 0) throw precondition_error("oscillator_adomian: negative index");
  return scale(x_m, relativistic_kappa(beta));
}

namespace detail {

// Fornberg's recursion: weights for the `deriv`-th derivative at 0 on `nodes`.
inline std::vector<double> fornberg_weights(std::span<const double> nodes, int deriv) {
  const auto n = nodes.size();
  const auto m = static_cast<std::size_t>(deriv);
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0];
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i];
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

}  // namespace detail

/// Brute-force estimate of A_0(t)..A_order(t) at one time point, obtained
/// by numerically differentiating g(lambda) = N(sum_i x_i(t) lambda^i) at 0.
///
/// Central stencils of accuracy order 6 are used. The step for the n-th
/// derivative is max(h, eps^(1/(n+6))); below that floor rounding dominates.
inline std::vector<double> lambda_expansion_oracle(const analytic_nonlinearity& n,
                                                   std::span<const time_polynomial> components,
                                                   int order, double t_probe, double h = 1e-4) {
  if (components.empty()) throw precondition_error("lambda_expansion_oracle: no components");
  if (order < 0) throw precondition_error("lambda_expansion_oracle: negative order");
  if (!(h > 0.0)) throw precondition_error("lambda_expansion_oracle: h must be positive");

  std::vector<double> values;
  const std::size_t count = std::min(components.size(), static_cast<std::size_t>(order) + 1);
  for (std::size_t i = 0; i < count; ++i) values.push_back(eval(components[i], t_probe));

  auto g = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = count; i-- > 0;) s = s * lambda + values[i];
    return n(s);
  };

  std::vector<double> out;
  out.push_back(g(0.0));
  double factorial = 1.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int d = 1; d <= order; ++d) {
    factorial *= d;
    const int half = (d + 1) / 2 + 2;
    std::vector<double> nodes;
    for (int i = -half; i <= half; ++i) nodes.push_back(static_cast<double>(i));
    const auto w = detail::fornberg_weights(nodes, d);
    const double step = std::max(h, std::pow(eps, 1.0 / (d + 6)));
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (w[i] != 0.0) acc += w[i] * g(nodes[i] * step);
    }
    out.push_back(acc / std::pow(step, d) / factorial);
  }
  return out;
}

inline std::vector<double> lambda_expansion_oracle(const analytic_nonlinearity& n,
                                                   const std::vector<time_polynomial>& components,
                                                   int order, double t_probe, double h = 1e-4) {
  return lambda_expansion_oracle(n, std::span<const time_polynomial>(components), order, t_probe,
                                 h);
}

}  // namespace ladm
