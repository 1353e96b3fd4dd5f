#pragma once

// Periodic approximants of the relativistic oscillator published by other
// methods, used as comparison baselines.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ladm/errors.hpp"

namespace ladm {

enum class approximant_method { hbm, dtm, hpm };

inline std::string_view to_string(approximant_method m) noexcept {
  switch (m) {
    case approximant_method::hbm: return "hbm";
    case approximant_method::dtm: return "dtm";
    case approximant_method::hpm: return "hpm";
  }
  return "?";
}

inline std::optional<approximant_method> parse_approximant_method(std::string_view s) noexcept {
  if (s == "hbm") return approximant_method::hbm;
  if (s == "dtm") return approximant_method::dtm;
  if (s == "hpm") return approximant_method::hpm;
  return std::nullopt;
}

struct sinusoid_term {
  double amplitude = 0.0;
  double angular_frequency = 0.0;
};

/// sum_j a_j sin(w_j t).
struct sinusoid_sum {
  std::vector<sinusoid_term> terms;
  approximant_method method = approximant_method::hbm;
  double beta = 0.0;
};

[[nodiscard]] inline double eval_sinusoid(const sinusoid_sum& s, double t) {
  double acc = 0.0;
  for (const auto& term : s.terms) acc += term.amplitude * std::sin(term.angular_frequency * t);
  return acc;
}

/// Harmonic-balance frequency ((2 - 2 beta^2) / (2 - beta^2))^{1/4}.
[[nodiscard]] inline double hbm_frequency(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw domain_error("beta must lie strictly between 0 and 1");
  const double b2 = beta * beta;
  return std::sqrt(std::sqrt((2.0 - 2.0 * b2) / (2.0 - b2)));
}

/// Three-harmonic harmonic-balance solution, parametric in beta.
[[nodiscard]] inline sinusoid_sum hbm(double beta) {
  const double w = hbm_frequency(beta);
  const double b2 = beta * beta;
  const double b3 = b2 * beta;
  const double b4 = b2 * b2;
  const double b5 = b4 * beta;
  sinusoid_sum s;
  s.method = approximant_method::hbm;
  s.beta = beta;
  s.terms = {
      {beta / w * (3.0 * b4 + 8.0 * b2 + 64.0) / 64.0, w},
      {-b3 / (24.0 * w) * (3.0 * b2 + 128.0) / 128.0, 3.0 * w},
      {3.0 * b5 / (640.0 * w), 5.0 * w},
  };
  return s;
}

/// Coefficients as printed for beta = 0.1 and beta = 0.2, digit for digit.
/// Some prints break the odd-harmonic pattern (e.g. 4.841 for DTM at 0.1);
/// they are kept as published.
[[nodiscard]] inline sinusoid_sum tabulated(approximant_method method, double beta) {
  sinusoid_sum s;
  s.method = method;
  s.beta = beta;
  if (beta == 0.1) {
    switch (method) {
      case approximant_method::dtm:
        s.terms = {{0.10033, 0.998}, {-0.000047097, 2.997}, {0.00000008254, 4.841}};
        return s;
      case approximant_method::hpm:
        s.terms = {{0.10010, 0.999}, {-0.00004689, 2.997}, {0.00000005062, 4.995}};
        return s;
      case approximant_method::hbm:
        s.terms = {{0.10025, 0.998}, {-0.00004173, 2.996}, {0.00000004369, 4.944}};
        return s;
    }
  } else if (beta == 0.2) {
    switch (method) {
      case approximant_method::dtm:
        s.terms = {{0.203, 0.992}, {-0.0003695, 3.051}, {0.000009257, 4.29}};
        return s;
      case approximant_method::hpm:
        s.terms = {{0.201, 0.995}, {-0.0003768, 2.985}, {0.000001652, 4.974}};
        return s;
      case approximant_method::hbm:
        s.terms = {{0.202, 0.995}, {-0.0003354, 2.985}, {0.000001508, 4.974}};
        return s;
    }
  }
  throw not_tabulated_error("no published " + std::string(to_string(method)) +
                            " coefficients for beta = " + std::to_string(beta) +
                            " (available: 0.1, 0.2)");
}

[[nodiscard]] inline bool is_tabulated(double beta) noexcept { return beta == 0.1 || beta == 0.2; }

}  // namespace ladm
