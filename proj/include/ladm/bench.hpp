#pragma once

// Method-vs-method comparison on a time grid, beta sweeps and unit
// conversion. Everything here is deterministic: identical inputs give
// byte-identical CSV and JSON.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ladm/approximants.hpp"
#include "ladm/csv.hpp"
#include "ladm/errors.hpp"
#include "ladm/oracle.hpp"
#include "ladm/solver.hpp"

namespace ladm::bench {

using json = nlohmann::ordered_json;

inline constexpr std::string_view method_names[] = {"ladm", "hbm", "dtm", "hpm", "oracle"};

[[nodiscard]] inline bool is_method(std::string_view m) {
  return std::find(std::begin(method_names), std::end(method_names), m) != std::end(method_names);
}

/// 0, dt, 2 dt, ... up to t_max (inclusive when t_max is a multiple of dt).
[[nodiscard]] inline std::vector<double> make_grid(double t_max, double dt) {
  if (!(t_max >= 0.0) || !(dt > 0.0)) throw precondition_error("grid needs t_max >= 0 and dt > 0");
  const auto n = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid.push_back(std::min(static_cast<double>(i) * dt, t_max));
  return grid;
}

struct error_summary {
  double max_abs = 0.0;
  double rms = 0.0;
};

struct frequency_summary {
  double omega_ladm = 0.0;     // (1 - beta^2)^{3/4}
  double omega_hbm = 0.0;      // harmonic-balance frequency
  double oracle_period = 0.0;  // spacing of upward zero crossings
  double omega_oracle = 0.0;   // 2 pi / oracle_period
};

struct named_column {
  std::string method;
  std::vector<double> values;
};

struct named_error {
  std::string method;
  error_summary summary;
  std::vector<double> pointwise;  // |x_method - x_oracle| on the grid
};

struct comparison_report {
  double beta = 0.0;
  int n_terms = default_terms;
  std::vector<double> grid;
  std::vector<named_column> columns;  // requested methods, canonical order
  std::vector<named_error> errors;    // every non-oracle column vs the oracle
  frequency_summary frequencies;
  std::optional<std::string> stamp;

  [[nodiscard]] const std::vector<double>* column(std::string_view method) const {
    for (const auto& c : columns) {
      if (c.method == method) return &c.values;
    }
    return nullptr;
  }

  [[nodiscard]] const error_summary* error_for(std::string_view method) const {
    for (const auto& e : errors) {
      if (e.method == method) return &e.summary;
    }
    return nullptr;
  }
};

struct compare_options {
  double beta = 0.1;
  double t_max = 10.0;
  double dt = 0.5;
  std::vector<std::string> methods{"ladm", "hbm", "dtm", "hpm", "oracle"};
  int n_terms = default_terms;
  oracle_config oracle{};
};

/// Oracle run covering both the comparison horizon and three periods.
[[nodiscard]] inline oracle_trajectory reference_trajectory(double beta, double t_max,
                                                            oracle_config cfg = {}) {
  cfg.t_end = std::max(t_max, horizon_for_periods(beta, 3.0));
  return integrate(beta, cfg);
}

[[nodiscard]] inline frequency_summary frequencies_for(double beta, const oracle_trajectory& traj) {
  frequency_summary f;
  f.omega_ladm = series_frequency(beta);
  f.omega_hbm = hbm_frequency(beta);
  f.oracle_period = period(traj);
  f.omega_oracle = 2.0 * std::numbers::pi / f.oracle_period;
  return f;
}

namespace detail {

inline error_summary summarize(const std::vector<double>& pointwise,
                               const std::vector<double>& grid, double horizon) {
  error_summary e;
  double sq = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > horizon) continue;
    e.max_abs = std::max(e.max_abs, pointwise[i]);
    sq += pointwise[i] * pointwise[i];
    ++count;
  }
  e.rms = count ? std::sqrt(sq / static_cast<double>(count)) : 0.0;
  return e;
}

}  // namespace detail

[[nodiscard]] inline comparison_report compare(const compare_options& opt) {
  (void)relativistic_kappa(opt.beta);  // domain check before any work
  if (opt.n_terms < 1) throw precondition_error("n_terms must be at least 1");
  for (const auto& m : opt.methods) {
    if (!is_method(m)) throw precondition_error("unknown method '" + m + "'");
  }
  std::vector<std::string> methods;
  for (auto name : method_names) {
    if (std::find(opt.methods.begin(), opt.methods.end(), name) != opt.methods.end()) {
      methods.emplace_back(name);
    }
  }
  if (methods.empty()) throw precondition_error("no methods requested");
  for (const auto& m : methods) {
    if (m == "dtm" || m == "hpm") (void)tabulated(*parse_approximant_method(m), opt.beta);
  }

  comparison_report rep;
  rep.beta = opt.beta;
  rep.n_terms = opt.n_terms;
  rep.grid = make_grid(opt.t_max, opt.dt);

  const auto traj = reference_trajectory(opt.beta, opt.t_max, opt.oracle);
  const auto truth = sample_on_grid(traj, rep.grid);
  const auto series = partial_sum(oscillator_series(opt.beta, opt.n_terms));

  for (const auto& m : methods) {
    named_column col{m, {}};
    if (m == "oracle") {
      col.values = truth;
    } else if (m == "ladm") {
      for (double t : rep.grid) col.values.push_back(eval(series, t));
    } else {
      const auto method = *parse_approximant_method(m);
      const auto s = method == approximant_method::hbm ? hbm(opt.beta) : tabulated(method, opt.beta);
      for (double t : rep.grid) col.values.push_back(eval_sinusoid(s, t));
    }
    rep.columns.push_back(std::move(col));
  }

  for (const auto& col : rep.columns) {
    if (col.method == "oracle") continue;
    named_error e{col.method, {}, {}};
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
      e.pointwise.push_back(std::abs(col.values[i] - truth[i]));
    }
    e.summary = detail::summarize(e.pointwise, rep.grid, traj.t_end());
    rep.errors.push_back(std::move(e));
  }

  rep.frequencies = frequencies_for(opt.beta, traj);
  return rep;
}

/// t, one column per method, then err_<method> for each non-oracle method.
[[nodiscard]] inline csv::table report_table(const comparison_report& rep) {
  csv::table t;
  t.header.emplace_back("t");
  for (const auto& c : rep.columns) t.header.push_back(c.method);
  for (const auto& e : rep.errors) t.header.push_back("err_" + e.method);
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    std::vector<double> row{rep.grid[i]};
    for (const auto& c : rep.columns) row.push_back(c.values[i]);
    for (const auto& e : rep.errors) row.push_back(e.pointwise[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

[[nodiscard]] inline json report_to_json(const comparison_report& rep) {
  json j;
  j["beta"] = rep.beta;
  j["n_terms"] = rep.n_terms;
  j["grid"] = rep.grid;
  json cols = json::object();
  for (const auto& c : rep.columns) cols[c.method] = c.values;
  j["columns"] = std::move(cols);
  json errs = json::object();
  for (const auto& e : rep.errors) {
    errs[e.method] = {{"max_abs", e.summary.max_abs}, {"rms", e.summary.rms}};
  }
  j["errors"] = std::move(errs);
  j["frequency_summary"] = {{"omega_ladm", rep.frequencies.omega_ladm},
                            {"omega_hbm", rep.frequencies.omega_hbm},
                            {"oracle_period", rep.frequencies.oracle_period},
                            {"omega_oracle", rep.frequencies.omega_oracle}};
  if (rep.stamp) j["stamp"] = *rep.stamp;
  return j;
}

/// Inverse of report_to_json. Pointwise errors are not stored in JSON.
[[nodiscard]] inline comparison_report report_from_json(const json& j) {
  try {
    comparison_report rep;
    rep.beta = j.at("beta").get<double>();
    rep.n_terms = j.value("n_terms", default_terms);
    rep.grid = j.at("grid").get<std::vector<double>>();
    for (const auto& [name, values] : j.at("columns").items()) {
      rep.columns.push_back({name, values.get<std::vector<double>>()});
      if (rep.columns.back().values.size() != rep.grid.size()) {
        throw precondition_error("column '" + name + "' length differs from grid");
      }
    }
    for (const auto& [name, e] : j.at("errors").items()) {
      rep.errors.push_back({name, {e.at("max_abs").get<double>(), e.at("rms").get<double>()}, {}});
    }
    const auto& f = j.at("frequency_summary");
    rep.frequencies = {f.at("omega_ladm").get<double>(), f.at("omega_hbm").get<double>(),
                       f.at("oracle_period").get<double>(), f.at("omega_oracle").get<double>()};
    if (j.contains("stamp")) rep.stamp = j.at("stamp").get<std::string>();
    return rep;
  } catch (const json::exception& e) {
    throw precondition_error(std::string("malformed report: ") + e.what());
  }
}

struct sweep_options {
  double beta_min = 0.05;
  double beta_max = 0.9;
  int steps = 18;
  double t_max = 10.0;
  double dt = 0.1;
  int n_terms = default_terms;
  oracle_config oracle{};
};

struct sweep_row {
  double beta = 0.0;
  double max_abs_err_ladm = 0.0;
  double omega_ladm = 0.0;
  double omega_hbm = 0.0;
  double oracle_period = 0.0;
};

[[nodiscard]] inline std::vector<sweep_row> sweep(const sweep_options& opt) {
  if (!(opt.beta_min > 0.0 && opt.beta_min < opt.beta_max && opt.beta_max < 1.0)) {
    throw precondition_error("sweep needs 0 < beta_min < beta_max < 1");
  }
  if (opt.steps < 2) throw precondition_error("sweep needs at least 2 steps");
  const auto grid = make_grid(opt.t_max, opt.dt);
  std::vector<sweep_row> rows;
  rows.reserve(static_cast<std::size_t>(opt.steps));
  for (int i = 0; i < opt.steps; ++i) {
    const double beta =
        i + 1 == opt.steps ? opt.beta_max
                           : opt.beta_min + (opt.beta_max - opt.beta_min) * i / (opt.steps - 1);
    const auto traj = reference_trajectory(beta, opt.t_max, opt.oracle);
    const auto truth = sample_on_grid(traj, grid);
    const auto series = partial_sum(oscillator_series(beta, opt.n_terms));
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      worst = std::max(worst, std::abs(eval(series, grid[k]) - truth[k]));
    }
    const auto f = frequencies_for(beta, traj);
    rows.push_back({beta, worst, f.omega_ladm, f.omega_hbm, f.oracle_period});
  }
  return rows;
}

[[nodiscard]] inline csv::table sweep_table(const std::vector<sweep_row>& rows) {
  csv::table t;
  t.header = {"beta", "max_abs_err_ladm", "omega_ladm", "omega_hbm", "oracle_period"};
  for (const auto& r : rows) {
    t.rows.push_back({r.beta, r.max_abs_err_ladm, r.omega_ladm, r.omega_hbm, r.oracle_period});
  }
  return t;
}

/// Scaled coefficients of the oscillator series, one row per component.
[[nodiscard]] inline csv::table series_table(const series_solution& sol) {
  csv::table t;
  t.header = {"n", "degree", "coefficient"};
  for (int n = 0; n < sol.n_terms(); ++n) {
    const auto& c = sol.components[static_cast<std::size_t>(n)];
    for (const auto& [k, v] : c) t.rows.push_back({static_cast<double>(n), static_cast<double>(k), v});
  }
  return t;
}

[[nodiscard]] inline json series_to_json(const series_solution& sol) {
  json j;
  j["beta"] = sol.beta;
  if (sol.kappa) j["kappa"] = *sol.kappa;
  j["n_terms"] = sol.n_terms();
  json terms = json::array();
  for (int n = 0; n < sol.n_terms(); ++n) {
    for (const auto& [k, v] : sol.components[static_cast<std::size_t>(n)]) {
      terms.push_back({{"n", n}, {"degree", k}, {"coefficient", v}});
    }
  }
  j["terms"] = std::move(terms);
  return j;
}

// Dimensionless (t, x) relate to physical (t_bar, x_bar) through
// t = omega0 t_bar and x = omega0 x_bar / c.
struct physical_point {
  double t_bar = 0.0;
  double x_bar = 0.0;
};

struct dimensionless_point {
  double t = 0.0;
  double x = 0.0;
};

inline void check_units(double omega0, double c) {
  if (!(omega0 > 0.0) || !(c > 0.0)) throw precondition_error("omega0 and c must be positive");
}

[[nodiscard]] inline physical_point to_dimensional(dimensionless_point p, double omega0, double c) {
  check_units(omega0, c);
  return {p.t / omega0, c * p.x / omega0};
}

[[nodiscard]] inline dimensionless_point to_dimensionless(physical_point p, double omega0,
                                                          double c) {
  check_units(omega0, c);
  return {omega0 * p.t_bar, omega0 * p.x_bar / c};
}

/// LADM trajectory on the grid in both unit systems: t, x, t_bar, x_bar.
[[nodiscard]] inline csv::table dimensional_table(double beta, double omega0, double c,
                                                  double t_max, double dt,
                                                  int n_terms = default_terms) {
  check_units(omega0, c);
  const auto series = partial_sum(oscillator_series(beta, n_terms));
  csv::table t;
  t.header = {"t", "x", "t_bar", "x_bar"};
  for (double time : make_grid(t_max, dt)) {
    const double x = eval(series, time);
    const auto p = to_dimensional({time, x}, omega0, c);
    t.rows.push_back({time, x, p.t_bar, p.x_bar});
  }
  return t;
}

}  // namespace ladm::bench
