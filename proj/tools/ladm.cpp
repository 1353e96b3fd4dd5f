// ladm: series generation and comparison benchmarks for the relativistic
// harmonic oscillator.
//
// Exit codes: 0 success, 2 usage error, 3 domain or tabulation error,
// 4 oracle failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ladm/bench.hpp"
#include "ladm/ladm.hpp"
#include "ladm/svg.hpp"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_domain = 3;
constexpr int exit_oracle = 4;

struct usage_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    write_file(*path, content);
  } else {
    std::cout << content;
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplace-Adomian series for the relativistic harmonic oscillator"};
  app.require_subcommand(1);

  // series
  double s_beta = 0.0;
  int s_terms = ladm::default_terms;
  std::string s_format = "csv";
  std::optional<double> s_tol;
  double s_t_max = 10.0;
  auto* series_cmd = app.add_subcommand("series", "Print the scaled series coefficients");
  series_cmd->add_option("--beta", s_beta, "Initial velocity, 0 < beta < 1")->required();
  series_cmd->add_option("--terms", s_terms, "Number of series components")->capture_default_str();
  series_cmd->add_option("--format", s_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  series_cmd->add_option("--tol", s_tol,
                         "Choose the term count so the tail bound on [0, t-max] is below this");
  series_cmd->add_option("--t-max", s_t_max, "Horizon used with --tol")->capture_default_str();

  // compare
  ladm::bench::compare_options c_opt;
  std::string c_methods;
  std::string c_out;
  std::optional<std::string> c_json;
  std::optional<std::string> c_stamp;
  auto* compare_cmd = app.add_subcommand("compare", "Tabulate methods against the oracle");
  compare_cmd->add_option("--beta", c_opt.beta, "Initial velocity")->required();
  compare_cmd->add_option("--t-max", c_opt.t_max, "Grid end")->capture_default_str();
  compare_cmd->add_option("--dt", c_opt.dt, "Grid spacing")->capture_default_str();
  compare_cmd->add_option("--methods", c_methods,
                          "Comma list from ladm,hbm,dtm,hpm,oracle "
                          "(default: all available for beta)");
  compare_cmd->add_option("--terms", c_opt.n_terms, "Series components")->capture_default_str();
  compare_cmd->add_option("--out", c_out, "CSV output path")->required();
  compare_cmd->add_option("--json", c_json, "JSON report output path");
  compare_cmd->add_option("--stamp", c_stamp, "Free-form label stored in the JSON report");

  // sweep
  ladm::bench::sweep_options w_opt;
  std::string w_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "LADM error and frequencies across beta");
  sweep_cmd->add_option("--beta-min", w_opt.beta_min)->required();
  sweep_cmd->add_option("--beta-max", w_opt.beta_max)->required();
  sweep_cmd->add_option("--steps", w_opt.steps)->required();
  sweep_cmd->add_option("--t-max", w_opt.t_max, "Error horizon")->capture_default_str();
  sweep_cmd->add_option("--dt", w_opt.dt, "Error grid spacing")->capture_default_str();
  sweep_cmd->add_option("--out", w_out, "CSV output path")->required();

  // plot
  std::string p_in;
  std::string p_out;
  auto* plot_cmd = app.add_subcommand("plot", "Render a JSON report as SVG");
  plot_cmd->add_option("--in", p_in, "JSON report from 'compare'")->required();
  plot_cmd->add_option("--out", p_out, "SVG output path")->required();

  // period
  double r_beta = 0.0;
  auto* period_cmd = app.add_subcommand("period", "Oscillation period from the oracle");
  period_cmd->add_option("--beta", r_beta)->required();

  // dimensional
  double d_beta = 0.0, d_omega0 = 1.0, d_c = 1.0, d_t_max = 10.0, d_dt = 0.5;
  std::optional<std::string> d_out;
  auto* dim_cmd = app.add_subcommand("dimensional", "LADM samples in physical units");
  dim_cmd->add_option("--beta", d_beta)->required();
  dim_cmd->add_option("--omega0", d_omega0, "Non-relativistic angular frequency")->required();
  dim_cmd->add_option("--c", d_c, "Speed of light")->required();
  dim_cmd->add_option("--t-max", d_t_max)->capture_default_str();
  dim_cmd->add_option("--dt", d_dt)->capture_default_str();
  dim_cmd->add_option("--out", d_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return exit_usage;
  }

  try {
    if (*series_cmd) {
      (void)ladm::relativistic_kappa(s_beta);
      int terms = s_terms;
      if (s_tol) terms = ladm::terms_for_tolerance(s_beta, s_t_max, *s_tol);
      if (terms < 1) throw usage_failure("--terms must be at least 1");
      const auto sol = ladm::oscillator_series(s_beta, terms);
      if (s_format == "json") {
        std::cout << ladm::bench::series_to_json(sol).dump(2) << "\n";
      } else {
        std::cout << ladm::csv::render(ladm::bench::series_table(sol));
      }
    } else if (*compare_cmd) {
      if (!c_methods.empty()) {
        c_opt.methods = split_list(c_methods);
      } else if (!ladm::is_tabulated(c_opt.beta)) {
        c_opt.methods = {"ladm", "hbm", "oracle"};
      }
      for (const auto& m : c_opt.methods) {
        if (!ladm::bench::is_method(m)) throw usage_failure("unknown method '" + m + "'");
      }
      if (!(c_opt.dt > 0.0) || !(c_opt.t_max > 0.0)) {
        throw usage_failure("--t-max and --dt must be positive");
      }
      auto rep = ladm::bench::compare(c_opt);
      rep.stamp = c_stamp;
      write_file(c_out, ladm::csv::render(ladm::bench::report_table(rep)));
      if (c_json) write_file(*c_json, ladm::bench::report_to_json(rep).dump(2) + "\n");
    } else if (*sweep_cmd) {
      if (!(w_opt.beta_min > 0.0 && w_opt.beta_min < w_opt.beta_max && w_opt.beta_max < 1.0) ||
          w_opt.steps < 2) {
        throw usage_failure("sweep needs 0 < beta-min < beta-max < 1 and steps >= 2");
      }
      write_file(w_out, ladm::csv::render(ladm::bench::sweep_table(ladm::bench::sweep(w_opt))));
    } else if (*plot_cmd) {
      const auto text = read_file(p_in);
      const auto j = ladm::bench::json::parse(text, nullptr, false);
      if (j.is_discarded()) throw usage_failure("'" + p_in + "' is not valid JSON");
      write_file(p_out, ladm::svg::render(ladm::bench::report_from_json(j)));
    } else if (*period_cmd) {
      ladm::oracle_config cfg;
      cfg.t_end = ladm::horizon_for_periods(r_beta, 3.0);
      const auto traj = ladm::integrate(r_beta, cfg);
      const auto f = ladm::bench::frequencies_for(r_beta, traj);
      ladm::csv::table t;
      t.header = {"beta", "period", "omega_oracle", "omega_hbm", "omega_ladm"};
      t.rows.push_back({r_beta, f.oracle_period, f.omega_oracle, f.omega_hbm, f.omega_ladm});
      std::cout << ladm::csv::render(t);
    } else if (*dim_cmd) {
      if (!(d_omega0 > 0.0) || !(d_c > 0.0)) throw usage_failure("--omega0 and --c must be positive");
      emit(d_out, ladm::csv::render(
                      ladm::bench::dimensional_table(d_beta, d_omega0, d_c, d_t_max, d_dt)));
    }
  } catch (const usage_failure& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ladm::precondition_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ladm::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return exit_domain;
  } catch (const ladm::not_tabulated_error& e) {
    std::cerr << "not tabulated: " << e.what() << "\n";
    return exit_domain;
  } catch (const ladm::integration_error& e) {
    std::cerr << "oracle failure: " << e.what() << "\n";
    return exit_oracle;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
