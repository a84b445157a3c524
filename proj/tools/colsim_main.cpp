// colsim: steady-state heat transport of a two-qubit collision model.
//
//   colsim run <config-file>        sweep described by a config file
//   colsim figure <fig2..fig10>     parameter set of a published figure
//   colsim oracle discord <state>   brute-force discord of a 4x4 state

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "colsim/experiments.hpp"

namespace {

struct CommonFlags {
  std::string out;
  bool per_time = false;
  std::optional<double> tol;
  std::optional<std::size_t> max_rounds;
  unsigned threads = 1;
};

int run_experiment(colsim::ExperimentConfig cfg, const CommonFlags& flags) {
  if (flags.tol) cfg.tolerance = *flags.tol;
  if (flags.max_rounds) cfg.max_rounds = *flags.max_rounds;
  colsim::validate(cfg);

  colsim::RunOptions options;
  options.threads = flags.threads;
  options.per_time = flags.per_time;
  const auto rows = colsim::run_sweep(cfg, options);
  if (flags.out.empty()) {
    colsim::emit_csv(rows, std::cout);
  } else {
    colsim::emit_csv(rows, std::filesystem::path(flags.out));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit collision-model heat transport simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonFlags flags;
  app.add_option("--out", flags.out, "CSV destination (default: stdout)");
  app.add_flag("--per-time", flags.per_time, "Report heat currents per unit time (divide by 3 tau)");
  app.add_option("--tol", flags.tol, "Steady-state tolerance on successive trace distance")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-rounds", flags.max_rounds, "Round cap per steady-state run")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", flags.threads, "Concurrent sweep points")->check(CLI::PositiveNumber);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the sweep described by a config file");
  run->add_option("config", config_path, "Config file (flat key = value)")->required();

  std::string figure_name;
  auto* figure = app.add_subcommand("figure", "Run a published figure preset");
  figure->add_option("name", figure_name, "fig2 .. fig10")->required();
  bool print_config = false;
  figure->add_flag("--print-config", print_config, "Print the preset as a config file and exit");

  auto* oracle = app.add_subcommand("oracle", "Independent brute-force checks");
  oracle->require_subcommand(1);
  oracle->fallthrough();
  std::string state_path;
  int grid_n = 500;
  auto* discord = oracle->add_subcommand("discord", "Grid-search discord of a two-qubit state");
  discord->add_option("state", state_path, "16 complex entries, row-major, re im pairs")
      ->required();
  discord->add_option("--grid", grid_n, "theta points (phi gets twice as many)")
      ->check(CLI::Range(100, 100000));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_experiment(colsim::load_config(config_path), flags);
    if (*figure) {
      auto cfg = colsim::preset_figure(figure_name);
      if (print_config) {
        std::cout << colsim::to_config_text(cfg);
        return 0;
      }
      return run_experiment(std::move(cfg), flags);
    }
    if (*discord) {
      const auto rho = colsim::read_state_file(state_path);
      const double oracle_value = colsim::discord_grid_oracle(rho, grid_n);
      const auto optimized = colsim::quantum_discord(rho);
      std::ostringstream csv;
      csv.precision(12);
      csv << "grid_n,oracle_discord,optimizer_discord,mutual_information\n"
          << grid_n << ',' << oracle_value << ',' << optimized.value << ','
          << optimized.mutual_info << '\n';
      if (flags.out.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream out(flags.out);
        if (!out) throw std::runtime_error("cannot write " + flags.out);
        out << csv.str();
      }
      return 0;
    }
  } catch (const colsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
