#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "colsim/experiments.hpp"

namespace colsim {

namespace {

struct ModeRun {
  ModeResult result;
  SteadyStateReport report;
};

ModeRun run_mode(const ExperimentConfig& cfg, ModelParams p, SimulationMode mode,
                 const DensityMatrix& rho0, double current_scale) {
  p.mode = mode;
  ModeRun run;
  run.report = run_to_steady_state(rho0, p, cfg.tolerance, cfg.max_rounds);
  run.result.rounds_used = run.report.rounds_used;
  run.result.converged = run.report.converged;
  if (cfg.wants(Output::J_h)) {
    run.result.J_h_energy = run.report.J_h_energy * current_scale;
    run.result.J_h_ancilla = run.report.J_h_ancilla * current_scale;
  }
  if (cfg.wants(Output::W_sw)) run.result.W_sw = run.report.W_sw;
  return run;
}

}  // namespace

ResultRow run_point(const ExperimentConfig& cfg, std::size_t series_index,
                    std::size_t sweep_index, const RunOptions& options) {
  ResultRow row;
  row.series_index = series_index;
  row.sweep_index = sweep_index;
  row.params = cfg.point(series_index, sweep_index);
  const DensityMatrix rho0 = make_initial_state(cfg.initial);
  const double scale = options.per_time ? 1.0 / (3.0 * row.params.tau) : 1.0;

  std::optional<ModeRun> full;
  std::optional<ModeRun> local;
  if (cfg.runs(SimulationMode::Full)) {
    full = run_mode(cfg, row.params, SimulationMode::Full, rho0, scale);
    row.full = full->result;
  }
  if (cfg.runs(SimulationMode::LocalApprox)) {
    local = run_mode(cfg, row.params, SimulationMode::LocalApprox, rho0, scale);
    row.local = local->result;
  }
  if (cfg.wants(Output::TraceDistance) && full && local) {
    row.trace_distance = trace_distance(full->report.steady_rho, local->report.steady_rho);
  }
  if (cfg.wants(Output::Discord) && full) {
    row.discord = quantum_discord(full->report.steady_rho).value;
  }
  if (cfg.wants(Output::Rectification) && full) {
    ModelParams reversed = row.params;
    std::swap(reversed.T1, reversed.T2);
    reversed.mode = SimulationMode::Full;
    const auto report = run_to_steady_state(rho0, reversed, cfg.tolerance, cfg.max_rounds);
    row.J_h_reversed = report.J_h_energy * scale;
    row.rectification = rectification_factor(full->report.J_h_energy, report.J_h_energy);
  }
  return row;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, const RunOptions& options) {
  validate(cfg);
  const std::size_t per_series = cfg.sweep_size();
  const std::size_t tasks = cfg.series.size() * per_series;
  std::vector<ResultRow> rows(tasks);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      try {
        rows[task] = run_point(cfg, task / per_series, task % per_series, options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks;
      }
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::size_t>(options.threads, 1, tasks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace colsim
