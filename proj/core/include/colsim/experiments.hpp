#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "colsim/collision_engine.hpp"
#include "colsim/model.hpp"
#include "colsim/observables.hpp"

namespace colsim {

/// Configuration problem, tagged with the dotted key path it concerns.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class NamedState { Ket11, Ket00, MaximallyMixed };

/// Either a named preparation or 16 explicit entries, row-major.
using InitialState = std::variant<NamedState, std::vector<Complex>>;

DensityMatrix make_initial_state(const InitialState& init);

enum class ParamVariable { Delta, Gamma, T1, T2 };

std::string_view to_string(ParamVariable v);
std::optional<ParamVariable> parse_param_variable(std::string_view text);
void set_param(ModelParams& p, ParamVariable v, double value);
double get_param(const ModelParams& p, ParamVariable v);

struct SweepSpec {
  ParamVariable variable = ParamVariable::Delta;
  double start = 0.0;
  double stop = 0.0;
  int points = 1;

  /// Evenly spaced, endpoints included; a single point sits at `start`.
  std::vector<double> values() const;
  bool operator==(const SweepSpec&) const = default;
};

/// Zipped lists of fixed-parameter overrides; entry k of every column forms
/// curve k. Empty means a single curve at the base parameters.
struct SeriesSpec {
  std::vector<std::pair<ParamVariable, std::vector<double>>> columns;

  std::size_t size() const { return columns.empty() ? 1 : columns.front().second.size(); }
  bool operator==(const SeriesSpec&) const = default;
};

enum class Output { J_h, W_sw, TraceDistance, Discord, Rectification };

std::string_view to_string(Output o);
std::optional<Output> parse_output(std::string_view text);

struct ExperimentConfig {
  /// Base parameters; `mode` is ignored in favor of `modes`.
  ModelParams params;
  InitialState initial = NamedState::Ket11;
  std::optional<SweepSpec> sweep;
  SeriesSpec series;
  std::vector<SimulationMode> modes{SimulationMode::Full, SimulationMode::LocalApprox};
  std::vector<Output> outputs{Output::J_h, Output::W_sw};
  double tolerance = kDefaultSteadyTolerance;
  std::size_t max_rounds = kDefaultMaxRounds;

  bool wants(Output o) const;
  bool runs(SimulationMode m) const;
  /// Parameters of series entry `series_index`, sweep point `sweep_index`.
  ModelParams point(std::size_t series_index, std::size_t sweep_index) const;
  std::size_t sweep_size() const { return sweep ? static_cast<std::size_t>(sweep->points) : 1; }

  bool operator==(const ExperimentConfig&) const = default;
};

/// Checks every invariant of a config, including the model parameters of
/// every sweep/series point. Throws ConfigError.
void validate(const ExperimentConfig& cfg);

/// Flat `key = value` document with dotted keys; `#` starts a comment.
/// Unknown or repeated keys are rejected.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config: every key written explicitly.
std::string to_config_text(const ExperimentConfig& cfg);

/// Parameter sets of the published figures, "fig2" .. "fig10".
ExperimentConfig preset_figure(std::string_view name);
std::vector<std::string> preset_names();

struct ModeResult {
  std::optional<double> J_h_energy;
  std::optional<double> J_h_ancilla;
  std::optional<double> W_sw;
  std::size_t rounds_used = 0;
  bool converged = false;
};

struct ResultRow {
  std::size_t series_index = 0;
  std::size_t sweep_index = 0;
  ModelParams params;
  std::optional<ModeResult> full;
  std::optional<ModeResult> local;
  std::optional<double> trace_distance;
  std::optional<double> discord;
  /// Full-mode current with T1 and T2 exchanged; pairs with `full` by index.
  std::optional<double> J_h_reversed;
  std::optional<double> rectification;
};

struct RunOptions {
  unsigned threads = 1;
  /// Report currents per unit time (divide by 3 tau) instead of per round.
  bool per_time = false;
};

/// Steady states and observables for every point, ordered by
/// (series_index, sweep_index) whatever the thread count.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Single point of a sweep; what run_sweep calls per task.
ResultRow run_point(const ExperimentConfig& cfg, std::size_t series_index,
                    std::size_t sweep_index, const RunOptions& options = {});

std::vector<std::string> csv_header();
void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& destination);

/// Exhaustive discord over a grid_n x 2 grid_n (theta, phi) grid, built on
/// the generic partial-trace/entropy kernels. An upper bound on the discord.
double discord_grid_oracle(const DensityMatrix& rho, int grid_n);

/// 16 complex entries row-major as whitespace-separated real/imag pairs.
DensityMatrix parse_state_text(std::string_view text);
DensityMatrix read_state_file(const std::filesystem::path& path);

}  // namespace colsim
