#include "colsim/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace colsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (begin <= s.size()) {
    const auto end = s.find(',', begin);
    const auto item = trim(s.substr(begin, end == std::string_view::npos ? s.npos : end - begin));
    if (!item.empty()) out.push_back(item);
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return out;
}

double parse_real(std::string_view text, const std::string& key) {
  text = trim(text);
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ConfigError(key, "expected a real number, got '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view text, const std::string& key) {
  text = trim(text);
  long long value = 0;
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

const std::map<std::string_view, NamedState>& named_states() {
  static const std::map<std::string_view, NamedState> m{
      {"ket11", NamedState::Ket11},
      {"ket00", NamedState::Ket00},
      {"maximally_mixed", NamedState::MaximallyMixed},
  };
  return m;
}

std::string_view to_string(NamedState s) {
  for (const auto& [name, value] : named_states()) {
    if (value == s) return name;
  }
  return "?";
}

std::string series_key(ParamVariable v) { return "series." + std::string(to_string(v)); }

}  // namespace

std::string_view to_string(ParamVariable v) {
  switch (v) {
    case ParamVariable::Delta: return "delta";
    case ParamVariable::Gamma: return "gamma";
    case ParamVariable::T1: return "T1";
    case ParamVariable::T2: return "T2";
  }
  return "?";
}

std::optional<ParamVariable> parse_param_variable(std::string_view text) {
  for (auto v : {ParamVariable::Delta, ParamVariable::Gamma, ParamVariable::T1, ParamVariable::T2}) {
    if (text == to_string(v)) return v;
  }
  return std::nullopt;
}

void set_param(ModelParams& p, ParamVariable v, double value) {
  switch (v) {
    case ParamVariable::Delta: p.delta = value; break;
    case ParamVariable::Gamma: p.gamma = value; break;
    case ParamVariable::T1: p.T1 = value; break;
    case ParamVariable::T2: p.T2 = value; break;
  }
}

double get_param(const ModelParams& p, ParamVariable v) {
  switch (v) {
    case ParamVariable::Delta: return p.delta;
    case ParamVariable::Gamma: return p.gamma;
    case ParamVariable::T1: return p.T1;
    case ParamVariable::T2: return p.T2;
  }
  return 0.0;
}

std::string_view to_string(Output o) {
  switch (o) {
    case Output::J_h: return "J_h";
    case Output::W_sw: return "W_sw";
    case Output::TraceDistance: return "trace_distance";
    case Output::Discord: return "discord";
    case Output::Rectification: return "rectification";
  }
  return "?";
}

std::optional<Output> parse_output(std::string_view text) {
  for (auto o : {Output::J_h, Output::W_sw, Output::TraceDistance, Output::Discord,
                 Output::Rectification}) {
    if (text == to_string(o)) return o;
  }
  return std::nullopt;
}

DensityMatrix make_initial_state(const InitialState& init) {
  if (const auto* named = std::get_if<NamedState>(&init)) {
    switch (*named) {
      case NamedState::Ket11: return DensityMatrix::basis_state(4, 3);
      case NamedState::Ket00: return DensityMatrix::basis_state(4, 0);
      case NamedState::MaximallyMixed: return DensityMatrix::maximally_mixed(4);
    }
  }
  const auto& entries = std::get<std::vector<Complex>>(init);
  if (entries.size() != 16) {
    throw std::invalid_argument("explicit initial state needs 16 entries");
  }
  ComplexMatrix m(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = entries[4 * r + c];
  }
  return DensityMatrix(std::move(m));
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  if (points <= 0) return out;
  out.reserve(points);
  if (points == 1) {
    out.push_back(start);
    return out;
  }
  for (int k = 0; k < points; ++k) {
    out.push_back(k == points - 1 ? stop : start + (stop - start) * k / (points - 1));
  }
  return out;
}

bool ExperimentConfig::wants(Output o) const {
  return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

bool ExperimentConfig::runs(SimulationMode m) const {
  return std::find(modes.begin(), modes.end(), m) != modes.end();
}

ModelParams ExperimentConfig::point(std::size_t series_index, std::size_t sweep_index) const {
  ModelParams p = params;
  for (const auto& [variable, values] : series.columns) {
    set_param(p, variable, values.at(series_index));
  }
  if (sweep) set_param(p, sweep->variable, sweep->values().at(sweep_index));
  return p;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.sweep) {
    const auto& s = *cfg.sweep;
    if (s.points < 1) throw ConfigError("sweep.points", "must be >= 1");
    if (!std::isfinite(s.start)) throw ConfigError("sweep.start", "must be finite");
    if (!std::isfinite(s.stop)) throw ConfigError("sweep.stop", "must be finite");
  }
  std::set<ParamVariable> seen;
  std::size_t series_len = 0;
  for (const auto& [variable, values] : cfg.series.columns) {
    const auto key = series_key(variable);
    if (!seen.insert(variable).second) throw ConfigError(key, "given twice");
    if (cfg.sweep && cfg.sweep->variable == variable) {
      throw ConfigError(key, "also used as the sweep variable");
    }
    if (values.empty()) throw ConfigError(key, "needs at least one value");
    if (series_len != 0 && values.size() != series_len) {
      throw ConfigError(key, "all series lists must have the same length");
    }
    series_len = values.size();
  }
  if (cfg.modes.empty()) throw ConfigError("run.modes", "at least one mode is required");
  if (cfg.outputs.empty()) throw ConfigError("run.outputs", "at least one output is required");
  if (cfg.wants(Output::TraceDistance) &&
      !(cfg.runs(SimulationMode::Full) && cfg.runs(SimulationMode::LocalApprox))) {
    throw ConfigError("run.outputs", "trace_distance requires both modes in run.modes");
  }
  if ((cfg.wants(Output::Discord) || cfg.wants(Output::Rectification)) &&
      !cfg.runs(SimulationMode::Full)) {
    throw ConfigError("run.outputs", "discord and rectification are computed in full mode");
  }
  if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance)) {
    throw ConfigError("run.tolerance", "must be finite and > 0");
  }
  if (cfg.max_rounds < 1) throw ConfigError("run.max_rounds", "must be >= 1");
  try {
    (void)make_initial_state(cfg.initial);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("initial.matrix", e.what());
  }

  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw ConfigError("model." + msg.substr(0, msg.find(' ')), msg);
  }
  for (std::size_t si = 0; si < cfg.series.size(); ++si) {
    for (std::size_t k = 0; k < cfg.sweep_size(); ++k) {
      try {
        cfg.point(si, k).validate();
      } catch (const std::invalid_argument& e) {
        std::ostringstream os;
        os << e.what() << " at series entry " << si << ", sweep point " << k;
        const std::string key =
            cfg.sweep ? std::string("sweep") : std::string("series");
        throw ConfigError(key, os.str());
      }
    }
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  double omega0_tau = 0.1;
  std::optional<std::string> initial_matrix;
  std::string initial_name = "ket11";
  std::optional<std::string> sweep_variable;
  std::optional<double> sweep_start, sweep_stop;
  std::optional<long long> sweep_points;
  std::set<std::string> seen;

  auto real_field = [&](const std::string& key, std::string_view value,
                        double& target) { target = parse_real(value, key); };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == text.npos ? text.npos : eol - pos);
    pos = eol == text.npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == line.npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError(key, "given more than once");

    if (key == "model.omega0") real_field(key, value, cfg.params.omega0);
    else if (key == "model.omega1") real_field(key, value, cfg.params.omega1);
    else if (key == "model.omega2") real_field(key, value, cfg.params.omega2);
    else if (key == "model.delta") real_field(key, value, cfg.params.delta);
    else if (key == "model.gamma") real_field(key, value, cfg.params.gamma);
    else if (key == "model.T1") real_field(key, value, cfg.params.T1);
    else if (key == "model.T2") real_field(key, value, cfg.params.T2);
    else if (key == "model.omega0_tau") omega0_tau = parse_real(value, key);
    else if (key == "model.sys_coupling" || key == "model.bath_coupling") {
      const auto form = parse_coupling_form(value);
      if (!form) throw ConfigError(key, "unknown coupling form '" + std::string(value) + "'");
      (key == "model.sys_coupling" ? cfg.params.sys_coupling : cfg.params.bath_coupling) = *form;
    } else if (key == "initial.state") {
      initial_name = std::string(value);
    } else if (key == "initial.matrix") {
      initial_matrix = std::string(value);
    } else if (key == "sweep.variable") {
      sweep_variable = std::string(value);
    } else if (key == "sweep.start") {
      sweep_start = parse_real(value, key);
    } else if (key == "sweep.stop") {
      sweep_stop = parse_real(value, key);
    } else if (key == "sweep.points") {
      sweep_points = parse_integer(value, key);
    } else if (key.rfind("series.", 0) == 0) {
      const auto variable = parse_param_variable(std::string_view(key).substr(7));
      if (!variable) throw ConfigError(key, "unknown key");
      std::vector<double> values;
      for (auto item : split_list(value)) values.push_back(parse_real(item, key));
      cfg.series.columns.emplace_back(*variable, std::move(values));
    } else if (key == "run.modes") {
      cfg.modes.clear();
      for (auto item : split_list(value)) {
        const auto mode = parse_simulation_mode(item);
        if (!mode) throw ConfigError(key, "unknown mode '" + std::string(item) + "'");
        if (std::find(cfg.modes.begin(), cfg.modes.end(), *mode) == cfg.modes.end()) {
          cfg.modes.push_back(*mode);
        }
      }
    } else if (key == "run.outputs") {
      cfg.outputs.clear();
      for (auto item : split_list(value)) {
        const auto o = parse_output(item);
        if (!o) throw ConfigError(key, "unknown output '" + std::string(item) + "'");
        if (std::find(cfg.outputs.begin(), cfg.outputs.end(), *o) == cfg.outputs.end()) {
          cfg.outputs.push_back(*o);
        }
      }
    } else if (key == "run.tolerance") {
      cfg.tolerance = parse_real(value, key);
    } else if (key == "run.max_rounds") {
      const auto n = parse_integer(value, key);
      if (n < 1) throw ConfigError(key, "must be >= 1");
      cfg.max_rounds = static_cast<std::size_t>(n);
    } else {
      throw ConfigError(key, "unknown key");
    }
  }

  if (!(omega0_tau > 0.0) || !std::isfinite(omega0_tau)) {
    throw ConfigError("model.omega0_tau", "must be finite and > 0");
  }
  if (!(cfg.params.omega0 > 0.0)) throw ConfigError("model.omega0", "must be > 0");
  cfg.params.tau = omega0_tau / cfg.params.omega0;

  if (initial_name == "explicit") {
    if (!initial_matrix) throw ConfigError("initial.matrix", "required when initial.state = explicit");
    std::vector<double> numbers;
    std::istringstream is{std::string(*initial_matrix)};
    std::string token;
    while (is >> token) {
      token.erase(std::remove(token.begin(), token.end(), ','), token.end());
      if (!token.empty()) numbers.push_back(parse_real(token, "initial.matrix"));
    }
    if (numbers.size() != 32) {
      throw ConfigError("initial.matrix", "expected 32 numbers (16 real/imag pairs), got " +
                                              std::to_string(numbers.size()));
    }
    std::vector<Complex> entries;
    for (std::size_t k = 0; k < 16; ++k) entries.emplace_back(numbers[2 * k], numbers[2 * k + 1]);
    cfg.initial = std::move(entries);
  } else {
    const auto it = named_states().find(initial_name);
    if (it == named_states().end()) {
      throw ConfigError("initial.state", "unknown state '" + initial_name + "'");
    }
    if (initial_matrix) throw ConfigError("initial.matrix", "only allowed with initial.state = explicit");
    cfg.initial = it->second;
  }

  if (sweep_variable || sweep_start || sweep_stop || sweep_points) {
    if (!sweep_variable) throw ConfigError("sweep.variable", "required when sweeping");
    const auto variable = parse_param_variable(*sweep_variable);
    if (!variable) throw ConfigError("sweep.variable", "unknown variable '" + *sweep_variable + "'");
    if (!sweep_start) throw ConfigError("sweep.start", "required when sweeping");
    if (!sweep_stop) throw ConfigError("sweep.stop", "required when sweeping");
    if (!sweep_points) throw ConfigError("sweep.points", "required when sweeping");
    if (*sweep_points < 1 || *sweep_points > 1000000) {
      throw ConfigError("sweep.points", "must be between 1 and 1000000");
    }
    cfg.sweep = SweepSpec{*variable, *sweep_start, *sweep_stop, static_cast<int>(*sweep_points)};
  }

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream os;
  const auto& p = cfg.params;
  os << "model.omega0 = " << format_real(p.omega0) << '\n'
     << "model.omega1 = " << format_real(p.omega1) << '\n'
     << "model.omega2 = " << format_real(p.omega2) << '\n'
     << "model.delta = " << format_real(p.delta) << '\n'
     << "model.gamma = " << format_real(p.gamma) << '\n'
     << "model.omega0_tau = " << format_real(p.omega0 * p.tau) << '\n'
     << "model.T1 = " << format_real(p.T1) << '\n'
     << "model.T2 = " << format_real(p.T2) << '\n'
     << "model.sys_coupling = " << to_string(p.sys_coupling) << '\n'
     << "model.bath_coupling = " << to_string(p.bath_coupling) << '\n';
  if (const auto* named = std::get_if<NamedState>(&cfg.initial)) {
    os << "initial.state = " << to_string(*named) << '\n';
  } else {
    os << "initial.state = explicit\ninitial.matrix =";
    for (const auto& z : std::get<std::vector<Complex>>(cfg.initial)) {
      os << ' ' << format_real(z.real()) << ' ' << format_real(z.imag());
    }
    os << '\n';
  }
  if (cfg.sweep) {
    os << "sweep.variable = " << to_string(cfg.sweep->variable) << '\n'
       << "sweep.start = " << format_real(cfg.sweep->start) << '\n'
       << "sweep.stop = " << format_real(cfg.sweep->stop) << '\n'
       << "sweep.points = " << cfg.sweep->points << '\n';
  }
  for (const auto& [variable, values] : cfg.series.columns) {
    os << series_key(variable) << " =";
    for (std::size_t k = 0; k < values.size(); ++k) {
      os << (k ? ", " : " ") << format_real(values[k]);
    }
    os << '\n';
  }
  os << "run.modes =";
  for (std::size_t k = 0; k < cfg.modes.size(); ++k) os << (k ? ", " : " ") << to_string(cfg.modes[k]);
  os << "\nrun.outputs =";
  for (std::size_t k = 0; k < cfg.outputs.size(); ++k) {
    os << (k ? ", " : " ") << to_string(cfg.outputs[k]);
  }
  os << "\nrun.tolerance = " << format_real(cfg.tolerance) << '\n'
     << "run.max_rounds = " << cfg.max_rounds << '\n';
  return os.str();
}

}  // namespace colsim
