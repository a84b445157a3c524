#include "colsim/experiments.hpp"

namespace colsim {

namespace {

// Resonant pair with XX+YY exchange everywhere, T1 = 5, T2 = 1.
ExperimentConfig symmetric_setup() {
  ExperimentConfig cfg;
  cfg.params.omega0 = cfg.params.omega1 = cfg.params.omega2 = 1.0;
  cfg.params.tau = 0.1;
  cfg.params.T1 = 5.0;
  cfg.params.T2 = 1.0;
  cfg.params.gamma = 0.5;
  cfg.params.sys_coupling = CouplingForm::XX_YY;
  cfg.params.bath_coupling = CouplingForm::XX_YY;
  cfg.initial = NamedState::Ket11;
  cfg.series.columns = {{ParamVariable::Gamma, {0.2, 0.5, 0.8}}};
  return cfg;
}

// Currents in the off-resonant and anisotropic setups are 1e-9..1e-6 per
// round; the default tolerance would leave a transient of that size.
constexpr double kSmallCurrentTolerance = 1e-12;

// Off-resonant pair (omega1 = 2 omega0) with ZZ coupling and XX baths.
ExperimentConfig off_resonant_setup() {
  ExperimentConfig cfg;
  cfg.params.omega0 = 1.0;
  cfg.params.omega1 = 2.0;
  cfg.params.omega2 = 1.0;
  cfg.params.tau = 0.1;
  cfg.params.gamma = 0.3;
  cfg.params.T1 = 10.0;
  cfg.params.T2 = 0.1;
  cfg.params.sys_coupling = CouplingForm::ZZ;
  cfg.params.bath_coupling = CouplingForm::XX;
  cfg.initial = NamedState::Ket11;
  cfg.sweep = SweepSpec{ParamVariable::Delta, 0.02, 1.0, 50};
  cfg.series.columns = {{ParamVariable::T2, {0.1, 4.0, 8.0}}};
  cfg.tolerance = kSmallCurrentTolerance;
  return cfg;
}

// Resonant pair with anisotropic ZX coupling and XX baths, gamma = 0.5.
ExperimentConfig anisotropic_setup() {
  ExperimentConfig cfg;
  cfg.params.omega0 = cfg.params.omega1 = cfg.params.omega2 = 1.0;
  cfg.params.tau = 0.1;
  cfg.params.gamma = 0.5;
  cfg.params.T1 = 10.0;
  cfg.params.T2 = 1.0;
  cfg.params.sys_coupling = CouplingForm::ZX;
  cfg.params.bath_coupling = CouplingForm::XX;
  cfg.initial = NamedState::Ket11;
  cfg.sweep = SweepSpec{ParamVariable::Delta, 0.02, 1.0, 50};
  cfg.tolerance = kSmallCurrentTolerance;
  return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"};
}

ExperimentConfig preset_figure(std::string_view name) {
  ExperimentConfig cfg;
  if (name == "fig2") {
    // Heat current in both modes against delta.
    cfg = symmetric_setup();
    cfg.sweep = SweepSpec{ParamVariable::Delta, 0.0, 2.0, 50};
    cfg.modes = {SimulationMode::Full, SimulationMode::LocalApprox};
    cfg.outputs = {Output::J_h, Output::W_sw};
  } else if (name == "fig3") {
    // Cross-mode trace distance; the peak sits at small delta.
    cfg = symmetric_setup();
    cfg.sweep = SweepSpec{ParamVariable::Delta, 0.0, 0.5, 101};
    cfg.modes = {SimulationMode::Full, SimulationMode::LocalApprox};
    cfg.outputs = {Output::TraceDistance};
  } else if (name == "fig4") {
    cfg = symmetric_setup();
    cfg.sweep = SweepSpec{ParamVariable::Delta, 0.0, 0.5, 101};
    cfg.modes = {SimulationMode::Full};
    cfg.outputs = {Output::Discord};
  } else if (name == "fig5") {
    cfg = off_resonant_setup();
    cfg.modes = {SimulationMode::Full};
    cfg.outputs = {Output::J_h, Output::W_sw, Output::Rectification};
  } else if (name == "fig6") {
    cfg = off_resonant_setup();
    cfg.sweep = SweepSpec{ParamVariable::Delta, 0.0, 1.0, 51};
    cfg.series.columns = {{ParamVariable::T1, {10.0, 10.0, 5.0, 0.05}},
                          {ParamVariable::T2, {10.0, 5.0, 10.0, 10.0}}};
    cfg.modes = {SimulationMode::Full};
    cfg.outputs = {Output::J_h, Output::W_sw};
  } else if (name == "fig7") {
    cfg = off_resonant_setup();
    cfg.sweep = SweepSpec{ParamVariable::Delta, 0.0, 1.0, 51};
    cfg.modes = {SimulationMode::Full, SimulationMode::LocalApprox};
    cfg.outputs = {Output::TraceDistance};
  } else if (name == "fig8") {
    cfg = off_resonant_setup();
    cfg.sweep = SweepSpec{ParamVariable::Delta, 0.0, 1.0, 51};
    cfg.modes = {SimulationMode::Full};
    cfg.outputs = {Output::Discord};
  } else if (name == "fig9") {
    cfg = anisotropic_setup();
    cfg.modes = {SimulationMode::Full, SimulationMode::LocalApprox};
    cfg.outputs = {Output::J_h, Output::W_sw, Output::TraceDistance, Output::Rectification};
  } else if (name == "fig10") {
    cfg = anisotropic_setup();
    cfg.sweep = SweepSpec{ParamVariable::Delta, 0.0, 1.0, 51};
    cfg.modes = {SimulationMode::Full};
    cfg.outputs = {Output::Discord};
  } else {
    throw ConfigError("figure", "unknown preset '" + std::string(name) + "' (fig2 .. fig10)");
  }
  validate(cfg);
  return cfg;
}

}  // namespace colsim
