#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "colsim/tensor_algebra.hpp"

namespace colsim {

/// Two-body interaction shapes. The first Pauli factor acts on the
/// first-listed party (S1 for system couplings, S_i for bath couplings).
enum class CouplingForm { XX_YY, XX_YY_ZZ, ZZ, XX, ZX };

/// Full keeps the inter-system term in the collision generator; LocalApprox
/// drops it together with the spectator qubit.
enum class SimulationMode { Full, LocalApprox };

enum class Axis { X, Y, Z };

/// Which system/bath pair a collision involves.
enum class Side { First = 1, Second = 2 };

std::string_view to_string(CouplingForm form);
std::string_view to_string(SimulationMode mode);
std::optional<CouplingForm> parse_coupling_form(std::string_view text);
std::optional<SimulationMode> parse_simulation_mode(std::string_view text);

/// Energies in units of omega0, temperatures with k_B = 1, hbar = 1.
struct ModelParams {
  double omega0 = 1.0;
  double omega1 = 1.0;
  double omega2 = 1.0;
  double delta = 0.0;
  double gamma = 0.0;
  double tau = 0.1;
  double T1 = 1.0;
  double T2 = 1.0;
  CouplingForm sys_coupling = CouplingForm::XX_YY;
  CouplingForm bath_coupling = CouplingForm::XX_YY;
  SimulationMode mode = SimulationMode::Full;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  double temperature(Side side) const { return side == Side::First ? T1 : T2; }
  double omega(Side side) const { return side == Side::First ? omega1 : omega2; }

  bool operator==(const ModelParams&) const = default;
};

/// sigma_z = diag(1, -1) in the basis (|0>, |1>); |1> is the ground state.
ComplexMatrix pauli(Axis axis);

/// (omega / 2) sigma_z.
ComplexMatrix free_hamiltonian(double omega);

/// 4x4 two-qubit coupling `strength * form`.
ComplexMatrix interaction_hamiltonian(CouplingForm form, double strength);

/// Gibbs state of an ancilla with gap omega0 at temperature T. T may be +inf.
DensityMatrix thermal_state(double temperature, double omega0);

/// H_S1 + H_S2 + H_int^{S1,S2} on (S1, S2).
ComplexMatrix system_hamiltonian(const ModelParams& p);
/// H_S1 + H_S2 on (S1, S2).
ComplexMatrix bare_system_hamiltonian(const ModelParams& p);

/// Free evolution of the pair over one interval tau.
ComplexMatrix system_unitary(const ModelParams& p);

/// 8x8 generator on (S1, S2, E_which): system Hamiltonian, ancilla
/// Hamiltonian and the S_which-E coupling.
ComplexMatrix collision_generator_full(const ModelParams& p, Side which);
ComplexMatrix collision_unitary_full(const ModelParams& p, Side which);

/// 4x4 generator on (S_which, E_which) with no inter-system term.
ComplexMatrix collision_generator_local(const ModelParams& p, Side which);
ComplexMatrix collision_unitary_local(const ModelParams& p, Side which);

/// The S_which-E coupling embedded on (S1, S2, E_which).
ComplexMatrix bath_interaction_on_round_space(const ModelParams& p, Side which);

/// max |[V, H_ref]| where V is the collision unitary of `mode` and H_ref the
/// bare energy that V would have to conserve for all ancilla energy to enter
/// the system.
double energy_commutator_defect(const ModelParams& p, SimulationMode mode, Side which);

}  // namespace colsim
