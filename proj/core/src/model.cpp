#include "colsim/model.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace colsim {

namespace {

const ComplexMatrix& identity2() {
  static const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  return id;
}

// Slots of the collision space (S1, S2, E).
const TensorLayout& collision_layout() {
  static const TensorLayout layout = TensorLayout::qubits(3);
  return layout;
}

constexpr std::size_t kS1 = 0;
constexpr std::size_t kS2 = 1;
constexpr std::size_t kE = 2;

std::size_t system_slot(Side which) { return which == Side::First ? kS1 : kS2; }

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << name << " must be > 0 (got " << v << ")";
    throw std::invalid_argument(os.str());
  }
}

void require_non_negative_finite(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be finite and >= 0 (got " << v << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

std::string_view to_string(CouplingForm form) {
  switch (form) {
    case CouplingForm::XX_YY: return "XX_YY";
    case CouplingForm::XX_YY_ZZ: return "XX_YY_ZZ";
    case CouplingForm::ZZ: return "ZZ";
    case CouplingForm::XX: return "XX";
    case CouplingForm::ZX: return "ZX";
  }
  return "?";
}

std::string_view to_string(SimulationMode mode) {
  return mode == SimulationMode::Full ? "full" : "local";
}

std::optional<CouplingForm> parse_coupling_form(std::string_view text) {
  for (auto f : {CouplingForm::XX_YY, CouplingForm::XX_YY_ZZ, CouplingForm::ZZ, CouplingForm::XX,
                 CouplingForm::ZX}) {
    if (text == to_string(f)) return f;
  }
  return std::nullopt;
}

std::optional<SimulationMode> parse_simulation_mode(std::string_view text) {
  if (text == "full" || text == "Full") return SimulationMode::Full;
  if (text == "local" || text == "LocalApprox" || text == "local_approx") {
    return SimulationMode::LocalApprox;
  }
  return std::nullopt;
}

void ModelParams::validate() const {
  require_positive(omega0, "omega0");
  require_positive(omega1, "omega1");
  require_positive(omega2, "omega2");
  if (!std::isfinite(omega0) || !std::isfinite(omega1) || !std::isfinite(omega2)) {
    throw std::invalid_argument("gaps must be finite");
  }
  require_positive(tau, "tau");
  if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
  require_positive(T1, "T1");
  require_positive(T2, "T2");
  require_non_negative_finite(delta, "delta");
  require_non_negative_finite(gamma, "gamma");
}

ComplexMatrix pauli(Axis axis) {
  ComplexMatrix m(2, 2);
  switch (axis) {
    case Axis::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Axis::Y: m << 0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0; break;
    case Axis::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

ComplexMatrix free_hamiltonian(double omega) { return 0.5 * omega * pauli(Axis::Z); }

ComplexMatrix interaction_hamiltonian(CouplingForm form, double strength) {
  static const ComplexMatrix xx = kron(pauli(Axis::X), pauli(Axis::X));
  static const ComplexMatrix yy = kron(pauli(Axis::Y), pauli(Axis::Y));
  static const ComplexMatrix zz = kron(pauli(Axis::Z), pauli(Axis::Z));
  static const ComplexMatrix zx = kron(pauli(Axis::Z), pauli(Axis::X));
  switch (form) {
    case CouplingForm::XX_YY: return strength * (xx + yy);
    case CouplingForm::XX_YY_ZZ: return strength * (xx + yy + zz);
    case CouplingForm::ZZ: return strength * zz;
    case CouplingForm::XX: return strength * xx;
    case CouplingForm::ZX: return strength * zx;
  }
  throw std::invalid_argument("interaction_hamiltonian: unknown coupling form");
}

DensityMatrix thermal_state(double temperature, double omega0) {
  if (!(temperature > 0.0)) {
    std::ostringstream os;
    os << "thermal_state: temperature must be > 0 (got " << temperature << ")";
    throw std::invalid_argument(os.str());
  }
  // Boltzmann factor of the excited level |0> relative to the ground level |1>.
  const double boltzmann = std::isinf(temperature) ? 1.0 : std::exp(-omega0 / temperature);
  const double p_excited = boltzmann / (1.0 + boltzmann);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = p_excited;
  m(1, 1) = 1.0 - p_excited;
  return DensityMatrix(std::move(m));
}

ComplexMatrix bare_system_hamiltonian(const ModelParams& p) {
  return kron(free_hamiltonian(p.omega1), identity2()) + kron(identity2(), free_hamiltonian(p.omega2));
}

ComplexMatrix system_hamiltonian(const ModelParams& p) {
  return bare_system_hamiltonian(p) + interaction_hamiltonian(p.sys_coupling, p.delta);
}

ComplexMatrix system_unitary(const ModelParams& p) {
  return expm_hermitian(system_hamiltonian(p), p.tau);
}

ComplexMatrix bath_interaction_on_round_space(const ModelParams& p, Side which) {
  return embed_operator(interaction_hamiltonian(p.bath_coupling, p.gamma),
                        {system_slot(which), kE}, collision_layout());
}

ComplexMatrix collision_generator_full(const ModelParams& p, Side which) {
  return kron(system_hamiltonian(p), identity2()) +
         embed_operator(free_hamiltonian(p.omega0), {kE}, collision_layout()) +
         bath_interaction_on_round_space(p, which);
}

ComplexMatrix collision_unitary_full(const ModelParams& p, Side which) {
  return expm_hermitian(collision_generator_full(p, which), p.tau);
}

ComplexMatrix collision_generator_local(const ModelParams& p, Side which) {
  return kron(free_hamiltonian(p.omega(which)), identity2()) +
         kron(identity2(), free_hamiltonian(p.omega0)) +
         interaction_hamiltonian(p.bath_coupling, p.gamma);
}

ComplexMatrix collision_unitary_local(const ModelParams& p, Side which) {
  return expm_hermitian(collision_generator_local(p, which), p.tau);
}

double energy_commutator_defect(const ModelParams& p, SimulationMode mode, Side which) {
  if (mode == SimulationMode::LocalApprox) {
    const ComplexMatrix h_ref = kron(free_hamiltonian(p.omega(which)), identity2()) +
                                kron(identity2(), free_hamiltonian(p.omega0));
    return max_abs(commutator(collision_unitary_local(p, which), h_ref));
  }
  const ComplexMatrix h_ref = kron(system_hamiltonian(p), identity2()) +
                              embed_operator(free_hamiltonian(p.omega0), {kE}, collision_layout());
  return max_abs(commutator(collision_unitary_full(p, which), h_ref));
}

}  // namespace colsim
