#include "colsim/collision_engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace colsim {

namespace {

const TensorLayout& collision_layout() {
  static const TensorLayout layout = TensorLayout::qubits(3);
  return layout;
}

// Tr_E of an 8x8 operator on (S1, S2, E), E being the last qubit.
ComplexMatrix trace_out_ancilla(const ComplexMatrix& x) {
  ComplexMatrix out(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      out(i, j) = x(2 * i, 2 * j) + x(2 * i + 1, 2 * j + 1);
    }
  }
  return out;
}

// Tr_S of an 8x8 operator on (S1, S2, E).
ComplexMatrix trace_out_system(const ComplexMatrix& x) {
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (Eigen::Index i = 0; i < 4; ++i) {
    out += x.block(2 * i, 2 * i, 2, 2);
  }
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
  ComplexMatrix out = u * rho * u.adjoint();
  return 0.5 * (out + out.adjoint());
}

void check_state(const ComplexMatrix& rho, const char* stage) {
  const double trace_dev = std::abs(rho.trace() - Complex{1.0, 0.0});
  if (trace_dev > 1e-10) {
    std::ostringstream os;
    os << stage << ": trace drifted by " << trace_dev;
    throw NumericalFault(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    std::ostringstream os;
    os << stage << ": negative eigenvalue " << es.eigenvalues().minCoeff();
    throw NumericalFault(os.str());
  }
}

double successive_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

ComplexMatrix embed_local_collision(const ModelParams& p, Side which) {
  const std::size_t s = which == Side::First ? 0 : 1;
  return embed_operator(collision_unitary_local(p, which), {s, 2}, collision_layout());
}

}  // namespace

RoundPropagator::RoundPropagator(const ModelParams& p)
    : params_(p),
      eta1_(DensityMatrix::unchecked(ComplexMatrix::Zero(2, 2))),
      eta2_(DensityMatrix::unchecked(ComplexMatrix::Zero(2, 2))) {
  params_.validate();
  free_ = system_unitary(params_);
  if (params_.mode == SimulationMode::Full) {
    collision1_ = collision_unitary_full(params_, Side::First);
    collision2_ = collision_unitary_full(params_, Side::Second);
    system_energy_ = system_hamiltonian(params_);
  } else {
    collision1_ = embed_local_collision(params_, Side::First);
    collision2_ = embed_local_collision(params_, Side::Second);
    system_energy_ = bare_system_hamiltonian(params_);
  }
  ancilla_energy_ = free_hamiltonian(params_.omega0);
  coupling1_ = bath_interaction_on_round_space(params_, Side::First);
  coupling2_ = bath_interaction_on_round_space(params_, Side::Second);
  eta1_ = thermal_state(params_.T1, params_.omega0);
  eta2_ = thermal_state(params_.T2, params_.omega0);
}

ComplexMatrix RoundPropagator::advance(const ComplexMatrix& rho) const {
  const ComplexMatrix r1 = conjugate(free_, rho);
  const ComplexMatrix r2 = trace_out_ancilla(conjugate(collision1_, kron(r1, eta1_.matrix())));
  return trace_out_ancilla(conjugate(collision2_, kron(r2, eta2_.matrix())));
}

std::pair<DensityMatrix, RoundLedger> RoundPropagator::step(const DensityMatrix& rho) const {
  if (rho.dim() != 4) throw std::invalid_argument("RoundPropagator::step: expected a 4x4 state");

  const ComplexMatrix r1 = conjugate(free_, rho.matrix());

  const ComplexMatrix before1 = kron(r1, eta1_.matrix());
  const ComplexMatrix after1 = conjugate(collision1_, before1);
  const ComplexMatrix r2 = trace_out_ancilla(after1);

  const ComplexMatrix before2 = kron(r2, eta2_.matrix());
  const ComplexMatrix after2 = conjugate(collision2_, before2);
  const ComplexMatrix r3 = trace_out_ancilla(after2);

  check_state(r3, "run_round");

  RoundLedger ledger;
  ledger.dE_S1 = expectation(system_energy_, r2 - r1);
  ledger.dE_S2 = expectation(system_energy_, r3 - r2);
  ledger.dQ_E1 = expectation(ancilla_energy_, trace_out_system(after1) - eta1_.matrix());
  ledger.dQ_E2 = expectation(ancilla_energy_, trace_out_system(after2) - eta2_.matrix());
  ledger.W1 = expectation(coupling1_, before1 - after1);
  ledger.W2 = expectation(coupling2_, before2 - after2);
  ledger.rho_prime = DensityMatrix::unchecked(r1);
  ledger.rho_dprime = DensityMatrix::unchecked(r2);
  ledger.rho_tprime = DensityMatrix::unchecked(r3);
  return {DensityMatrix::unchecked(r3), std::move(ledger)};
}

std::pair<DensityMatrix, RoundLedger> run_round(const DensityMatrix& rho, const ModelParams& p) {
  return RoundPropagator(p).step(rho);
}

SteadyStateReport run_to_steady_state(const DensityMatrix& rho0, const ModelParams& p, double tol,
                                      std::size_t max_rounds) {
  if (!(tol > 0.0)) throw std::invalid_argument("run_to_steady_state: tol must be > 0");
  if (max_rounds < 1) throw std::invalid_argument("run_to_steady_state: max_rounds must be >= 1");
  if (rho0.dim() != 4) throw std::invalid_argument("run_to_steady_state: expected a 4x4 state");

  const RoundPropagator prop(p);
  SteadyStateReport report;

  ComplexMatrix rho = rho0.matrix();
  std::size_t below = 0;
  std::size_t round = 0;
  double distance = std::numeric_limits<double>::infinity();
  std::vector<double> distances;
  distances.reserve(std::min<std::size_t>(max_rounds, 1 << 16));

  // All but the last round skip the bookkeeping; the last one is replayed
  // through step() so the report carries a full ledger.
  while (round + 1 < max_rounds) {
    ComplexMatrix next = prop.advance(rho);
    check_state(next, "run_to_steady_state");
    distance = successive_distance(next, rho);
    distances.push_back(distance);
    rho = std::move(next);
    ++round;
    below = distance < tol ? below + 1 : 0;
    if (below + 1 >= kConfirmationWindow) break;
  }

  auto [last, ledger] = prop.step(DensityMatrix::unchecked(rho));
  distance = successive_distance(last.matrix(), rho);
  distances.push_back(distance);
  ++round;
  below = distance < tol ? below + 1 : 0;

  report.converged = below >= kConfirmationWindow;
  report.rounds_used = round;
  report.last_step_distance = distance;
  report.steady_rho = std::move(last);
  report.J_h_energy = ledger.dE_S1;
  report.J_h_ancilla = -ledger.dQ_E1;
  report.W_sw = ledger.switching_work();
  report.final_ledger = std::move(ledger);

  const std::size_t tail_start = distances.size() - distances.size() / 4;
  for (std::size_t k = std::max<std::size_t>(tail_start, 1); k < distances.size(); ++k) {
    if (distances[k] > distances[k - 1] + 1e-15) {
      report.monotone_tail = false;
      break;
    }
  }
  return report;
}

namespace {

class CorrelationIntegrand {
 public:
  CorrelationIntegrand(const ModelParams& p, const DensityMatrix& steady_rho) {
    const ComplexMatrix r1 = conjugate(system_unitary(p), steady_rho.matrix());
    initial_ = kron(r1, thermal_state(p.T1, p.omega0).matrix());
    const ComplexMatrix h_sys = kron(system_hamiltonian(p), ComplexMatrix::Identity(2, 2));
    kernel_ = commutator(h_sys, bath_interaction_on_round_space(p, Side::First));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(collision_generator_full(p, Side::First));
    basis_ = es.eigenvectors();
    energies_ = es.eigenvalues();
  }

  double operator()(double t) const {
    ComplexVector phases(energies_.size());
    for (Eigen::Index k = 0; k < energies_.size(); ++k) {
      phases(k) = std::exp(Complex{0.0, -energies_(k) * t});
    }
    const ComplexMatrix v = basis_ * phases.asDiagonal() * basis_.adjoint();
    const ComplexMatrix joint = conjugate(v, initial_);
    const ComplexMatrix correlations =
        joint - kron(trace_out_ancilla(joint), trace_out_system(joint));
    // Re(-i z) = Im(z)
    return (kernel_ * correlations).trace().imag();
  }

 private:
  ComplexMatrix initial_;
  ComplexMatrix kernel_;
  ComplexMatrix basis_;
  Eigen::VectorXd energies_;
};

double composite_simpson(const CorrelationIntegrand& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) {
    sum += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
  }
  return sum * h / 3.0;
}

}  // namespace

double heat_current_correlation(const ModelParams& p, const DensityMatrix& steady_rho,
                                int quadrature_steps) {
  p.validate();
  if (p.mode != SimulationMode::Full) {
    throw std::invalid_argument("heat_current_correlation: requires Full mode");
  }
  if (quadrature_steps < 2 || quadrature_steps % 2 != 0) {
    throw std::invalid_argument("heat_current_correlation: quadrature_steps must be even and >= 2");
  }
  if (steady_rho.dim() != 4) {
    throw std::invalid_argument("heat_current_correlation: expected a 4x4 state");
  }
  if (p.gamma == 0.0) return 0.0;

  const CorrelationIntegrand f(p, steady_rho);
  constexpr int kMaxRefinements = 8;
  double estimate = composite_simpson(f, 0.0, p.tau, quadrature_steps);
  int steps = quadrature_steps;
  for (int k = 0; k < kMaxRefinements; ++k) {
    steps *= 2;
    const double refined = composite_simpson(f, 0.0, p.tau, steps);
    const bool agree = std::abs(refined - estimate) <= 1e-8 * std::abs(refined) ||
                       std::abs(refined - estimate) <= 1e-18;
    estimate = refined;
    if (agree) break;
  }
  return estimate;
}

FirstLawAudit first_law_audit(const RoundLedger& ledger, const ModelParams& p) {
  FirstLawAudit audit;
  audit.residual1 = ledger.W1 - (ledger.dE_S1 + ledger.dQ_E1);
  audit.residual2 = ledger.W2 - (ledger.dE_S2 + ledger.dQ_E2);
  audit.first_law_ok = std::abs(audit.residual1) <= kFirstLawTolerance &&
                       std::abs(audit.residual2) <= kFirstLawTolerance;

  audit.energy_preserving_local =
      energy_commutator_defect(p, SimulationMode::LocalApprox, Side::First) <= 1e-12 &&
      energy_commutator_defect(p, SimulationMode::LocalApprox, Side::Second) <= 1e-12;
  audit.local_work_residual =
      std::max({std::abs(ledger.W1), std::abs(ledger.W2), std::abs(ledger.dE_S1 + ledger.dQ_E1),
                std::abs(ledger.dE_S2 + ledger.dQ_E2)});
  if (p.mode == SimulationMode::LocalApprox && audit.energy_preserving_local) {
    audit.local_work_ok = audit.local_work_residual <= kFirstLawTolerance;
  }

  const double work = std::abs(ledger.switching_work());
  const double heat = std::abs(ledger.dE_S1);
  if (heat > 0.0) {
    audit.work_to_heat_ratio = work / heat;
  } else {
    audit.work_to_heat_ratio = work > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  if (audit.work_to_heat_ratio < 0.1) {
    audit.regime = WorkRegime::Negligible;
  } else if (audit.work_to_heat_ratio <= 10.0) {
    audit.regime = WorkRegime::SameOrder;
  } else {
    audit.regime = WorkRegime::Dominant;
  }
  return audit;
}

}  // namespace colsim
