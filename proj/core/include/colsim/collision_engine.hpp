#pragma once

#include <cstddef>
#include <utility>

#include "colsim/model.hpp"
#include "colsim/tensor_algebra.hpp"

namespace colsim {

/// Energy bookkeeping of one round. Index 1 refers to the S1-E1 collision,
/// index 2 to the S2-E2 collision.
struct RoundLedger {
  double dE_S1 = 0.0;  ///< system energy change during collision 1
  double dE_S2 = 0.0;
  double dQ_E1 = 0.0;  ///< Tr[H_E (eta~ - eta)] for the first ancilla
  double dQ_E2 = 0.0;
  double W1 = 0.0;     ///< switching work: <H_int>_before - <H_int>_after
  double W2 = 0.0;
  DensityMatrix rho_prime = DensityMatrix::unchecked(ComplexMatrix::Zero(4, 4));   ///< after free evolution
  DensityMatrix rho_dprime = DensityMatrix::unchecked(ComplexMatrix::Zero(4, 4));  ///< after collision 1
  DensityMatrix rho_tprime = DensityMatrix::unchecked(ComplexMatrix::Zero(4, 4));  ///< after collision 2

  double switching_work() const { return W1 + W2; }
};

struct SteadyStateReport {
  DensityMatrix steady_rho = DensityMatrix::unchecked(ComplexMatrix::Zero(4, 4));
  std::size_t rounds_used = 0;
  bool converged = false;
  RoundLedger final_ledger;
  double J_h_energy = 0.0;   ///< energy through the system, dE_S1 of the last round
  double J_h_ancilla = 0.0;  ///< -dQ_E1 of the last round
  double W_sw = 0.0;
  double last_step_distance = 0.0;
  /// False when the successive-state distance still increased somewhere in
  /// the final quarter of the run. Informational only.
  bool monotone_tail = true;
};

inline constexpr double kDefaultSteadyTolerance = 1e-9;
inline constexpr std::size_t kDefaultMaxRounds = 200000;
inline constexpr std::size_t kConfirmationWindow = 10;

/// Round map for one parameter point with every operator precomputed.
///
/// Round structure: free evolution U of (S1, S2), then the S1-E1 collision,
/// then the S2-E2 collision, each with a fresh thermal ancilla. Since the
/// second ancilla is untouched until the second collision, the joint
/// S1 S2 E1 E2 state is never formed explicitly: each collision acts on
/// (S1, S2, E_i) with the other ancilla factored out, which is exact.
///
/// The system energy used for dE_S is H_S1 + H_S2 + H_int^{S1,S2} in Full
/// mode and H_S1 + H_S2 in LocalApprox mode, where the inter-system term is
/// not part of the modeled system-bath exchange.
class RoundPropagator {
 public:
  explicit RoundPropagator(const ModelParams& p);

  const ModelParams& params() const { return params_; }

  /// One round without bookkeeping. Input and output are 4x4.
  ComplexMatrix advance(const ComplexMatrix& rho) const;

  /// One round with full bookkeeping.
  std::pair<DensityMatrix, RoundLedger> step(const DensityMatrix& rho) const;

  const ComplexMatrix& free_unitary() const { return free_; }
  /// Collision unitary on (S1, S2, E_which), already embedded for LocalApprox.
  const ComplexMatrix& collision(Side which) const {
    return which == Side::First ? collision1_ : collision2_;
  }
  const ComplexMatrix& system_energy() const { return system_energy_; }
  const DensityMatrix& ancilla(Side which) const {
    return which == Side::First ? eta1_ : eta2_;
  }

 private:
  ModelParams params_;
  ComplexMatrix free_;
  ComplexMatrix collision1_;
  ComplexMatrix collision2_;
  ComplexMatrix system_energy_;   // 4x4
  ComplexMatrix ancilla_energy_;  // 2x2
  ComplexMatrix coupling1_;       // 8x8 on (S1, S2, E1)
  ComplexMatrix coupling2_;       // 8x8 on (S1, S2, E2)
  DensityMatrix eta1_;
  DensityMatrix eta2_;
};

/// Single round from `rho` (4x4). Throws NumericalFault if the resulting
/// state leaves the physical set.
std::pair<DensityMatrix, RoundLedger> run_round(const DensityMatrix& rho, const ModelParams& p);

/// Iterates rounds until successive states are closer than `tol` in trace
/// distance for kConfirmationWindow consecutive rounds, or `max_rounds` is hit.
SteadyStateReport run_to_steady_state(const DensityMatrix& rho0, const ModelParams& p,
                                      double tol = kDefaultSteadyTolerance,
                                      std::size_t max_rounds = kDefaultMaxRounds);

/// Heat current from the system-ancilla correlations accumulated during the
/// S1-E1 collision (Full mode only):
///   -i \int_0^tau Tr{ [H_sys (x) 1, H_int^{S1,E1}] C(t) } dt,
///   C(t) = rho_{S E1}(t) - rho_S(t) (x) rho_E1(t).
/// Composite Simpson with `quadrature_steps` intervals (must be even), the
/// step halved until successive estimates agree to 1e-8 relative.
double heat_current_correlation(const ModelParams& p, const DensityMatrix& steady_rho,
                                int quadrature_steps = 200);

enum class WorkRegime { Negligible, SameOrder, Dominant };

struct FirstLawAudit {
  /// W_i - (dE_S_i + dQ_E_i), expected to vanish in both modes.
  double residual1 = 0.0;
  double residual2 = 0.0;
  bool first_law_ok = false;
  /// Whether the local collision conserves H_S_i + H_E (checked from params).
  bool energy_preserving_local = false;
  /// max(|W1|, |W2|, |dE_S1 + dQ_E1|, |dE_S2 + dQ_E2|); only meaningful for
  /// LocalApprox with an energy-preserving coupling.
  double local_work_residual = 0.0;
  bool local_work_ok = true;
  /// |W1 + W2| / |dE_S1|.
  double work_to_heat_ratio = 0.0;
  WorkRegime regime = WorkRegime::Negligible;
};

inline constexpr double kFirstLawTolerance = 1e-10;

FirstLawAudit first_law_audit(const RoundLedger& ledger, const ModelParams& p);

}  // namespace colsim
