#pragma once

#include <optional>

#include "colsim/tensor_algebra.hpp"

namespace colsim {

/// Bloch direction n(theta, phi) of the projectors (1 +- n.sigma)/2 on S1.
struct MeasurementDirection {
  double theta = 0.0;
  double phi = 0.0;

  /// Projector onto the +n (sign > 0) or -n outcome.
  ComplexMatrix projector(int sign) const;
};

struct DiscordResult {
  double value = 0.0;        ///< bits
  MeasurementDirection argmin;
  double mutual_info = 0.0;  ///< bits
  double coarse_value = 0.0; ///< best value on the coarse grid alone
};

/// Half the trace norm of a - b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// S(rho_S1) + S(rho_S2) - S(rho), in bits.
double mutual_information(const DensityMatrix& rho);

/// Average entropy of S2 conditioned on a two-outcome projective
/// measurement of S1 along `direction`, in bits.
double conditional_entropy_after_measurement(const DensityMatrix& rho,
                                             const MeasurementDirection& direction);

struct DiscordSearch {
  int theta_points = 64;
  int phi_points = 128;
  double refine_tolerance = 1e-8;
};

/// Discord of a two-qubit state with rank-one projective measurements on S1.
/// Coarse theta x phi grid followed by Nelder-Mead refinement of the best
/// grid point; the result never exceeds the coarse-grid value.
DiscordResult quantum_discord(const DensityMatrix& rho, const DiscordSearch& search = {});

/// |J_fwd + J_bwd| / max(|J_fwd|, |J_bwd|); nullopt when both are zero.
std::optional<double> rectification_factor(double j_forward, double j_backward);

}  // namespace colsim
