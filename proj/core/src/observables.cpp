#include "colsim/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

namespace colsim {

namespace {

const TensorLayout& pair_layout() {
  static const TensorLayout layout = TensorLayout::qubits(2);
  return layout;
}

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 4) {
    std::ostringstream os;
    os << what << ": expected a two-qubit (4x4) state, got dimension " << rho.dim();
    throw std::invalid_argument(os.str());
  }
}

// Entropy (bits) of the normalized 2x2 Hermitian block m / tr(m), weighted by tr(m).
double weighted_entropy_2x2(const ComplexMatrix& m) {
  const double p = m.trace().real();
  if (p <= 1e-15) return 0.0;
  const double a = m(0, 0).real() / p;
  const double d = m(1, 1).real() / p;
  const double b = std::abs(m(0, 1)) / p;
  const double r = std::sqrt((a - d) * (a - d) + 4.0 * b * b);
  double s = 0.0;
  for (double lambda : {0.5 * (1.0 + r), 0.5 * (1.0 - r)}) {
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return p * s;
}

// Sum_k p_k S(rho_{S2|k}) using Tr_1[(P (x) 1) rho] for each outcome.
double measured_conditional_entropy(const ComplexMatrix& rho, double theta, double phi) {
  const MeasurementDirection dir{theta, phi};
  double total = 0.0;
  for (int sign : {+1, -1}) {
    const ComplexMatrix proj = dir.projector(sign);
    ComplexMatrix block = ComplexMatrix::Zero(2, 2);
    for (int b = 0; b < 2; ++b) {
      for (int bp = 0; bp < 2; ++bp) {
        Complex acc = 0.0;
        for (int a = 0; a < 2; ++a) {
          for (int c = 0; c < 2; ++c) acc += proj(a, c) * rho(2 * c + b, 2 * a + bp);
        }
        block(b, bp) = acc;
      }
    }
    total += weighted_entropy_2x2(block);
  }
  return total;
}

struct ObjectiveData {
  const ComplexMatrix* rho;
};

double gsl_objective(const gsl_vector* x, void* params) {
  const auto* data = static_cast<const ObjectiveData*>(params);
  return measured_conditional_entropy(*data->rho, gsl_vector_get(x, 0), gsl_vector_get(x, 1));
}

MeasurementDirection canonical(double theta, double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta > std::numbers::pi) {
    theta = two_pi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  return {theta, phi};
}

}  // namespace

ComplexMatrix MeasurementDirection::projector(int sign) const {
  const double s = sign >= 0 ? 1.0 : -1.0;
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  ComplexMatrix p(2, 2);
  p(0, 0) = 0.5 * (1.0 + s * nz);
  p(1, 1) = 0.5 * (1.0 - s * nz);
  p(0, 1) = 0.5 * s * Complex{nx, -ny};
  p(1, 0) = 0.5 * s * Complex{nx, ny};
  return p;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  return std::clamp(0.5 * trace_norm(a.matrix() - b.matrix()), 0.0, 1.0);
}

double mutual_information(const DensityMatrix& rho) {
  require_two_qubits(rho, "mutual_information");
  const double s1 = von_neumann_entropy(partial_trace(rho, {0}, pair_layout()));
  const double s2 = von_neumann_entropy(partial_trace(rho, {1}, pair_layout()));
  return std::max(0.0, s1 + s2 - von_neumann_entropy(rho));
}

double conditional_entropy_after_measurement(const DensityMatrix& rho,
                                             const MeasurementDirection& direction) {
  require_two_qubits(rho, "conditional_entropy_after_measurement");
  return measured_conditional_entropy(rho.matrix(), direction.theta, direction.phi);
}

DiscordResult quantum_discord(const DensityMatrix& rho, const DiscordSearch& search) {
  require_two_qubits(rho, "quantum_discord");
  static const bool gsl_quiet = (gsl_set_error_handler_off(), true);
  (void)gsl_quiet;
  if (search.theta_points < 2 || search.phi_points < 1) {
    throw std::invalid_argument("quantum_discord: grid needs >= 2 theta and >= 1 phi points");
  }
  const ComplexMatrix& m = rho.matrix();
  const double s_total = von_neumann_entropy(rho);
  const double s1 = von_neumann_entropy(partial_trace(rho, {0}, pair_layout()));
  const double s2 = von_neumann_entropy(partial_trace(rho, {1}, pair_layout()));

  DiscordResult result;
  result.mutual_info = std::max(0.0, s1 + s2 - s_total);

  // Coarse grid, theta-major with strict comparison so ties keep the
  // smallest (theta, phi).
  const double dtheta = std::numbers::pi / (search.theta_points - 1);
  const double dphi = 2.0 * std::numbers::pi / search.phi_points;
  double best = std::numeric_limits<double>::infinity();
  MeasurementDirection best_dir;
  for (int i = 0; i < search.theta_points; ++i) {
    for (int j = 0; j < search.phi_points; ++j) {
      const double f = measured_conditional_entropy(m, i * dtheta, j * dphi);
      if (f < best) {
        best = f;
        best_dir = {i * dtheta, j * dphi};
      }
    }
  }
  const double coarse = best;

  ObjectiveData data{&m};
  gsl_multimin_function fn{&gsl_objective, 2, &data};
  gsl_vector* x = gsl_vector_alloc(2);
  gsl_vector* step = gsl_vector_alloc(2);
  gsl_vector_set(x, 0, best_dir.theta);
  gsl_vector_set(x, 1, best_dir.phi);
  gsl_vector_set(step, 0, 0.5 * dtheta);
  gsl_vector_set(step, 1, 0.5 * dphi);
  gsl_multimin_fminimizer* nm =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(nm, &fn, x, step);

  double previous = gsl_multimin_fminimizer_minimum(nm);
  int stalled = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(nm) != GSL_SUCCESS) break;
    const double current = gsl_multimin_fminimizer_minimum(nm);
    stalled = std::abs(previous - current) < search.refine_tolerance ? stalled + 1 : 0;
    previous = current;
    const double size = gsl_multimin_fminimizer_size(nm);
    if (gsl_multimin_test_size(size, 1e-7) == GSL_SUCCESS) break;
    if (stalled >= 20 && size < 1e-4) break;
  }
  const double refined = gsl_multimin_fminimizer_minimum(nm);
  if (refined < best) {
    best = refined;
    best_dir = canonical(gsl_vector_get(nm->x, 0), gsl_vector_get(nm->x, 1));
  }
  gsl_multimin_fminimizer_free(nm);
  gsl_vector_free(step);
  gsl_vector_free(x);

  // D = I - [S(rho_2) - min_k sum p_k S(rho_2|k)] = S(rho_1) - S(rho) + min(...)
  result.value = std::max(0.0, s1 - s_total + best);
  result.coarse_value = std::max(0.0, s1 - s_total + coarse);
  result.argmin = best_dir;
  return result;
}

std::optional<double> rectification_factor(double j_forward, double j_backward) {
  const double denom = std::max(std::abs(j_forward), std::abs(j_backward));
  if (denom == 0.0) return std::nullopt;
  return std::abs(j_forward + j_backward) / denom;
}

}  // namespace colsim
