#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace colsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Raised when a quantity that must be physical (a density matrix, a unitary)
/// has drifted outside tolerance during a computation.
class NumericalFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subsystem dimensions of a tensor-product space, slot 0 being the most
/// significant factor. Round states use the order S1, S2, E1, E2.
struct TensorLayout {
  std::vector<std::size_t> slot_dims;

  static TensorLayout qubits(std::size_t count);
  std::size_t dimension() const;
  std::size_t slots() const { return slot_dims.size(); }
};

/// Hermitian, unit-trace, positive-semidefinite matrix on a qubit register.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-10;

  /// Validates against the tolerances above; throws std::invalid_argument.
  explicit DensityMatrix(ComplexMatrix m);

  /// Skips validation. For states produced by maps already known to be CPTP.
  static DensityMatrix unchecked(ComplexMatrix m);

  static DensityMatrix pure(const ComplexVector& ket);
  static DensityMatrix maximally_mixed(std::size_t dim);
  /// Computational basis projector |index><index|.
  static DensityMatrix basis_state(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;

 private:
  struct NoCheck {};
  DensityMatrix(ComplexMatrix m, NoCheck) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// Checks and small helpers.
double max_abs(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);
/// max |U^dagger U - I| entry.
double unitarity_defect(const ComplexMatrix& u);
/// Re Tr[h rho], computed without forming the product.
double expectation(const ComplexMatrix& h, const ComplexMatrix& rho);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Operator acting as `op` on `target_slots` (op's tensor factors taken in
/// the listed slot order) and as identity on the remaining slots.
ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<std::size_t>& target_slots,
                             const TensorLayout& layout);

/// Traces out every slot not listed in `keep_slots`. The kept factors appear
/// in the listed order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& keep_slots,
                            const TensorLayout& layout);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& keep_slots,
                            const TensorLayout& layout);

/// exp(-i h t) via the eigendecomposition of Hermitian h.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

/// U rho U^dagger. Rejects u that is not unitary within 1e-10.
DensityMatrix evolve(const DensityMatrix& rho, const ComplexMatrix& u);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

/// Entropy in bits. Eigenvalues in [-1e-10, 0) count as zero.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy_of_spectrum(const Eigen::VectorXd& eigenvalues);

}  // namespace colsim
