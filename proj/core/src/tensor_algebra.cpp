#include "colsim/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace colsim {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw std::invalid_argument(os.str());
  }
}

// Mixed-radix digits of a flat index, most significant slot first.
void decompose(std::size_t index, const std::vector<std::size_t>& dims,
               std::vector<std::size_t>& digits) {
  for (std::size_t s = dims.size(); s-- > 0;) {
    digits[s] = index % dims[s];
    index /= dims[s];
  }
}

void check_slots(const std::vector<std::size_t>& slots, const TensorLayout& layout,
                 const char* what) {
  std::vector<bool> seen(layout.slots(), false);
  for (auto s : slots) {
    if (s >= layout.slots()) {
      std::ostringstream os;
      os << what << ": slot " << s << " out of range for " << layout.slots() << " slots";
      throw std::invalid_argument(os.str());
    }
    if (seen[s]) {
      std::ostringstream os;
      os << what << ": duplicate slot " << s;
      throw std::invalid_argument(os.str());
    }
    seen[s] = true;
  }
}

}  // namespace

TensorLayout TensorLayout::qubits(std::size_t count) {
  return TensorLayout{std::vector<std::size_t>(count, 2)};
}

std::size_t TensorLayout::dimension() const {
  return std::accumulate(slot_dims.begin(), slot_dims.end(), std::size_t{1},
                         std::multiplies<>{});
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  if (!is_power_of_two(dim())) {
    throw std::invalid_argument("DensityMatrix: dimension must be a power of two");
  }
  const double herm = max_abs(m_ - m_.adjoint());
  if (herm > kHermitianTol) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian (max |A - A^+| = " << herm << ")";
    throw std::invalid_argument(os.str());
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr.real() << " differs from 1";
    throw std::invalid_argument(os.str());
  }
  const double min_eig = eigenvalues().minCoeff();
  if (min_eig < -kEigenTol) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << min_eig;
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
  return DensityMatrix(std::move(m), NoCheck{});
}

DensityMatrix DensityMatrix::pure(const ComplexVector& ket) {
  const double norm = ket.norm();
  if (norm == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  const ComplexVector v = ket / norm;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("DensityMatrix::basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tol;
}

double unitarity_defect(const ComplexMatrix& u) {
  require_square(u, "unitarity_defect");
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

double expectation(const ComplexMatrix& h, const ComplexMatrix& rho) {
  // Tr[h rho] = sum_ij h_ij rho_ji
  return (h.array() * rho.transpose().array()).sum().real();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<std::size_t>& target_slots,
                             const TensorLayout& layout) {
  check_slots(target_slots, layout, "embed_operator");
  require_square(op, "embed_operator");
  std::size_t sub_dim = 1;
  for (auto s : target_slots) sub_dim *= layout.slot_dims[s];
  if (static_cast<std::size_t>(op.rows()) != sub_dim) {
    std::ostringstream os;
    os << "embed_operator: operator dimension " << op.rows() << " does not match target slots ("
       << sub_dim << ")";
    throw std::invalid_argument(os.str());
  }

  const std::size_t n = layout.dimension();
  std::vector<bool> is_target(layout.slots(), false);
  for (auto s : target_slots) is_target[s] = true;

  std::vector<std::size_t> rd(layout.slots()), cd(layout.slots());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    decompose(r, layout.slot_dims, rd);
    for (std::size_t c = 0; c < n; ++c) {
      decompose(c, layout.slot_dims, cd);
      bool spectators_match = true;
      for (std::size_t s = 0; s < layout.slots() && spectators_match; ++s) {
        if (!is_target[s] && rd[s] != cd[s]) spectators_match = false;
      }
      if (!spectators_match) continue;
      std::size_t sr = 0, sc = 0;
      for (auto s : target_slots) {
        sr = sr * layout.slot_dims[s] + rd[s];
        sc = sc * layout.slot_dims[s] + cd[s];
      }
      out(r, c) = op(sr, sc);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& keep_slots,
                            const TensorLayout& layout) {
  check_slots(keep_slots, layout, "partial_trace");
  const std::size_t n = layout.dimension();
  if (static_cast<std::size_t>(m.rows()) != n || m.rows() != m.cols()) {
    std::ostringstream os;
    os << "partial_trace: matrix is " << m.rows() << "x" << m.cols() << ", layout dimension " << n;
    throw std::invalid_argument(os.str());
  }
  std::vector<bool> kept(layout.slots(), false);
  std::size_t out_dim = 1;
  for (auto s : keep_slots) {
    kept[s] = true;
    out_dim *= layout.slot_dims[s];
  }

  std::vector<std::size_t> rd(layout.slots()), cd(layout.slots());
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (std::size_t r = 0; r < n; ++r) {
    decompose(r, layout.slot_dims, rd);
    for (std::size_t c = 0; c < n; ++c) {
      decompose(c, layout.slot_dims, cd);
      bool diagonal_in_traced = true;
      for (std::size_t s = 0; s < layout.slots() && diagonal_in_traced; ++s) {
        if (!kept[s] && rd[s] != cd[s]) diagonal_in_traced = false;
      }
      if (!diagonal_in_traced) continue;
      std::size_t kr = 0, kc = 0;
      for (auto s : keep_slots) {
        kr = kr * layout.slot_dims[s] + rd[s];
        kc = kc * layout.slot_dims[s] + cd[s];
      }
      out(kr, kc) += m(r, c);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep_slots,
                            const TensorLayout& layout) {
  return DensityMatrix::unchecked(partial_trace(rho.matrix(), keep_slots, layout));
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  require_square(h, "expm_hermitian");
  const double herm = max_abs(h - h.adjoint());
  if (herm > 1e-12) {
    std::ostringstream os;
    os << "expm_hermitian: generator not Hermitian (max |H - H^+| = " << herm << ")";
    throw std::invalid_argument(os.str());
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const ComplexMatrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hs);
  const auto& q = es.eigenvectors();
  ComplexVector phases(hs.rows());
  for (Eigen::Index k = 0; k < hs.rows(); ++k) {
    phases(k) = std::exp(Complex{0.0, -es.eigenvalues()(k) * t});
  }
  return q * phases.asDiagonal() * q.adjoint();
}

DensityMatrix evolve(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != static_cast<Eigen::Index>(rho.dim()) || u.cols() != u.rows()) {
    throw std::invalid_argument("evolve: unitary dimension does not match state");
  }
  const double defect = unitarity_defect(u);
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "evolve: operator is not unitary (defect " << defect << ")";
    throw std::invalid_argument(os.str());
  }
  ComplexMatrix out = u * rho.matrix() * u.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::unchecked(std::move(out));
}

double trace_norm(const ComplexMatrix& a) {
  require_square(a, "trace_norm");
  if (is_hermitian(a, 1e-14)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

double von_neumann_entropy_of_spectrum(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    double lambda = eigenvalues(k);
    if (lambda < -DensityMatrix::kEigenTol) {
      std::ostringstream os;
      os << "von_neumann_entropy: eigenvalue " << lambda << " below tolerance";
      throw NumericalFault(os.str());
    }
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy_of_spectrum(rho.eigenvalues());
}

}  // namespace colsim
