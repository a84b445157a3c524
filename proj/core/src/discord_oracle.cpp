#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "colsim/experiments.hpp"

namespace colsim {

double discord_grid_oracle(const DensityMatrix& rho, int grid_n) {
  if (rho.dim() != 4) throw std::invalid_argument("discord_grid_oracle: expected a 4x4 state");
  if (grid_n < 100) throw std::invalid_argument("discord_grid_oracle: grid_n must be >= 100");

  const TensorLayout pair = TensorLayout::qubits(2);
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const double s_total = von_neumann_entropy(rho);
  const double s1 = von_neumann_entropy(partial_trace(rho, {0}, pair));

  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    const double theta = std::numbers::pi * i / (grid_n - 1);
    for (int j = 0; j < 2 * grid_n; ++j) {
      const double phi = std::numbers::pi * j / grid_n;
      const ComplexMatrix n_dot_sigma = std::sin(theta) * std::cos(phi) * pauli(Axis::X) +
                                        std::sin(theta) * std::sin(phi) * pauli(Axis::Y) +
                                        std::cos(theta) * pauli(Axis::Z);
      double conditional = 0.0;
      for (double sign : {+1.0, -1.0}) {
        const ComplexMatrix lift = kron(0.5 * (id2 + sign * n_dot_sigma), id2);
        const ComplexMatrix post = lift * rho.matrix() * lift;
        const double prob = post.trace().real();
        if (prob <= 1e-14) continue;
        const ComplexMatrix cond = partial_trace(ComplexMatrix(post / prob), {1}, pair);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(cond, Eigen::EigenvaluesOnly);
        conditional += prob * von_neumann_entropy_of_spectrum(es.eigenvalues().cwiseMax(0.0));
      }
      best = std::min(best, conditional);
    }
  }
  return std::max(0.0, s1 - s_total + best);
}

DensityMatrix parse_state_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<double> numbers;
  double v = 0.0;
  while (is >> v) numbers.push_back(v);
  if (!is.eof()) throw std::invalid_argument("state file: non-numeric token");
  if (numbers.size() != 32) {
    throw std::invalid_argument("state file: expected 32 numbers (16 real/imag pairs), got " +
                                std::to_string(numbers.size()));
  }
  ComplexMatrix m(4, 4);
  for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = Complex{numbers[2 * k], numbers[2 * k + 1]};
  return DensityMatrix(std::move(m));
}

DensityMatrix read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state_text(buffer.str());
}

}  // namespace colsim
