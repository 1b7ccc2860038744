#include "oscnet/algebra.hpp"

#include <algorithm>
#include <string>

#include "oscnet/error.hpp"

namespace oscnet {

const SpinorBasis& spinor_basis() {
  static const SpinorBasis basis = [] {
    SpinorBasis s;
    s.a_hat << 0.5, 0.5, -0.5, -0.5;
    s.b_hat << 0.5, -0.5, 0.5, -0.5;
    s.e_hat = Eigen::Matrix2d::Identity();
    s.ab = s.a_hat * s.b_hat;
    s.ba = s.b_hat * s.a_hat;
    return s;
  }();
  return basis;
}

Hamiltonian build_hamiltonian(const GraphMatrices& m) {
  const SpinorBasis& s = spinor_basis();
  Eigen::Matrix2d sigma_z;
  sigma_z << 1.0, 0.0, 0.0, -1.0;

  const Eigen::MatrixXd sqrt_d = m.sqrt_degree();
  const Eigen::MatrixXd scaled_adjacency = m.inv_sqrt_degree() * m.adjacency;

  Hamiltonian h;
  h.n = m.size();
  h.diag_part = kron(sqrt_d, sigma_z);
  h.nilpotent_part = -kron(scaled_adjacency, s.a_hat);
  h.h_part = kron(m.semi_normalized, s.a_hat);
  h.sqrt_d_part = kron(sqrt_d, s.b_hat);

  const Eigen::MatrixXd direct = h.diag_part + h.nilpotent_part;
  const Eigen::MatrixXd factored = h.h_part + h.sqrt_d_part;
  const double gap = direct.size() == 0 ? 0.0 : (direct - factored).cwiseAbs().maxCoeff();
  const double tol = 1e-12 * std::max(1.0, m.sqrt_degrees.size() ? m.sqrt_degrees.maxCoeff() : 0.0);
  if (!(gap <= tol)) {
    throw ConsistencyError("Hamiltonian constructions disagree by " + std::to_string(gap));
  }
  h.matrix = factored;
  return h;
}

Eigen::MatrixXd hamiltonian_power(const GraphMatrices& m, const SpectralDecomposition& d,
                                  std::size_t k, Parity parity) {
  const SpinorBasis& s = spinor_basis();
  const Eigen::VectorXd lambda_k = d.lambdas.array().pow(static_cast<double>(k));
  // pow(0, 0) is 1, so k = 0 yields the identity even on zero modes.
  const Eigen::MatrixXd laplacian_k = d.mode_matrix(lambda_k);

  if (parity == Parity::Even) {
    const Eigen::MatrixXd conjugated =
        m.inv_sqrt_degree() * laplacian_k * m.sqrt_degree();
    return kron(conjugated, s.ab) + kron(laplacian_k, s.ba);
  }
  return kron(Eigen::MatrixXd(m.semi_normalized * laplacian_k), s.a_hat) +
         kron(Eigen::MatrixXd(laplacian_k * m.sqrt_degree()), s.b_hat);
}

}  // namespace oscnet
