#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "oscnet/graph.hpp"
#include "oscnet/spectral.hpp"

namespace oscnet {

// The doubled state space interleaves the two components of each node:
// (node i, sign s) lives at index 2i+s with s = 0 for x+ and s = 1 for x-.
// This is exactly the layout produced by kron(X, 2x2).

/// The nilpotent pair and its products. Every entry is a multiple of 1/2,
/// so all identities between them hold exactly in floating point.
struct SpinorBasis {
  Eigen::Matrix2d a_hat;  // 1/2 [[1, 1], [-1, -1]]
  Eigen::Matrix2d b_hat;  // 1/2 [[1, -1], [1, -1]]
  Eigen::Matrix2d e_hat;  // identity
  Eigen::Matrix2d ab;     // a_hat * b_hat
  Eigen::Matrix2d ba;     // b_hat * a_hat
};

const SpinorBasis& spinor_basis();

/// (A (x) B)[i*r + k, j*s + l] = A[i,j] * B[k,l].
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& B) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index r = B.rows();
  const Eigen::Index s = B.cols();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(A.rows() * r, A.cols() * s);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * r, j * s, r, s) = A(i, j) * B.template cast<Scalar>();
    }
  }
  return out;
}

/// The 2n x 2n generator of the fermion-type equation.
///
/// Built twice: once as sqrt(D) (x) diag(+1,-1) - (D^{-1/2} A) (x) a_hat,
/// once as H (x) a_hat + sqrt(D) (x) b_hat. The four Kronecker summands are
/// kept so tests can check each construction on its own.
struct Hamiltonian {
  std::size_t n = 0;
  Eigen::MatrixXd matrix;

  Eigen::MatrixXd diag_part;       // sqrt(D) (x) diag(+1,-1)
  Eigen::MatrixXd nilpotent_part;  // -(D^{-1/2} A) (x) a_hat
  Eigen::MatrixXd h_part;          // H (x) a_hat
  Eigen::MatrixXd sqrt_d_part;     // sqrt(D) (x) b_hat
};

/// Throws ConsistencyError if the two constructions differ by more than
/// 1e-12 * max(1, max sqrt(d_i)).
Hamiltonian build_hamiltonian(const GraphMatrices& m);

enum class Parity { Even, Odd };

/// Closed form of H_hat^{2k} or H_hat^{2k+1}:
///   even: D^{-1/2} L^k sqrt(D) (x) ab + L^k (x) ba
///   odd:  H L^k (x) a_hat + L^k sqrt(D) (x) b_hat
/// with L^k = P Lambda^k P^{-1}.
Eigen::MatrixXd hamiltonian_power(const GraphMatrices& m, const SpectralDecomposition& d,
                                  std::size_t k, Parity parity);

}  // namespace oscnet
