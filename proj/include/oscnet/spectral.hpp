#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "oscnet/graph.hpp"

namespace oscnet {

/// L = P diag(lambdas) P^{-1}, eigenvalues ascending.
///
/// Modes with |lambda| <= zero_tol are zero modes: their lambda, omega and
/// mho are exactly 0. Everything downstream uses P f(Lambda) P^{-1}
/// products only, so the basis chosen inside a degenerate eigenspace does
/// not matter.
struct SpectralDecomposition {
  Eigen::MatrixXd P;
  Eigen::MatrixXd P_inv;
  Eigen::VectorXd lambdas;
  Eigen::VectorXd omegas;  // sqrt(lambda)
  Eigen::VectorXd mho;     // 1/omega, 0 on zero modes
  double zero_tol = 0.0;
  bool symmetric = false;

  std::size_t size() const noexcept { return static_cast<std::size_t>(lambdas.size()); }
  bool is_zero_mode(Eigen::Index mu) const { return omegas(mu) == 0.0; }
  std::size_t zero_mode_count() const;

  /// P diag(f) P^{-1}.
  Eigen::MatrixXd mode_matrix(const Eigen::VectorXd& f) const;
};

/// Default is 1e-9 * max(1, lambda_max).
SpectralDecomposition decompose(const GraphMatrices& m, std::optional<double> zero_tol = {});

/// sqrt(L) = P Omega P^{-1}; dense in general even for sparse L.
Eigen::MatrixXd sqrt_laplacian(const SpectralDecomposition& d);

}  // namespace oscnet
