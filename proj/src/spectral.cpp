#include "oscnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

std::size_t SpectralDecomposition::zero_mode_count() const {
  return static_cast<std::size_t>((omegas.array() == 0.0).count());
}

Eigen::MatrixXd SpectralDecomposition::mode_matrix(const Eigen::VectorXd& f) const {
  return P * f.asDiagonal() * P_inv;
}

SpectralDecomposition decompose(const GraphMatrices& m, std::optional<double> zero_tol) {
  const Eigen::MatrixXd& L = m.laplacian;
  const Eigen::Index n = L.rows();
  if (zero_tol && !(*zero_tol >= 0.0)) throw ValidationError("zero_tol must be nonnegative");

  SpectralDecomposition d;
  d.symmetric = (L.array() == L.transpose().array()).all();

  Eigen::VectorXd raw(n);
  Eigen::MatrixXd vecs(n, n);
  if (d.symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
    raw = es.eigenvalues();
    vecs = es.eigenvectors();
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(L);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
    const Eigen::VectorXcd ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    const double imag_tol = 1e-9 * scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(ev(i).imag()) > imag_tol) {
        throw SpectrumError("Laplacian has a non-real eigenvalue (" + std::to_string(ev(i).real()) +
                            (ev(i).imag() < 0 ? " - " : " + ") +
                            std::to_string(std::abs(ev(i).imag())) + "i)");
      }
    }
    raw = ev.real();
    vecs = es.eigenvectors().real();
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return raw(a) < raw(b); });

  d.lambdas.resize(n);
  d.P.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    d.lambdas(k) = raw(order[static_cast<std::size_t>(k)]);
    d.P.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
  }

  const double lambda_max = n > 0 ? d.lambdas(n - 1) : 0.0;
  d.zero_tol = zero_tol.value_or(1e-9 * std::max(1.0, lambda_max));

  d.omegas.resize(n);
  d.mho.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double& lam = d.lambdas(k);
    if (lam < -d.zero_tol) {
      throw SpectrumError("Laplacian eigenvalue " + std::to_string(lam) +
                          " is negative beyond zero_tol");
    }
    if (std::abs(lam) <= d.zero_tol) {
      lam = 0.0;
      d.omegas(k) = 0.0;
      d.mho(k) = 0.0;
    } else {
      d.omegas(k) = std::sqrt(lam);
      d.mho(k) = 1.0 / d.omegas(k);
    }
  }
  if (n > 0 && d.lambdas(0) != 0.0) {
    throw NumericalError("smallest Laplacian eigenvalue " + std::to_string(d.lambdas(0)) +
                         " was not classified as a zero mode");
  }

  if (d.symmetric) {
    d.P_inv = d.P.transpose();
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(d.P);
    if (!lu.isInvertible()) throw NumericalError("Laplacian is not diagonalizable");
    d.P_inv = lu.inverse();
  }

  const double scale = std::max(1.0, max_abs(L));
  const double recon = max_abs(d.mode_matrix(d.lambdas) - L);
  if (!(recon <= 1e-10 * scale)) {
    throw NumericalError("eigendecomposition reconstruction error " + std::to_string(recon) +
                         " exceeds tolerance");
  }
  return d;
}

Eigen::MatrixXd sqrt_laplacian(const SpectralDecomposition& d) {
  return d.mode_matrix(d.omegas);
}

}  // namespace oscnet
