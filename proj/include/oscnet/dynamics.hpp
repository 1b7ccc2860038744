#pragma once

#include <cstddef>
#include <functional>
#include <utility>

#include <Eigen/Dense>

#include "oscnet/algebra.hpp"
#include "oscnet/graph.hpp"
#include "oscnet/spectral.hpp"

namespace oscnet {

/// Initial condition (x+(0), x-(0)) of the fundamental equations.
///
/// Built from real (a, b) the pair is conjugate, x+- = a +- i b, so that
/// x+ + x- = 2a is the initial displacement and x+ - x- = 2ib carries the
/// initial velocity.
struct DualState {
  Eigen::VectorXcd x_plus;
  Eigen::VectorXcd x_minus;
  Eigen::VectorXd a;
  Eigen::VectorXd b;

  std::size_t size() const noexcept { return static_cast<std::size_t>(x_plus.size()); }
};

DualState make_dual_state(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Real displacement and velocity at one instant. max_imag is the largest
/// imaginary part discarded when projecting the complex solution.
struct StateSample {
  double t = 0.0;
  Eigen::VectorXd displacement;
  Eigen::VectorXd velocity;
  double max_imag = 0.0;
};

using StateFn = std::function<StateSample(double)>;

/// How the fermion closed form treats the sin-series on zero modes.
///
/// Deleted uses mho = diag(0, 1/omega_1, ...) as written, which removes the
/// uniform drift of a connected graph from the solution (the solution seen
/// from the centre-of-gravity frame). Drift uses the analytic limit
/// sin(omega t)/omega -> t and is exactly exp(-i H_hat t).
enum class ZeroMode { Deleted, Drift };

/// Closed-form evaluator for a fixed decomposition and initial state.
///
/// Both solution families have the shape
///   x(t) = P cos(Omega t) c - i P g(t) e
/// with c = P^{-1}(x+ + x-) and a family-specific e and diagonal g(t), so the
/// per-time cost is two diagonal scalings and two matrix-vector products.
/// Thread-safe for concurrent calls.
class ModalEvaluator {
 public:
  static ModalEvaluator boson(const SpectralDecomposition& d, const DualState& s);
  static ModalEvaluator fermion(const SpectralDecomposition& d, const GraphMatrices& m,
                                const DualState& s, ZeroMode zero_mode);

  StateSample operator()(double t) const;

 private:
  enum class Family { Boson, FermionDeleted, FermionDrift };
  ModalEvaluator(const SpectralDecomposition& d, Family family, Eigen::VectorXcd sum_coeffs,
                 Eigen::VectorXcd diff_coeffs);

  Eigen::MatrixXd P_;
  Eigen::VectorXd omegas_;
  Eigen::VectorXd mho_;
  Family family_;
  Eigen::VectorXcd sum_coeffs_;   // P^{-1} (x+ + x-)
  Eigen::VectorXcd diff_coeffs_;  // P^{-1} (x+ - x-), or P^{-1} sqrt(D) (x+ - x-)
};

/// x_b(t) = P cos(Omega t) P^{-1}(x+ + x-) - i P sin(Omega t) P^{-1}(x+ - x-).
StateSample boson_state(const SpectralDecomposition& d, const DualState& s, double t);

/// x_f(t) = P cos(Omega t) P^{-1}(x+ + x-) - i P mho sin(Omega t) P^{-1} sqrt(D)(x+ - x-).
StateSample fermion_state(const SpectralDecomposition& d, const GraphMatrices& m,
                          const DualState& s, double t, ZeroMode zero_mode = ZeroMode::Deleted);

/// x_f^+(t) and x_f^-(t) separately; their sum is the fermion displacement.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> fermion_components(
    const SpectralDecomposition& d, const GraphMatrices& m, const DualState& s, double t,
    ZeroMode zero_mode = ZeroMode::Deleted);

/// cos(H_hat t) - i sin(H_hat t) assembled in Kronecker form from the
/// n x n blocks D^{-1/2} P cos P^{-1} sqrt(D), P cos P^{-1},
/// D^{-1/2} P Omega sin P^{-1} and P mho sin P^{-1} sqrt(D).
Eigen::MatrixXcd fermion_propagator(const SpectralDecomposition& d, const GraphMatrices& m,
                                    double t, ZeroMode zero_mode = ZeroMode::Deleted);

/// Closed-form x_hat(t) in the interleaved 2n space.
Eigen::VectorXcd hat_solution(const SpectralDecomposition& d, const GraphMatrices& m,
                              const DualState& s, double t,
                              ZeroMode zero_mode = ZeroMode::Deleted);

Eigen::VectorXcd interleave(const Eigen::VectorXcd& x_plus, const Eigen::VectorXcd& x_minus);
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> deinterleave(const Eigen::VectorXcd& x_hat);

/// exp(-i H t) by scaling and squaring a degree-18 Taylor series, with the
/// scaled 1-norm kept at or below 0.5. Throws NumericalError if the series
/// tail is not negligible (non-finite input).
Eigen::MatrixXcd oracle_exponential(const Eigen::MatrixXd& H, double t);

/// exp(-i H_hat t) x_hat(0), the brute-force reference for hat_solution.
Eigen::VectorXcd oracle_propagate(const Hamiltonian& h, const DualState& s, double t);

/// Displacement x+ + x- and velocity from the oracle, with
/// d x_hat/dt = -i H_hat x_hat(t).
StateSample oracle_state(const Hamiltonian& h, const DualState& s, double t);

/// Real initial velocities 2 sqrt(L) b and 2 P mho Omega P^{-1} sqrt(D) b
/// (the Drift variant uses 2 sqrt(D) b).
Eigen::VectorXd boson_initial_velocity(const SpectralDecomposition& d, const DualState& s);
Eigen::VectorXd fermion_initial_velocity(const SpectralDecomposition& d, const GraphMatrices& m,
                                         const DualState& s,
                                         ZeroMode zero_mode = ZeroMode::Deleted);

/// max-norm of (x(t+dt) - 2x(t) + x(t-dt))/dt^2 + L x(t).
double wave_residual(const StateFn& traj_fn, const GraphMatrices& m, double t, double dt);

}  // namespace oscnet
