#include "oscnet/verify.hpp"

#include <algorithm>
#include <complex>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "oscnet/algebra.hpp"
#include "oscnet/dynamics.hpp"
#include "oscnet/spectral.hpp"

namespace oscnet {

namespace {

template <typename M>
double max_abs(const M& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void add(std::vector<CheckResult>& out, std::string name, double error, double tol) {
  out.push_back({std::move(name), error, tol, error <= tol});
}

}  // namespace

std::vector<CheckResult> run_identity_checks(const Graph& g, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const SpinorBasis& s = spinor_basis();
  const Eigen::Matrix2d zero2 = Eigen::Matrix2d::Zero();

  add(out, "{a,b} = e", max_abs(Eigen::Matrix2d(s.ab + s.ba - s.e_hat)), 0.0);
  add(out, "a^2 = b^2 = 0",
      std::max(max_abs(Eigen::Matrix2d(s.a_hat * s.a_hat - zero2)),
               max_abs(Eigen::Matrix2d(s.b_hat * s.b_hat - zero2))),
      0.0);
  add(out, "aba = a, bab = b",
      std::max(max_abs(Eigen::Matrix2d(s.a_hat * s.b_hat * s.a_hat - s.a_hat)),
               max_abs(Eigen::Matrix2d(s.b_hat * s.a_hat * s.b_hat - s.b_hat))),
      0.0);
  add(out, "(ab)^2 = ab, (ba)^2 = ba",
      std::max(max_abs(Eigen::Matrix2d(s.ab * s.ab - s.ab)),
               max_abs(Eigen::Matrix2d(s.ba * s.ba - s.ba))),
      0.0);

  const GraphMatrices m = build_matrices(g);
  const double l_scale = std::max(1.0, max_abs(m.laplacian));
  add(out, "L row sums = 0", max_abs(Eigen::VectorXd(m.laplacian.rowwise().sum())), 1e-12 * l_scale);

  std::size_t pattern_mismatch = 0;
  for (Eigen::Index i = 0; i < m.laplacian.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.laplacian.cols(); ++j) {
      if (i != j && ((m.laplacian(i, j) == 0.0) != (m.semi_normalized(i, j) == 0.0))) {
        ++pattern_mismatch;
      }
    }
  }
  add(out, "H link pattern = L link pattern", static_cast<double>(pattern_mismatch), 0.0);

  const Hamiltonian h = build_hamiltonian(m);
  add(out, "Hamiltonian: direct form = factored form",
      max_abs(Eigen::MatrixXd(h.diag_part + h.nilpotent_part - h.h_part - h.sqrt_d_part)),
      1e-12 * std::max(1.0, m.sqrt_degrees.maxCoeff()));

  const SpectralDecomposition d = decompose(m);
  add(out, "P Lambda P^-1 = L", max_abs(Eigen::MatrixXd(d.mode_matrix(d.lambdas) - m.laplacian)),
      1e-10 * l_scale);
  const auto n = static_cast<Eigen::Index>(g.size());
  add(out, "P P^-1 = I",
      max_abs(Eigen::MatrixXd(d.P * d.P_inv - Eigen::MatrixXd::Identity(n, n))), 1e-10);
  const Eigen::MatrixXd root = sqrt_laplacian(d);
  add(out, "(sqrt L)^2 = L", relative_max_error(Eigen::MatrixXd(root * root), m.laplacian), 1e-10);

  const Eigen::MatrixXd h2 = h.matrix * h.matrix;
  const Eigen::MatrixXd h2_expansion =
      kron(Eigen::MatrixXd(m.semi_normalized * m.sqrt_degree()), s.ab) + kron(m.laplacian, s.ba);
  const double h2_tol = 1e-12 * std::max(1.0, max_abs(h2));
  add(out, "H_hat^2 = H sqrt(D) (x) ab + L (x) ba", max_abs(Eigen::MatrixXd(h2 - h2_expansion)), h2_tol);

  Eigen::Matrix2d sigma_x;
  sigma_x << 0.0, 1.0, 1.0, 0.0;
  const Eigen::MatrixXd conj_a = m.inv_sqrt_degree() * m.adjacency * m.sqrt_degree();
  const Eigen::MatrixXd block = kron(Eigen::MatrixXd(m.degree - 0.5 * (m.adjacency + conj_a)),
                                     Eigen::Matrix2d::Identity()) -
                                kron(Eigen::MatrixXd(0.5 * (m.adjacency - conj_a)), sigma_x);
  add(out, "-H_hat^2 block form", max_abs(Eigen::MatrixXd(h2 - block)), h2_tol);

  Eigen::MatrixXd naive = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  double worst_power = 0.0;
  for (std::size_t k = 0; k <= opts.k_max; ++k) {
    worst_power = std::max(worst_power,
                           relative_max_error(hamiltonian_power(m, d, k, Parity::Even), naive));
    naive = naive * h.matrix;
    worst_power = std::max(worst_power,
                           relative_max_error(hamiltonian_power(m, d, k, Parity::Odd), naive));
    naive = naive * h.matrix;
  }
  add(out, "H_hat^{2k}, H_hat^{2k+1} closed forms (k <= " + std::to_string(opts.k_max) + ")",
      worst_power, 1e-10);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd a(n), b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i) = unit(rng);
    b(i) = unit(rng);
  }
  const DualState state = make_dual_state(a, b);

  const Eigen::VectorXcd oracle = oracle_propagate(h, state, opts.t);
  const Eigen::VectorXcd closed_drift = hat_solution(d, m, state, opts.t, ZeroMode::Drift);
  add(out, "closed form (drift limit) = exp(-i H_hat t)", relative_max_error(closed_drift, oracle), 1e-8);

  // The literal mho form drops -i t P Z P^-1 sqrt(D) (x) b_hat on the zero modes.
  Eigen::VectorXd zero_indicator = Eigen::VectorXd::Zero(n);
  for (Eigen::Index mu = 0; mu < n; ++mu) zero_indicator(mu) = d.is_zero_mode(mu) ? 1.0 : 0.0;
  const Eigen::MatrixXd drift_op =
      kron(Eigen::MatrixXd(d.mode_matrix(zero_indicator) * m.sqrt_degree()), s.b_hat);
  Eigen::VectorXcd drift = drift_op.cast<std::complex<double>>() *
                           interleave(state.x_plus, state.x_minus);
  drift *= std::complex<double>(0.0, -opts.t);
  const Eigen::VectorXcd closed_deleted = hat_solution(d, m, state, opts.t, ZeroMode::Deleted);
  add(out, "closed form (mho) + zero-mode drift = exp(-i H_hat t)",
      relative_max_error(Eigen::VectorXcd(closed_deleted + drift), oracle), 1e-8);

  auto [xp, xm] = deinterleave(closed_deleted);
  const StateSample fs = fermion_state(d, m, state, opts.t);
  add(out, "x_f = x_f+ + x_f-", max_abs(Eigen::VectorXd(fs.displacement - (xp + xm).real())),
      1e-10 * std::max(1.0, max_abs(fs.displacement)));

  const ModalEvaluator boson = ModalEvaluator::boson(d, state);
  const ModalEvaluator fermion = ModalEvaluator::fermion(d, m, state, ZeroMode::Deleted);
  for (const auto& [label, fn] : {std::pair<const char*, StateFn>{"x_b", boson},
                                  std::pair<const char*, StateFn>{"x_f", fermion}}) {
    const double r1 = wave_residual(fn, m, opts.t, 1e-2);
    const double r2 = wave_residual(fn, m, opts.t, 5e-3);
    const double r3 = wave_residual(fn, m, opts.t, 2.5e-3);
    const double ratio = std::min(r1 / r2, r2 / r3);
    // Passing means ratio >= 3.5; reported as a shortfall so error <= tolerance reads uniformly.
    add(out, std::string("wave equation residual of ") + label + " is O(dt^2) (ratio " +
                 std::to_string(ratio) + ")",
        std::max(0.0, 3.5 - ratio), 0.0);
  }
  return out;
}

void print_report(const std::vector<CheckResult>& results, std::ostream& out) {
  std::size_t failed = 0;
  for (const CheckResult& r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "[%s] %-60s error %.3e <= %.3e", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.error, r.tolerance);
    out << line << '\n';
    if (!r.passed) ++failed;
  }
  out << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed"
                      : std::to_string(failed) + " of " + std::to_string(results.size()) +
                            " checks failed")
      << '\n';
}

}  // namespace oscnet
