#include "oscnet/dynamics.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// Real matrix times complex vector, split so no mixed-scalar product is needed.
Eigen::VectorXcd mat_vec(const Eigen::MatrixXd& M, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(M.rows());
  out.real() = M * v.real();
  out.imag() = M * v.imag();
  return out;
}

void require_size(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw ValidationError(std::string(what) + " has dimension " + std::to_string(got) +
                          ", expected " + std::to_string(expected));
  }
}

double max_abs_imag(const Eigen::VectorXcd& v) {
  return v.size() == 0 ? 0.0 : v.imag().cwiseAbs().maxCoeff();
}

StateSample project(double t, const Eigen::VectorXcd& x, const Eigen::VectorXcd& v) {
  StateSample out;
  out.t = t;
  out.displacement = x.real();
  out.velocity = v.real();
  out.max_imag = std::max(max_abs_imag(x), max_abs_imag(v));
  return out;
}

// sin(omega t)/omega on non-zero modes; the zero-mode value depends on policy.
Eigen::VectorXd sinc_diag(const SpectralDecomposition& d, double t, ZeroMode zero_mode) {
  Eigen::VectorXd g(d.omegas.size());
  for (Eigen::Index mu = 0; mu < g.size(); ++mu) {
    if (d.is_zero_mode(mu)) {
      g(mu) = zero_mode == ZeroMode::Drift ? t : 0.0;
    } else {
      g(mu) = d.mho(mu) * std::sin(d.omegas(mu) * t);
    }
  }
  return g;
}

void check_state(const SpectralDecomposition& d, const DualState& s) {
  require_size(d.size(), s.size(), "x+(0)");
  require_size(d.size(), static_cast<std::size_t>(s.x_minus.size()), "x-(0)");
}

}  // namespace

DualState make_dual_state(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) {
    throw ValidationError("displacement vector a has length " + std::to_string(a.size()) +
                          " but velocity vector b has length " + std::to_string(b.size()));
  }
  DualState s;
  s.a = a;
  s.b = b;
  s.x_plus.resize(a.size());
  s.x_minus.resize(a.size());
  s.x_plus.real() = a;
  s.x_plus.imag() = b;
  s.x_minus.real() = a;
  s.x_minus.imag() = -b;
  return s;
}

ModalEvaluator::ModalEvaluator(const SpectralDecomposition& d, Family family,
                               Eigen::VectorXcd sum_coeffs, Eigen::VectorXcd diff_coeffs)
    : P_(d.P),
      omegas_(d.omegas),
      mho_(d.mho),
      family_(family),
      sum_coeffs_(std::move(sum_coeffs)),
      diff_coeffs_(std::move(diff_coeffs)) {}

ModalEvaluator ModalEvaluator::boson(const SpectralDecomposition& d, const DualState& s) {
  check_state(d, s);
  return ModalEvaluator(d, Family::Boson, mat_vec(d.P_inv, s.x_plus + s.x_minus),
                        mat_vec(d.P_inv, s.x_plus - s.x_minus));
}

ModalEvaluator ModalEvaluator::fermion(const SpectralDecomposition& d, const GraphMatrices& m,
                                       const DualState& s, ZeroMode zero_mode) {
  check_state(d, s);
  require_size(d.size(), m.size(), "graph matrices");
  const Eigen::VectorXcd scaled_diff = m.sqrt_degrees.cast<cd>().cwiseProduct(s.x_plus - s.x_minus);
  return ModalEvaluator(d,
                        zero_mode == ZeroMode::Drift ? Family::FermionDrift
                                                     : Family::FermionDeleted,
                        mat_vec(d.P_inv, s.x_plus + s.x_minus), mat_vec(d.P_inv, scaled_diff));
}

StateSample ModalEvaluator::operator()(double t) const {
  const Eigen::Index n = omegas_.size();
  Eigen::VectorXd cos_wt(n), sin_wt(n), g(n), g_dot(n);
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    const double w = omegas_(mu);
    cos_wt(mu) = std::cos(w * t);
    sin_wt(mu) = std::sin(w * t);
    switch (family_) {
      case Family::Boson:
        g(mu) = sin_wt(mu);
        g_dot(mu) = w * cos_wt(mu);
        break;
      case Family::FermionDeleted:
        g(mu) = mho_(mu) * sin_wt(mu);
        g_dot(mu) = mho_(mu) * w * cos_wt(mu);
        break;
      case Family::FermionDrift:
        g(mu) = w == 0.0 ? t : mho_(mu) * sin_wt(mu);
        g_dot(mu) = cos_wt(mu);
        break;
    }
  }

  const Eigen::VectorXcd x = mat_vec(P_, cos_wt.cast<cd>().cwiseProduct(sum_coeffs_)) -
                             kI * mat_vec(P_, g.cast<cd>().cwiseProduct(diff_coeffs_));
  const Eigen::VectorXd w_sin = omegas_.cwiseProduct(sin_wt);
  const Eigen::VectorXcd v = -mat_vec(P_, w_sin.cast<cd>().cwiseProduct(sum_coeffs_)) -
                             kI * mat_vec(P_, g_dot.cast<cd>().cwiseProduct(diff_coeffs_));
  return project(t, x, v);
}

StateSample boson_state(const SpectralDecomposition& d, const DualState& s, double t) {
  return ModalEvaluator::boson(d, s)(t);
}

StateSample fermion_state(const SpectralDecomposition& d, const GraphMatrices& m,
                          const DualState& s, double t, ZeroMode zero_mode) {
  return ModalEvaluator::fermion(d, m, s, zero_mode)(t);
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> fermion_components(
    const SpectralDecomposition& d, const GraphMatrices& m, const DualState& s, double t,
    ZeroMode zero_mode) {
  check_state(d, s);
  require_size(d.size(), m.size(), "graph matrices");

  const Eigen::VectorXcd half_sum = 0.5 * (s.x_plus + s.x_minus);
  const Eigen::VectorXcd half_diff = 0.5 * (s.x_plus - s.x_minus);
  const Eigen::VectorXd cos_wt = (d.omegas * t).array().cos();
  const Eigen::VectorXd w_sin = d.omegas.array() * (d.omegas * t).array().sin();

  const Eigen::MatrixXd cos_op = d.mode_matrix(cos_wt);
  const Eigen::VectorXcd scaled_diff = m.sqrt_degrees.cast<cd>().cwiseProduct(half_diff);

  // D^{-1/2} P cos P^{-1} sqrt(D) (x+ - x-)/2
  const Eigen::VectorXcd t1 =
      m.sqrt_degrees.cwiseInverse().cast<cd>().cwiseProduct(mat_vec(cos_op, scaled_diff));
  // P cos P^{-1} (x+ + x-)/2
  const Eigen::VectorXcd t2 = mat_vec(cos_op, half_sum);
  // D^{-1/2} P Omega sin P^{-1} (x+ + x-)/2
  const Eigen::VectorXcd t3 =
      m.sqrt_degrees.cwiseInverse().cast<cd>().cwiseProduct(mat_vec(d.mode_matrix(w_sin), half_sum));
  // P mho sin P^{-1} sqrt(D) (x+ - x-)/2
  const Eigen::VectorXcd t4 = mat_vec(d.mode_matrix(sinc_diag(d, t, zero_mode)), scaled_diff);

  Eigen::VectorXcd plus = t1 + t2 - kI * t3 - kI * t4;
  Eigen::VectorXcd minus = -t1 + t2 + kI * t3 - kI * t4;
  return {std::move(plus), std::move(minus)};
}

Eigen::MatrixXcd fermion_propagator(const SpectralDecomposition& d, const GraphMatrices& m,
                                    double t, ZeroMode zero_mode) {
  require_size(d.size(), m.size(), "graph matrices");
  const SpinorBasis& s = spinor_basis();
  const Eigen::VectorXd cos_wt = (d.omegas * t).array().cos();
  const Eigen::VectorXd w_sin = d.omegas.array() * (d.omegas * t).array().sin();

  const Eigen::MatrixXd cos_op = d.mode_matrix(cos_wt);
  const Eigen::MatrixXd cos_conj = m.inv_sqrt_degree() * cos_op * m.sqrt_degree();
  const Eigen::MatrixXd sin_a = m.inv_sqrt_degree() * d.mode_matrix(w_sin);
  const Eigen::MatrixXd sin_b = d.mode_matrix(sinc_diag(d, t, zero_mode)) * m.sqrt_degree();

  Eigen::MatrixXcd u(2 * cos_op.rows(), 2 * cos_op.cols());
  u.real() = kron(cos_conj, s.ab) + kron(cos_op, s.ba);
  u.imag() = -(kron(sin_a, s.a_hat) + kron(sin_b, s.b_hat));
  return u;
}

Eigen::VectorXcd hat_solution(const SpectralDecomposition& d, const GraphMatrices& m,
                              const DualState& s, double t, ZeroMode zero_mode) {
  check_state(d, s);
  return fermion_propagator(d, m, t, zero_mode) * interleave(s.x_plus, s.x_minus);
}

Eigen::VectorXcd interleave(const Eigen::VectorXcd& x_plus, const Eigen::VectorXcd& x_minus) {
  require_size(static_cast<std::size_t>(x_plus.size()), static_cast<std::size_t>(x_minus.size()),
               "x-");
  Eigen::VectorXcd out(2 * x_plus.size());
  for (Eigen::Index i = 0; i < x_plus.size(); ++i) {
    out(2 * i) = x_plus(i);
    out(2 * i + 1) = x_minus(i);
  }
  return out;
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> deinterleave(const Eigen::VectorXcd& x_hat) {
  if (x_hat.size() % 2 != 0) throw ValidationError("interleaved vector has odd length");
  const Eigen::Index n = x_hat.size() / 2;
  Eigen::VectorXcd plus(n), minus(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    plus(i) = x_hat(2 * i);
    minus(i) = x_hat(2 * i + 1);
  }
  return {std::move(plus), std::move(minus)};
}

Eigen::MatrixXcd oracle_exponential(const Eigen::MatrixXd& H, double t) {
  constexpr int kOrder = 18;
  constexpr double kScaledNorm = 0.5;
  constexpr int kMaxSquarings = 1000;

  if (!std::isfinite(t)) throw ValidationError("propagation time must be finite");
  const Eigen::Index n = H.rows();
  const Eigen::MatrixXcd X = cd(0.0, -t) * H.cast<cd>();
  const double norm = n == 0 ? 0.0 : X.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm)) {
    throw NumericalError("exp(-iHt) series: ||Ht||_1 is not finite");
  }

  int squarings = 0;
  if (norm > kScaledNorm) squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNorm)));
  if (squarings > kMaxSquarings) {
    throw NumericalError("exp(-iHt) series: ||Ht||_1 = " + std::to_string(norm) +
                         " needs too many squarings");
  }
  const Eigen::MatrixXcd Y = X / std::ldexp(1.0, squarings);

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= kOrder; ++k) {
    term = (term * Y) / static_cast<double>(k);
    sum += term;
  }
  const double scaled = norm / std::ldexp(1.0, squarings);
  const double tail = n == 0 ? 0.0 : term.cwiseAbs().colwise().sum().maxCoeff();
  if (!(tail <= 1e-15 * std::max(1.0, scaled))) {
    throw NumericalError("exp(-iHt) series did not converge at order " + std::to_string(kOrder) +
                         ": last term norm " + std::to_string(tail) + ", scaled norm bound " +
                         std::to_string(scaled));
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

Eigen::VectorXcd oracle_propagate(const Hamiltonian& h, const DualState& s, double t) {
  require_size(h.n, s.size(), "x+(0)");
  return oracle_exponential(h.matrix, t) * interleave(s.x_plus, s.x_minus);
}

StateSample oracle_state(const Hamiltonian& h, const DualState& s, double t) {
  const Eigen::VectorXcd x_hat = oracle_propagate(h, s, t);
  const Eigen::VectorXcd x_hat_dot = -kI * mat_vec(h.matrix, x_hat);
  auto [xp, xm] = deinterleave(x_hat);
  auto [vp, vm] = deinterleave(x_hat_dot);
  return project(t, xp + xm, vp + vm);
}

Eigen::VectorXd boson_initial_velocity(const SpectralDecomposition& d, const DualState& s) {
  check_state(d, s);
  // -i sqrt(L) (x+ - x-)
  const Eigen::VectorXcd v = -kI * mat_vec(sqrt_laplacian(d), s.x_plus - s.x_minus);
  return v.real();
}

Eigen::VectorXd fermion_initial_velocity(const SpectralDecomposition& d, const GraphMatrices& m,
                                         const DualState& s, ZeroMode zero_mode) {
  check_state(d, s);
  require_size(d.size(), m.size(), "graph matrices");
  const Eigen::VectorXcd scaled_diff = m.sqrt_degrees.cast<cd>().cwiseProduct(s.x_plus - s.x_minus);
  if (zero_mode == ZeroMode::Drift) return (-kI * scaled_diff).real();
  // -i P mho Omega P^{-1} sqrt(D) (x+ - x-)
  const Eigen::VectorXd mho_omega = d.mho.cwiseProduct(d.omegas);
  return (-kI * mat_vec(d.mode_matrix(mho_omega), scaled_diff)).real();
}

double wave_residual(const StateFn& traj_fn, const GraphMatrices& m, double t, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
  const Eigen::VectorXd prev = traj_fn(t - dt).displacement;
  const Eigen::VectorXd here = traj_fn(t).displacement;
  const Eigen::VectorXd next = traj_fn(t + dt).displacement;
  require_size(m.size(), static_cast<std::size_t>(here.size()), "trajectory state");
  const Eigen::VectorXd accel = (next - 2.0 * here + prev) / (dt * dt);
  const Eigen::VectorXd r = accel + m.laplacian * here;
  return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

}  // namespace oscnet
