#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oscnet/error.hpp"
#include "oscnet/trajectory.hpp"
#include "support/random_graphs.hpp"

using namespace oscnet;

TEST(TimeGrid, UniformAndEndpointInclusive) {
  const auto t = make_time_grid(10.0, 0.1);
  ASSERT_EQ(t.size(), 101u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 10.0);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) EXPECT_EQ(t[k], static_cast<double>(k) * 0.1);
}

TEST(TimeGrid, AppendsOffGridEndpoint) {
  const auto t = make_time_grid(1.0, 0.3);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_DOUBLE_EQ(t[3], 0.9);
  EXPECT_EQ(t[4], 1.0);
}

TEST(TimeGrid, SingleStep) {
  const auto t = make_time_grid(2.0, 2.0);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], 0.0);
  EXPECT_EQ(t[1], 2.0);
}

TEST(TimeGrid, RejectsBadInput) {
  EXPECT_THROW(make_time_grid(0.0, 0.1), ValidationError);
  EXPECT_THROW(make_time_grid(1.0, 0.0), ValidationError);
  EXPECT_THROW(make_time_grid(1.0, 2.0), ValidationError);
  EXPECT_THROW(make_time_grid(INFINITY, 0.1), ValidationError);
}

TEST(TimeGridProperty, StrictlyIncreasingWithExactEnds) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> tmax(0.1, 50.0);
  std::uniform_real_distribution<double> frac(1e-3, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double t_max = tmax(rng);
    const double dt = t_max * frac(rng);
    const auto t = make_time_grid(t_max, dt);
    EXPECT_EQ(t.front(), 0.0);
    EXPECT_EQ(t.back(), t_max);
    for (std::size_t k = 1; k < t.size(); ++k) EXPECT_GT(t[k], t[k - 1]);
  }
}

TEST(Evaluate, ParallelMatchesSerialBitForBit) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Graph g = support::random_connected_graph(rng, 20 + 10 * static_cast<std::size_t>(trial));
    const GraphMatrices m = build_matrices(g);
    const SpectralDecomposition d = decompose(m);
    const DualState s = support::random_conjugate_state(rng, g.size());
    const ModalEvaluator eval = ModalEvaluator::fermion(d, m, s, ZeroMode::Deleted);
    const StateFn fn = [&](double t) { return eval(t); };
    const auto times = make_time_grid(20.0, 0.05);

    const Trajectory par = evaluate_trajectory(fn, times, Solver::Fermion, g.fingerprint());
    const Trajectory ser = evaluate_trajectory_serial(fn, times, Solver::Fermion, g.fingerprint());
    ASSERT_EQ(par.samples.size(), ser.samples.size());
    EXPECT_EQ(par.times, ser.times);
    EXPECT_EQ(par.graph_fingerprint, ser.graph_fingerprint);
    for (std::size_t i = 0; i < par.samples.size(); ++i) {
      EXPECT_EQ(par.samples[i].t, ser.samples[i].t);
      EXPECT_EQ(par.samples[i].displacement, ser.samples[i].displacement);
      EXPECT_EQ(par.samples[i].velocity, ser.samples[i].velocity);
      EXPECT_EQ(par.samples[i].max_imag, ser.samples[i].max_imag);
    }
  }
}

TEST(Evaluate, PropagatesExceptions) {
  const StateFn fn = [](double t) -> StateSample {
    if (t > 0.5) throw NumericalError("boom");
    StateSample s;
    s.t = t;
    s.displacement = Eigen::VectorXd::Zero(1);
    s.velocity = Eigen::VectorXd::Zero(1);
    return s;
  };
  const auto times = make_time_grid(1.0, 0.1);
  EXPECT_THROW(evaluate_trajectory(fn, times, Solver::Boson, 0), NumericalError);
  EXPECT_THROW(evaluate_trajectory_serial(fn, times, Solver::Boson, 0), NumericalError);
}

TEST(Evaluate, RejectsBadGrids) {
  const StateFn fn = [](double) { return StateSample{}; };
  const std::vector<double> unsorted{0.0, 0.2, 0.1};
  EXPECT_THROW(evaluate_trajectory(fn, unsorted, Solver::Boson, 0), ValidationError);
  EXPECT_THROW(evaluate_trajectory(fn, std::vector<double>{}, Solver::Boson, 0), ValidationError);
}

TEST(SolverNames, RoundTrip) {
  for (Solver s : {Solver::Boson, Solver::Fermion, Solver::Oracle}) {
    EXPECT_EQ(solver_from_string(to_string(s)), s);
  }
  EXPECT_THROW(solver_from_string("euler"), ValidationError);
}

namespace {

Trajectory impulse_trajectory(std::size_t n, std::size_t node, double b_value, Solver solver,
                              ZeroMode zm) {
  const Graph g = path_graph(n);
  const GraphMatrices m = build_matrices(g);
  const SpectralDecomposition d = decompose(m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  b(static_cast<Eigen::Index>(node)) = b_value;
  const DualState s = make_dual_state(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), b);
  const ModalEvaluator eval =
      solver == Solver::Boson ? ModalEvaluator::boson(d, s) : ModalEvaluator::fermion(d, m, s, zm);
  const auto times = make_time_grid(10.0, 0.5);
  return evaluate_trajectory_serial([&](double t) { return eval(t); }, times, solver,
                                    g.fingerprint());
}

}  // namespace

TEST(GalileanShift, ReferenceNodeStartsAtRest) {
  std::mt19937_64 rng(3);
  const Graph g = support::random_connected_graph(rng, 9);
  const GraphMatrices m = build_matrices(g);
  const DualState s = support::random_conjugate_state(rng, 9);
  const ModalEvaluator eval = ModalEvaluator::boson(decompose(m), s);
  const auto times = make_time_grid(3.0, 0.5);
  const Trajectory traj =
      evaluate_trajectory_serial([&](double t) { return eval(t); }, times, Solver::Boson, 0);
  for (std::size_t ref = 0; ref < 9; ++ref) {
    const Trajectory shifted = galilean_shift(traj, ref);
    EXPECT_EQ(shifted.samples[0].velocity(static_cast<Eigen::Index>(ref)), 0.0);
    const double v = traj.samples[0].velocity(static_cast<Eigen::Index>(ref));
    for (std::size_t k = 0; k < times.size(); ++k) {
      const auto diff = (traj.samples[k].displacement - shifted.samples[k].displacement).eval();
      EXPECT_LE((diff.array() - v * times[k]).abs().maxCoeff(), 1e-14);
    }
  }
}

TEST(GalileanShift, FortyNodeFermionIsolatesImpulse) {
  const Trajectory traj = impulse_trajectory(40, 20, 0.5, Solver::Fermion, ZeroMode::Deleted);
  const Trajectory shifted = galilean_shift(traj, 0);
  const Eigen::VectorXd& v0 = shifted.samples[0].velocity;
  for (Eigen::Index i = 0; i < 40; ++i) {
    EXPECT_NEAR(v0(i), i == 20 ? std::numbers::sqrt2 : 0.0, 1e-10) << "node " << i;
  }
}

TEST(GalileanShift, DeletedPlusShiftEqualsDrift) {
  // Adding back the uniform -sqrt(2)/40 restores the centre-of-mass motion.
  const Trajectory del = galilean_shift(impulse_trajectory(40, 20, 0.5, Solver::Fermion, ZeroMode::Deleted), 0);
  const Trajectory drift = impulse_trajectory(40, 20, 0.5, Solver::Fermion, ZeroMode::Drift);
  for (std::size_t k = 0; k < del.samples.size(); ++k) {
    EXPECT_LE((del.samples[k].displacement - drift.samples[k].displacement).cwiseAbs().maxCoeff(),
              1e-10);
    EXPECT_LE((del.samples[k].velocity - drift.samples[k].velocity).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(GalileanShift, IdentityWhenInitiallyAtRest) {
  const Graph g = path_graph(6);
  const GraphMatrices m = build_matrices(g);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(6);
  a(2) = 1.0;
  const DualState s = make_dual_state(a, Eigen::VectorXd::Zero(6));
  const ModalEvaluator eval = ModalEvaluator::boson(decompose(m), s);
  const auto times = make_time_grid(2.0, 0.5);
  const Trajectory traj =
      evaluate_trajectory_serial([&](double t) { return eval(t); }, times, Solver::Boson, 0);
  const Trajectory shifted = galilean_shift(traj, 0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_LE((shifted.samples[k].displacement - traj.samples[k].displacement).cwiseAbs().maxCoeff(),
              1e-15);
  }
}

TEST(GalileanShift, Errors) {
  const Trajectory traj = impulse_trajectory(5, 2, 1.0, Solver::Boson, ZeroMode::Deleted);
  EXPECT_THROW(galilean_shift(traj, 5), ValidationError);

  const std::vector<double> late{0.5, 1.0};
  const Trajectory no_origin = evaluate_trajectory_serial(
      [](double t) {
        StateSample s;
        s.t = t;
        s.displacement = Eigen::VectorXd::Zero(2);
        s.velocity = Eigen::VectorXd::Zero(2);
        return s;
      },
      late, Solver::Boson, 0);
  EXPECT_THROW(galilean_shift(no_origin, 0), ValidationError);
}

TEST(TrajectoryTest, MaxImagAndNodeCount) {
  const Trajectory traj = impulse_trajectory(7, 3, 1.0, Solver::Fermion, ZeroMode::Drift);
  EXPECT_EQ(traj.node_count(), 7u);
  EXPECT_LE(traj.max_imag(), 1e-9);
  EXPECT_EQ(Trajectory{}.node_count(), 0u);
}
