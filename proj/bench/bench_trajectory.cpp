// Serial reference vs OpenMP trajectory evaluation on path graphs.
//
//   oscnet_bench --benchmark_filter=Trajectory

#include <random>

#include <benchmark/benchmark.h>

#include "oscnet/dynamics.hpp"
#include "oscnet/trajectory.hpp"

namespace {

struct Problem {
  oscnet::GraphMatrices m;
  oscnet::SpectralDecomposition d;
  oscnet::DualState s;
  std::vector<double> times;

  explicit Problem(std::size_t n)
      : m(oscnet::build_matrices(oscnet::path_graph(n))), d(oscnet::decompose(m)) {
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd a(static_cast<Eigen::Index>(n)), b(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      a(i) = u(rng);
      b(i) = u(rng);
    }
    s = oscnet::make_dual_state(a, b);
    times = oscnet::make_time_grid(10.0, 0.05);
  }
};

template <bool Parallel>
void BM_Trajectory(benchmark::State& state) {
  const Problem p(static_cast<std::size_t>(state.range(0)));
  const auto eval = oscnet::ModalEvaluator::fermion(p.d, p.m, p.s, oscnet::ZeroMode::Deleted);
  const oscnet::StateFn fn = [&](double t) { return eval(t); };
  for (auto _ : state) {
    auto traj = Parallel ? oscnet::evaluate_trajectory(fn, p.times, oscnet::Solver::Fermion, 0)
                         : oscnet::evaluate_trajectory_serial(fn, p.times, oscnet::Solver::Fermion, 0);
    benchmark::DoNotOptimize(traj.samples.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(p.times.size()));
}

template <bool Parallel>
void BM_OracleTrajectory(benchmark::State& state) {
  const Problem p(static_cast<std::size_t>(state.range(0)));
  const oscnet::Hamiltonian h = oscnet::build_hamiltonian(p.m);
  const oscnet::StateFn fn = [&](double t) { return oscnet::oracle_state(h, p.s, t); };
  const std::vector<double> times(p.times.begin(), p.times.begin() + 21);
  for (auto _ : state) {
    auto traj = Parallel ? oscnet::evaluate_trajectory(fn, times, oscnet::Solver::Oracle, 0)
                         : oscnet::evaluate_trajectory_serial(fn, times, oscnet::Solver::Oracle, 0);
    benchmark::DoNotOptimize(traj.samples.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(times.size()));
}

}  // namespace

BENCHMARK(BM_Trajectory<false>)->Name("Trajectory/serial")->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Trajectory<true>)->Name("Trajectory/openmp")->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleTrajectory<false>)->Name("OracleTrajectory/serial")->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleTrajectory<true>)->Name("OracleTrajectory/openmp")->Arg(40)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
