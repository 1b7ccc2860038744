#include "oscnet/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#if defined(OSCNET_HAVE_OPENMP)
#include <omp.h>
#endif

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

void check_times(std::span<const double> times) {
  if (times.empty()) throw ValidationError("time grid is empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw ValidationError("time grid contains a non-finite value");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ValidationError("time grid must be strictly increasing");
    }
  }
}

Trajectory empty_trajectory(std::span<const double> times, Solver solver, std::uint64_t fp) {
  Trajectory traj;
  traj.solver = solver;
  traj.times.assign(times.begin(), times.end());
  traj.samples.resize(times.size());
  traj.graph_fingerprint = fp;
  return traj;
}

}  // namespace

std::string_view to_string(Solver s) {
  switch (s) {
    case Solver::Boson:
      return "boson";
    case Solver::Fermion:
      return "fermion";
    case Solver::Oracle:
      return "oracle";
  }
  return "unknown";
}

Solver solver_from_string(std::string_view name) {
  if (name == "boson") return Solver::Boson;
  if (name == "fermion") return Solver::Fermion;
  if (name == "oracle") return Solver::Oracle;
  throw ValidationError("unknown solver '" + std::string(name) +
                        "' (expected boson, fermion or oracle)");
}

double Trajectory::max_imag() const {
  double m = 0.0;
  for (const StateSample& s : samples) m = std::max(m, s.max_imag);
  return m;
}

std::vector<double> make_time_grid(double t_max, double dt) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("t_max must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt_out must be positive");
  if (dt > t_max) throw ValidationError("dt_out must not exceed t_max");

  const double ratio = t_max / dt;
  const auto steps = static_cast<std::size_t>(std::floor(ratio + 1e-9));
  std::vector<double> times;
  times.reserve(steps + 2);
  for (std::size_t k = 0; k <= steps; ++k) times.push_back(static_cast<double>(k) * dt);
  if (std::abs(times.back() - t_max) <= 1e-9 * t_max) {
    times.back() = t_max;
  } else {
    times.push_back(t_max);
  }
  return times;
}

Trajectory evaluate_trajectory(const StateFn& fn, std::span<const double> times, Solver solver,
                               std::uint64_t graph_fingerprint) {
  check_times(times);
  Trajectory traj = empty_trajectory(times, solver, graph_fingerprint);
  const auto count = static_cast<std::ptrdiff_t>(times.size());

  // Exceptions may not cross the parallel region; keep the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      traj.samples[static_cast<std::size_t>(i)] = fn(times[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(oscnet_trajectory_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return traj;
}

Trajectory evaluate_trajectory_serial(const StateFn& fn, std::span<const double> times,
                                      Solver solver, std::uint64_t graph_fingerprint) {
  check_times(times);
  Trajectory traj = empty_trajectory(times, solver, graph_fingerprint);
  for (std::size_t i = 0; i < times.size(); ++i) traj.samples[i] = fn(times[i]);
  return traj;
}

Trajectory galilean_shift(const Trajectory& traj, std::size_t ref_node) {
  const std::size_t n = traj.node_count();
  if (ref_node >= n) {
    throw ValidationError("shift reference node " + std::to_string(ref_node) +
                          " is outside [0, " + std::to_string(n) + ")");
  }
  auto origin = std::find(traj.times.begin(), traj.times.end(), 0.0);
  if (origin == traj.times.end()) {
    throw ValidationError("galilean shift needs a sample at t = 0");
  }
  const StateSample& initial =
      traj.samples[static_cast<std::size_t>(origin - traj.times.begin())];
  const double v_ref = initial.velocity(static_cast<Eigen::Index>(ref_node));

  Trajectory shifted = traj;
  for (StateSample& s : shifted.samples) {
    s.displacement.array() -= v_ref * s.t;
    s.velocity.array() -= v_ref;
  }
  return shifted;
}

}  // namespace oscnet
