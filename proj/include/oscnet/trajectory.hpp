#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "oscnet/dynamics.hpp"

namespace oscnet {

enum class Solver { Boson, Fermion, Oracle };

std::string_view to_string(Solver s);
Solver solver_from_string(std::string_view name);

struct Trajectory {
  Solver solver = Solver::Fermion;
  std::vector<double> times;
  std::vector<StateSample> samples;
  std::uint64_t graph_fingerprint = 0;

  std::size_t node_count() const {
    return samples.empty() ? 0 : static_cast<std::size_t>(samples.front().displacement.size());
  }
  double max_imag() const;
};

/// 0, dt, 2 dt, ..., t_max. Samples are k * dt (no accumulation); the last
/// one is exactly t_max, appended if the grid does not land on it.
std::vector<double> make_time_grid(double t_max, double dt);

/// Evaluates fn at every time with an OpenMP parallel loop. Each sample is
/// an independent closed-form evaluation, so the result is bit-identical
/// to evaluate_trajectory_serial for any thread count.
Trajectory evaluate_trajectory(const StateFn& fn, std::span<const double> times, Solver solver,
                               std::uint64_t graph_fingerprint);

/// Reference implementation kept for testing and benchmarking.
Trajectory evaluate_trajectory_serial(const StateFn& fn, std::span<const double> times,
                                      Solver solver, std::uint64_t graph_fingerprint);

/// Uniform frame change so ref_node is initially at rest:
///   displacement_i(t) -= v_ref t,  velocity_i(t) -= v_ref,
/// with v_ref the velocity of ref_node in the t = 0 sample.
Trajectory galilean_shift(const Trajectory& traj, std::size_t ref_node);

}  // namespace oscnet
