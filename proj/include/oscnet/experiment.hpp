#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oscnet/dynamics.hpp"
#include "oscnet/graph.hpp"
#include "oscnet/trajectory.hpp"

namespace oscnet {

struct PathSource {
  std::size_t nodes = 0;
  double weight = 1.0;
};

struct EdgeListSource {
  std::filesystem::path file;
  bool directed = false;
};

struct NodeValue {
  std::size_t node = 0;
  double value = 0.0;
};

enum class OutputFormat { Csv, Json };

/// One run of the impulse experiment.
///
/// JSON keys: path_nodes, path_weight | edge_list, directed; impulses and
/// displacements as [[node, value], ...] (impulse values are b_i, displacement
/// values a_i); solver; zero_mode; t_max; dt_out; shift_ref; zero_tol; output;
/// format. Unknown keys are rejected.
struct ExperimentConfig {
  std::variant<PathSource, EdgeListSource> graph_source;
  std::vector<NodeValue> impulses;
  std::vector<NodeValue> displacements;
  Solver solver = Solver::Fermion;
  ZeroMode zero_mode = ZeroMode::Deleted;
  double t_max = 10.0;
  double dt_out = 0.1;
  std::optional<std::size_t> shift_ref;
  std::optional<double> zero_tol;
  std::string output_path;  // empty or "-" writes to stdout
  OutputFormat format = OutputFormat::Csv;
};

/// Relative edge_list paths are resolved against base_dir.
ExperimentConfig parse_config(std::string_view document,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Re-checks every invariant, including node ranges against the graph.
void validate(const ExperimentConfig& cfg, std::size_t node_count);

/// Canonical JSON echo of the config (sorted keys, defaults filled in).
std::string config_to_json(const ExperimentConfig& cfg);

std::string_view to_string(ZeroMode z);
ZeroMode zero_mode_from_string(std::string_view name);

Graph build_graph(const ExperimentConfig& cfg);
DualState build_initial_state(const ExperimentConfig& cfg, std::size_t node_count);

Trajectory run_experiment(const ExperimentConfig& cfg);

/// Header "t,node,displacement,velocity", one row per (time, node), values
/// printed with 12 significant digits.
void write_csv(const Trajectory& traj, std::ostream& out);
void write_json(const Trajectory& traj, const ExperimentConfig& cfg, std::ostream& out);

/// Writes to cfg.output_path (stdout when empty or "-") in cfg.format.
void emit(const Trajectory& traj, const ExperimentConfig& cfg);

}  // namespace oscnet
