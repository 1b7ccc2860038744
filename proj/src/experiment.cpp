#include "oscnet/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "oscnet/error.hpp"
#include "oscnet/spectral.hpp"

namespace oscnet {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "path_nodes", "path_weight", "edge_list", "directed", "impulses", "displacements",
      "solver",     "zero_mode",   "t_max",     "dt_out",   "shift_ref", "zero_tol",
      "output",     "format"};
  return keys;
}

double get_real(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ValidationError("config key '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError("config key '" + key + "' must be finite");
  return x;
}

std::size_t get_index(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) {
    throw ValidationError("config key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string get_string(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_string()) throw ValidationError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<NodeValue> get_node_values(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_array()) throw ValidationError("config key '" + key + "' must be a list of [node, value]");
  std::vector<NodeValue> out;
  for (const json& item : v) {
    if (!item.is_array() || item.size() != 2 || !item[1].is_number()) {
      throw ValidationError("config key '" + key + "' entries must be [node, value] pairs");
    }
    NodeValue nv{get_index(item[0], key), item[1].get<double>()};
    if (!std::isfinite(nv.value)) throw ValidationError("config key '" + key + "' has a non-finite value");
    out.push_back(nv);
  }
  return out;
}

void check_node_values(const std::vector<NodeValue>& values, std::size_t n, const char* key) {
  std::set<std::size_t> seen;
  for (const NodeValue& nv : values) {
    if (nv.node >= n) {
      throw ValidationError(std::string("config key '") + key + "': node " +
                            std::to_string(nv.node) + " is out of range for " +
                            std::to_string(n) + " nodes");
    }
    if (!seen.insert(nv.node).second) {
      throw ValidationError(std::string("config key '") + key + "': node " +
                            std::to_string(nv.node) + " listed twice");
    }
  }
}

std::string format_value(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json node_values_to_json(const std::vector<NodeValue>& values) {
  json arr = json::array();
  for (const NodeValue& nv : values) arr.push_back(json::array({nv.node, nv.value}));
  return arr;
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  if (const auto* p = std::get_if<PathSource>(&cfg.graph_source)) {
    j["path_nodes"] = p->nodes;
    j["path_weight"] = p->weight;
  } else {
    const auto& e = std::get<EdgeListSource>(cfg.graph_source);
    j["edge_list"] = e.file.generic_string();
    j["directed"] = e.directed;
  }
  j["impulses"] = node_values_to_json(cfg.impulses);
  j["displacements"] = node_values_to_json(cfg.displacements);
  j["solver"] = std::string(to_string(cfg.solver));
  j["zero_mode"] = std::string(to_string(cfg.zero_mode));
  j["t_max"] = cfg.t_max;
  j["dt_out"] = cfg.dt_out;
  j["shift_ref"] = cfg.shift_ref ? json(*cfg.shift_ref) : json(nullptr);
  j["zero_tol"] = cfg.zero_tol ? json(*cfg.zero_tol) : json(nullptr);
  j["format"] = cfg.format == OutputFormat::Json ? "json" : "csv";
  return j;
}

}  // namespace

std::string_view to_string(ZeroMode z) {
  return z == ZeroMode::Drift ? "drift" : "deleted";
}

ZeroMode zero_mode_from_string(std::string_view name) {
  if (name == "deleted") return ZeroMode::Deleted;
  if (name == "drift") return ZeroMode::Drift;
  throw ValidationError("unknown zero_mode '" + std::string(name) +
                        "' (expected deleted or drift)");
}

ExperimentConfig parse_config(std::string_view document, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!known_keys().contains(key)) throw ValidationError("unknown config key '" + key + "'");
  }

  ExperimentConfig cfg;
  const bool has_path = doc.contains("path_nodes");
  const bool has_file = doc.contains("edge_list");
  if (has_path == has_file) {
    throw ValidationError(
        "config needs exactly one graph source: 'path_nodes' or 'edge_list' (graph_source required)");
  }
  if (has_path) {
    if (doc.contains("directed")) throw ValidationError("config key 'directed' requires 'edge_list'");
    PathSource p;
    p.nodes = get_index(doc.at("path_nodes"), "path_nodes");
    if (doc.contains("path_weight")) p.weight = get_real(doc, "path_weight");
    if (p.nodes < 2) throw ValidationError("config key 'path_nodes' must be at least 2");
    if (!(p.weight > 0.0)) throw ValidationError("config key 'path_weight' must be positive");
    cfg.graph_source = p;
  } else {
    if (doc.contains("path_weight")) throw ValidationError("config key 'path_weight' requires 'path_nodes'");
    EdgeListSource e;
    e.file = get_string(doc, "edge_list");
    if (e.file.is_relative() && !base_dir.empty()) e.file = base_dir / e.file;
    if (doc.contains("directed")) {
      if (!doc.at("directed").is_boolean()) throw ValidationError("config key 'directed' must be a boolean");
      e.directed = doc.at("directed").get<bool>();
    }
    cfg.graph_source = e;
  }

  if (doc.contains("impulses")) cfg.impulses = get_node_values(doc, "impulses");
  if (doc.contains("displacements")) cfg.displacements = get_node_values(doc, "displacements");
  if (doc.contains("solver")) cfg.solver = solver_from_string(get_string(doc, "solver"));
  if (doc.contains("zero_mode")) cfg.zero_mode = zero_mode_from_string(get_string(doc, "zero_mode"));
  if (doc.contains("t_max")) cfg.t_max = get_real(doc, "t_max");
  if (doc.contains("dt_out")) cfg.dt_out = get_real(doc, "dt_out");
  if (doc.contains("shift_ref") && !doc.at("shift_ref").is_null()) {
    cfg.shift_ref = get_index(doc.at("shift_ref"), "shift_ref");
  }
  if (doc.contains("zero_tol") && !doc.at("zero_tol").is_null()) {
    cfg.zero_tol = get_real(doc, "zero_tol");
  }
  if (doc.contains("output")) cfg.output_path = get_string(doc, "output");
  if (doc.contains("format")) {
    const std::string f = get_string(doc, "format");
    if (f == "csv") {
      cfg.format = OutputFormat::Csv;
    } else if (f == "json") {
      cfg.format = OutputFormat::Json;
    } else {
      throw ValidationError("config key 'format' must be csv or json");
    }
  }

  if (const auto* p = std::get_if<PathSource>(&cfg.graph_source)) {
    validate(cfg, p->nodes);
  } else {
    validate(cfg, std::numeric_limits<std::size_t>::max());
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

void validate(const ExperimentConfig& cfg, std::size_t node_count) {
  if (!(cfg.t_max > 0.0) || !std::isfinite(cfg.t_max)) {
    throw ValidationError("config key 't_max' must be positive");
  }
  if (!(cfg.dt_out > 0.0) || !std::isfinite(cfg.dt_out)) {
    throw ValidationError("config key 'dt_out' must be positive");
  }
  if (cfg.dt_out > cfg.t_max) throw ValidationError("config key 'dt_out' must not exceed 't_max'");
  if (cfg.zero_tol && !(*cfg.zero_tol >= 0.0)) {
    throw ValidationError("config key 'zero_tol' must be nonnegative");
  }
  check_node_values(cfg.impulses, node_count, "impulses");
  check_node_values(cfg.displacements, node_count, "displacements");
  if (cfg.shift_ref && *cfg.shift_ref >= node_count) {
    throw ValidationError("config key 'shift_ref': node " + std::to_string(*cfg.shift_ref) +
                          " is out of range for " + std::to_string(node_count) + " nodes");
  }
}

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(); }

Graph build_graph(const ExperimentConfig& cfg) {
  if (const auto* p = std::get_if<PathSource>(&cfg.graph_source)) {
    return path_graph(p->nodes, p->weight);
  }
  const auto& e = std::get<EdgeListSource>(cfg.graph_source);
  return load_edge_list_file(e.file, e.directed);
}

DualState build_initial_state(const ExperimentConfig& cfg, std::size_t node_count) {
  const auto n = static_cast<Eigen::Index>(node_count);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (const NodeValue& nv : cfg.displacements) a(static_cast<Eigen::Index>(nv.node)) = nv.value;
  for (const NodeValue& nv : cfg.impulses) b(static_cast<Eigen::Index>(nv.node)) = nv.value;
  return make_dual_state(a, b);
}

Trajectory run_experiment(const ExperimentConfig& cfg) {
  const Graph g = build_graph(cfg);
  validate(cfg, g.size());
  const GraphMatrices m = build_matrices(g);
  const DualState s = build_initial_state(cfg, g.size());
  const std::vector<double> times = make_time_grid(cfg.t_max, cfg.dt_out);

  StateFn fn;
  if (cfg.solver == Solver::Oracle) {
    fn = [h = build_hamiltonian(m), s](double t) { return oracle_state(h, s, t); };
  } else {
    const SpectralDecomposition d = decompose(m, cfg.zero_tol);
    ModalEvaluator eval = cfg.solver == Solver::Boson ? ModalEvaluator::boson(d, s)
                                                      : ModalEvaluator::fermion(d, m, s, cfg.zero_mode);
    fn = [eval = std::move(eval)](double t) { return eval(t); };
  }

  Trajectory traj = evaluate_trajectory(fn, times, cfg.solver, g.fingerprint());
  if (cfg.shift_ref) traj = galilean_shift(traj, *cfg.shift_ref);
  return traj;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,node,displacement,velocity\n";
  for (const StateSample& s : traj.samples) {
    const std::string t = format_value(s.t);
    for (Eigen::Index i = 0; i < s.displacement.size(); ++i) {
      out << t << ',' << i << ',' << format_value(s.displacement(i)) << ','
          << format_value(s.velocity(i)) << '\n';
    }
  }
}

void write_json(const Trajectory& traj, const ExperimentConfig& cfg, std::ostream& out) {
  json j;
  j["times"] = traj.times;
  json disp = json::array();
  json vel = json::array();
  for (const StateSample& s : traj.samples) {
    disp.push_back(std::vector<double>(s.displacement.data(), s.displacement.data() + s.displacement.size()));
    vel.push_back(std::vector<double>(s.velocity.data(), s.velocity.data() + s.velocity.size()));
  }
  j["displacement"] = std::move(disp);
  j["velocity"] = std::move(vel);

  char fp[17];
  std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(traj.graph_fingerprint));
  j["meta"] = {{"solver", std::string(to_string(traj.solver))},
               {"n", traj.node_count()},
               {"graph_fingerprint", fp},
               {"max_imag", traj.max_imag()},
               {"config", config_json(cfg)}};
  out << j.dump(1) << '\n';
}

void emit(const Trajectory& traj, const ExperimentConfig& cfg) {
  if (traj.samples.empty()) throw ValidationError("cannot emit an empty trajectory");
  auto write = [&](std::ostream& out) {
    if (cfg.format == OutputFormat::Json) {
      write_json(traj, cfg, out);
    } else {
      write_csv(traj, out);
    }
  };
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output '" + cfg.output_path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("failed writing output '" + cfg.output_path + "'");
}

}  // namespace oscnet
