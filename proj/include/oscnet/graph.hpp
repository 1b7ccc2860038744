#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace oscnet {

// Nodes are 0-based everywhere: a graph with n nodes uses indices 0..n-1.

struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

/// Weighted graph, immutable after construction.
///
/// Undirected graphs store each link once; the matrix builder expands it
/// into both (src,dst) and (dst,src). Construction rejects self-loops,
/// non-positive or non-finite weights, out-of-range indices and duplicate
/// links (for undirected graphs (i,j) and (j,i) are the same link).
class Graph {
 public:
  Graph(std::size_t n, std::vector<Edge> edges, bool directed);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool directed() const noexcept { return directed_; }

  /// FNV-1a hash over (n, directed, edges); stable across runs and platforms
  /// with IEEE doubles.
  std::uint64_t fingerprint() const noexcept;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  bool directed_;
};

/// Parses "src dst weight" lines. '#' comment lines and blank lines are
/// skipped; n is one more than the largest index seen.
Graph load_edge_list(std::string_view text, bool directed);
Graph load_edge_list_file(const std::filesystem::path& path, bool directed);

/// Undirected chain 0-1-...-(n-1) with uniform weights.
Graph path_graph(std::size_t n, double weight = 1.0);

/// The dense matrix family of one graph.
struct GraphMatrices {
  Eigen::MatrixXd adjacency;        // A
  Eigen::MatrixXd degree;           // D, diagonal
  Eigen::MatrixXd laplacian;        // L = D - A
  Eigen::MatrixXd semi_normalized;  // H = D^{-1/2} L
  Eigen::MatrixXd normalized;       // N = D^{-1/2} L D^{-1/2}

  Eigen::VectorXd degrees;       // d_i
  Eigen::VectorXd sqrt_degrees;  // sqrt(d_i)

  std::size_t size() const noexcept { return static_cast<std::size_t>(degrees.size()); }
  Eigen::MatrixXd sqrt_degree() const { return sqrt_degrees.asDiagonal(); }
  Eigen::MatrixXd inv_sqrt_degree() const { return sqrt_degrees.cwiseInverse().asDiagonal(); }
};

/// Throws DegreeError naming the first node with d_i = 0. For directed
/// graphs d_i is the out-weight sum.
GraphMatrices build_matrices(const Graph& g);

}  // namespace oscnet
