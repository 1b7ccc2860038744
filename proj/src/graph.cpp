#include "oscnet/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "oscnet/error.hpp"

namespace oscnet {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t value) {
  for (int byte = 0; byte < 8; ++byte) {
    h ^= (value >> (8 * byte)) & 0xffU;
    h *= kFnvPrime;
  }
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges, bool directed)
    : n_(n), edges_(std::move(edges)), directed_(directed) {
  if (n_ == 0) throw ValidationError("graph must have at least one node");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges_) {
    if (e.src >= n_ || e.dst >= n_) {
      throw ValidationError("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                            ") has a node index outside [0, " + std::to_string(n_) + ")");
    }
    if (e.src == e.dst) {
      throw ValidationError("self-loop at node " + std::to_string(e.src));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ValidationError("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                            ") must have a positive finite weight");
    }
    auto key = directed_ ? std::pair{e.src, e.dst}
                         : std::pair{std::min(e.src, e.dst), std::max(e.src, e.dst)};
    if (!seen.insert(key).second) {
      throw ValidationError("duplicate edge (" + std::to_string(e.src) + "," +
                            std::to_string(e.dst) + ")");
    }
  }
}

std::uint64_t Graph::fingerprint() const noexcept {
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, n_);
  fnv_mix(h, directed_ ? 1U : 0U);
  for (const Edge& e : edges_) {
    fnv_mix(h, e.src);
    fnv_mix(h, e.dst);
    fnv_mix(h, std::bit_cast<std::uint64_t>(e.weight));
  }
  return h;
}

Graph load_edge_list(std::string_view text, bool directed) {
  std::vector<Edge> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t max_index = 0;
  std::size_t line_no = 0;

  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 3) {
      throw ParseError(line_no, "expected \"src dst weight\", got " +
                                    std::to_string(tokens.size()) + " fields");
    }
    Edge e;
    if (!parse_number(tokens[0], e.src) || !parse_number(tokens[1], e.dst)) {
      throw ParseError(line_no, "node indices must be non-negative integers");
    }
    if (!parse_number(tokens[2], e.weight)) {
      throw ParseError(line_no, "weight '" + std::string(tokens[2]) + "' is not a number");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ValidationError("line " + std::to_string(line_no) + ": weight must be positive");
    }
    if (e.src == e.dst) {
      throw ValidationError("line " + std::to_string(line_no) + ": self-loop at node " +
                            std::to_string(e.src));
    }
    auto key = directed ? std::pair{e.src, e.dst}
                        : std::pair{std::min(e.src, e.dst), std::max(e.src, e.dst)};
    if (!seen.insert(key).second) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate edge (" +
                            std::to_string(e.src) + "," + std::to_string(e.dst) + ")");
    }
    max_index = std::max({max_index, e.src, e.dst});
    edges.push_back(e);
  }
  if (edges.empty()) throw ValidationError("edge list contains no edges");
  return Graph(max_index + 1, std::move(edges), directed);
}

Graph load_edge_list_file(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open edge list '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_edge_list(buf.str(), directed);
}

Graph path_graph(std::size_t n, double weight) {
  if (n < 2) throw ValidationError("path graph needs at least 2 nodes");
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw ValidationError("path graph weight must be positive");
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, weight});
  return Graph(n, std::move(edges), false);
}

GraphMatrices build_matrices(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  GraphMatrices m;
  m.adjacency = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const auto i = static_cast<Eigen::Index>(e.src);
    const auto j = static_cast<Eigen::Index>(e.dst);
    m.adjacency(i, j) = e.weight;
    if (!g.directed()) m.adjacency(j, i) = e.weight;
  }

  m.degrees = m.adjacency.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(m.degrees(i) > 0.0)) throw DegreeError(static_cast<std::size_t>(i));
  }
  m.sqrt_degrees = m.degrees.cwiseSqrt();
  m.degree = m.degrees.asDiagonal();
  m.laplacian = m.degree - m.adjacency;

  const Eigen::VectorXd inv_sqrt = m.sqrt_degrees.cwiseInverse();
  m.semi_normalized = inv_sqrt.asDiagonal() * m.laplacian;
  m.normalized = m.semi_normalized * inv_sqrt.asDiagonal();
  return m;
}

}  // namespace oscnet
