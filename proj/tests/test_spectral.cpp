#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oscnet/error.hpp"
#include "oscnet/spectral.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

using namespace oscnet;
using oscnet::support::max_abs_diff;

namespace {

// Disjoint union of 2..4 connected pieces, each with at least two nodes.
Graph random_disconnected_graph(std::mt19937_64& rng, std::size_t& pieces) {
  std::uniform_int_distribution<std::size_t> piece_count(2, 4);
  std::uniform_int_distribution<std::size_t> piece_size(2, 4);
  pieces = piece_count(rng);
  std::vector<Edge> edges;
  std::size_t offset = 0;
  for (std::size_t p = 0; p < pieces; ++p) {
    const Graph piece = support::random_connected_graph(rng, piece_size(rng));
    for (const Edge& e : piece.edges()) edges.push_back({e.src + offset, e.dst + offset, e.weight});
    offset += piece.size();
  }
  std::vector<std::size_t> perm(offset);
  for (std::size_t i = 0; i < offset; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (Edge& e : edges) {
    e.src = perm[e.src];
    e.dst = perm[e.dst];
  }
  return Graph(offset, std::move(edges), false);
}

}  // namespace

TEST(Decompose, PathTwo) {
  const auto d = decompose(build_matrices(path_graph(2)));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.lambdas(0), 0.0);
  EXPECT_NEAR(d.lambdas(1), 2.0, 1e-14);
  EXPECT_TRUE(d.symmetric);
  EXPECT_EQ(d.zero_mode_count(), 1u);
}

TEST(Decompose, PathThreeAgainstCharacteristicPolynomial) {
  const GraphMatrices m = build_matrices(path_graph(3));
  const auto roots = support::char_poly_roots(m.laplacian, -0.5, 3.5);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_NEAR(roots[0], 0.0, 1e-12);
  EXPECT_NEAR(roots[1], 1.0, 1e-12);
  EXPECT_NEAR(roots[2], 3.0, 1e-12);

  const auto d = decompose(m);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(d.lambdas(k), roots[static_cast<std::size_t>(k)], 1e-12);
}

TEST(Decompose, RandomSmallGraphsAgainstCharacteristicPolynomial) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const GraphMatrices m = build_matrices(support::random_connected_graph_between(rng, 3, 5));
    const double hi = 2.0 * m.degrees.maxCoeff() + 0.5;  // Gershgorin bound
    const auto roots = support::char_poly_roots(m.laplacian, -0.5, hi);
    const auto d = decompose(m);
    ASSERT_EQ(roots.size(), d.size()) << "trial " << trial;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      EXPECT_NEAR(d.lambdas(static_cast<Eigen::Index>(k)), roots[k], 1e-9);
    }
  }
}

TEST(Decompose, MhoFromLambdas) {
  const auto d = decompose(build_matrices(path_graph(3)));
  EXPECT_EQ(d.mho(0), 0.0);
  EXPECT_NEAR(d.mho(1), 1.0, 1e-14);
  EXPECT_NEAR(d.mho(2), 1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_EQ(d.omegas(0), 0.0);
}

TEST(SqrtLaplacian, PathTwo) {
  const auto d = decompose(build_matrices(path_graph(2)));
  const double h = std::sqrt(2.0) / 2.0;
  Eigen::Matrix2d expected;
  expected << h, -h, -h, h;
  EXPECT_LE(max_abs_diff(sqrt_laplacian(d), expected), 1e-14);
}

TEST(SqrtLaplacian, AnnihilatesUniformVector) {
  const auto d = decompose(build_matrices(path_graph(7, 1.3)));
  EXPECT_LE((sqrt_laplacian(d) * Eigen::VectorXd::Ones(7)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(SqrtLaplacian, PathSixIsDenseAndSquaresToL) {
  const GraphMatrices m = build_matrices(path_graph(6));
  const Eigen::MatrixXd S = sqrt_laplacian(decompose(m));
  EXPECT_LE(max_abs_diff(S * S, m.laplacian) / m.laplacian.cwiseAbs().maxCoeff(), 1e-10);
  for (Eigen::Index i = 0; i < 6; ++i) {
    for (Eigen::Index j = 0; j < 6; ++j) EXPECT_GT(std::abs(S(i, j)), 1e-6) << i << "," << j;
  }
}

TEST(DecomposeProperty, InvariantsOnRandomConnectedGraphs) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const GraphMatrices m = build_matrices(support::random_connected_graph_between(rng, 2, 12));
    const auto d = decompose(m);
    const auto n = static_cast<Eigen::Index>(d.size());
    const double scale = std::max(1.0, m.laplacian.cwiseAbs().maxCoeff());

    EXPECT_EQ(d.zero_mode_count(), 1u);
    EXPECT_EQ(d.lambdas(0), 0.0);
    for (Eigen::Index k = 1; k < n; ++k) EXPECT_GE(d.lambdas(k), d.lambdas(k - 1));

    Eigen::MatrixXd recon = d.P * d.lambdas.asDiagonal() * d.P_inv;
    EXPECT_LE(max_abs_diff(recon, m.laplacian), 1e-10 * scale);
    EXPECT_LE(max_abs_diff(d.P * d.P_inv, Eigen::MatrixXd::Identity(n, n)), 1e-10);

    const Eigen::MatrixXd S = sqrt_laplacian(d);
    EXPECT_LE(max_abs_diff(S * S, m.laplacian) / m.laplacian.cwiseAbs().maxCoeff(), 1e-10);

    for (Eigen::Index k = 0; k < n; ++k) {
      const double prod = d.mho(k) * d.omegas(k);
      EXPECT_GE(d.omegas(k), 0.0);
      if (d.is_zero_mode(k)) {
        EXPECT_EQ(prod, 0.0);
      } else {
        EXPECT_NEAR(prod, 1.0, 1e-15);
      }
    }

    // P mho Omega P^{-1} removes exactly the uniform component.
    const Eigen::MatrixXd proj = d.mode_matrix(d.mho.cwiseProduct(d.omegas));
    const Eigen::MatrixXd expected =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    EXPECT_LE(max_abs_diff(proj, expected), 1e-10);
  }
}

TEST(DecomposeProperty, ZeroModesCountComponents) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t pieces = 0;
    const Graph g = random_disconnected_graph(rng, pieces);
    ASSERT_EQ(support::component_count(g), pieces);
    const auto d = decompose(build_matrices(g));
    EXPECT_EQ(d.zero_mode_count(), pieces) << "trial " << trial;
    const Eigen::MatrixXd S = sqrt_laplacian(d);
    const GraphMatrices m = build_matrices(g);
    EXPECT_LE(max_abs_diff(S * S, m.laplacian) / m.laplacian.cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Decompose, DirectedAsymmetricTreeHasRealSpectrum) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = support::random_directed_tree(rng, 2 + static_cast<std::size_t>(trial % 7));
    const GraphMatrices m = build_matrices(g);
    const auto d = decompose(m);
    EXPECT_FALSE(d.symmetric);
    EXPECT_EQ(d.zero_mode_count(), 1u);

    // On a tree the adjacency is diagonally similar to the one with weights
    // sqrt(w_uv w_vu), and D commutes with that similarity.
    Eigen::MatrixXd sym = m.degree;
    for (Eigen::Index i = 0; i < sym.rows(); ++i) {
      for (Eigen::Index j = 0; j < sym.cols(); ++j) {
        if (i != j) sym(i, j) = -std::sqrt(m.adjacency(i, j) * m.adjacency(j, i));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    Eigen::VectorXd expected = es.eigenvalues();
    expected(0) = 0.0;
    EXPECT_LE(max_abs_diff(d.lambdas, expected), 1e-9);

    const Eigen::Index n = m.laplacian.rows();
    EXPECT_LE(max_abs_diff(d.P * d.P_inv, Eigen::MatrixXd::Identity(n, n)), 1e-10);
    const Eigen::MatrixXd S = sqrt_laplacian(d);
    EXPECT_LE(max_abs_diff(S * S, m.laplacian) / m.laplacian.cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Decompose, DirectedCycleRejected) {
  const Graph g = load_edge_list("0 1 1\n1 2 1\n2 0 1", true);
  EXPECT_THROW(decompose(build_matrices(g)), SpectrumError);
}

TEST(Decompose, ZeroTolOverride) {
  const GraphMatrices m = build_matrices(path_graph(3));
  const auto d = decompose(m, 1e-6);
  EXPECT_EQ(d.zero_tol, 1e-6);
  EXPECT_EQ(d.zero_mode_count(), 1u);
  // Snapping a genuine eigenvalue to zero breaks the reconstruction check.
  EXPECT_THROW(decompose(m, 1.5), NumericalError);
  EXPECT_THROW(decompose(m, -1.0), ValidationError);
}

TEST(Decompose, DefaultZeroTolScalesWithSpectrum) {
  const auto d = decompose(build_matrices(path_graph(4, 100.0)));
  EXPECT_DOUBLE_EQ(d.zero_tol, 1e-9 * d.lambdas(3));
  const auto small = decompose(build_matrices(path_graph(4, 1e-3)));
  EXPECT_DOUBLE_EQ(small.zero_tol, 1e-9);
}
