#pragma once

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oscnet/graph.hpp"

namespace oscnet {

struct CheckResult {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::size_t k_max = 7;
  double t = 1.0;
  std::uint64_t seed = 1;
};

/// Runs the algebraic identity suite on one graph: spinor relations, both
/// Hamiltonian constructions, the power identities up to k_max, the squared
/// Hamiltonian and its block form, sqrt(L), the closed form against the
/// exp(-iHt) series for a seeded random conjugate state, and wave-equation
/// membership of both solution families.
///
/// Errors from graph construction or the eigendecomposition propagate.
std::vector<CheckResult> run_identity_checks(const Graph& g, const VerifyOptions& opts = {});

/// Prints one "[PASS]/[FAIL] name  error <= tolerance" line per check.
void print_report(const std::vector<CheckResult>& results, std::ostream& out);

/// max|A - B| / max(max|B|, tiny).
template <typename DerivedA, typename DerivedB>
double relative_max_error(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b) {
  if (b.size() == 0) return 0.0;
  const double diff = (a - b).cwiseAbs().maxCoeff();
  return diff / std::max(static_cast<double>(b.cwiseAbs().maxCoeff()),
                         std::numeric_limits<double>::min());
}

}  // namespace oscnet
