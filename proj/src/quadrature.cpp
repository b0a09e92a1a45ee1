// SPDX-License-Identifier: Apache-2.0
#include "secqos/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <Eigen/Eigenvalues>

#include "secqos/errors.hpp"

namespace secqos {

namespace {

QuadratureRule build_rule(int n) {
  // Laguerre recurrence: diagonal 2k+1, off-diagonal k. mu_0 = 1.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 0; k < n; ++k)
    diag[k] = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k)
    sub[k - 1] = static_cast<double>(k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw DomainError("Gauss-Laguerre eigen decomposition failed for n=" + std::to_string(n));

  QuadratureRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

} // namespace

const QuadratureRule &gauss_laguerre_rule(int n) {
  if (n < 1)
    throw ParameterError("quadrature order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto &slot = cache[n];
  if (!slot)
    slot = std::make_unique<QuadratureRule>(build_rule(n));
  return *slot;
}

} // namespace secqos
