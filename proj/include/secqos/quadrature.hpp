// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace secqos {

/// Nodes and weights for integrals of the form int_0^inf f(x) e^{-x} dx.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  template <typename F> double integrate(F &&f) const {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i)
      sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// n-point Gauss-Laguerre rule (Golub-Welsch on the Jacobi matrix of the
/// Laguerre recurrence). Rules are built once per n and cached; the returned
/// reference stays valid for the lifetime of the process.
const QuadratureRule &gauss_laguerre_rule(int n);

} // namespace secqos
