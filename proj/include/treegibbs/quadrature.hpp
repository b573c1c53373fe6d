#pragma once

#include <vector>

namespace treegibbs {

// Gauss-Jacobi rule on [-1,1] for the weight (1-r^2)^alpha, alpha > -1.
// weights are normalized to sum to 1, so sum_i w_i f(r_i) approximates the
// *probability* average of f under the radial marginal of the sphere S^d
// when alpha = d/2 - 1.  total_mass keeps the raw integral of the weight
// (s_d in the d-sphere case) for the rare place that needs it.
struct QuadratureRule {
  double alpha = 0.0;
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // sum to 1
  double total_mass = 0.0;      // integral of (1-r^2)^alpha over [-1,1]
};

QuadratureRule gauss_jacobi(double alpha, int n);

// integral_{-1}^{1} (1-r^2)^alpha dr = sqrt(pi) Gamma(alpha+1) / Gamma(alpha+3/2)
double jacobi_weight_mass(double alpha);

}  // namespace treegibbs
