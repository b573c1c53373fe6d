#include "treegibbs/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "treegibbs/errors.hpp"

namespace treegibbs {

double jacobi_weight_mass(double alpha) {
  return std::sqrt(M_PI) * std::exp(std::lgamma(alpha + 1.0) - std::lgamma(alpha + 1.5));
}

namespace {

// Chebyshev first kind, the alpha = -1/2 rule in closed form.
QuadratureRule chebyshev_rule(int n) {
  QuadratureRule rule;
  rule.alpha = -0.5;
  rule.total_mass = M_PI;
  rule.nodes.resize(n);
  rule.weights.assign(n, 1.0 / n);
  for (int i = 0; i < n; ++i) {
    // ascending order: node i = cos((2(n-i)-1)pi/(2n))
    rule.nodes[i] = std::cos((2.0 * (n - i) - 1.0) * M_PI / (2.0 * n));
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_jacobi(double alpha, int n) {
  if (n < 1) throw input_error("gauss_jacobi: need at least one node");
  if (alpha <= -1.0) throw input_error("gauss_jacobi: weight exponent must exceed -1");
  if (alpha == -0.5) return chebyshev_rule(n);

  // Golub-Welsch on the symmetric Jacobi matrix.  Recurrence coefficients for
  // the monic polynomials orthogonal w.r.t. (1-x^2)^alpha: diagonal is zero,
  // beta_1 = 1/(2 alpha + 3), beta_k = k(k+2 alpha)/((2k+2 alpha+1)(2k+2 alpha-1)).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) {
    double beta;
    if (k == 1)
      beta = 1.0 / (2.0 * alpha + 3.0);
    else
      beta = k * (k + 2.0 * alpha) / ((2.0 * k + 2.0 * alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0));
    sub[k - 1] = std::sqrt(beta);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw numerical_error("gauss_jacobi: tridiagonal eigensolve failed");

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.total_mass = jacobi_weight_mass(alpha);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()[i];
    double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = v0 * v0;  // already normalized: weights sum to 1
  }
  // enforce exact symmetry of the rule; eigensolver noise is ~1e-16 but the
  // recursion engine relies on sum(w) == 1 to more than that
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  for (double& w : rule.weights) w /= wsum;
  return rule;
}

}  // namespace treegibbs
