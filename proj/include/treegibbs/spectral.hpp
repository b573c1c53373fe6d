#pragma once

#include <memory>
#include <vector>

#include "treegibbs/quadrature.hpp"

namespace treegibbs {

// psi_n: Jacobi polynomial P_n^{(a,a)} with a = d/2-1, normalized so
// psi_n(1) = 1.  psi_0 = 1, psi_1 = r, |psi_n| <= 1 on [-1,1].  For d = 1
// these are the Chebyshev polynomials cos(n arccos r).
double psi(int d, int n, double r);

// Cached machinery for one (d, modes, grid) combination: quadrature rule,
// psi values at the nodes, and the squared norms gamma_n = avg(psi_n^2)
// computed by the rule itself.
class SpectralTable {
 public:
  SpectralTable(int d, int modes, int grid_nodes);

  int d() const { return d_; }
  int modes() const { return modes_; }
  int grid_nodes() const { return static_cast<int>(rule_.nodes.size()); }
  const QuadratureRule& rule() const { return rule_; }
  double gamma(int n) const { return gammas_[n]; }
  double psi_at_node(int n, int i) const { return psi_[n * grid_nodes() + i]; }

  // a_n = gamma_n^{-1} avg(f psi_n) for n = 0..modes
  std::vector<double> to_coeffs(const std::vector<double>& values) const;
  // f(r_i) = sum_n a_n psi_n(r_i); throws if any value < -1e-9 unless told not to
  std::vector<double> from_coeffs(const std::vector<double>& coeffs, bool check_positive = true) const;
  double eval_coeffs(const std::vector<double>& coeffs, double r) const;

 private:
  int d_;
  int modes_;
  QuadratureRule rule_;
  std::vector<double> psi_;     // (modes+1) x grid_nodes
  std::vector<double> gammas_;  // modes+1
};

// Shared cache; safe for concurrent lookups.
std::shared_ptr<const SpectralTable> spectral_table(int d, int modes, int grid_nodes);

// A density on the sphere S^d that depends only on r = x.northpole, held as
// values at the table's radial quadrature nodes.  avg = sum_i w_i v_i should
// stay at 1.
struct RadialDensity {
  std::shared_ptr<const SpectralTable> table;
  std::vector<double> values;

  double mean() const;
};

RadialDensity radial_uniform(std::shared_ptr<const SpectralTable> table);
// K_{J,northpole} sampled at the nodes, normalized to unit grid mean.
RadialDensity radial_kernel(std::shared_ptr<const SpectralTable> table, double J);
std::vector<double> kernel_coeffs(const SpectralTable& table, double J);

// c_n = gamma_n a_n b_n: spectral form of the sphere convolution.
std::vector<double> convolve_coeffs(const SpectralTable& table, const std::vector<double>& a,
                                    const std::vector<double>& b);

// avg over the sphere of 1_{r >= t} psi_n, n >= 1, in closed form
// (1-t^2)^{a+1} P_{n-1}^{(a+1,a+1)}(t) / (2 n P_n^{(a,a)}(1) s_d).
double indicator_mode_average(int d, int n, double t);

double a_norm(const std::vector<double>& coeffs);           // sum |a_n|
double a_dist(const std::vector<double>& coeffs);           // sum_{n>=1} |a_n|
double L_functional(const SpectralTable& table, const std::vector<double>& coeffs);  // gamma_1 a_1

// Norms of the interpolated density: evaluated at the grid nodes, both
// endpoints, and a theta-uniform refinement mesh.
struct RadialExtrema {
  double min = 0.0;
  double max = 0.0;
};
RadialExtrema radial_extrema(const RadialDensity& f);
double radial_sup_dist(const RadialDensity& f);  // sup |f - 1|
double radial_max_min(const RadialDensity& f);   // max f / min f, requires min > 0

}  // namespace treegibbs
