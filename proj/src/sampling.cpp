#include "treegibbs/sampling.hpp"

#include <cmath>

#include "treegibbs/errors.hpp"

namespace treegibbs {

namespace {

void normalize(RadialDensity& f) {
  double m = f.mean();
  for (double& v : f.values) v /= m;
}

void multiply(RadialDensity& acc, const RadialDensity& f) {
  for (size_t i = 0; i < acc.values.size(); ++i) acc.values[i] *= f.values[i];
}

RadialDensity convolve_with_kernel(const RadialDensity& f, double J) {
  auto coeffs = f.table->to_coeffs(f.values);
  auto conv = convolve_coeffs(*f.table, coeffs, kernel_coeffs(*f.table, J));
  RadialDensity out{f.table, f.table->from_coeffs(conv)};
  normalize(out);
  return out;
}

}  // namespace

RadialDensity sample_positive_cone(std::mt19937& rng,
                                   std::shared_ptr<const SpectralTable> table, double J_max) {
  std::uniform_real_distribution<double> J_dist(0.2, J_max);
  std::uniform_int_distribution<int> factors_dist(1, 3), convs_dist(0, 2);
  int factors = factors_dist(rng), convs = convs_dist(rng);
  RadialDensity f = radial_kernel(table, J_dist(rng));
  for (int i = 1; i < factors; ++i) {
    multiply(f, radial_kernel(table, J_dist(rng)));
    normalize(f);
  }
  for (int i = 0; i < convs; ++i) f = convolve_with_kernel(f, J_dist(rng));
  return f;
}

RadialDensity sample_positive_cone_small(std::mt19937& rng,
                                         std::shared_ptr<const SpectralTable> table,
                                         double target, double J_max) {
  if (!(target > 0.0)) throw input_error("sample_positive_cone_small: target must be positive");
  RadialDensity f = sample_positive_cone(rng, table, J_max);
  for (int round = 0; round < 64; ++round) {
    if (a_dist(f.table->to_coeffs(f.values)) <= target) return f;
    f = convolve_with_kernel(f, 0.3);  // each pass contracts the distance by rho(0.3)
  }
  throw numerical_error("sample_positive_cone_small: contraction did not reach the target");
}

std::vector<double> sample_signed_coeffs(std::mt19937& rng, const SpectralTable& table,
                                         int max_mode, double amp) {
  std::uniform_real_distribution<double> a(-amp, amp);
  std::vector<double> coeffs(table.modes() + 1, 0.0);
  coeffs[0] = 1.0;
  for (int n = 1; n <= std::min(max_mode, table.modes()); ++n) coeffs[n] = a(rng);
  return coeffs;
}

RadialDensity sample_positive_density(std::mt19937& rng,
                                      std::shared_ptr<const SpectralTable> table) {
  std::uniform_real_distribution<double> a(-0.5, 0.5);
  int degree = 4;
  std::vector<double> c(degree + 1);
  for (double& v : c) v = a(rng);
  RadialDensity f;
  f.values.resize(table->grid_nodes());
  for (int i = 0; i < table->grid_nodes(); ++i) {
    double r = table->rule().nodes[i], acc = 0.0, p = 1.0;
    for (int n = 0; n <= degree; ++n) {
      acc += c[n] * p;
      p *= r;
    }
    f.values[i] = std::exp(acc);
  }
  f.table = std::move(table);
  normalize(f);
  return f;
}

PottsDensity sample_potts_density(std::mt19937& rng, int q) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  PottsDensity f{q, std::vector<double>(q)};
  for (double& v : f.values) v = u(rng);
  double m = f.mean();
  for (double& v : f.values) v /= m;
  return f;
}

ExplicitTree sample_tree(std::mt19937& rng, int min_vertices, int max_vertices) {
  if (min_vertices < 2 || max_vertices < min_vertices)
    throw input_error("sample_tree: need 2 <= min_vertices <= max_vertices");
  std::uniform_int_distribution<int> size_dist(min_vertices, max_vertices);
  int n = size_dist(rng);
  std::vector<std::vector<int>> children(n);
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent_dist(0, v - 1);
    children[parent_dist(rng)].push_back(v);
  }
  return explicit_tree_from_children(std::move(children));
}

Strengths sample_strengths(std::mt19937& rng, const ExplicitTree& tree, double J_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Strengths s;
  s.is_constant = false;
  for (int v = 1; v < tree.vertex_count(); ++v)
    s.per_edge[{tree.parent[v], v}] = J_max * (1.0 - u(rng));  // lands in (0, J_max]
  return s;
}

}  // namespace treegibbs
