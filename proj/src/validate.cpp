#include "treegibbs/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "treegibbs/analysis.hpp"
#include "treegibbs/circle.hpp"
#include "treegibbs/ensemble.hpp"
#include "treegibbs/format.hpp"
#include "treegibbs/recursion.hpp"
#include "treegibbs/sampling.hpp"
#include "treegibbs/special.hpp"
#include "treegibbs/spectral.hpp"
#include "treegibbs/tree.hpp"

namespace treegibbs {

namespace {

CheckResult make(std::string name, double worst, double bound, std::string detail) {
  CheckResult r;
  r.name = std::move(name);
  r.passed = worst <= bound;
  r.worst = worst;
  r.bound = bound;
  r.detail = std::move(detail);
  return r;
}

TreeSpec explicit_spec(ExplicitTree tree, Strengths strengths) {
  TreeSpec spec;
  spec.kind = TreeSpec::Kind::explicit_tree;
  spec.tree = std::move(tree);
  spec.strengths = std::move(strengths);
  return spec;
}

int tree_height(const ExplicitTree& tree) {
  return *std::max_element(tree.depth.begin(), tree.depth.end());
}

// even moment of (1-r^2)^alpha against the normalized weight
double even_moment(double alpha, int k) {
  return std::exp(std::lgamma(k + 0.5) + std::lgamma(alpha + 1.5) - std::lgamma(0.5) -
                  std::lgamma(k + alpha + 1.5));
}

CheckResult quadrature_moments() {
  double worst = 0.0;
  for (int d = 1; d <= 4; ++d) {
    double alpha = 0.5 * d - 1.0;
    QuadratureRule rule = gauss_jacobi(alpha, 64);
    for (int k = 0; k <= 10; ++k) {
      double even = 0.0, odd = 0.0;
      for (size_t i = 0; i < rule.nodes.size(); ++i) {
        double p = std::pow(rule.nodes[i], 2 * k);
        even += rule.weights[i] * p;
        odd += rule.weights[i] * p * rule.nodes[i];
      }
      worst = std::max(worst, std::fabs(even - even_moment(alpha, k)));
      worst = std::max(worst, std::fabs(odd));
    }
  }
  return make("quadrature_moments", worst, 1e-13, "d in 1..4, moments through degree 21");
}

CheckResult gap_closed_forms() {
  const double js[] = {0.1, 0.5, 1.0, 2.0, 5.0};
  double worst = 0.0;
  for (double J : js) {
    worst = std::max(worst, std::fabs(rho_d(2, J) - (1.0 / std::tanh(J) - 1.0 / J)));
    worst = std::max(worst, std::fabs(rho_d(1, J) - bessel_i(1, J) / bessel_i(0, J)));
    worst = std::max(worst, std::fabs(rho_d(3, J) - bessel_i(2, J) / bessel_i(1, J)));
  }
  return make("gap_closed_forms", worst, 1e-10, "rho_d vs Bessel ratios, d in 1..3");
}

CheckResult potts_gap_tanh() {
  const double js[] = {0.1, 0.5, 1.0, 2.0, 5.0};
  double worst = 0.0;
  for (double J : js) worst = std::max(worst, std::fabs(alpha_potts(2, J) - std::tanh(J)));
  return make("potts_gap_is_tanh", worst, 1e-14, "q = 2 gap against tanh");
}

CheckResult bessel_circle_consistency() {
  const double js[] = {0.3, 1.0, 2.0};
  double worst = 0.0;
  for (double J : js) {
    auto b = circle_fourier(circle_kernel(512, J, 0.0));
    double i0 = bessel_i(0, J);
    for (int n = 0; n <= 8; ++n) {
      worst = std::max(worst, std::fabs(b[n].real() - bessel_i(n, J) / i0));
      worst = std::max(worst, std::fabs(b[n].imag()));
    }
  }
  return make("bessel_circle_consistency", worst, 1e-13,
              "kernel transform against the series ratios");
}

CheckResult spectral_orthogonality() {
  double worst = 0.0;
  for (int d = 1; d <= 3; ++d) {
    auto table = spectral_table(d, 16, 128);
    for (int n = 0; n <= 16; ++n) {
      for (int m = 0; m < n; ++m) {
        double acc = 0.0;
        for (int i = 0; i < table->grid_nodes(); ++i)
          acc += table->rule().weights[i] * table->psi_at_node(n, i) * table->psi_at_node(m, i);
        worst = std::max(worst, std::fabs(acc));
      }
      // gamma_n = 1 / (number of degree-n harmonics on S^d)
      double count = d == 1 ? (n == 0 ? 1.0 : 2.0)
                   : d == 2 ? 2.0 * n + 1.0
                            : (n + 1.0) * (n + 1.0);
      worst = std::max(worst, std::fabs(table->gamma(n) - 1.0 / count));
    }
  }
  return make("spectral_orthogonality", worst, 1e-13, "mode products and harmonic counts");
}

CheckResult coefficient_roundtrip(std::mt19937& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 24; ++rep) {
    auto table = spectral_table(1 + rep % 3, 24, 128);
    auto coeffs = sample_signed_coeffs(rng, *table, 24, 0.4);
    auto back = table->to_coeffs(table->from_coeffs(coeffs, false));
    for (size_t n = 0; n < coeffs.size(); ++n)
      worst = std::max(worst, std::fabs(back[n] - coeffs[n]));
  }
  return make("coefficient_roundtrip", worst, 1e-11, "24 signed expansions, d in 1..3");
}

CheckResult indicator_domination() {
  double worst = -1.0;
  for (int d = 1; d <= 3; ++d) {
    for (int k = 0; k < 20; ++k) {
      double t = -0.95 + 1.9 * k / 19.0;
      double first = indicator_mode_average(d, 1, t);
      for (int n = 2; n <= 32; ++n)
        worst = std::max(worst, std::fabs(indicator_mode_average(d, n, t)) - first);
    }
  }
  return make("indicator_domination", worst, 1e-14,
              "threshold coefficients against the first mode, n <= 32");
}

CheckResult potts_oracle(std::mt19937& rng, int instances) {
  const int qs[] = {2, 3, 5};
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    ExplicitTree tree = sample_tree(rng, 2, 8);
    Ensemble ens = potts(qs[std::uniform_int_distribution<int>(0, 2)(rng)]);
    Strengths strengths = sample_strengths(rng, tree, 2.0);
    Truncation trunc = truncate(explicit_spec(tree, strengths), tree_height(tree));
    BoundaryCondition bc;
    if (i % 3 == 0) {
      bc = BoundaryCondition::plus();
    } else if (i % 3 == 1) {
      bc = BoundaryCondition::free_boundary();
    } else {
      std::map<int, int> states;
      std::uniform_int_distribution<int> state(0, ens.q() - 1);
      for (int v : trunc.cutset) states[v] = state(rng);
      bc = BoundaryCondition::custom_potts(std::move(states));
    }
    auto fast = std::get<PottsDensity>(root_marginal(trunc, ens, bc).root);
    auto slow = std::get<PottsDensity>(brute_force_marginal(trunc, ens, bc));
    for (int x = 0; x < ens.q(); ++x)
      worst = std::max(worst, std::fabs(fast.values[x] - slow.values[x]));
  }
  return make("potts_recursion_oracle", worst, 1e-10,
              std::to_string(instances) + " random trees vs direct enumeration");
}

CheckResult rotor_oracle(std::mt19937& rng) {
  std::uniform_real_distribution<double> angle_u(0.0, 2.0 * M_PI);
  double worst = 0.0;
  auto run_case = [&](std::vector<std::vector<int>> children, bool custom) {
    ExplicitTree tree = explicit_tree_from_children(std::move(children));
    Strengths strengths = sample_strengths(rng, tree, 2.0);
    Truncation trunc = truncate(explicit_spec(tree, strengths), tree_height(tree));
    BoundaryCondition bc = BoundaryCondition::plus();
    if (custom) {
      std::map<int, double> angles;
      for (int v : trunc.cutset) angles[v] = angle_u(rng);
      bc = BoundaryCondition::custom_rotor(std::move(angles));
    }
    EngineOptions opt;
    opt.circle_angles = 512;
    auto rep = root_marginal(trunc, rotor(), bc, std::nullopt, opt);
    auto slow = std::get<CircleDensity>(brute_force_marginal(trunc, rotor(), bc, 512));
    if (custom) {
      const auto& fast = std::get<CircleDensity>(rep.root);
      for (int j = 0; j < slow.M; ++j)
        worst = std::max(worst, std::fabs(fast.values[j] - slow.values[j]));
    } else {
      // aligned boundary runs in the radial representation; the circle value
      // at theta is the radial density at r = cos(theta)
      const auto& fast = std::get<RadialDensity>(rep.root);
      auto coeffs = fast.table->to_coeffs(fast.values);
      for (int j = 0; j < slow.M; ++j) {
        double v = fast.table->eval_coeffs(coeffs, std::cos(2.0 * M_PI * j / slow.M));
        worst = std::max(worst, std::fabs(v - slow.values[j]));
      }
    }
  };
  run_case({{1}, {2}, {}}, true);
  run_case({{1, 2, 3}, {}, {}, {}}, true);
  run_case({{1}, {2}, {}}, false);
  run_case({{1, 2}, {3}, {}, {}}, true);
  return make("rotor_recursion_oracle", worst, 1e-6, "4 small trees vs nested sums, 512 angles");
}

CheckResult representation_agreement() {
  Truncation trunc = truncate(binary_tree(1.0), 4);
  auto via_radial = root_marginal(trunc, rotor(), BoundaryCondition::plus());
  std::map<int, double> aligned;
  for (int v : trunc.cutset) aligned[v] = 0.0;
  auto via_circle = root_marginal(trunc, rotor(), BoundaryCondition::custom_rotor(aligned));

  double worst = std::fabs(via_radial.sup_dist - via_circle.sup_dist);
  worst = std::max(worst, std::fabs(via_radial.max_min - via_circle.max_min));
  worst = std::max(worst, std::fabs(via_radial.L_value - via_circle.L_value));
  const auto& f = std::get<RadialDensity>(via_radial.root);
  const auto& g = std::get<CircleDensity>(via_circle.root);
  auto coeffs = f.table->to_coeffs(f.values);
  for (int j = 0; j < g.M; ++j) {
    double v = f.table->eval_coeffs(coeffs, std::cos(2.0 * M_PI * j / g.M));
    worst = std::max(worst, std::fabs(v - g.values[j]));
  }
  return make("representation_agreement", worst, 1e-9,
              "radial vs circle run of the same aligned boundary");
}

CheckResult cone_norm_chain(std::mt19937& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 99; ++rep) {
    auto table = spectral_table(1 + rep % 3, 48, 256);
    RadialDensity f = sample_positive_cone(rng, table);
    auto c = table->to_coeffs(f.values);
    for (double a : c) worst = std::max(worst, -a);
    worst = std::max(worst, std::fabs(a_norm(c) - (1.0 + a_dist(c))));
    double at_pole = table->eval_coeffs(c, 1.0);
    worst = std::max(worst, std::fabs(a_norm(c) - at_pole));
    worst = std::max(worst, std::fabs(radial_extrema(f).max - at_pole));
  }
  return make("cone_norm_chain", worst, 1e-9,
              "99 cone members: coefficient sum = value at the pole = sup");
}

CheckResult norm_submultiplicative(std::mt19937& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    auto table = spectral_table(1 + rep % 3, 48, 256);
    RadialDensity f = sample_positive_cone(rng, table);
    std::vector<double> g_values;
    if (rep % 2 == 0) {
      g_values = sample_positive_cone(rng, table).values;
    } else {
      g_values = table->from_coeffs(sample_signed_coeffs(rng, *table, 16, 0.3), false);
    }
    std::vector<double> h(f.values.size());
    for (size_t i = 0; i < h.size(); ++i) h[i] = f.values[i] * g_values[i];
    double lhs = a_norm(table->to_coeffs(h));
    double rhs = a_norm(table->to_coeffs(f.values)) * a_norm(table->to_coeffs(g_values));
    worst = std::max(worst, lhs - rhs);
  }
  return make("norm_submultiplicative", worst, 1e-11,
              "100 pointwise products, coefficient norms");
}

CheckResult norm_product_equality_on_cone(std::mt19937& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    auto table = spectral_table(1 + rep % 3, 48, 256);
    RadialDensity f = sample_positive_cone(rng, table);
    RadialDensity g = sample_positive_cone(rng, table);
    std::vector<double> h(f.values.size());
    for (size_t i = 0; i < h.size(); ++i) h[i] = f.values[i] * g.values[i];
    double lhs = a_norm(table->to_coeffs(h));
    double rhs = a_norm(table->to_coeffs(f.values)) * a_norm(table->to_coeffs(g.values));
    // relative: transform rounding is amplified by 1/gamma_n at high modes,
    // so the attainable agreement scales with the norm itself
    worst = std::max(worst, std::fabs(lhs - rhs) / rhs);
  }
  return make("norm_product_equality_on_cone", worst, 1e-9,
              "100 cone pairs: the product norm splits exactly (relative)");
}

CheckResult product_expansion(std::mt19937& rng) {
  double worst = 0.0;
  auto table = spectral_table(2, 48, 256);
  for (int k = 2; k <= 4; ++k) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<std::vector<double>> hc;
      std::vector<double> prod(table->grid_nodes(), 1.0);
      double delta = 0.0;
      for (int i = 0; i < k; ++i) {
        RadialDensity h = sample_positive_cone_small(rng, table, 0.05);
        hc.push_back(table->to_coeffs(h.values));
        delta = std::max(delta, a_dist(hc.back()));
        for (int j = 0; j < table->grid_nodes(); ++j) prod[j] *= h.values[j];
      }
      double mean = 0.0;
      for (int j = 0; j < table->grid_nodes(); ++j) mean += table->rule().weights[j] * prod[j];
      for (double& v : prod) v /= mean;
      auto pc = table->to_coeffs(prod);
      std::vector<double> err(pc.size());
      for (size_t n = 0; n < pc.size(); ++n) {
        double linear = n == 0 ? 1.0 : 0.0;
        for (auto& c : hc) linear += n == 0 ? 0.0 : c[n];
        err[n] = pc[n] - linear;
      }
      double bound = 3.0 * std::pow(4.0, k) * delta * delta;
      worst = std::max(worst, a_norm(err) / bound);
    }
  }
  return make("product_expansion", worst, 1.0,
              "k-fold products vs their linearization, quadratic remainder bound");
}

CheckResult kernel_contraction(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    int d = 1 + rep % 3;
    auto table = spectral_table(d, 32, 256);
    double J = 2.0 * (1.0 - u(rng));
    std::vector<double> c = rep % 2 == 0
                                ? table->to_coeffs(sample_positive_cone(rng, table).values)
                                : sample_signed_coeffs(rng, *table, 32, 0.5);
    auto conv = convolve_coeffs(*table, c, kernel_coeffs(*table, J));
    worst = std::max(worst, a_dist(conv) - rho_d(d, J) * a_dist(c));
  }
  return make("kernel_contraction", worst, 1e-12,
              "100 smoothings shrink the coefficient distance by the gap");
}

CheckResult max_min_contraction(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int qs[] = {2, 3, 5};
  double worst = 0.0;
  auto record = [&](double before, double after, double c0) {
    worst = std::max(worst, after - (1.0 + (1.0 - c0) * (before - 1.0)));
    if (before > 1.0 + 1e-9) {
      double one_minus_eps = std::log1p((1.0 - c0) * (before - 1.0)) / std::log(before);
      worst = std::max(worst, std::log(after) - one_minus_eps * std::log(before));
    }
  };
  for (int rep = 0; rep < 50; ++rep) {
    Ensemble ens = potts(qs[rep % 3]);
    double J = 2.0 * (1.0 - u(rng));
    PottsDensity f = sample_potts_density(rng, ens.q());
    double alpha = alpha_potts(ens.q(), J);
    PottsDensity kf = f;
    for (double& v : kf.values) v = alpha * v + (1.0 - alpha);
    record(potts_max_min(f), potts_max_min(kf), kernel_value_potts(ens, J, false));
  }
  for (int rep = 0; rep < 50; ++rep) {
    int d = 1 + rep % 3;
    auto table = spectral_table(d, 32, 256);
    double J = 2.0 * (1.0 - u(rng));
    RadialDensity f = sample_positive_density(rng, table);
    auto conv = convolve_coeffs(*table, table->to_coeffs(f.values), kernel_coeffs(*table, J));
    RadialDensity kf{table, table->from_coeffs(conv)};
    record(radial_max_min(f), radial_max_min(kf), kernel_value_heisenberg(heisenberg(d), J, -1.0));
  }
  return make("max_min_contraction", worst, 1e-9,
              "100 samples: ratio bound through the kernel floor");
}

CheckResult rotor_domination(std::mt19937& rng) {
  std::uniform_real_distribution<double> angle_u(0.0, 2.0 * M_PI);
  Truncation trunc = truncate(binary_tree(1.2), 3);
  double worst = -1.0;
  for (int rep = 0; rep < 20; ++rep) {
    std::map<int, double> angles;
    for (int v : trunc.cutset) angles[v] = angle_u(rng);
    DominationCheck res = rotor_boundary_domination_check(trunc, 1.2, angles);
    worst = std::max(worst, res.sup_custom - res.sup_plus);
  }
  return make("rotor_boundary_domination", worst, 1e-9,
              "20 scattered boundaries vs the aligned one, binary depth 3");
}

CheckResult scalar_recursion(std::mt19937& rng) {
  const int qs[] = {3, 4, 5, 7};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;  // max error over tolerance across the identity classes
  for (int rep = 0; rep < 40; ++rep) {
    int q = qs[rep % 4];
    double p = 1.0 / q + 0.02 + (0.98 - 1.0 / q - 0.02) * u(rng);
    double J = potts_J_from_p(q, p);
    worst = std::max(worst, std::fabs(potts_phi(q, p, 0.0)) / 1e-15);
    double h = 1e-5;
    double fd = (potts_phi(q, p, h) - potts_phi(q, p, -h)) / (2.0 * h);
    worst = std::max(worst, std::fabs(fd - potts_phi_derivative_at_zero(q, p)) / 1e-8);
    worst = std::max(worst,
                     std::fabs(potts_phi_derivative_at_zero(q, p) - alpha_potts(q, J)) / 1e-13);
    double inf = potts_phi_infinity(q, p);
    worst = std::max(worst, std::fabs(inf - 2.0 * J) / 1e-12);
    worst = std::max(worst, std::fabs(potts_phi(q, p, 50.0) - inf) / 1e-12);
    double prev = potts_phi(q, p, -10.0);
    for (double z = -9.5; z <= 10.0; z += 0.5) {
      double cur = potts_phi(q, p, z);
      if (cur <= prev) worst = std::max(worst, 1.0 + prev - cur);
      prev = cur;
    }
    if (auto z = potts_fixed_point(q, p))
      worst = std::max(worst, std::fabs(potts_phi(q, p, *z) - *z / 2.0) / 1e-9);
  }
  return make("scalar_recursion", worst, 1.0,
              "40 couplings: slope, limit, monotonicity, fixed point (error over tolerance)");
}

CheckResult likelihood_consistency() {
  struct Case {
    int q;
    double p;
    int depth;
  };
  const Case cases[] = {{3, 0.75, 5}, {5, 0.6, 4}, {2, 0.8, 6}};
  double worst = 0.0;
  for (const Case& c : cases) {
    TreeSpec spec = binary_tree(potts_J_from_p(c.q, c.p));
    auto scalar = potts_loglikelihood_recursion(spec, c.depth, c.q, c.p);
    auto rep = root_marginal_symmetric(spec, c.depth, potts(c.q), BoundaryCondition::plus());
    double gap = potts_likelihood_gap(std::get<PottsDensity>(rep.root));
    worst = std::max(worst, std::fabs(scalar.g_root - gap));
  }
  return make("likelihood_consistency", worst, 1e-9,
              "scalar log-likelihood recursion vs the density recursion");
}

CheckResult critical_closed_forms() {
  double worst = std::fabs(critical_J(ising(), 2.0) - std::atanh(0.5));
  worst = std::max(worst, std::fabs(critical_J(potts(3), 2.0) - std::log(2.0)));
  double jh = critical_J(heisenberg(2), 2.0);
  worst = std::max(worst, std::fabs(br_times_gap(heisenberg(2), jh, 2.0) - 1.0) / 10.0);
  if (!(br_times_gap(heisenberg(2), jh - 1e-8, 2.0) < 1.0 &&
        br_times_gap(heisenberg(2), jh + 1e-8, 2.0) > 1.0))
    worst = std::max(worst, 1.0);
  return make("critical_closed_forms", worst, 1e-8,
              "binary-tree thresholds against closed forms and the bracket");
}

}  // namespace

bool ValidationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

ValidationReport run_validation(std::uint64_t seed, bool quick) {
  ValidationReport report;
  report.seed = seed;
  report.quick = quick;
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));

  report.checks.push_back(gap_closed_forms());
  report.checks.push_back(potts_gap_tanh());
  report.checks.push_back(potts_oracle(rng, quick ? 20 : 60));
  report.checks.push_back(critical_closed_forms());
  if (quick) return report;

  report.checks.push_back(quadrature_moments());
  report.checks.push_back(bessel_circle_consistency());
  report.checks.push_back(spectral_orthogonality());
  report.checks.push_back(coefficient_roundtrip(rng));
  report.checks.push_back(indicator_domination());
  report.checks.push_back(rotor_oracle(rng));
  report.checks.push_back(representation_agreement());
  report.checks.push_back(cone_norm_chain(rng));
  report.checks.push_back(norm_submultiplicative(rng));
  report.checks.push_back(norm_product_equality_on_cone(rng));
  report.checks.push_back(product_expansion(rng));
  report.checks.push_back(kernel_contraction(rng));
  report.checks.push_back(max_min_contraction(rng));
  report.checks.push_back(rotor_domination(rng));
  report.checks.push_back(scalar_recursion(rng));
  report.checks.push_back(likelihood_consistency());
  return report;
}

std::string validation_json(const ValidationReport& r) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"schema_version\": 1,\n";
  o << "  \"command\": \"validate\",\n";
  o << "  \"seed\": " << r.seed << ",\n";
  o << "  \"mode\": \"" << (r.quick ? "quick" : "full") << "\",\n";
  o << "  \"checks\": [\n";
  for (size_t i = 0; i < r.checks.size(); ++i) {
    const CheckResult& c = r.checks[i];
    o << "    {\"name\": \"" << json_escape(c.name) << "\", \"passed\": "
      << (c.passed ? "true" : "false") << ", \"worst\": " << fmt17(c.worst)
      << ", \"bound\": " << fmt17(c.bound) << ", \"detail\": \"" << json_escape(c.detail)
      << "\"}" << (i + 1 < r.checks.size() ? "," : "") << "\n";
  }
  o << "  ],\n";
  o << "  \"passed\": " << (r.all_passed() ? "true" : "false") << "\n";
  o << "}\n";
  return o.str();
}

std::string validation_text(const ValidationReport& r) {
  std::ostringstream o;
  int failed = 0;
  for (const auto& c : r.checks) {
    o << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  worst=" << fmt17(c.worst)
      << " bound=" << fmt17(c.bound) << "  (" << c.detail << ")\n";
    if (!c.passed) ++failed;
  }
  if (failed == 0)
    o << "validation passed (" << r.checks.size() << " checks)\n";
  else
    o << "validation FAILED (" << failed << " of " << r.checks.size() << " checks)\n";
  return o.str();
}

}  // namespace treegibbs
