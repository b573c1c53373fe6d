#include <cmath>
#include <map>
#include <random>
#include <variant>

#include "doctest.h"
#include "treegibbs/ensemble.hpp"
#include "treegibbs/errors.hpp"
#include "treegibbs/recursion.hpp"
#include "treegibbs/sampling.hpp"
#include "treegibbs/tree.hpp"

using namespace treegibbs;

namespace {

double max_state_diff(const Density& a, const Density& b) {
  if (std::holds_alternative<PottsDensity>(a)) {
    const auto& fa = std::get<PottsDensity>(a);
    const auto& fb = std::get<PottsDensity>(b);
    REQUIRE(fa.values.size() == fb.values.size());
    double worst = 0.0;
    for (size_t i = 0; i < fa.values.size(); ++i)
      worst = std::max(worst, std::fabs(fa.values[i] - fb.values[i]));
    return worst;
  }
  const auto& fa = std::get<CircleDensity>(a);
  const auto& fb = std::get<CircleDensity>(b);
  REQUIRE(fa.values.size() == fb.values.size());
  double worst = 0.0;
  for (size_t i = 0; i < fa.values.size(); ++i)
    worst = std::max(worst, std::fabs(fa.values[i] - fb.values[i]));
  return worst;
}

}  // namespace

TEST_CASE("free boundary gives the uniform marginal") {
  auto tr = truncate(binary_tree(1.3), 3);
  auto potts_run = root_marginal(tr, potts(3), BoundaryCondition::free_boundary());
  CHECK(potts_run.sup_dist <= 1e-13);
  auto rotor_run = root_marginal(tr, rotor(), BoundaryCondition::free_boundary());
  CHECK(rotor_run.sup_dist <= 1e-11);
  CHECK(rotor_run.representation == "radial");
}

TEST_CASE("single plus edge reproduces the kernel row") {
  auto tr = truncate(ray_tree(0.9), 1);
  auto run = root_marginal(tr, potts(4), BoundaryCondition::plus());
  const auto& f = std::get<PottsDensity>(run.root);
  CHECK(f.values[0] == doctest::Approx(kernel_value_potts(potts(4), 0.9, true)).epsilon(1e-13));
  for (int s = 1; s < 4; ++s)
    CHECK(f.values[s] == doctest::Approx(kernel_value_potts(potts(4), 0.9, false)).epsilon(1e-13));

  auto rrun = root_marginal(tr, heisenberg(2), BoundaryCondition::plus());
  double pole = kernel_value_heisenberg(heisenberg(2), 0.9, 1.0);
  CHECK(rrun.sup_dist == doctest::Approx(pole - 1.0).epsilon(1e-10));
  CHECK(rrun.max_min == doctest::Approx(std::exp(2.0 * 0.9)).epsilon(1e-10));
}

TEST_CASE("weak coupling washes out the boundary") {
  auto tr = truncate(binary_tree(1e-7), 4);
  CHECK(root_marginal(tr, potts(3), BoundaryCondition::plus()).sup_dist <= 1e-6);
  CHECK(root_marginal(tr, rotor(), BoundaryCondition::plus()).sup_dist <= 1e-6);
}

TEST_CASE("symmetric collapse equals the explicit recursion") {
  for (double J : {0.6, 1.4}) {
    auto spec = binary_tree(J);
    auto expl = root_marginal(truncate(spec, 4), potts(3), BoundaryCondition::plus());
    auto symm = root_marginal_symmetric(spec, 4, potts(3), BoundaryCondition::plus());
    CHECK(max_state_diff(expl.root, symm.root) <= 1e-12);
    CHECK(expl.sup_dist == doctest::Approx(symm.sup_dist).epsilon(1e-12));

    auto expl_h = root_marginal(truncate(spec, 4), heisenberg(2), BoundaryCondition::plus());
    auto symm_h = root_marginal_symmetric(spec, 4, heisenberg(2), BoundaryCondition::plus());
    CHECK(expl_h.sup_dist == doctest::Approx(symm_h.sup_dist).epsilon(1e-10));
    CHECK(expl_h.max_min == doctest::Approx(symm_h.max_min).epsilon(1e-10));
  }
}

TEST_CASE("weakened boundary edges: symmetric and explicit agree, errors checked") {
  auto spec = binary_tree(1.0);
  auto expl = root_marginal(truncate(spec, 3), ising(), BoundaryCondition::plus(), 0.1);
  auto symm = root_marginal_symmetric(spec, 3, ising(), BoundaryCondition::plus(), 0.1);
  CHECK(max_state_diff(expl.root, symm.root) <= 1e-13);
  // weakening must weaken: J' above the crossing edges is rejected
  CHECK_THROWS_AS(root_marginal(truncate(spec, 3), ising(), BoundaryCondition::plus(), 1.5),
                  input_error);
  CHECK_THROWS_AS(root_marginal(truncate(spec, 3), ising(), BoundaryCondition::plus(), -0.2),
                  input_error);
}

TEST_CASE("potts recursion equals brute force on fixed small trees") {
  // two-edge path with a custom boundary state
  TreeSpec path;
  path.kind = TreeSpec::Kind::explicit_tree;
  path.tree = explicit_tree_from_children({{1}, {2}, {}});
  path.strengths.J = 1.1;
  auto tr = truncate(path, 5);
  auto bc = BoundaryCondition::custom_potts({{2, 1}});
  auto run = root_marginal(tr, potts(3), bc);
  auto oracle = brute_force_marginal(tr, potts(3), bc);
  CHECK(max_state_diff(run.root, oracle) <= 1e-13);

  // 3-leaf star with mixed boundary states and per-edge strengths
  TreeSpec star;
  star.kind = TreeSpec::Kind::explicit_tree;
  star.tree = explicit_tree_from_children({{1, 2, 3}, {}, {}, {}});
  star.strengths.is_constant = false;
  star.strengths.per_edge[{0, 1}] = 0.4;
  star.strengths.per_edge[{0, 2}] = 1.0;
  star.strengths.per_edge[{0, 3}] = 1.9;
  auto trs = truncate(star, 5);
  auto bcs = BoundaryCondition::custom_potts({{1, 0}, {2, 2}, {3, 1}});
  auto runs = root_marginal(trs, potts(3), bcs);
  auto oracles = brute_force_marginal(trs, potts(3), bcs);
  CHECK(max_state_diff(runs.root, oracles) <= 1e-13);
}

TEST_CASE("rotor recursion equals brute force with point-mass boundaries") {
  TreeSpec path;
  path.kind = TreeSpec::Kind::explicit_tree;
  path.tree = explicit_tree_from_children({{1}, {2}, {}});
  path.strengths.J = 1.5;
  auto tr = truncate(path, 5);
  auto bc = BoundaryCondition::custom_rotor({{2, 2.1}});
  auto run = root_marginal(tr, rotor(), bc);
  CHECK(run.representation == "circle");
  auto oracle = brute_force_marginal(tr, rotor(), bc);
  CHECK(max_state_diff(run.root, oracle) <= 1e-10);
}

TEST_CASE("brute force rejects oversized interiors") {
  auto tr = truncate(binary_tree(1.0), 4);  // 15 interior vertices
  CHECK_THROWS_AS(brute_force_marginal(tr, potts(2), BoundaryCondition::plus()), input_error);
  auto tr3 = truncate(binary_tree(1.0), 3);  // 7 interior vertices, too many angles to nest
  CHECK_THROWS_AS(brute_force_marginal(tr3, rotor(), BoundaryCondition::plus()), input_error);
}

TEST_CASE("custom boundaries are representation-checked") {
  auto tr = truncate(binary_tree(1.0), 2);
  // heisenberg d >= 2 has no general point-mass representation here
  CHECK_THROWS_AS(
      root_marginal(tr, heisenberg(2), BoundaryCondition::custom_rotor({{3, 0.5}})),
      input_error);
  // potts custom states must cover the cutset and be in range
  CHECK_THROWS_AS(root_marginal(tr, potts(3), BoundaryCondition::custom_potts({{3, 0}})),
                  input_error);
  CHECK_THROWS_AS(root_marginal(tr, potts(3), BoundaryCondition::custom_potts(
                                                  {{3, 5}, {4, 0}, {5, 0}, {6, 0}})),
                  input_error);
}

TEST_CASE("scalar likelihood recursion") {
  int q = 3;
  double p = 0.7;
  CHECK(potts_phi(q, p, 0.0) == doctest::Approx(0.0));
  // derivative identity at the origin
  double h = 1e-6;
  double fd = (potts_phi(q, p, h) - potts_phi(q, p, -h)) / (2.0 * h);
  CHECK(fd == doctest::Approx(potts_phi_derivative_at_zero(q, p)).epsilon(1e-8));
  CHECK(potts_phi_derivative_at_zero(q, p) == doctest::Approx(p - (1.0 - p) / 2.0).epsilon(1e-14));
  // saturation at twice the coupling
  CHECK(potts_phi_infinity(q, p) == doctest::Approx(2.0 * potts_J_from_p(q, p)).epsilon(1e-12));
  CHECK(potts_phi(q, p, 50.0) == doctest::Approx(potts_phi_infinity(q, p)).epsilon(1e-9));
  double prev = -1.0;
  for (double z = 0.0; z <= 5.0; z += 0.25) {
    double v = potts_phi(q, p, z);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("scalar recursion matches the density recursion likelihood gap") {
  int q = 3;
  double p = 0.75;
  double J = potts_J_from_p(q, p);
  auto spec = binary_tree(J);
  for (int depth : {2, 5}) {
    auto ll = potts_loglikelihood_recursion(spec, depth, q, p);
    auto run = root_marginal_symmetric(spec, depth, potts(q), BoundaryCondition::plus());
    CHECK(ll.g_root ==
          doctest::Approx(potts_likelihood_gap(std::get<PottsDensity>(run.root))).epsilon(1e-9));
    CHECK(static_cast<int>(ll.g_by_level.size()) == depth);
    CHECK(ll.g_by_level[0] == doctest::Approx(ll.g_root));
  }
}

TEST_CASE("aligned rotor boundary dominates arbitrary point masses") {
  auto tr = truncate(binary_tree(1.2), 3);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> U(0.0, 2.0 * M_PI);
  for (int rep = 0; rep < 5; ++rep) {
    std::map<int, double> angles;
    for (int v : tr.cutset) angles[v] = U(rng);
    auto check = rotor_boundary_domination_check(tr, 1.2, angles, {});
    CHECK(check.dominated);
    CHECK(check.sup_custom <= check.sup_plus + 1e-9);
  }
  // all-aligned angles reproduce the plus bound exactly
  std::map<int, double> zero;
  for (int v : tr.cutset) zero[v] = 0.0;
  auto same = rotor_boundary_domination_check(tr, 1.2, zero, {});
  CHECK(same.sup_custom == doctest::Approx(same.sup_plus).epsilon(1e-9));
}

TEST_CASE("report metadata") {
  auto run = root_marginal_symmetric(binary_tree(1.0), 3, potts(3), BoundaryCondition::plus());
  CHECK(run.representation == "potts");
  CHECK(run.grid_size == 3);
  CHECK(run.depth == 3);
  CHECK(run.tree_vertices == doctest::Approx(15.0));
  CHECK(!run.a_dist.has_value());
  auto rrun = root_marginal_symmetric(binary_tree(1.0), 3, rotor(), BoundaryCondition::plus());
  CHECK(rrun.representation == "radial");
  CHECK(rrun.a_dist.has_value());
}

TEST_CASE("golden regression: frozen root distances") {
  auto rotor_run = root_marginal_symmetric(binary_tree(2.0), 8, rotor(), BoundaryCondition::plus());
  CHECK(rotor_run.sup_dist == doctest::Approx(2.1612293850959814).epsilon(1e-10));
  CHECK(rotor_run.max_min == doctest::Approx(200.98731295009577).epsilon(1e-10));
  CHECK(rotor_run.L_value == doctest::Approx(0.71968808412633045).epsilon(1e-10));
  auto potts_run = root_marginal_symmetric(binary_tree(1.0), 8, potts(3), BoundaryCondition::plus());
  CHECK(potts_run.sup_dist == doctest::Approx(1.8450399963507249).epsilon(1e-12));
  CHECK(potts_run.max_min == doctest::Approx(36.719668680312722).epsilon(1e-12));
  CHECK(potts_run.L_value == doctest::Approx(3.6033125428442827).epsilon(1e-12));
}
