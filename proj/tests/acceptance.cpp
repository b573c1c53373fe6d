// Acceptance gate: one line per criterion, nonzero exit if any fails.
// argv[1] is the CLI binary, used by the determinism criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "treegibbs/analysis.hpp"
#include "treegibbs/ensemble.hpp"
#include "treegibbs/errors.hpp"
#include "treegibbs/recursion.hpp"
#include "treegibbs/sampling.hpp"
#include "treegibbs/special.hpp"
#include "treegibbs/spectral.hpp"
#include "treegibbs/tree.hpp"

using namespace treegibbs;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string g3(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

int failures = 0;

void report(int criterion, bool pass, const std::string& text) {
  if (!pass) ++failures;
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << text << "\n";
  std::cout.flush();
}

double potts_state_diff(const Density& a, const Density& b) {
  const auto& fa = std::get<PottsDensity>(a);
  const auto& fb = std::get<PottsDensity>(b);
  double worst = 0.0;
  for (size_t i = 0; i < fa.values.size(); ++i)
    worst = std::max(worst, std::fabs(fa.values[i] - fb.values[i]));
  return worst;
}

double circle_diff(const Density& a, const Density& b) {
  const auto& fa = std::get<CircleDensity>(a);
  const auto& fb = std::get<CircleDensity>(b);
  double worst = 0.0;
  for (size_t i = 0; i < fa.values.size(); ++i)
    worst = std::max(worst, std::fabs(fa.values[i] - fb.values[i]));
  return worst;
}

void criterion_1() {
  auto t0 = Clock::now();
  std::mt19937 rng(101);
  const int qs[] = {2, 3, 5};
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    TreeSpec spec;
    spec.kind = TreeSpec::Kind::explicit_tree;
    spec.tree = sample_tree(rng, 2, 8);
    spec.strengths = sample_strengths(rng, spec.tree, 2.0);
    int q = qs[i % 3];
    int height = 0;
    for (int v = 0; v < spec.tree.vertex_count(); ++v)
      height = std::max(height, spec.tree.depth[v]);
    auto tr = truncate(spec, height);
    std::uniform_int_distribution<int> state(0, q - 1);
    std::map<int, int> states;
    for (int v : tr.cutset) states[v] = state(rng);
    auto bc = BoundaryCondition::custom_potts(states);
    auto run = root_marginal(tr, potts(q), bc);
    auto oracle = brute_force_marginal(tr, potts(q), bc);
    worst = std::max(worst, potts_state_diff(run.root, oracle));
  }
  double dt = seconds_since(t0);
  report(1, worst <= 1e-10 && dt < 10.0,
         "200 random potts instances vs brute force, worst per-state " + g3(worst) +
             " (<= 1e-10), " + g3(dt) + " s (< 10)");
}

void criterion_2() {
  auto t0 = Clock::now();
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  double worst = 0.0;

  TreeSpec path;
  path.kind = TreeSpec::Kind::explicit_tree;
  path.tree = explicit_tree_from_children({{1}, {2}, {}});
  for (double J : {0.8, 1.6, 2.0}) {
    path.strengths.J = J;
    auto tr = truncate(path, 2);
    for (double theta : {0.3, 2.2, 4.9, 5.7}) {
      auto bc = BoundaryCondition::custom_rotor({{2, theta}});
      auto run = root_marginal(tr, rotor(), bc);
      auto oracle = brute_force_marginal(tr, rotor(), bc);
      worst = std::max(worst, circle_diff(run.root, oracle));
    }
  }

  TreeSpec star;
  star.kind = TreeSpec::Kind::explicit_tree;
  star.tree = explicit_tree_from_children({{1, 2, 3}, {}, {}, {}});
  star.strengths.is_constant = false;
  star.strengths.per_edge[{0, 1}] = 0.5;
  star.strengths.per_edge[{0, 2}] = 1.2;
  star.strengths.per_edge[{0, 3}] = 1.9;
  auto trs = truncate(star, 1);
  for (int rep = 0; rep < 8; ++rep) {
    auto bc = BoundaryCondition::custom_rotor(
        {{1, angle(rng)}, {2, angle(rng)}, {3, angle(rng)}});
    auto run = root_marginal(trs, rotor(), bc);
    auto oracle = brute_force_marginal(trs, rotor(), bc);
    worst = std::max(worst, circle_diff(run.root, oracle));
  }
  double dt = seconds_since(t0);
  report(2, worst <= 1e-6 && dt < 30.0,
         "rotor path and star vs nested quadrature at 512 angles, sup diff " + g3(worst) +
             " (<= 1e-6), " + g3(dt) + " s (< 30)");
}

void criterion_3() {
  double worst_rho = 0.0, worst_alpha = 0.0;
  for (double J : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    worst_rho = std::max(worst_rho, std::fabs(rho_d(2, J) - (1.0 / std::tanh(J) - 1.0 / J)));
    worst_rho = std::max(worst_rho, std::fabs(rho_d(1, J) - bessel_i1(J) / bessel_i0(J)));
    worst_alpha = std::max(worst_alpha, std::fabs(alpha_potts(2, J) - std::tanh(J)));
  }
  report(3, worst_rho <= 1e-10 && worst_alpha <= 1e-14,
         "contraction closed forms, rho error " + g3(worst_rho) + " (<= 1e-10), tanh error " +
             g3(worst_alpha) + " (<= 1e-14)");
}

void criterion_4() {
  double ising_err = std::fabs(critical_J(ising(), 2.0) - std::atanh(0.5));
  // the q = 3 target from the stated bisection oracle: alpha = 1/2 at e^{2J} = 4
  double potts3 = critical_J(potts(3), 2.0);
  double potts3_err = std::fabs(potts3 - std::log(2.0));
  double Jc = critical_J(heisenberg(2), 2.0);
  bool bracket = br_times_gap(heisenberg(2), Jc - 1e-8, 2.0) < 1.0 &&
                 br_times_gap(heisenberg(2), Jc + 1e-8, 2.0) > 1.0;
  report(4, ising_err <= 1e-8 && potts3_err <= 1e-8 && bracket,
         "critical couplings: ising err " + g3(ising_err) + ", potts(3) = " + g3(potts3) +
             " err vs ln 2 " + g3(potts3_err) + " (<= 1e-8), heisenberg(2) bracket " +
             (bracket ? "straddles 1" : "broken"));
}

void criterion_5() {
  auto t0 = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  for (const Ensemble& ens : {ising(), potts(3), rotor(), heisenberg(2)}) {
    double Jc = critical_J(ens, 2.0);
    double J_lo = 0.8 * Jc, J_hi = 1.2 * Jc;
    auto lo = rpt_scan(binary_tree(J_lo), ens, J_lo, J_lo / 10.0, 16);
    auto hi = rpt_scan(binary_tree(J_hi), ens, J_hi, J_hi / 10.0, 16);
    double predicted = std::log(br_times_gap(ens, J_lo, 2.0));
    bool slope_ok =
        lo.slope_valid && std::fabs(lo.slope - predicted) <= 0.1 * std::fabs(predicted);
    bool ok = lo.verdict == "decaying" && hi.verdict == "bounded-away" && slope_ok;
    pass = pass && ok;
    detail << " " << ens.name() << "[" << lo.verdict << "/" << hi.verdict << " slope "
           << g3(lo.slope) << " vs " << g3(predicted) << "]";
  }
  double dt = seconds_since(t0);
  pass = pass && dt < 60.0;
  report(5, pass, "verdict flip across the critical coupling,"
                  + detail.str() + ", " + g3(dt) + " s (< 60)");
}

void criterion_6() {
  auto rep = counterexample_builder(3, 30);
  bool ok = rep.p_star < rep.p0 && rep.gap < 0.5 && rep.z_star > 0.0 &&
            rep.binary_g_min >= rep.z_star && rep.final_sup_dist < 1e-6;
  report(6, ok,
         "q=3 witness p* = " + g3(rep.p_star) + " < 2/3, gap " + g3(rep.gap) +
             " < 1/2, z* = " + g3(rep.z_star) + ", binary g min " + g3(rep.binary_g_min) +
             " >= z*, stretched-tree sup_dist " + g3(rep.final_sup_dist) + " < 1e-6");
}

void criterion_7() {
  std::mt19937 rng(707);
  bool pass = true;
  std::ostringstream detail;
  auto sub = [&](const std::string& name, double worst, double bound) {
    bool ok = worst <= bound;
    pass = pass && ok;
    detail << " " << name << " " << g3(worst) << (ok ? " <= " : " !<= ") << g3(bound) << ";";
  };

  {  // A-norm submultiplicative, half the pairs signed
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      auto table = spectral_table(1 + rep % 3, 48, 256);
      auto f = sample_positive_cone(rng, table).values;
      std::vector<double> g = rep % 2 == 0
                                  ? sample_positive_cone(rng, table).values
                                  : table->from_coeffs(
                                        sample_signed_coeffs(rng, *table, 16, 0.3), false);
      std::vector<double> h(f.size());
      for (size_t i = 0; i < h.size(); ++i) h[i] = f[i] * g[i];
      double lhs = a_norm(table->to_coeffs(h));
      double rhs = a_norm(table->to_coeffs(f)) * a_norm(table->to_coeffs(g));
      worst = std::max(worst, lhs - rhs);
    }
    sub("submultiplicative", worst, 1e-11);
  }
  {  // equality of the product norm on positive-coefficient pairs, relative
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      auto table = spectral_table(1 + rep % 3, 48, 256);
      auto f = sample_positive_cone(rng, table).values;
      auto g = sample_positive_cone(rng, table).values;
      std::vector<double> h(f.size());
      for (size_t i = 0; i < h.size(); ++i) h[i] = f[i] * g[i];
      double lhs = a_norm(table->to_coeffs(h));
      double rhs = a_norm(table->to_coeffs(f)) * a_norm(table->to_coeffs(g));
      worst = std::max(worst, std::fabs(lhs - rhs) / rhs);
    }
    sub("cone equality(rel)", worst, 1e-9);
  }
  {  // norm = value at the aligned pole = sup, on cone members
    double worst = 0.0;
    for (int rep = 0; rep < 102; ++rep) {
      auto table = spectral_table(1 + rep % 3, 48, 256);
      RadialDensity f = sample_positive_cone(rng, table);
      auto coeffs = table->to_coeffs(f.values);
      double norm = a_norm(coeffs);
      double pole = table->eval_coeffs(coeffs, 1.0);
      double sup = radial_extrema(f).max;
      worst = std::max(worst, std::fabs(norm - pole));
      worst = std::max(worst, std::fabs(norm - sup));
      worst = std::max(worst, std::fabs(norm - (1.0 + a_dist(coeffs))));
    }
    sub("norm chain", worst, 1e-9);
  }
  {  // k-fold product vs linearization, remainder within 3*4^k delta^2
    double worst = 0.0;
    auto table = spectral_table(2, 48, 256);
    for (int k = 2; k <= 4; ++k) {
      for (int rep = 0; rep < 34; ++rep) {
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
        for (int j = 0; j < table->grid_nodes(); ++j)
          mean += table->rule().weights[j] * prod[j];
        for (double& v : prod) v /= mean;
        auto pc = table->to_coeffs(prod);
        std::vector<double> err(pc.size());
        for (size_t n = 0; n < pc.size(); ++n) {
          double linear = n == 0 ? 1.0 : 0.0;
          if (n > 0)
            for (auto& c : hc) linear += c[n];
          err[n] = pc[n] - linear;
        }
        worst = std::max(worst, a_norm(err) / (3.0 * std::pow(4.0, k) * delta * delta));
      }
    }
    sub("taylor remainder(ratio)", worst, 1.0);
  }
  {  // the first indicator mode dominates the higher ones
    double worst = -1.0;
    for (int d : {1, 2, 3}) {
      for (int j = 0; j < 20; ++j) {
        double t = -0.95 + 1.9 * j / 19.0;
        double first = indicator_mode_average(d, 1, t);
        for (int n = 2; n <= 32; ++n)
          worst = std::max(worst, std::fabs(indicator_mode_average(d, n, t)) - first);
      }
    }
    sub("indicator domination", worst, 1e-14);
  }
  {  // Max/Min contraction through the kernel floor, ratio and log forms
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
      int q = qs[rep % 3];
      double J = 2.0 * (1.0 - u(rng));
      PottsDensity f = sample_potts_density(rng, q);
      double alpha = alpha_potts(q, J);
      PottsDensity kf = f;
      for (double& v : kf.values) v = alpha * v + (1.0 - alpha);
      record(potts_max_min(f), potts_max_min(kf), kernel_value_potts(potts(q), J, false));
    }
    for (int rep = 0; rep < 50; ++rep) {
      int d = 1 + rep % 3;
      auto table = spectral_table(d, 32, 256);
      double J = 2.0 * (1.0 - u(rng));
      RadialDensity f = sample_positive_density(rng, table);
      auto conv = convolve_coeffs(*table, table->to_coeffs(f.values), kernel_coeffs(*table, J));
      RadialDensity kf{table, table->from_coeffs(conv)};
      record(radial_max_min(f), radial_max_min(kf),
             kernel_value_heisenberg(heisenberg(d), J, -1.0));
    }
    sub("max/min contraction", worst, 1e-9);
  }
  {  // scattered rotor boundaries never beat the aligned one
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    auto tr = truncate(binary_tree(1.2), 3);
    double worst = -1.0;
    for (int rep = 0; rep < 100; ++rep) {
      std::map<int, double> angles;
      for (int v : tr.cutset) angles[v] = angle(rng);
      auto res = rotor_boundary_domination_check(tr, 1.2, angles);
      worst = std::max(worst, res.sup_custom - res.sup_plus);
    }
    sub("rotor domination", worst, 1e-9);
  }
  report(7, pass, "inequality suite:" + detail.str());
}

void criterion_8() {
  auto is = zero_branching_decay(ray_tree(2.0), ising(), 900);
  auto ro = zero_branching_decay(ray_tree(2.0), rotor(), 120);
  bool ok = is.depth_below_1e6.has_value() && ro.depth_below_1e6.has_value() &&
            is.per_level_ok && ro.per_level_ok;
  report(8, ok,
         "ray decay at J = 2: ising below 1e-6 at depth " +
             (is.depth_below_1e6 ? std::to_string(*is.depth_below_1e6) : std::string("never")) +
             ", rotor at depth " +
             (ro.depth_below_1e6 ? std::to_string(*ro.depth_below_1e6) : std::string("never")) +
             ", per-level factor within (1-eps): " +
             (is.per_level_ok && ro.per_level_ok ? "yes" : "no"));
}

struct CommandResult {
  std::string output;
  int status = -1;
};

CommandResult run_command(const std::string& cmd) {
  CommandResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, n);
  res.status = pclose(pipe);
  return res;
}

void criterion_9(const std::string& cli) {
  std::string cmd = "'" + cli + "' validate --seed 7 2>&1";
  auto first = run_command(cmd);
  auto second = run_command(cmd);
  bool ok = first.status == 0 && second.status == 0 && !first.output.empty() &&
            first.output == second.output;
  report(9, ok,
         "validate --seed 7 twice: " + std::to_string(first.output.size()) + " and " +
             std::to_string(second.output.size()) + " bytes, " +
             (first.output == second.output ? "byte-identical" : "DIFFER") +
             (first.status == 0 ? "" : ", nonzero exit"));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli>\n";
    return 2;
  }
  auto t0 = Clock::now();
  auto guard = [&](int n, void (*fn)()) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(n, false, std::string("exception: ") + e.what());
    }
  };
  guard(1, criterion_1);
  guard(2, criterion_2);
  guard(3, criterion_3);
  guard(4, criterion_4);
  guard(5, criterion_5);
  guard(6, criterion_6);
  guard(7, criterion_7);
  guard(8, criterion_8);
  try {
    criterion_9(argv[1]);
  } catch (const std::exception& e) {
    report(9, false, std::string("exception: ") + e.what());
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << " (" << g3(seconds_since(t0)) << " s total)\n";
  return failures == 0 ? 0 : 1;
}
