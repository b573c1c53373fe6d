#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treegibbs/ensemble.hpp"
#include "treegibbs/recursion.hpp"
#include "treegibbs/tree.hpp"

namespace treegibbs {

// Root of br * gap(J) = 1 by bisection; gap is rho_d or alpha_potts, both
// strictly increasing in J.  tol bounds the bracket half-width on J.
double critical_J(const Ensemble& ens, double br, double tol = 1e-10);

struct RptScanRow {
  int depth = 0;
  double sup_dist = 0.0;
};

struct RptScanResult {
  double J = 0.0;
  double J_prime = 0.0;
  std::vector<RptScanRow> rows;
  std::string verdict;   // "decaying" | "bounded-away" | "inconclusive"
  double slope = 0.0;    // fitted d(log sup_dist)/d(depth) over the usable tail
  bool slope_valid = false;
};

// Weakened-boundary root distances at level cutsets of depth 1..max_depth.
// Classification: decaying when the sequence is at machine floor, or ends
// below 1e-6 with a non-increasing tail, or the tail is strictly decreasing
// with the final value <= 0.75x the mid-scan value (sustained geometric
// decay); bounded-away when the last quarter stays above max(0.5 x its
// median, 1e-3); inconclusive otherwise.
RptScanResult rpt_scan(const TreeSpec& t, const Ensemble& ens, double J, double J_prime,
                       int max_depth, const EngineOptions& opt = {});

std::string rpt_scan_csv(const RptScanResult& r, const std::string& model);

double potts_p0(int q);  // (q+1)/(2q): where the linear term of phi hits 1/2

// Smallest positive root of phi(z) = z/2 on (0, 50], refined to 1e-12.
std::optional<double> potts_fixed_point(int q, double p);

struct CounterexampleReport {
  int q = 0;
  double p0 = 0.0;
  double p_star = 0.0;
  double J_star = 0.0;
  double z_star = 0.0;
  double gap = 0.0;              // phi'(0) at p_star, < 1/2
  double binary_g_min = 0.0;     // min over depths <= binary_depth_cap of g(root)
  int binary_depth_cap = 0;
  std::vector<int> period;       // offspring period of the base tree Gamma
  double br_gamma = 0.0;         // in (2, 1/gap)
  int m = 0;                     // stretch factor
  std::vector<int> cut_depths;   // original-coordinate band positions
  std::vector<RptScanRow> gamma2_scan;   // sup_dist per stretched truncation depth
  std::vector<double> band_ratios;       // deviation shrink across each stretched edge
  double band_ratio_bound = 0.0;         // gap^m
  double final_sup_dist = 0.0;
};

// The q >= 3 construction: a coupling whose plus-boundary effect survives on
// the binary tree (positive fixed point of the scalar recursion) while a
// stretched tree of strictly larger branching number shows the effect dying.
CounterexampleReport counterexample_builder(int q, int binary_depth_cap = 30,
                                            const EngineOptions& opt = {});

std::string counterexample_json(const CounterexampleReport& r);

struct ZeroBranchingRow {
  int depth = 0;
  double log_max_min = 0.0;
};

struct ZeroBranchingReport {
  std::vector<ZeroBranchingRow> rows;
  double c0 = 0.0;             // min of the kernel density at coupling J
  double T = 0.0;              // largest Max/Min ratio encountered
  double one_minus_eps = 0.0;  // log(1 + (1-c0)(T-1)) / log(T)
  bool per_level_ok = true;    // each level contracted log Max/Min by >= eps
  double final_log_max_min = 0.0;
  std::optional<int> depth_below_1e6;
};

// Plus-boundary Max/Min decay on a branching-number-1 tree; the per-level
// contraction check requires a pure ray (shift-invariant levels).
ZeroBranchingReport zero_branching_decay(const TreeSpec& t, const Ensemble& ens, int max_depth,
                                         const EngineOptions& opt = {});

}  // namespace treegibbs
