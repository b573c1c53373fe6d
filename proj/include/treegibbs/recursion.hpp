#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "treegibbs/circle.hpp"
#include "treegibbs/ensemble.hpp"
#include "treegibbs/spectral.hpp"
#include "treegibbs/tree.hpp"

namespace treegibbs {

// Potts root density: q values against uniform counting measure, avg = 1.
struct PottsDensity {
  int q = 0;
  std::vector<double> values;

  double mean() const;
};

using Density = std::variant<PottsDensity, RadialDensity, CircleDensity>;

struct BoundaryCondition {
  enum class Kind { plus, free_boundary, custom };
  Kind kind = Kind::plus;
  std::map<int, int> potts_states;  // custom Potts: cutset vertex -> state
  std::map<int, double> angles;     // custom rotor: cutset vertex -> angle

  static BoundaryCondition plus();
  static BoundaryCondition free_boundary();
  static BoundaryCondition custom_potts(std::map<int, int> states);
  static BoundaryCondition custom_rotor(std::map<int, double> angles);
};

struct EngineOptions {
  int modes = 32;         // radial coefficient cutoff
  int radial_nodes = 256;
  int circle_angles = 512;
  int max_escalations = 3;  // doublings allowed when the spectral tail misbehaves
};

struct RecursionReport {
  Density root;
  double sup_dist = 0.0;             // sup |f - 1|
  std::optional<double> a_dist;      // coefficient-sum distance, spherical reps only
  double max_min = 1.0;              // max f / min f
  double L_value = 0.0;              // first-mode functional, or Potts log-likelihood gap
  int depth = 0;                     // deepest cutset vertex
  double tree_vertices = 0.0;        // processed vertices (interior + boundary)
  int grid_size = 0;                 // q, radial nodes, or circle angles
  std::string representation;        // "potts" | "radial" | "circle"
};

// Bottom-up marginal at the root of a truncated tree with the given boundary
// condition on its cutset.  J_prime, when present, replaces the coupling on
// every edge crossing into the cutset (it must not exceed any such coupling).
RecursionReport root_marginal(const Truncation& t, const Ensemble& ens,
                              const BoundaryCondition& bc,
                              std::optional<double> J_prime = std::nullopt,
                              const EngineOptions& opt = {});

// Same computation for a spherically symmetric tree with constant coupling
// and a level-`depth` cutset, collapsed to one density per level.
RecursionReport root_marginal_symmetric(const TreeSpec& t, int depth, const Ensemble& ens,
                                        const BoundaryCondition& bc,
                                        std::optional<double> J_prime = std::nullopt,
                                        const EngineOptions& opt = {});

// Direct summation/quadrature over all interior configurations; the oracle the
// recursion is checked against.  Potts allows at most 10 interior vertices,
// the rotor at most 3 (nested sums over the angle grid).
Density brute_force_marginal(const Truncation& t, const Ensemble& ens,
                             const BoundaryCondition& bc, int circle_angles = 512);

// Scalar Potts log-likelihood recursion g(v) = sum_children phi(g(child)).
double potts_phi(int q, double p, double z);
double potts_phi_infinity(int q, double p);  // plus-boundary inflow, phi at z = +inf
double potts_phi_derivative_at_zero(int q, double p);  // p - (1-p)/(q-1)

struct LoglikelihoodReport {
  double g_root = 0.0;
  std::vector<double> g_by_level;  // index = depth, g value of that level
};
// Plus boundary at the level-`depth` cutset of a spherically symmetric tree.
LoglikelihoodReport potts_loglikelihood_recursion(const TreeSpec& t, int depth, int q, double p);

struct DominationCheck {
  double sup_custom = 0.0;
  double sup_plus = 0.0;
  bool dominated = false;  // sup_custom <= sup_plus + 1e-9
};
// Rotor only: compares an arbitrary point-mass boundary against the aligned
// (all-zero-angle) one on the same truncation.
DominationCheck rotor_boundary_domination_check(const Truncation& t, double J,
                                                const std::map<int, double>& angles,
                                                const EngineOptions& opt = {});

double potts_sup_dist(const PottsDensity& f);
double potts_max_min(const PottsDensity& f);
// log[(q-1) f_0 / sum_{x != 0} f_x]: the log-likelihood ratio of state 0
double potts_likelihood_gap(const PottsDensity& f);

double density_sup_dist(const Density& f);
double density_max_min(const Density& f);

}  // namespace treegibbs
