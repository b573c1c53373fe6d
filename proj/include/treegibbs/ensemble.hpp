#pragma once

#include <string>

namespace treegibbs {

// Single-site state space + pair energy.  Potts(q): states {0..q-1}, energy
// 1 - 2*delta(x,y).  Heisenberg(d): unit sphere S^d, energy -x.y.  Ising and
// rotor are aliases potts(2) and heisenberg(1).
struct Ensemble {
  enum class Family { potts, heisenberg };
  Family family;
  int param;  // q for potts, d for heisenberg

  bool is_potts() const { return family == Family::potts; }
  int q() const { return param; }
  int d() const { return param; }
  std::string name() const;
};

Ensemble potts(int q);
Ensemble heisenberg(int d);
Ensemble ising();
Ensemble rotor();

// "potts:<q>", "heisenberg:<d>", "ising", "rotor"
Ensemble ensemble_from_string(const std::string& s);

// Normalizer C(J) of the transfer kernel, i.e. the average of exp(-J*energy
// against a fixed state) under the single-site measure.  Potts in closed form
// (e^J + (q-1)e^{-J})/q, Heisenberg by radial quadrature (d=2 collapses to
// sinh(J)/J).
double normalizer(const Ensemble& ens, double J);

// Normalized kernel density K_{J,y}(u).  Potts variant takes whether u == y;
// Heisenberg variant takes r = u.y.
double kernel_value_potts(const Ensemble& ens, double J, bool match);
double kernel_value_heisenberg(const Ensemble& ens, double J, double r);

// Mean of r = u.y under the kernel: the per-edge contraction factor of the
// Heisenberg convolution operator on the first nontrivial mode.  Adaptive
// Gauss-Jacobi, node count doubled from 32 until successive values agree to
// 1e-12.
double rho_d(int d, double J);

// Spectral gap of the Potts transfer operator on mean-zero functions,
// (e^J - e^{-J})/(e^J + (q-1)e^{-J}).  Equals tanh(J) at q = 2.
double alpha_potts(int q, double J);

// rho_d or alpha_potts, whichever applies; the per-edge factor in br*gap.
double contraction_gap(const Ensemble& ens, double J);
double br_times_gap(const Ensemble& ens, double J, double br);

// Probability that an edge agrees with its parent spin in the Potts broadcast
// view: p = e^J / (e^J + (q-1)e^{-J}), and its inverse.
double potts_p_from_J(int q, double J);
double potts_J_from_p(int q, double p);

}  // namespace treegibbs
