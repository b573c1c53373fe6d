#pragma once

#include <random>

#include "treegibbs/recursion.hpp"
#include "treegibbs/spectral.hpp"

namespace treegibbs {

// Random members of the plus-boundary cone: normalized products of aligned
// kernels pushed through a few convolutions.  Exactly the densities the
// recursion produces under plus boundary, so every cone identity (positive
// coefficients, sup at the north pole, A-norm chain) must hold on them.
RadialDensity sample_positive_cone(std::mt19937& rng,
                                   std::shared_ptr<const SpectralTable> table,
                                   double J_max = 2.0);

// Cone member pulled toward uniform until its coefficient distance is at most
// `target`; used by the small-deviation expansion checks.
RadialDensity sample_positive_cone_small(std::mt19937& rng,
                                         std::shared_ptr<const SpectralTable> table,
                                         double target, double J_max = 2.0);

// Generic signed test function sum a_n psi_n with |a_n| <= amp, a_0 = 1.
std::vector<double> sample_signed_coeffs(std::mt19937& rng, const SpectralTable& table,
                                         int max_mode, double amp);

// Strictly positive density that need not lie in the cone: exp of a random
// low-degree polynomial, renormalized.
RadialDensity sample_positive_density(std::mt19937& rng,
                                      std::shared_ptr<const SpectralTable> table);

// Random positive normalized Potts density.
PottsDensity sample_potts_density(std::mt19937& rng, int q);

// Random rooted tree shape: each vertex after the root attaches to a
// uniformly chosen earlier vertex.
ExplicitTree sample_tree(std::mt19937& rng, int min_vertices, int max_vertices);

// Independent per-edge couplings uniform on (0, J_max].
Strengths sample_strengths(std::mt19937& rng, const ExplicitTree& tree, double J_max);

}  // namespace treegibbs
