#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "treegibbs/circle.hpp"
#include "treegibbs/ensemble.hpp"
#include "treegibbs/errors.hpp"
#include "treegibbs/spectral.hpp"

using namespace treegibbs;

namespace {

// integral of 1_{r >= t} psi_n against (1-r^2)^{d/2-1}, via r = cos(theta) and
// composite Simpson; independent of the closed form under test
double indicator_simpson(int d, int n, double t) {
  double alpha = d / 2.0 - 1.0;
  double hi = std::acos(t);
  int steps = 4000;  // even
  double h = hi / steps;
  double s = 0.0;
  for (int i = 0; i <= steps; ++i) {
    double theta = i * h;
    double f = psi(d, n, std::cos(theta)) * std::pow(std::sin(theta), 2.0 * alpha + 1.0);
    double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * f;
  }
  return s * h / 3.0 / jacobi_weight_mass(alpha);
}

}  // namespace

TEST_CASE("psi closed forms per dimension") {
  for (double r : {-0.9, -0.35, 0.0, 0.2, 0.77, 1.0}) {
    // d = 1: Chebyshev
    for (int n : {1, 2, 3, 5, 8})
      CHECK(psi(1, n, r) == doctest::Approx(std::cos(n * std::acos(r))).epsilon(1e-12));
    // d = 2: Legendre
    CHECK(psi(2, 2, r) == doctest::Approx((3.0 * r * r - 1.0) / 2.0).epsilon(1e-13));
    CHECK(psi(2, 3, r) == doctest::Approx((5.0 * r * r * r - 3.0 * r) / 2.0).epsilon(1e-13));
    // d = 3: sin((n+1) theta) / ((n+1) sin theta)
    if (std::fabs(r) < 1.0) {
      double theta = std::acos(r);
      for (int n : {1, 2, 4})
        CHECK(psi(3, n, r) ==
              doctest::Approx(std::sin((n + 1) * theta) / ((n + 1) * std::sin(theta)))
                  .epsilon(1e-12));
    }
  }
}

TEST_CASE("psi normalization and bounds") {
  for (int d : {1, 2, 3, 4}) {
    for (int n = 0; n <= 12; ++n) {
      CHECK(psi(d, n, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
      for (double r = -1.0; r <= 1.0; r += 0.125) CHECK(std::fabs(psi(d, n, r)) <= 1.0 + 1e-12);
    }
    CHECK(psi(d, 0, -0.3) == doctest::Approx(1.0));
    CHECK(psi(d, 1, -0.3) == doctest::Approx(-0.3).epsilon(1e-14));
  }
}

TEST_CASE("table orthogonality and harmonic-count norms") {
  for (int d : {1, 2, 3}) {
    auto table = spectral_table(d, 12, 96);
    for (int m = 0; m <= 12; ++m) {
      for (int n = 0; n <= m; ++n) {
        double s = 0.0;
        for (int i = 0; i < table->grid_nodes(); ++i)
          s += table->rule().weights[i] * table->psi_at_node(m, i) * table->psi_at_node(n, i);
        if (m == n)
          CHECK(s == doctest::Approx(table->gamma(n)).epsilon(1e-13));
        else
          CHECK(s == doctest::Approx(0.0).epsilon(1e-13));
      }
    }
    // gamma_n = 1 / #harmonics of degree n
    for (int n = 1; n <= 12; ++n) {
      double expected = d == 1 ? 0.5 : d == 2 ? 1.0 / (2 * n + 1) : 1.0 / ((n + 1) * (n + 1));
      CHECK(table->gamma(n) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(table->gamma(0) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("to_coeffs recovers a planted band-limited expansion") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int d : {1, 2, 3}) {
    auto table = spectral_table(d, 16, 96);
    std::vector<double> planted(17, 0.0);
    planted[0] = 1.0;
    for (int n = 1; n <= 16; ++n) planted[n] = U(rng);
    std::vector<double> values(table->grid_nodes());
    for (int i = 0; i < table->grid_nodes(); ++i) {
      double r = table->rule().nodes[i];
      double v = 0.0;
      for (int n = 0; n <= 16; ++n) v += planted[n] * psi(d, n, r);
      values[i] = v;
    }
    auto got = table->to_coeffs(values);
    for (int n = 0; n <= 16; ++n) CHECK(got[n] == doctest::Approx(planted[n]).epsilon(1e-10));
    auto back = table->from_coeffs(got, false);
    for (int i = 0; i < table->grid_nodes(); ++i)
      CHECK(back[i] == doctest::Approx(values[i]).epsilon(1e-10));
    // pointwise evaluation agrees with the node synthesis
    CHECK(table->eval_coeffs(got, table->rule().nodes[3]) ==
          doctest::Approx(values[3]).epsilon(1e-10));
  }
}

TEST_CASE("spectral convolution matches the circle convolution at d = 1") {
  auto table = spectral_table(1, 24, 128);
  std::vector<double> a(25, 0.0), b(25, 0.0);
  a[0] = 1.0;
  a[1] = 0.45;
  a[3] = -0.2;
  a[7] = 0.1;
  b[0] = 1.0;
  b[1] = -0.3;
  b[2] = 0.25;
  b[5] = 0.05;
  auto c = convolve_coeffs(*table, a, b);

  int M = 256;
  CircleDensity fa{M, std::vector<double>(M)}, fb{M, std::vector<double>(M)};
  for (int j = 0; j < M; ++j) {
    double r = std::cos(2.0 * M_PI * j / M);
    fa.values[j] = table->eval_coeffs(a, r);
    fb.values[j] = table->eval_coeffs(b, r);
  }
  auto fc = circle_convolve(fa, fb);
  for (int j = 0; j < M; ++j) {
    double r = std::cos(2.0 * M_PI * j / M);
    CHECK(fc.values[j] == doctest::Approx(table->eval_coeffs(c, r)).epsilon(1e-11));
  }
}

TEST_CASE("kernel expansion: first mode is the contraction factor, sup at the pole") {
  for (int d : {1, 2, 3}) {
    auto table = spectral_table(d, 32, 256);
    for (double J : {0.5, 1.4, 2.0}) {
      auto k = kernel_coeffs(*table, J);
      CHECK(L_functional(*table, k) == doctest::Approx(rho_d(d, J)).epsilon(1e-11));
      // high modes are positive but exponentially tiny; quadrature rounding
      // scaled by 1/gamma_n leaves ~1e-12 of noise there
      for (double coef : k) CHECK(coef >= -1e-11);
      double pole = kernel_value_heisenberg(heisenberg(d), J, 1.0);
      CHECK(a_norm(k) == doctest::Approx(pole).epsilon(1e-10));
      CHECK(table->eval_coeffs(k, 1.0) == doctest::Approx(pole).epsilon(1e-10));
      CHECK(a_dist(k) == doctest::Approx(pole - 1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("indicator projections match Simpson quadrature") {
  for (int d : {1, 2, 3}) {
    for (double t : {-0.8, -0.25, 0.0, 0.4, 0.9}) {
      for (int n : {1, 2, 3, 6, 11}) {
        CHECK(indicator_mode_average(d, n, t) ==
              doctest::Approx(indicator_simpson(d, n, t)).epsilon(1e-9));
      }
    }
  }
  // the first mode dominates every higher mode in absolute value
  for (int d : {1, 2, 3})
    for (double t : {-0.6, 0.1, 0.7})
      for (int n = 2; n <= 16; ++n)
        CHECK(std::fabs(indicator_mode_average(d, n, t)) <=
              indicator_mode_average(d, 1, t) + 1e-14);
}

TEST_CASE("radial extrema include the endpoints") {
  auto table = spectral_table(2, 32, 256);
  double J = 1.2;
  auto k = radial_kernel(table, J);
  auto ext = radial_extrema(k);
  // e^{J r} is monotone, so the extrema sit at r = +-1
  CHECK(ext.max / ext.min == doctest::Approx(std::exp(2.0 * J)).epsilon(1e-10));
  CHECK(radial_max_min(k) == doctest::Approx(std::exp(2.0 * J)).epsilon(1e-10));
  CHECK(radial_sup_dist(k) == doctest::Approx(ext.max - 1.0).epsilon(1e-12));
  CHECK(radial_uniform(table).mean() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(radial_sup_dist(radial_uniform(table)) <= 1e-10);
}

TEST_CASE("from_coeffs rejects made-up negative densities") {
  auto table = spectral_table(2, 8, 64);
  std::vector<double> coeffs(9, 0.0);
  coeffs[0] = 1.0;
  coeffs[1] = 1.5;  // 1 + 1.5 r dips to -0.5
  CHECK_THROWS_AS(table->from_coeffs(coeffs), numerical_error);
  CHECK_NOTHROW(table->from_coeffs(coeffs, false));
}

TEST_CASE("norm helpers") {
  std::vector<double> c{1.0, -0.25, 0.0, 0.05};
  CHECK(a_norm(c) == doctest::Approx(1.3).epsilon(1e-14));
  CHECK(a_dist(c) == doctest::Approx(0.3).epsilon(1e-14));
  auto table = spectral_table(2, 3, 32);
  CHECK(L_functional(*table, c) == doctest::Approx(table->gamma(1) * -0.25).epsilon(1e-14));
}
