#include <cmath>
#include <vector>

#include "doctest.h"
#include "treegibbs/errors.hpp"
#include "treegibbs/quadrature.hpp"

using namespace treegibbs;

namespace {

// avg of r^{2k} under (1-r^2)^alpha: Gamma(k+1/2) Gamma(alpha+3/2) /
// (Gamma(1/2) Gamma(k+alpha+3/2))
double even_moment(double alpha, int k) {
  return std::exp(std::lgamma(k + 0.5) + std::lgamma(alpha + 1.5) - std::lgamma(0.5) -
                  std::lgamma(k + alpha + 1.5));
}

double rule_moment(const QuadratureRule& rule, int power) {
  double s = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * std::pow(rule.nodes[i], power);
  return s;
}

}  // namespace

TEST_CASE("weight mass closed forms") {
  CHECK(jacobi_weight_mass(-0.5) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(jacobi_weight_mass(0.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(jacobi_weight_mass(0.5) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
  CHECK(jacobi_weight_mass(1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("chebyshev rule in closed form at alpha = -1/2") {
  int n = 16;
  auto rule = gauss_jacobi(-0.5, n);
  REQUIRE(static_cast<int>(rule.nodes.size()) == n);
  for (int i = 0; i < n; ++i) {
    // ascending order flips the classical index
    double expected = std::cos((2.0 * (n - i) - 1.0) * M_PI / (2.0 * n));
    CHECK(rule.nodes[i] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(rule.weights[i] == doctest::Approx(1.0 / n).epsilon(1e-14));
  }
  CHECK(rule.total_mass == doctest::Approx(M_PI).epsilon(1e-13));
}

TEST_CASE("rule basics: normalized weights, interior ascending symmetric nodes") {
  for (double alpha : {-0.5, 0.0, 0.5, 1.0}) {
    auto rule = gauss_jacobi(alpha, 33);
    double wsum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
    for (size_t i = 0; i + 1 < rule.nodes.size(); ++i) CHECK(rule.nodes[i] < rule.nodes[i + 1]);
    CHECK(rule.nodes.front() > -1.0);
    CHECK(rule.nodes.back() < 1.0);
    // symmetric weight makes the rule symmetric about 0
    size_t n = rule.nodes.size();
    for (size_t i = 0; i < n / 2; ++i) {
      CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[n - 1 - i]).epsilon(1e-13));
      CHECK(rule.weights[i] == doctest::Approx(rule.weights[n - 1 - i]).epsilon(1e-12));
    }
    CHECK(rule.total_mass == doctest::Approx(jacobi_weight_mass(alpha)).epsilon(1e-12));
  }
}

TEST_CASE("moments match the gamma-function formula") {
  for (double alpha : {-0.5, 0.0, 0.5, 1.0}) {
    auto rule = gauss_jacobi(alpha, 24);
    for (int k = 0; k <= 10; ++k) {
      CHECK(rule_moment(rule, 2 * k) == doctest::Approx(even_moment(alpha, k)).epsilon(1e-12));
      CHECK(rule_moment(rule, 2 * k + 1) == doctest::Approx(0.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("degree 2n-1 exactness at small n") {
  auto rule = gauss_jacobi(0.5, 8);
  CHECK(rule_moment(rule, 14) == doctest::Approx(even_moment(0.5, 7)).epsilon(1e-13));
}

TEST_CASE("node doubling leaves smooth averages unchanged") {
  for (double alpha : {-0.5, 0.0, 0.5}) {
    auto coarse = gauss_jacobi(alpha, 32);
    auto fine = gauss_jacobi(alpha, 64);
    auto avg_exp = [](const QuadratureRule& r) {
      double s = 0.0;
      for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::exp(r.nodes[i]);
      return s;
    };
    CHECK(avg_exp(coarse) == doctest::Approx(avg_exp(fine)).epsilon(1e-14));
  }
}

TEST_CASE("invalid rule parameters are rejected") {
  CHECK_THROWS_AS(gauss_jacobi(-1.0, 8), input_error);
  CHECK_THROWS_AS(gauss_jacobi(0.0, 0), input_error);
}
