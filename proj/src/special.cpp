#include "treegibbs/special.hpp"

#include <cmath>
#include <cstdlib>

namespace treegibbs {

double bessel_i(int n, double x) {
  n = std::abs(n);
  x = std::fabs(x);  // I_n is even for even n, odd for odd n; callers use x >= 0
  double half = 0.5 * x;
  // term_0 = (x/2)^n / n!
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  double sum = term;
  double h2 = half * half;
  for (int k = 1; k < 400; ++k) {
    term *= h2 / (k * (k + n));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace treegibbs
