#pragma once

namespace treegibbs {

// Modified Bessel functions of the first kind by direct power series,
// I_n(x) = sum_k (x/2)^{2k+n} / (k! (k+n)!).  Accurate to ~1e-15 relative for
// the argument range used here (|x| <= ~30); deliberately independent of the
// quadrature path so the two can check each other.
double bessel_i(int n, double x);

inline double bessel_i0(double x) { return bessel_i(0, x); }
inline double bessel_i1(double x) { return bessel_i(1, x); }

}  // namespace treegibbs
