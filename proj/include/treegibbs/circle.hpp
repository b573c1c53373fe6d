#pragma once

#include <complex>
#include <vector>

namespace treegibbs {

// Rotor densities that are not symmetric about angle 0 live on an equispaced
// circle grid theta_j = 2 pi j / M, M a power of two.  values are density
// values against normalized arc measure, so their plain average should be 1.
struct CircleDensity {
  int M = 0;
  std::vector<double> values;

  double mean() const;
};

bool is_power_of_two(int m);

// In-place unscaled radix-2 transform; sign = -1 forward, +1 inverse.
void fft(std::vector<std::complex<double>>& a, int sign);

CircleDensity circle_uniform(int M);
// exp(J cos(theta - center)) normalized to unit grid mean
CircleDensity circle_kernel(int M, double J, double center);

// b_n = (1/M) sum_j f_j e^{-i n theta_j}, DFT order n = 0..M-1.
std::vector<std::complex<double>> circle_fourier(const CircleDensity& f);

// Convolution against the symmetric kernel: b_n(result) = b_n(f) b_n(K_J).
CircleDensity circle_convolve_kernel(const CircleDensity& f, double J);
CircleDensity circle_convolve(const CircleDensity& f, const CircleDensity& g);

double circle_sup_dist(const CircleDensity& f);
double circle_max_min(const CircleDensity& f);
double circle_a_dist(const CircleDensity& f);  // sum_{n != 0} |b_n|

}  // namespace treegibbs
