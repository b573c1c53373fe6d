#include "treegibbs/circle.hpp"

#include <cmath>

#include "treegibbs/errors.hpp"

namespace treegibbs {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

void fft(std::vector<std::complex<double>>& a, int sign) {
  const size_t n = a.size();
  if (!is_power_of_two(static_cast<int>(n))) throw input_error("fft: length must be a power of two");
  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

double CircleDensity::mean() const {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / M;
}

namespace {

void require_grid(const CircleDensity& f) {
  if (!is_power_of_two(f.M)) throw input_error("circle grid size must be a power of two");
  if (static_cast<int>(f.values.size()) != f.M)
    throw input_error("circle density has wrong number of values");
}

}  // namespace

CircleDensity circle_uniform(int M) {
  if (!is_power_of_two(M)) throw input_error("circle grid size must be a power of two");
  return {M, std::vector<double>(M, 1.0)};
}

CircleDensity circle_kernel(int M, double J, double center) {
  if (!is_power_of_two(M)) throw input_error("circle grid size must be a power of two");
  CircleDensity f{M, std::vector<double>(M)};
  for (int j = 0; j < M; ++j) f.values[j] = std::exp(J * std::cos(2.0 * M_PI * j / M - center));
  double m = f.mean();
  for (double& v : f.values) v /= m;
  return f;
}

std::vector<std::complex<double>> circle_fourier(const CircleDensity& f) {
  require_grid(f);
  std::vector<std::complex<double>> buf(f.values.begin(), f.values.end());
  fft(buf, -1);
  for (auto& b : buf) b /= static_cast<double>(f.M);
  return buf;
}

CircleDensity circle_convolve(const CircleDensity& f, const CircleDensity& g) {
  require_grid(f);
  require_grid(g);
  if (f.M != g.M) throw input_error("circle_convolve: grids differ");
  std::vector<std::complex<double>> fb(f.values.begin(), f.values.end());
  std::vector<std::complex<double>> gb(g.values.begin(), g.values.end());
  fft(fb, -1);
  fft(gb, -1);
  for (int j = 0; j < f.M; ++j) fb[j] *= gb[j];
  fft(fb, +1);
  CircleDensity out{f.M, std::vector<double>(f.M)};
  // two unscaled DFTs and one inverse: divide by M^2 to land on b_n(f) b_n(g)
  double scale = 1.0 / (static_cast<double>(f.M) * f.M);
  for (int j = 0; j < f.M; ++j) out.values[j] = fb[j].real() * scale;
  return out;
}

CircleDensity circle_convolve_kernel(const CircleDensity& f, double J) {
  return circle_convolve(f, circle_kernel(f.M, J, 0.0));
}

double circle_sup_dist(const CircleDensity& f) {
  double sup = 0.0;
  for (double v : f.values) sup = std::max(sup, std::fabs(v - 1.0));
  return sup;
}

double circle_max_min(const CircleDensity& f) {
  double lo = f.values[0], hi = f.values[0];
  for (double v : f.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 0.0)) throw numerical_error("circle_max_min: density is not strictly positive");
  return hi / lo;
}

double circle_a_dist(const CircleDensity& f) {
  auto b = circle_fourier(f);
  double acc = 0.0;
  for (size_t n = 1; n < b.size(); ++n) acc += std::abs(b[n]);
  return acc;
}

}  // namespace treegibbs
