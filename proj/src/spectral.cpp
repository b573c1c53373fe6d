#include "treegibbs/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "treegibbs/errors.hpp"

namespace treegibbs {

namespace {

// P_n^{(a,a)}(r) for n = 0..nmax by the three-term recurrence.  Valid for
// n >= 2 at every a > -1; P_1 = (a+1) r.
void jacobi_sequence(double a, int nmax, double r, std::vector<double>& out) {
  out.resize(nmax + 1);
  out[0] = 1.0;
  if (nmax == 0) return;
  out[1] = (a + 1.0) * r;
  for (int n = 2; n <= nmax; ++n) {
    double s = 2.0 * a;  // a + b for the symmetric weight
    double c0 = 2.0 * n * (n + s) * (2.0 * n + s - 2.0);
    double c1 = (2.0 * n + s - 1.0) * (2.0 * n + s) * (2.0 * n + s - 2.0);
    double c2 = 2.0 * (n + a - 1.0) * (n + a - 1.0) * (2.0 * n + s);
    out[n] = (c1 * r * out[n - 1] - c2 * out[n - 2]) / c0;
  }
}

}  // namespace

double psi(int d, int n, double r) {
  if (d < 1) throw input_error("psi: d must be >= 1");
  if (n < 0) throw input_error("psi: n must be >= 0");
  if (std::fabs(r) > 1.0) throw input_error("psi: |r| must be <= 1");
  double a = 0.5 * d - 1.0;
  std::vector<double> at_r, at_one;
  jacobi_sequence(a, n, r, at_r);
  jacobi_sequence(a, n, 1.0, at_one);
  return at_r[n] / at_one[n];
}

SpectralTable::SpectralTable(int d, int modes, int grid_nodes) : d_(d), modes_(modes) {
  if (d < 1) throw input_error("SpectralTable: d must be >= 1");
  if (modes < 1) throw input_error("SpectralTable: need at least one nontrivial mode");
  if (grid_nodes < modes + 1)
    throw input_error("SpectralTable: grid must have more nodes than modes");
  double a = 0.5 * d - 1.0;
  rule_ = gauss_jacobi(a, grid_nodes);

  psi_.resize(static_cast<size_t>(modes + 1) * grid_nodes);
  std::vector<double> at_one, col;
  jacobi_sequence(a, modes, 1.0, at_one);
  for (int i = 0; i < grid_nodes; ++i) {
    jacobi_sequence(a, modes, rule_.nodes[i], col);
    for (int n = 0; n <= modes; ++n) psi_[n * grid_nodes + i] = col[n] / at_one[n];
  }

  gammas_.resize(modes + 1);
  for (int n = 0; n <= modes; ++n) {
    double g = 0.0;
    for (int i = 0; i < grid_nodes; ++i) {
      double p = psi_at_node(n, i);
      g += rule_.weights[i] * p * p;
    }
    gammas_[n] = g;
  }
}

std::vector<double> SpectralTable::to_coeffs(const std::vector<double>& values) const {
  if (static_cast<int>(values.size()) != grid_nodes())
    throw input_error("to_coeffs: value count does not match the grid");
  std::vector<double> coeffs(modes_ + 1);
  for (int n = 0; n <= modes_; ++n) {
    double acc = 0.0;
    for (int i = 0; i < grid_nodes(); ++i)
      acc += rule_.weights[i] * values[i] * psi_at_node(n, i);
    coeffs[n] = acc / gammas_[n];
  }
  return coeffs;
}

std::vector<double> SpectralTable::from_coeffs(const std::vector<double>& coeffs,
                                               bool check_positive) const {
  if (static_cast<int>(coeffs.size()) != modes_ + 1)
    throw input_error("from_coeffs: coefficient count does not match the table");
  std::vector<double> values(grid_nodes(), 0.0);
  for (int n = 0; n <= modes_; ++n) {
    double a = coeffs[n];
    if (a == 0.0) continue;
    for (int i = 0; i < grid_nodes(); ++i) values[i] += a * psi_at_node(n, i);
  }
  if (check_positive) {
    for (int i = 0; i < grid_nodes(); ++i) {
      if (values[i] < -1e-9) {
        std::ostringstream msg;
        msg << "from_coeffs: density went negative (" << values[i] << " at r = " << rule_.nodes[i]
            << ")";
        throw numerical_error(msg.str());
      }
    }
  }
  return values;
}

double SpectralTable::eval_coeffs(const std::vector<double>& coeffs, double r) const {
  double a = 0.5 * d_ - 1.0;
  std::vector<double> at_r, at_one;
  jacobi_sequence(a, modes_, r, at_r);
  jacobi_sequence(a, modes_, 1.0, at_one);
  double acc = 0.0;
  for (int n = 0; n <= modes_ && n < static_cast<int>(coeffs.size()); ++n)
    acc += coeffs[n] * at_r[n] / at_one[n];
  return acc;
}

std::shared_ptr<const SpectralTable> spectral_table(int d, int modes, int grid_nodes) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const SpectralTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(d, modes, grid_nodes);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const SpectralTable>(d, modes, grid_nodes);
  cache.emplace(key, table);
  return table;
}

double RadialDensity::mean() const {
  double acc = 0.0;
  for (int i = 0; i < table->grid_nodes(); ++i) acc += table->rule().weights[i] * values[i];
  return acc;
}

RadialDensity radial_uniform(std::shared_ptr<const SpectralTable> table) {
  RadialDensity f;
  f.values.assign(table->grid_nodes(), 1.0);
  f.table = std::move(table);
  return f;
}

RadialDensity radial_kernel(std::shared_ptr<const SpectralTable> table, double J) {
  RadialDensity f;
  f.values.resize(table->grid_nodes());
  for (int i = 0; i < table->grid_nodes(); ++i) f.values[i] = std::exp(J * table->rule().nodes[i]);
  f.table = std::move(table);
  double m = f.mean();  // the grid's own normalizer keeps avg at exactly 1
  for (double& v : f.values) v /= m;
  return f;
}

std::vector<double> kernel_coeffs(const SpectralTable& table, double J) {
  std::vector<double> values(table.grid_nodes());
  double m = 0.0;
  for (int i = 0; i < table.grid_nodes(); ++i) {
    values[i] = std::exp(J * table.rule().nodes[i]);
    m += table.rule().weights[i] * values[i];
  }
  for (double& v : values) v /= m;
  return table.to_coeffs(values);
}

std::vector<double> convolve_coeffs(const SpectralTable& table, const std::vector<double>& a,
                                    const std::vector<double>& b) {
  if (a.size() != b.size() || static_cast<int>(a.size()) != table.modes() + 1)
    throw input_error("convolve_coeffs: coefficient lengths must match the table");
  std::vector<double> c(a.size());
  for (size_t n = 0; n < a.size(); ++n) c[n] = table.gamma(static_cast<int>(n)) * a[n] * b[n];
  return c;
}

double indicator_mode_average(int d, int n, double t) {
  if (d < 1) throw input_error("indicator_mode_average: d must be >= 1");
  if (n < 1) throw input_error("indicator_mode_average: n must be >= 1");
  if (std::fabs(t) > 1.0) throw input_error("indicator_mode_average: |t| must be <= 1");
  double a = 0.5 * d - 1.0;
  // P_m^{(a,a)}(1) = Gamma(m+a+1) / (Gamma(a+1) m!)
  auto value_at_one = [](int m, double al) {
    return std::exp(std::lgamma(m + al + 1.0) - std::lgamma(al + 1.0) - std::lgamma(m + 1.0));
  };
  double shifted = psi(d + 2, n - 1, t) * value_at_one(n - 1, a + 1.0);
  return std::pow(1.0 - t * t, a + 1.0) * shifted /
         (2.0 * n * value_at_one(n, a) * jacobi_weight_mass(a));
}

double a_norm(const std::vector<double>& coeffs) {
  double acc = 0.0;
  for (double a : coeffs) acc += std::fabs(a);
  return acc;
}

double a_dist(const std::vector<double>& coeffs) {
  double acc = 0.0;
  for (size_t n = 1; n < coeffs.size(); ++n) acc += std::fabs(coeffs[n]);
  return acc;
}

double L_functional(const SpectralTable& table, const std::vector<double>& coeffs) {
  if (coeffs.size() < 2) throw input_error("L_functional: need mode 1");
  return table.gamma(1) * coeffs[1];
}

RadialExtrema radial_extrema(const RadialDensity& f) {
  RadialExtrema ext;
  ext.min = ext.max = f.values[0];
  for (double v : f.values) {
    ext.min = std::min(ext.min, v);
    ext.max = std::max(ext.max, v);
  }
  // refine on a theta-uniform mesh plus the endpoints; the grid nodes never
  // include r = +-1 where product-cone densities peak
  auto coeffs = f.table->to_coeffs(f.values);
  const int refine = 1024;
  for (int k = 0; k <= refine; ++k) {
    double v = f.table->eval_coeffs(coeffs, std::cos(M_PI * k / refine));
    ext.min = std::min(ext.min, v);
    ext.max = std::max(ext.max, v);
  }
  return ext;
}

double radial_sup_dist(const RadialDensity& f) {
  RadialExtrema ext = radial_extrema(f);
  return std::max(std::fabs(ext.max - 1.0), std::fabs(ext.min - 1.0));
}

double radial_max_min(const RadialDensity& f) {
  RadialExtrema ext = radial_extrema(f);
  if (!(ext.min > 0.0)) throw numerical_error("radial_max_min: density is not strictly positive");
  return ext.max / ext.min;
}

}  // namespace treegibbs
