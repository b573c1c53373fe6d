#include "treegibbs/ensemble.hpp"

#include <cmath>

#include "treegibbs/errors.hpp"
#include "treegibbs/quadrature.hpp"

namespace treegibbs {

Ensemble potts(int q) {
  if (q < 2) throw input_error("potts: q must be >= 2");
  return {Ensemble::Family::potts, q};
}

Ensemble heisenberg(int d) {
  if (d < 1) throw input_error("heisenberg: d must be >= 1");
  return {Ensemble::Family::heisenberg, d};
}

Ensemble ising() { return potts(2); }
Ensemble rotor() { return heisenberg(1); }

std::string Ensemble::name() const {
  if (is_potts()) return param == 2 ? "ising" : "potts:" + std::to_string(param);
  return param == 1 ? "rotor" : "heisenberg:" + std::to_string(param);
}

Ensemble ensemble_from_string(const std::string& s) {
  if (s == "ising") return ising();
  if (s == "rotor") return rotor();
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    std::string head = s.substr(0, colon);
    int value = 0;
    try {
      value = std::stoi(s.substr(colon + 1));
    } catch (...) {
      throw input_error("bad model parameter in '" + s + "'");
    }
    if (head == "potts") return potts(value);
    if (head == "heisenberg") return heisenberg(value);
  }
  throw input_error("unknown model '" + s + "' (want potts:<q>, heisenberg:<d>, ising, rotor)");
}

namespace {

constexpr int kStartNodes = 32;
constexpr int kMaxNodes = 1 << 16;
constexpr double kQuadTol = 1e-12;

// Evaluate a radial average adaptively: double the Gauss-Jacobi node count
// until two successive rule sizes agree to kQuadTol.
template <typename F>
double adaptive_radial(int d, F&& integrand) {
  double alpha = 0.5 * d - 1.0;
  double prev = 0.0;
  bool have_prev = false;
  for (int n = kStartNodes; n <= kMaxNodes; n *= 2) {
    QuadratureRule rule = gauss_jacobi(alpha, n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rule.weights[i] * integrand(rule.nodes[i]);
    if (have_prev && std::fabs(acc - prev) <= kQuadTol) return acc;
    prev = acc;
    have_prev = true;
  }
  throw numerical_error("adaptive_radial: no convergence to 1e-12 by " + std::to_string(kMaxNodes) +
                        " nodes");
}

}  // namespace

double normalizer(const Ensemble& ens, double J) {
  if (!(J > 0.0) || !std::isfinite(J)) throw input_error("normalizer: J must be positive and finite");
  if (ens.is_potts()) {
    return (std::exp(J) + (ens.q() - 1) * std::exp(-J)) / ens.q();
  }
  return adaptive_radial(ens.d(), [J](double r) { return std::exp(J * r); });
}

double kernel_value_potts(const Ensemble& ens, double J, bool match) {
  if (!ens.is_potts()) throw input_error("kernel_value_potts: not a Potts ensemble");
  double C = normalizer(ens, J);
  return std::exp(match ? J : -J) / C;
}

double kernel_value_heisenberg(const Ensemble& ens, double J, double r) {
  if (ens.is_potts()) throw input_error("kernel_value_heisenberg: not a Heisenberg ensemble");
  if (std::fabs(r) > 1.0) throw input_error("kernel_value_heisenberg: |r| must be <= 1");
  double C = normalizer(ens, J);
  return std::exp(J * r) / C;
}

double rho_d(int d, double J) {
  if (d < 1) throw input_error("rho_d: d must be >= 1");
  if (!(J > 0.0) || !std::isfinite(J)) throw input_error("rho_d: J must be positive and finite");
  double num = adaptive_radial(d, [J](double r) { return r * std::exp(J * r); });
  double den = adaptive_radial(d, [J](double r) { return std::exp(J * r); });
  return num / den;
}

double alpha_potts(int q, double J) {
  if (q < 2) throw input_error("alpha_potts: q must be >= 2");
  if (!(J > 0.0) || !std::isfinite(J)) throw input_error("alpha_potts: J must be positive and finite");
  // expm1-based numerator keeps full precision for small J
  return -std::expm1(-2.0 * J) / (1.0 + (q - 1) * std::exp(-2.0 * J));
}

double contraction_gap(const Ensemble& ens, double J) {
  return ens.is_potts() ? alpha_potts(ens.q(), J) : rho_d(ens.d(), J);
}

double br_times_gap(const Ensemble& ens, double J, double br) {
  if (!(br > 0.0)) throw input_error("br_times_gap: branching number must be positive");
  return br * contraction_gap(ens, J);
}

double potts_p_from_J(int q, double J) {
  if (q < 2) throw input_error("potts_p_from_J: q must be >= 2");
  return std::exp(J) / (std::exp(J) + (q - 1) * std::exp(-J));
}

double potts_J_from_p(int q, double p) {
  if (q < 2) throw input_error("potts_J_from_p: q must be >= 2");
  if (!(p > 1.0 / q) || !(p < 1.0))
    throw input_error("potts_J_from_p: need 1/q < p < 1 for a positive coupling");
  // p = e^J/(e^J + (q-1)e^{-J})  =>  e^{2J} = p(q-1)/(1-p)
  return 0.5 * std::log(p * (q - 1) / (1.0 - p));
}

}  // namespace treegibbs
