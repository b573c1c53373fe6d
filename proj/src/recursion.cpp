#include "treegibbs/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "treegibbs/errors.hpp"

namespace treegibbs {

double PottsDensity::mean() const {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / q;
}

BoundaryCondition BoundaryCondition::plus() { return {}; }

BoundaryCondition BoundaryCondition::free_boundary() {
  BoundaryCondition bc;
  bc.kind = Kind::free_boundary;
  return bc;
}

BoundaryCondition BoundaryCondition::custom_potts(std::map<int, int> states) {
  BoundaryCondition bc;
  bc.kind = Kind::custom;
  bc.potts_states = std::move(states);
  return bc;
}

BoundaryCondition BoundaryCondition::custom_rotor(std::map<int, double> angles) {
  BoundaryCondition bc;
  bc.kind = Kind::custom;
  bc.angles = std::move(angles);
  return bc;
}

double potts_sup_dist(const PottsDensity& f) {
  double sup = 0.0;
  for (double v : f.values) sup = std::max(sup, std::fabs(v - 1.0));
  return sup;
}

double potts_max_min(const PottsDensity& f) {
  double lo = f.values[0], hi = f.values[0];
  for (double v : f.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 0.0)) throw numerical_error("potts_max_min: density is not strictly positive");
  return hi / lo;
}

double potts_likelihood_gap(const PottsDensity& f) {
  double rest = 0.0;
  for (size_t x = 1; x < f.values.size(); ++x) rest += f.values[x];
  if (!(f.values[0] > 0.0) || !(rest > 0.0))
    throw numerical_error("potts_likelihood_gap: density is not strictly positive");
  return std::log((f.q - 1) * f.values[0] / rest);
}

double density_sup_dist(const Density& f) {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PottsDensity>) return potts_sup_dist(d);
        else if constexpr (std::is_same_v<T, RadialDensity>) return radial_sup_dist(d);
        else return circle_sup_dist(d);
      },
      f);
}

double density_max_min(const Density& f) {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PottsDensity>) return potts_max_min(d);
        else if constexpr (std::is_same_v<T, RadialDensity>) return radial_max_min(d);
        else return circle_max_min(d);
      },
      f);
}

namespace {

constexpr double kDriftTol = 1e-8;
constexpr double kTailFraction = 1e-10;

// thrown internally to request a re-run at doubled spectral resolution
struct tail_overflow {};

// ----- active region of a truncation: interior plus the cutset vertices the
// root actually sees; anything hanging below the cutset is ignored
struct ActiveRegion {
  std::vector<char> in_cutset;    // by vertex id
  std::vector<int> interior;      // depth-descending
  std::vector<int> boundary;      // active cutset vertices
  int depth = 0;
  double vertices = 0.0;
};

ActiveRegion active_region(const Truncation& t) {
  validate_cutset(t.tree, t.cutset);
  ActiveRegion region;
  region.in_cutset.assign(t.tree.vertex_count(), 0);
  for (int v : t.cutset) region.in_cutset[v] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    region.depth = std::max(region.depth, t.tree.depth[v]);
    if (region.in_cutset[v]) {
      region.boundary.push_back(v);
      continue;
    }
    region.interior.push_back(v);
    for (int c : t.tree.children[v]) queue.push_back(c);
  }
  std::sort(region.interior.begin(), region.interior.end(),
            [&](int a, int b) { return t.tree.depth[a] > t.tree.depth[b]; });
  region.vertices = static_cast<double>(region.interior.size() + region.boundary.size());
  return region;
}

void check_weakening(const Truncation& t, const ActiveRegion& region,
                     std::optional<double> J_prime) {
  if (!J_prime) return;
  if (!(*J_prime > 0.0)) throw input_error("J' must be positive");
  for (int w : region.boundary) {
    double J = t.strengths.at(t.tree.parent[w], w);
    if (*J_prime > J + 1e-15)
      throw input_error("J' must not exceed the coupling it weakens (edge into vertex " +
                        std::to_string(w) + ")");
  }
}

// ----- representation policies -------------------------------------------

struct PottsOps {
  using Dens = PottsDensity;
  int q;

  Dens uniform() const { return {q, std::vector<double>(q, 1.0)}; }

  Dens kernel_row(double J, int state) const {
    double C = (std::exp(J) + (q - 1) * std::exp(-J)) / q;
    Dens f{q, std::vector<double>(q, std::exp(-J) / C)};
    f.values[state] = std::exp(J) / C;
    return f;
  }

  Dens convolve(const Dens& f, double J) const {
    double alpha = alpha_potts(q, J);
    Dens out{q, std::vector<double>(q)};
    for (int x = 0; x < q; ++x) out.values[x] = alpha * f.values[x] + (1.0 - alpha);
    double m = out.mean();
    if (std::fabs(m - 1.0) > kDriftTol)
      throw numerical_error("normalization drift in Potts convolution");
    for (double& v : out.values) v /= m;
    return out;
  }

  void multiply_into(Dens& acc, const Dens& f) const {
    for (int x = 0; x < q; ++x) acc.values[x] *= f.values[x];
  }

  void finish_product(Dens& acc) const {
    double m = acc.mean();
    if (!(m > 0.0) || !std::isfinite(m))
      throw numerical_error("Potts product lost positivity (normalizer " + std::to_string(m) + ")");
    for (double& v : acc.values) v /= m;
  }
};

struct RadialOps {
  using Dens = RadialDensity;
  std::shared_ptr<const SpectralTable> table;
  std::map<double, std::vector<double>> kernel_cache;

  Dens uniform() const { return radial_uniform(table); }
  Dens kernel_row(double J) const { return radial_kernel(table, J); }

  const std::vector<double>& kernel(double J) {
    auto it = kernel_cache.find(J);
    if (it == kernel_cache.end()) it = kernel_cache.emplace(J, kernel_coeffs(*table, J)).first;
    return it->second;
  }

  void check_tail(const std::vector<double>& coeffs) const {
    double total = a_norm(coeffs), tail = 0.0;
    for (size_t n = table->modes() / 2 + 1; n < coeffs.size(); ++n) tail += std::fabs(coeffs[n]);
    if (tail > kTailFraction * total) throw tail_overflow{};
  }

  Dens convolve(const Dens& f, double J) {
    auto coeffs = table->to_coeffs(f.values);
    check_tail(coeffs);
    auto conv = convolve_coeffs(*table, coeffs, kernel(J));
    Dens out{table, table->from_coeffs(conv)};
    double m = out.mean();
    if (std::fabs(m - 1.0) > kDriftTol)
      throw numerical_error("normalization drift in radial convolution");
    for (double& v : out.values) v /= m;
    return out;
  }

  void multiply_into(Dens& acc, const Dens& f) const {
    for (size_t i = 0; i < acc.values.size(); ++i) acc.values[i] *= f.values[i];
  }

  void finish_product(Dens& acc) const {
    double m = acc.mean();
    if (!(m > 0.0) || !std::isfinite(m))
      throw numerical_error("radial product lost positivity (normalizer " + std::to_string(m) +
                            ")");
    for (double& v : acc.values) v /= m;
  }
};

struct CircleOps {
  using Dens = CircleDensity;
  int M;

  Dens uniform() const { return circle_uniform(M); }
  Dens kernel_row(double J, double angle) const { return circle_kernel(M, J, angle); }

  void check_tail(const Dens& f) const {
    auto b = circle_fourier(f);
    double total = 0.0, tail = 0.0;
    for (int n = 0; n < M; ++n) {
      double mag = std::abs(b[n]);
      total += mag;
      if (std::min(n, M - n) > M / 4) tail += mag;
    }
    if (tail > kTailFraction * total) throw tail_overflow{};
  }

  Dens convolve(const Dens& f, double J) const {
    check_tail(f);
    Dens out = circle_convolve_kernel(f, J);
    double m = out.mean();
    if (std::fabs(m - 1.0) > kDriftTol)
      throw numerical_error("normalization drift in circle convolution");
    for (double& v : out.values) v /= m;
    return out;
  }

  void multiply_into(Dens& acc, const Dens& f) const {
    for (int i = 0; i < M; ++i) acc.values[i] *= f.values[i];
  }

  void finish_product(Dens& acc) const {
    double m = acc.mean();
    if (!(m > 0.0) || !std::isfinite(m))
      throw numerical_error("circle product lost positivity (normalizer " + std::to_string(m) +
                            ")");
    for (double& v : acc.values) v /= m;
  }
};

// ----- generic bottom-up traversal ---------------------------------------

template <class Ops, class BoundaryFactor>
typename Ops::Dens run_explicit(const Truncation& t, const ActiveRegion& region,
                                const BoundaryCondition& bc, std::optional<double> J_prime,
                                Ops& ops, BoundaryFactor&& boundary_factor) {
  using Dens = typename Ops::Dens;
  std::vector<Dens> dens(t.tree.vertex_count());
  for (int v : region.interior) {  // depth-descending: children first
    bool have = false;
    Dens acc;
    for (int w : t.tree.children[v]) {
      Dens factor;
      if (region.in_cutset[w]) {
        if (bc.kind == BoundaryCondition::Kind::free_boundary) continue;
        double J = J_prime ? *J_prime : t.strengths.at(v, w);
        factor = boundary_factor(w, J);
      } else {
        factor = ops.convolve(dens[w], t.strengths.at(v, w));
      }
      if (!have) {
        acc = std::move(factor);
        have = true;
      } else {
        ops.multiply_into(acc, factor);
      }
    }
    if (!have) acc = ops.uniform();
    ops.finish_product(acc);
    dens[v] = std::move(acc);
  }
  return dens[0];
}

RecursionReport make_report(PottsDensity f, const ActiveRegion& region) {
  RecursionReport rep;
  rep.sup_dist = potts_sup_dist(f);
  rep.max_min = potts_max_min(f);
  rep.L_value = potts_likelihood_gap(f);
  rep.depth = region.depth;
  rep.tree_vertices = region.vertices;
  rep.grid_size = f.q;
  rep.representation = "potts";
  rep.root = std::move(f);
  return rep;
}

RecursionReport make_report(RadialDensity f, const ActiveRegion& region) {
  RecursionReport rep;
  auto coeffs = f.table->to_coeffs(f.values);
  rep.sup_dist = radial_sup_dist(f);
  rep.a_dist = a_dist(coeffs);
  rep.max_min = radial_max_min(f);
  rep.L_value = L_functional(*f.table, coeffs);
  rep.depth = region.depth;
  rep.tree_vertices = region.vertices;
  rep.grid_size = f.table->grid_nodes();
  rep.representation = "radial";
  rep.root = std::move(f);
  return rep;
}

RecursionReport make_report(CircleDensity f, const ActiveRegion& region) {
  RecursionReport rep;
  auto b = circle_fourier(f);
  rep.sup_dist = circle_sup_dist(f);
  double adist = 0.0;
  for (size_t n = 1; n < b.size(); ++n) adist += std::abs(b[n]);
  rep.a_dist = adist;
  rep.max_min = circle_max_min(f);
  rep.L_value = b.size() > 1 ? b[1].real() : 0.0;
  rep.depth = region.depth;
  rep.tree_vertices = region.vertices;
  rep.grid_size = f.M;
  rep.representation = "circle";
  rep.root = std::move(f);
  return rep;
}

void check_custom_keys(const ActiveRegion& region, const std::map<int, int>& potts_states,
                       const std::map<int, double>& angles, bool is_potts) {
  size_t given = is_potts ? potts_states.size() : angles.size();
  if (given != region.boundary.size())
    throw input_error("custom boundary must assign exactly the cutset vertices (" +
                      std::to_string(region.boundary.size()) + " needed, " +
                      std::to_string(given) + " given)");
  for (int w : region.boundary) {
    if (is_potts ? !potts_states.count(w) : !angles.count(w))
      throw input_error("custom boundary misses cutset vertex " + std::to_string(w));
  }
}

RecursionReport run_once(const Truncation& t, const Ensemble& ens, const BoundaryCondition& bc,
                         std::optional<double> J_prime, const EngineOptions& opt) {
  ActiveRegion region = active_region(t);
  check_weakening(t, region, J_prime);

  if (ens.is_potts()) {
    PottsOps ops{ens.q()};
    if (bc.kind == BoundaryCondition::Kind::custom) {
      check_custom_keys(region, bc.potts_states, {}, true);
      for (auto& [w, s] : bc.potts_states)
        if (s < 0 || s >= ens.q()) throw input_error("custom Potts state out of range");
    }
    auto factor = [&](int w, double J) {
      int state = bc.kind == BoundaryCondition::Kind::custom ? bc.potts_states.at(w) : 0;
      return ops.kernel_row(J, state);
    };
    return make_report(run_explicit(t, region, bc, J_prime, ops, factor), region);
  }

  if (bc.kind == BoundaryCondition::Kind::custom) {
    if (ens.d() != 1)
      throw input_error("custom boundary angles are only supported for the rotor (d = 1)");
    check_custom_keys(region, {}, bc.angles, false);
    CircleOps ops{opt.circle_angles};
    auto factor = [&](int w, double J) { return ops.kernel_row(J, bc.angles.at(w)); };
    return make_report(run_explicit(t, region, bc, J_prime, ops, factor), region);
  }

  RadialOps ops{spectral_table(ens.d(), opt.modes, opt.radial_nodes), {}};
  auto factor = [&](int, double J) { return ops.kernel_row(J); };
  return make_report(run_explicit(t, region, bc, J_prime, ops, factor), region);
}

template <class Runner>
RecursionReport with_escalation(const EngineOptions& opt, Runner&& runner) {
  EngineOptions local = opt;
  for (int attempt = 0;; ++attempt) {
    try {
      return runner(local);
    } catch (const tail_overflow&) {
      if (attempt >= opt.max_escalations)
        throw numerical_error(
            "spectral tail still above threshold at maximum resolution; density is not "
            "representable at the configured bandwidth");
      local.modes *= 2;
      local.radial_nodes *= 2;
      local.circle_angles *= 2;
    }
  }
}

}  // namespace

RecursionReport root_marginal(const Truncation& t, const Ensemble& ens,
                              const BoundaryCondition& bc, std::optional<double> J_prime,
                              const EngineOptions& opt) {
  return with_escalation(
      opt, [&](const EngineOptions& local) { return run_once(t, ens, bc, J_prime, local); });
}

namespace {

// one density per level; valid because every vertex of a level is equivalent
// under a constant coupling and a level cutset
template <class Ops, class MakeBoundary>
RecursionReport run_symmetric(const std::vector<int>& offspring, const Ensemble&,
                              const BoundaryCondition& bc, double J, std::optional<double> J_prime,
                              Ops& ops, MakeBoundary&& make_boundary) {
  int depth = static_cast<int>(offspring.size());
  typename Ops::Dens f;
  bool free_bc = bc.kind == BoundaryCondition::Kind::free_boundary;
  double Jb = J_prime ? *J_prime : J;
  for (int level = depth - 1; level >= 0; --level) {
    int k = offspring[level];
    typename Ops::Dens factor;
    if (level == depth - 1) {
      if (free_bc) {
        f = ops.uniform();
        continue;
      }
      factor = make_boundary(Jb);
    } else {
      factor = ops.convolve(f, J);
    }
    typename Ops::Dens acc = factor;
    for (int c = 1; c < k; ++c) ops.multiply_into(acc, factor);
    ops.finish_product(acc);
    f = std::move(acc);
  }

  ActiveRegion region;
  region.depth = depth;
  double level_size = 1.0, total = 1.0;
  for (int level = 0; level < depth; ++level) {
    level_size *= offspring[level];
    total += level_size;
  }
  region.vertices = total;
  return make_report(std::move(f), region);
}

}  // namespace

RecursionReport root_marginal_symmetric(const TreeSpec& t, int depth, const Ensemble& ens,
                                        const BoundaryCondition& bc,
                                        std::optional<double> J_prime, const EngineOptions& opt) {
  if (t.kind != TreeSpec::Kind::spherically_symmetric)
    throw input_error("root_marginal_symmetric: spherically symmetric trees only");
  if (!t.strengths.is_constant)
    throw input_error("root_marginal_symmetric: constant coupling only");
  if (bc.kind == BoundaryCondition::Kind::custom)
    throw input_error("root_marginal_symmetric: custom boundaries need the explicit engine");
  if (depth < 1) throw input_error("root_marginal_symmetric: depth must be >= 1");
  double J = t.strengths.J;
  if (J_prime && (!(*J_prime > 0.0) || *J_prime > J + 1e-15))
    throw input_error("J' must lie in (0, J]");
  std::vector<int> offspring = offspring_prefix(t.ss, depth);

  return with_escalation(opt, [&](const EngineOptions& local) {
    if (ens.is_potts()) {
      PottsOps ops{ens.q()};
      auto boundary = [&](double Jb) { return ops.kernel_row(Jb, 0); };
      return run_symmetric(offspring, ens, bc, J, J_prime, ops, boundary);
    }
    RadialOps ops{spectral_table(ens.d(), local.modes, local.radial_nodes), {}};
    auto boundary = [&](double Jb) { return ops.kernel_row(Jb); };
    return run_symmetric(offspring, ens, bc, J, J_prime, ops, boundary);
  });
}

// ----- brute force oracles ------------------------------------------------

Density brute_force_marginal(const Truncation& t, const Ensemble& ens,
                             const BoundaryCondition& bc, int circle_angles) {
  ActiveRegion region = active_region(t);
  bool free_bc = bc.kind == BoundaryCondition::Kind::free_boundary;

  // edges inside the active region, boundary edges kept separately
  std::vector<std::pair<int, int>> inner_edges, boundary_edges;
  for (int v : region.interior) {
    for (int w : t.tree.children[v]) {
      if (region.in_cutset[w])
        boundary_edges.emplace_back(v, w);
      else
        inner_edges.emplace_back(v, w);
    }
  }

  if (ens.is_potts()) {
    int q = ens.q();
    if (region.interior.size() > 10)
      throw input_error("brute_force_marginal: more than 10 interior vertices");
    if (bc.kind == BoundaryCondition::Kind::custom)
      check_custom_keys(region, bc.potts_states, {}, true);
    std::vector<int> index_of(t.tree.vertex_count(), -1);
    for (size_t i = 0; i < region.interior.size(); ++i) index_of[region.interior[i]] = static_cast<int>(i);
    int root_idx = index_of[0];

    std::vector<double> weight_sum(q, 0.0);
    std::vector<int> state(region.interior.size(), 0);
    while (true) {
      double w = 1.0;
      for (auto& [a, b] : inner_edges) {
        double J = t.strengths.at(a, b);
        w *= std::exp(state[index_of[a]] == state[index_of[b]] ? J : -J);
      }
      if (!free_bc) {
        for (auto& [a, b] : boundary_edges) {
          double J = t.strengths.at(a, b);
          int s = bc.kind == BoundaryCondition::Kind::custom ? bc.potts_states.at(b) : 0;
          w *= std::exp(state[index_of[a]] == s ? J : -J);
        }
      }
      weight_sum[state[root_idx]] += w;
      // odometer
      size_t pos = 0;
      while (pos < state.size() && ++state[pos] == q) state[pos++] = 0;
      if (pos == state.size()) break;
    }
    double total = 0.0;
    for (double v : weight_sum) total += v;
    PottsDensity f{q, weight_sum};
    for (double& v : f.values) v *= q / total;
    return f;
  }

  if (ens.d() != 1) throw input_error("brute_force_marginal: continuous oracle is rotor-only");
  if (region.interior.size() > 3)
    throw input_error("brute_force_marginal: more than 3 interior vertices for the rotor");
  if (bc.kind == BoundaryCondition::Kind::custom) check_custom_keys(region, {}, bc.angles, false);
  int M = circle_angles;
  if (!is_power_of_two(M)) throw input_error("circle grid size must be a power of two");

  std::vector<int> index_of(t.tree.vertex_count(), -1);
  for (size_t i = 0; i < region.interior.size(); ++i) index_of[region.interior[i]] = static_cast<int>(i);
  int root_idx = index_of[0];

  // lookup tables: inner edges by index difference, boundary edges by index
  auto wrap_kernel = [&](double J) {
    std::vector<double> k(M);
    for (int d = 0; d < M; ++d) k[d] = std::exp(J * std::cos(2.0 * M_PI * d / M));
    return k;
  };
  std::vector<std::vector<double>> inner_k, boundary_k;
  for (auto& [a, b] : inner_edges) inner_k.push_back(wrap_kernel(t.strengths.at(a, b)));
  if (!free_bc) {
    for (auto& [a, b] : boundary_edges) {
      double J = t.strengths.at(a, b);
      double angle = bc.kind == BoundaryCondition::Kind::custom ? bc.angles.at(b) : 0.0;
      std::vector<double> k(M);
      for (int i = 0; i < M; ++i) k[i] = std::exp(J * std::cos(2.0 * M_PI * i / M - angle));
      boundary_k.push_back(std::move(k));
    }
  }

  std::vector<double> values(M, 0.0);
  std::vector<int> idx(region.interior.size(), 0);
  while (true) {
    double w = 1.0;
    for (size_t e = 0; e < inner_edges.size(); ++e) {
      int d = idx[index_of[inner_edges[e].first]] - idx[index_of[inner_edges[e].second]];
      w *= inner_k[e][(d % M + M) % M];
    }
    if (!free_bc) {
      for (size_t e = 0; e < boundary_edges.size(); ++e)
        w *= boundary_k[e][idx[index_of[boundary_edges[e].first]]];
    }
    values[idx[root_idx]] += w;
    size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == M) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  CircleDensity f{M, values};
  double m = f.mean();
  for (double& v : f.values) v /= m;
  return f;
}

// ----- scalar Potts log-likelihood recursion ------------------------------

double potts_phi(int q, double p, double z) {
  if (q < 2) throw input_error("potts_phi: q must be >= 2");
  if (!(p > 1.0 / q) || !(p < 1.0)) throw input_error("potts_phi: need 1/q < p < 1");
  double w = (1.0 - p) / (q - 1);
  if (z > 0.0) {
    double e = std::exp(-z);
    return std::log(p + (1.0 - p) * e) - std::log(w + (1.0 - w) * e);
  }
  double e = std::exp(z);
  return std::log(p * e + 1.0 - p) - std::log(w * e + 1.0 - w);
}

double potts_phi_infinity(int q, double p) {
  if (q < 2) throw input_error("potts_phi_infinity: q must be >= 2");
  if (!(p > 1.0 / q) || !(p < 1.0)) throw input_error("potts_phi_infinity: need 1/q < p < 1");
  return std::log(p * (q - 1) / (1.0 - p));
}

double potts_phi_derivative_at_zero(int q, double p) {
  return p - (1.0 - p) / (q - 1);
}

LoglikelihoodReport potts_loglikelihood_recursion(const TreeSpec& t, int depth, int q, double p) {
  if (t.kind != TreeSpec::Kind::spherically_symmetric)
    throw input_error("potts_loglikelihood_recursion: spherically symmetric trees only");
  if (depth < 1) throw input_error("potts_loglikelihood_recursion: depth must be >= 1");
  std::vector<int> offspring = offspring_prefix(t.ss, depth);
  LoglikelihoodReport rep;
  rep.g_by_level.assign(depth, 0.0);
  double g = 0.0;
  for (int level = depth - 1; level >= 0; --level) {
    double inflow = (level == depth - 1) ? potts_phi_infinity(q, p) : potts_phi(q, p, g);
    g = offspring[level] * inflow;
    rep.g_by_level[level] = g;
  }
  rep.g_root = g;
  return rep;
}

DominationCheck rotor_boundary_domination_check(const Truncation& t, double J,
                                                const std::map<int, double>& angles,
                                                const EngineOptions& opt) {
  ActiveRegion region = active_region(t);
  std::map<int, double> aligned;
  for (int w : region.boundary) aligned[w] = 0.0;

  Truncation local = t;
  local.strengths.is_constant = true;
  local.strengths.J = J;
  auto custom = root_marginal(local, rotor(), BoundaryCondition::custom_rotor(angles),
                              std::nullopt, opt);
  auto plus = root_marginal(local, rotor(), BoundaryCondition::custom_rotor(aligned),
                            std::nullopt, opt);
  DominationCheck check;
  check.sup_custom = custom.sup_dist;
  check.sup_plus = plus.sup_dist;
  check.dominated = check.sup_custom <= check.sup_plus + 1e-9;
  return check;
}

}  // namespace treegibbs
