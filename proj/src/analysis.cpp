#include "treegibbs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "treegibbs/errors.hpp"
#include "treegibbs/format.hpp"

namespace treegibbs {

double critical_J(const Ensemble& ens, double br, double tol) {
  if (!(br > 1.0))
    throw input_error("critical_J: branching number must exceed 1 for a finite critical point");
  if (!(tol > 0.0)) throw input_error("critical_J: tol must be positive");
  auto excess = [&](double J) { return br_times_gap(ens, J, br) - 1.0; };
  double lo = 1e-12, hi = 1.0;
  int grow = 0;
  while (excess(hi) < 0.0) {
    hi *= 2.0;
    if (++grow > 64) throw numerical_error("critical_J: could not bracket the critical point");
  }
  if (excess(lo) > 0.0) throw numerical_error("critical_J: lower bracket is already supercritical");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void classify(RptScanResult& r) {
  const auto& rows = r.rows;
  int D = static_cast<int>(rows.size());
  auto s = [&](int depth) { return rows[depth - 1].sup_dist; };

  // slope of log sup_dist over the deeper half, skipping floor-level entries
  {
    int from = std::max(2, D / 2 + 1);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int depth = from; depth <= D; ++depth) {
      if (s(depth) < 1e-13) continue;
      double x = depth, y = std::log(s(depth));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (n >= 3 && n * sxx - sx * sx > 0.0) {
      r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      r.slope_valid = true;
    }
  }

  if (s(D) <= 1e-12) {
    r.verdict = "decaying";
    return;
  }
  int mid = D / 2 + 1;
  bool tail_nonincreasing = true, tail_strict = true;
  for (int depth = mid; depth < D; ++depth) {
    if (s(depth + 1) > s(depth) * (1.0 + 1e-9)) tail_nonincreasing = false;
    if (!(s(depth + 1) < s(depth))) tail_strict = false;
  }
  if (s(D) <= 1e-6 && tail_nonincreasing) {
    r.verdict = "decaying";
    return;
  }
  if (tail_strict && s(D) <= 0.75 * s(mid)) {
    r.verdict = "decaying";
    return;
  }
  std::vector<double> quarter;
  for (int depth = std::max(1, D - D / 4 + 1); depth <= D; ++depth) quarter.push_back(s(depth));
  double med = median_of(quarter);
  double low = *std::min_element(quarter.begin(), quarter.end());
  if (low > std::max(0.5 * med, 1e-3)) {
    r.verdict = "bounded-away";
    return;
  }
  r.verdict = "inconclusive";
}

}  // namespace

RptScanResult rpt_scan(const TreeSpec& t, const Ensemble& ens, double J, double J_prime,
                       int max_depth, const EngineOptions& opt) {
  if (max_depth < 4) throw input_error("rpt_scan: need max_depth >= 4 to classify");
  if (!(J_prime > 0.0) || J_prime > J) throw input_error("rpt_scan: J' must lie in (0, J]");
  RptScanResult result;
  result.J = J;
  result.J_prime = J_prime;

  TreeSpec local = t;
  local.strengths.is_constant = true;
  local.strengths.J = J;
  bool symmetric = t.kind == TreeSpec::Kind::spherically_symmetric;
  for (int depth = 1; depth <= max_depth; ++depth) {
    RecursionReport rep;
    if (symmetric) {
      rep = root_marginal_symmetric(local, depth, ens, BoundaryCondition::plus(), J_prime, opt);
    } else {
      rep = root_marginal(truncate(local, depth), ens, BoundaryCondition::plus(), J_prime, opt);
    }
    result.rows.push_back({depth, rep.sup_dist});
  }
  classify(result);
  return result;
}

std::string rpt_scan_csv(const RptScanResult& r, const std::string& model) {
  std::ostringstream out;
  out << "# schema_version=1 columns=model,J,J_prime,depth,sup_dist,verdict\n";
  for (const auto& row : r.rows) {
    out << model << ',' << fmt17(r.J) << ',' << fmt17(r.J_prime) << ',' << row.depth << ','
        << fmt17(row.sup_dist) << ',' << r.verdict << '\n';
  }
  return out.str();
}

double potts_p0(int q) {
  if (q < 2) throw input_error("potts_p0: q must be >= 2");
  return (q + 1.0) / (2.0 * q);
}

std::optional<double> potts_fixed_point(int q, double p) {
  if (q < 2) throw input_error("potts_fixed_point: q must be >= 2");
  if (!(p > 1.0 / q) || !(p < 1.0)) throw input_error("potts_fixed_point: need 1/q < p < 1");
  auto h = [&](double z) { return potts_phi(q, p, z) - 0.5 * z; };
  const double z_max = 50.0;
  const int cells = 20000;
  double prev_z = 1e-9, prev_h = h(prev_z);
  for (int i = 1; i <= cells; ++i) {
    double z = z_max * i / cells;
    double hz = h(z);
    if ((prev_h <= 0.0 && hz > 0.0) || (prev_h >= 0.0 && hz < 0.0)) {
      double lo = prev_z, hi = z;
      while (hi - lo > 1e-12) {
        double mid2 = 0.5 * (lo + hi);
        if ((h(mid2) > 0.0) == (hz > 0.0))
          hi = mid2;
        else
          lo = mid2;
      }
      return 0.5 * (lo + hi);
    }
    prev_z = z;
    prev_h = hz;
  }
  return std::nullopt;
}

CounterexampleReport counterexample_builder(int q, int binary_depth_cap,
                                            const EngineOptions& opt) {
  if (q < 3) throw input_error("counterexample_builder: needs q >= 3");
  if (binary_depth_cap < 1) throw input_error("counterexample_builder: depth cap must be >= 1");
  CounterexampleReport rep;
  rep.q = q;
  rep.p0 = potts_p0(q);
  rep.binary_depth_cap = binary_depth_cap;

  // walk p downward from p0; keep the first candidate whose fixed point is
  // comfortably positive, so the demonstration is not balanced on a knife edge
  const double step = 1e-3;
  bool found = false;
  for (int k = 1; k <= 100; ++k) {
    double p = rep.p0 - k * step;
    if (!(p > 1.0 / q)) break;
    auto z = potts_fixed_point(q, p);
    if (!z) break;  // the fixed point vanishes below some p and never returns
    rep.p_star = p;
    rep.z_star = *z;
    found = true;
    if (*z >= 0.2) break;
  }
  if (!found)
    throw numerical_error("counterexample_builder: no positive fixed point below p0");
  rep.J_star = potts_J_from_p(q, rep.p_star);
  rep.gap = potts_phi_derivative_at_zero(q, rep.p_star);

  // plus-boundary likelihood on the binary tree stays above the fixed point
  TreeSpec gamma1 = binary_tree(rep.J_star);
  rep.binary_g_min = std::numeric_limits<double>::infinity();
  for (int depth = 1; depth <= binary_depth_cap; ++depth) {
    auto ll = potts_loglikelihood_recursion(gamma1, depth, q, rep.p_star);
    rep.binary_g_min = std::min(rep.binary_g_min, ll.g_root);
  }

  // base tree Gamma: branching number in (2, 1/gap), realized by a period of
  // k twos and one three with k minimal
  double inv_gap = 1.0 / rep.gap;
  int k = 1;
  while (std::exp((k * std::log(2.0) + std::log(3.0)) / (k + 1)) >= inv_gap) {
    ++k;
    if (k > 4000)
      throw numerical_error("counterexample_builder: could not fit a branching number below 1/gap");
  }
  rep.period.assign(k, 2);
  rep.period.push_back(3);
  TreeSpec gamma = ss_tree({}, rep.period, rep.J_star);
  rep.br_gamma = branching_number(gamma);

  // stretch factor: bands must crush the deviation faster than the in-between
  // levels can regrow it
  rep.m = 2;
  while (std::pow(rep.gap, rep.m) > 1e-3) ++rep.m;

  int period_len = k + 1;
  int bands = 4;
  for (int b = 1; b <= bands; ++b) rep.cut_depths.push_back(b * period_len);
  TreeSpec gamma2 = stretch_tree(gamma, rep.cut_depths, rep.m);

  // scan the stretched truncations; band b occupies stretched levels
  // (b*period_len + (b-1)*(m-1), b*period_len + b*(m-1)]
  int final_depth = bands * period_len + bands * (rep.m - 1) + period_len;
  Ensemble ens = potts(q);
  std::vector<double> sup(final_depth + 1, 0.0);
  for (int depth = 1; depth <= final_depth; ++depth) {
    auto r = root_marginal_symmetric(gamma2, depth, ens, BoundaryCondition::plus(),
                                     std::nullopt, opt);
    rep.gamma2_scan.push_back({depth, r.sup_dist});
    sup[depth] = r.sup_dist;
  }
  rep.final_sup_dist = sup[final_depth];

  // band attenuation: the convolution acts on density deviations as
  // multiplication by alpha, so the inflow crossing a stretched edge carries
  // alpha^m times the deviation at its bottom vertex
  rep.band_ratio_bound = std::pow(rep.gap, rep.m);
  {
    double alpha = alpha_potts(q, rep.J_star);
    double norm = std::exp(rep.J_star) + (q - 1) * std::exp(-rep.J_star);
    std::vector<double> kernel_row(q, q * std::exp(-rep.J_star) / norm);
    kernel_row[0] = q * std::exp(rep.J_star) / norm;
    auto dev = [](const std::vector<double>& f) {
      double s = 0.0;
      for (double v : f) s = std::max(s, std::abs(v - 1.0));
      return s;
    };
    // truncate just below the band so the measured deviations sit far above
    // rounding noise; the ratio itself does not depend on the cut
    auto band_ratio = [&](int top, int bottom) {
      int cut = bottom + 1;
      std::vector<int> off = offspring_prefix(gamma2.ss, cut);
      std::vector<double> f;
      double dev_bottom = 0.0;
      for (int level = cut - 1; level >= top - 1; --level) {
        std::vector<double> child = kernel_row;
        if (level < cut - 1) {
          child = f;
          for (double& v : child) v = alpha * v + (1.0 - alpha);
        }
        if (level == top - 1) return dev(child) / dev_bottom;
        f.assign(q, 1.0);
        for (int c = 0; c < off[level]; ++c)
          for (int s = 0; s < q; ++s) f[s] *= child[s];
        double mean = std::accumulate(f.begin(), f.end(), 0.0) / q;
        for (double& v : f) v /= mean;
        if (level == bottom) dev_bottom = dev(f);
      }
      return 0.0;
    };
    for (int b = 1; b <= bands; ++b) {
      int bottom = b * period_len + b * (rep.m - 1);
      int top = bottom - (rep.m - 1);
      rep.band_ratios.push_back(band_ratio(top, bottom));
    }
  }
  return rep;
}

std::string counterexample_json(const CounterexampleReport& r) {
  std::ostringstream j;
  auto int_list = [](const std::vector<int>& v) {
    std::ostringstream s;
    s << '[';
    for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    s << ']';
    return s.str();
  };
  j << "{\n";
  j << "  \"schema_version\": 1,\n";
  j << "  \"q\": " << r.q << ",\n";
  j << "  \"p0\": " << fmt17(r.p0) << ",\n";
  j << "  \"p_star\": " << fmt17(r.p_star) << ",\n";
  j << "  \"J_star\": " << fmt17(r.J_star) << ",\n";
  j << "  \"z_star\": " << fmt17(r.z_star) << ",\n";
  j << "  \"gap\": " << fmt17(r.gap) << ",\n";
  j << "  \"binary_g_min\": " << fmt17(r.binary_g_min) << ",\n";
  j << "  \"binary_depth_cap\": " << r.binary_depth_cap << ",\n";
  j << "  \"period\": " << int_list(r.period) << ",\n";
  j << "  \"br_gamma\": " << fmt17(r.br_gamma) << ",\n";
  j << "  \"m\": " << r.m << ",\n";
  j << "  \"cut_depths\": " << int_list(r.cut_depths) << ",\n";
  j << "  \"gamma2_scan\": [";
  for (size_t i = 0; i < r.gamma2_scan.size(); ++i) {
    j << (i ? "," : "") << "\n    {\"depth\": " << r.gamma2_scan[i].depth
      << ", \"sup_dist\": " << fmt17(r.gamma2_scan[i].sup_dist) << "}";
  }
  j << "\n  ],\n";
  j << "  \"band_ratios\": [";
  for (size_t i = 0; i < r.band_ratios.size(); ++i)
    j << (i ? "," : "") << fmt17(r.band_ratios[i]);
  j << "],\n";
  j << "  \"band_ratio_bound\": " << fmt17(r.band_ratio_bound) << ",\n";
  j << "  \"final_sup_dist\": " << fmt17(r.final_sup_dist) << "\n";
  j << "}\n";
  return j.str();
}

ZeroBranchingReport zero_branching_decay(const TreeSpec& t, const Ensemble& ens, int max_depth,
                                         const EngineOptions& opt) {
  if (t.kind != TreeSpec::Kind::spherically_symmetric)
    throw input_error("zero_branching_decay: spherically symmetric trees only");
  if (std::fabs(branching_number(t) - 1.0) > 1e-12)
    throw input_error("zero_branching_decay: tree must have branching number 1");
  if (max_depth < 1) throw input_error("zero_branching_decay: max_depth must be >= 1");
  double J = t.strengths.J;
  if (!t.strengths.is_constant) throw input_error("zero_branching_decay: constant coupling only");

  ZeroBranchingReport rep;
  // c0: smallest kernel density value at coupling J
  if (ens.is_potts())
    rep.c0 = kernel_value_potts(ens, J, false);
  else
    rep.c0 = kernel_value_heisenberg(ens, J, -1.0);

  rep.T = 1.0;
  for (int depth = 1; depth <= max_depth; ++depth) {
    auto r = root_marginal_symmetric(t, depth, ens, BoundaryCondition::plus(), std::nullopt, opt);
    rep.rows.push_back({depth, std::log(r.max_min)});
    rep.T = std::max(rep.T, r.max_min);
  }
  rep.final_log_max_min = rep.rows.back().log_max_min;
  for (const auto& row : rep.rows) {
    if (row.log_max_min < 1e-6) {
      rep.depth_below_1e6 = row.depth;
      break;
    }
  }
  if (rep.T > 1.0) {
    rep.one_minus_eps = std::log(1.0 + (1.0 - rep.c0) * (rep.T - 1.0)) / std::log(rep.T);
  } else {
    rep.one_minus_eps = 1.0 - rep.c0;
  }

  // per-level contraction: on a pure ray the depth-(n+1) root is one kernel
  // application past the depth-n root, so consecutive rows must contract
  bool pure_ray = t.ss.preperiod.empty() && t.ss.period.size() == 1 && t.ss.period[0] == 1;
  if (pure_ray) {
    for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
      double parent = rep.rows[i + 1].log_max_min;  // one level deeper boundary
      double child = rep.rows[i].log_max_min;
      if (child < 1e-14) break;
      // the grid representation floors log Max/Min near 1e-14, hence the
      // absolute cushion on top of the relative slack
      if (parent > rep.one_minus_eps * child * (1.0 + 1e-9) + 1e-13)
        rep.per_level_ok = false;
    }
  }
  return rep;
}

}  // namespace treegibbs
