#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "treegibbs/analysis.hpp"
#include "treegibbs/ensemble.hpp"
#include "treegibbs/errors.hpp"
#include "treegibbs/format.hpp"
#include "treegibbs/recursion.hpp"
#include "treegibbs/tree.hpp"
#include "treegibbs/validate.hpp"

namespace {

using namespace treegibbs;

struct TreeSelection {
  std::string file;
  bool binary = false;
  bool ray = false;
  std::string ss;
};

void add_tree_options(CLI::App* cmd, TreeSelection& sel) {
  auto* file = cmd->add_option("--tree", sel.file, "tree specification file");
  auto* binary = cmd->add_flag("--binary", sel.binary, "homogeneous binary tree");
  auto* ray = cmd->add_flag("--ray", sel.ray, "single ray");
  auto* ss = cmd->add_option(
      "--ss", sel.ss, "offspring sequence 'pre:period' or 'period', comma separated");
  file->excludes(binary)->excludes(ray)->excludes(ss);
  binary->excludes(ray)->excludes(ss);
  ray->excludes(ss);
}

bool has_selection(const TreeSelection& sel) {
  return !sel.file.empty() || sel.binary || sel.ray || !sel.ss.empty();
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw input_error("bad offspring entry '" + tok + "'");
    }
  }
  if (out.empty()) throw input_error("empty offspring sequence");
  return out;
}

TreeSpec resolve_tree(const TreeSelection& sel, std::optional<double> J) {
  double j = J.value_or(1.0);
  if (!sel.file.empty()) {
    TreeSpec t = parse_tree_file(sel.file);
    if (J) {
      t.strengths = Strengths{};
      t.strengths.J = *J;
    }
    return t;
  }
  if (sel.binary) return binary_tree(j);
  if (sel.ray) return ray_tree(j);
  if (!sel.ss.empty()) {
    auto colon = sel.ss.find(':');
    std::vector<int> pre, period;
    if (colon == std::string::npos) {
      period = parse_int_list(sel.ss);
    } else {
      if (colon > 0) pre = parse_int_list(sel.ss.substr(0, colon));
      period = parse_int_list(sel.ss.substr(colon + 1));
    }
    return ss_tree(std::move(pre), std::move(period), j);
  }
  throw input_error("no tree given: use --tree, --binary, --ray, or --ss");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw input_error("cannot open output file " + out_path);
  f << text;
  if (!f) throw input_error("failed writing output file " + out_path);
}

std::string opt_num(const std::optional<double>& v) { return v ? fmt17(*v) : "null"; }

// ----- critical -----------------------------------------------------------

struct CriticalArgs {
  std::string model;
  double br = 0.0;
  bool br_given = false;
  TreeSelection tree;
  double tol = 1e-10;
  std::string out, format = "json";
};

int run_critical(const CriticalArgs& a) {
  Ensemble ens = ensemble_from_string(a.model);
  if (!a.br_given && !has_selection(a.tree))
    throw input_error("critical: give --br or a spherically symmetric tree");
  double br = a.br_given ? a.br : branching_number(resolve_tree(a.tree, std::nullopt));
  double jc = critical_J(ens, br, a.tol);
  double gap = contraction_gap(ens, jc);
  std::ostringstream o;
  if (a.format == "csv") {
    o << "# schema_version=1 columns=model,br,critical_J,gap_at_critical\n";
    o << ens.name() << ',' << fmt17(br) << ',' << fmt17(jc) << ',' << fmt17(gap) << '\n';
  } else {
    o << "{\n  \"schema_version\": 1,\n  \"command\": \"critical\",\n";
    o << "  \"model\": \"" << ens.name() << "\",\n";
    o << "  \"br\": " << fmt17(br) << ",\n";
    o << "  \"critical_J\": " << fmt17(jc) << ",\n";
    o << "  \"gap_at_critical\": " << fmt17(gap) << ",\n";
    o << "  \"br_times_gap\": " << fmt17(br * gap) << "\n}\n";
  }
  emit(o.str(), a.out);
  return 0;
}

// ----- recurse ------------------------------------------------------------

struct RecurseArgs {
  std::string model;
  TreeSelection tree;
  double J = 1.0;
  bool J_given = false;
  double Jprime = 0.0;
  bool Jprime_given = false;
  int depth = 8;
  int grid = 0;
  int modes = 0;
  std::string boundary = "plus";
  std::string out, format = "json";
};

int run_recurse(const RecurseArgs& a) {
  Ensemble ens = ensemble_from_string(a.model);
  TreeSpec t = resolve_tree(a.tree, a.J_given ? std::optional<double>(a.J) : std::nullopt);
  EngineOptions opt;
  if (a.modes > 0) opt.modes = a.modes;
  if (a.grid > 0) {
    opt.radial_nodes = a.grid;
    opt.circle_angles = a.grid;
  }
  BoundaryCondition bc =
      a.boundary == "free" ? BoundaryCondition::free_boundary() : BoundaryCondition::plus();
  std::optional<double> jp =
      a.Jprime_given ? std::optional<double>(a.Jprime) : std::nullopt;
  RecursionReport rep;
  if (t.kind == TreeSpec::Kind::spherically_symmetric && t.strengths.is_constant)
    rep = root_marginal_symmetric(t, a.depth, ens, bc, jp, opt);
  else
    rep = root_marginal(truncate(t, a.depth), ens, bc, jp, opt);

  std::optional<double> shown_J;
  if (t.strengths.is_constant) shown_J = t.strengths.J;
  std::ostringstream o;
  if (a.format == "csv") {
    o << "# schema_version=1 "
         "columns=model,J,J_prime,boundary,depth,representation,grid_size,tree_vertices,"
         "sup_dist,a_dist,max_min,L_value\n";
    o << ens.name() << ',' << (shown_J ? fmt17(*shown_J) : "") << ','
      << (jp ? fmt17(*jp) : "") << ',' << a.boundary << ',' << rep.depth << ','
      << rep.representation << ',' << rep.grid_size << ',' << fmt17(rep.tree_vertices) << ','
      << fmt17(rep.sup_dist) << ',' << (rep.a_dist ? fmt17(*rep.a_dist) : "") << ','
      << fmt17(rep.max_min) << ',' << fmt17(rep.L_value) << '\n';
  } else {
    o << "{\n  \"schema_version\": 1,\n  \"command\": \"recurse\",\n";
    o << "  \"model\": \"" << ens.name() << "\",\n";
    o << "  \"J\": " << opt_num(shown_J) << ",\n";
    o << "  \"J_prime\": " << opt_num(jp) << ",\n";
    o << "  \"boundary\": \"" << a.boundary << "\",\n";
    o << "  \"depth\": " << rep.depth << ",\n";
    o << "  \"representation\": \"" << rep.representation << "\",\n";
    o << "  \"grid_size\": " << rep.grid_size << ",\n";
    o << "  \"tree_vertices\": " << fmt17(rep.tree_vertices) << ",\n";
    o << "  \"sup_dist\": " << fmt17(rep.sup_dist) << ",\n";
    o << "  \"a_dist\": " << opt_num(rep.a_dist) << ",\n";
    o << "  \"max_min\": " << fmt17(rep.max_min) << ",\n";
    o << "  \"L_value\": " << fmt17(rep.L_value) << "\n}\n";
  }
  emit(o.str(), a.out);
  return 0;
}

// ----- scan-rpt -----------------------------------------------------------

struct ScanArgs {
  std::string model;
  TreeSelection tree;
  double J = 1.0;
  double Jprime = 0.0;
  bool Jprime_given = false;
  int depth = 16;
  int grid = 0;
  int modes = 0;
  std::string out, format = "csv";
};

int run_scan(const ScanArgs& a) {
  Ensemble ens = ensemble_from_string(a.model);
  TreeSpec t = resolve_tree(a.tree, a.J);
  EngineOptions opt;
  if (a.modes > 0) opt.modes = a.modes;
  if (a.grid > 0) {
    opt.radial_nodes = a.grid;
    opt.circle_angles = a.grid;
  }
  double jp = a.Jprime_given ? a.Jprime : a.J / 10.0;
  RptScanResult res = rpt_scan(t, ens, a.J, jp, a.depth, opt);
  std::optional<double> log_br_gap;
  if (t.kind == TreeSpec::Kind::spherically_symmetric)
    log_br_gap = std::log(br_times_gap(ens, a.J, branching_number(t)));
  std::ostringstream o;
  if (a.format == "csv") {
    o << rpt_scan_csv(res, ens.name());
  } else {
    o << "{\n  \"schema_version\": 1,\n  \"command\": \"scan-rpt\",\n";
    o << "  \"model\": \"" << ens.name() << "\",\n";
    o << "  \"J\": " << fmt17(res.J) << ",\n";
    o << "  \"J_prime\": " << fmt17(res.J_prime) << ",\n";
    o << "  \"verdict\": \"" << res.verdict << "\",\n";
    o << "  \"slope\": " << (res.slope_valid ? fmt17(res.slope) : "null") << ",\n";
    o << "  \"log_br_gap\": " << opt_num(log_br_gap) << ",\n";
    o << "  \"rows\": [";
    for (size_t i = 0; i < res.rows.size(); ++i) {
      o << (i ? "," : "") << "\n    {\"depth\": " << res.rows[i].depth
        << ", \"sup_dist\": " << fmt17(res.rows[i].sup_dist) << "}";
    }
    o << "\n  ]\n}\n";
  }
  emit(o.str(), a.out);
  return 0;
}

// ----- fixed-point --------------------------------------------------------

struct FixedPointArgs {
  int q = 3;
  double p = 0.0;
  std::string out, format = "text";
};

int run_fixed_point(const FixedPointArgs& a) {
  auto z = potts_fixed_point(a.q, a.p);
  std::ostringstream o;
  if (a.format == "csv") {
    o << "# schema_version=1 columns=q,p,p0,z\n";
    o << a.q << ',' << fmt17(a.p) << ',' << fmt17(potts_p0(a.q)) << ','
      << (z ? fmt17(*z) : "") << '\n';
  } else if (a.format == "json") {
    o << "{\n  \"schema_version\": 1,\n  \"command\": \"fixed-point\",\n";
    o << "  \"q\": " << a.q << ",\n";
    o << "  \"p\": " << fmt17(a.p) << ",\n";
    o << "  \"p0\": " << fmt17(potts_p0(a.q)) << ",\n";
    o << "  \"z\": " << (z ? fmt17(*z) : "null") << "\n}\n";
  } else {
    o << (z ? "z = " + fmt17(*z) : "none") << '\n';
  }
  emit(o.str(), a.out);
  return 0;
}

// ----- counterexample -----------------------------------------------------

struct CounterexampleArgs {
  int q = 3;
  int depth = 30;
  int grid = 0;
  int modes = 0;
  std::string out, format = "json";
};

int run_counterexample(const CounterexampleArgs& a) {
  EngineOptions opt;
  if (a.modes > 0) opt.modes = a.modes;
  if (a.grid > 0) {
    opt.radial_nodes = a.grid;
    opt.circle_angles = a.grid;
  }
  CounterexampleReport r = counterexample_builder(a.q, a.depth, opt);
  std::ostringstream o;
  if (a.format == "csv") {
    o << "# schema_version=1 columns=depth,sup_dist\n";
    o << "# q=" << r.q << " p_star=" << fmt17(r.p_star) << " J_star=" << fmt17(r.J_star)
      << " gap=" << fmt17(r.gap) << " m=" << r.m
      << " final_sup_dist=" << fmt17(r.final_sup_dist) << '\n';
    for (const auto& row : r.gamma2_scan)
      o << row.depth << ',' << fmt17(row.sup_dist) << '\n';
  } else {
    o << counterexample_json(r);
  }
  emit(o.str(), a.out);
  return 0;
}

// ----- validate -----------------------------------------------------------

struct ValidateArgs {
  std::uint64_t seed = 0;
  bool quick = false;
  std::string out, format = "text";
};

int run_validate(const ValidateArgs& a) {
  ValidationReport rep = run_validation(a.seed, a.quick);
  std::ostringstream o;
  if (a.format == "json") {
    o << validation_json(rep);
  } else if (a.format == "csv") {
    o << "# schema_version=1 columns=name,passed,worst,bound,detail\n";
    for (const auto& c : rep.checks) {
      o << c.name << ',' << (c.passed ? "true" : "false") << ',' << fmt17(c.worst) << ','
        << fmt17(c.bound) << ",\"" << c.detail << "\"\n";
    }
  } else {
    o << validation_text(rep);
  }
  emit(o.str(), a.out);
  return rep.all_passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gibbs measures on trees: recursions, spectral gaps, phase-transition probes"};
  app.require_subcommand(1);

  auto format_check = CLI::IsMember({"csv", "json"});
  auto format_check_text = CLI::IsMember({"csv", "json", "text"});

  CriticalArgs crit;
  auto* c_crit = app.add_subcommand("critical", "critical coupling where br * gap(J) = 1");
  c_crit->add_option("--model", crit.model, "potts:<q>|heisenberg:<d>|ising|rotor")->required();
  auto* br_opt = c_crit->add_option("--br", crit.br, "branching number (overrides the tree)");
  add_tree_options(c_crit, crit.tree);
  c_crit->add_option("--tol", crit.tol, "bisection tolerance on J");
  c_crit->add_option("--out", crit.out, "write output here instead of stdout");
  c_crit->add_option("--format", crit.format, "csv|json")->check(format_check);

  RecurseArgs rec;
  auto* c_rec = app.add_subcommand("recurse", "root marginal of a truncated tree");
  c_rec->add_option("--model", rec.model, "potts:<q>|heisenberg:<d>|ising|rotor")->required();
  add_tree_options(c_rec, rec.tree);
  auto* rec_J = c_rec->add_option("--J", rec.J, "coupling strength (overrides file strengths)");
  auto* rec_Jp = c_rec->add_option("--Jprime", rec.Jprime, "weakened coupling on boundary edges");
  c_rec->add_option("--depth", rec.depth, "truncation depth")->check(CLI::PositiveNumber);
  c_rec->add_option("--grid", rec.grid, "radial nodes / circle angles");
  c_rec->add_option("--modes", rec.modes, "spectral mode cutoff");
  c_rec->add_option("--boundary", rec.boundary, "plus|free")
      ->check(CLI::IsMember({"plus", "free"}));
  c_rec->add_option("--out", rec.out, "write output here instead of stdout");
  c_rec->add_option("--format", rec.format, "csv|json")->check(format_check);

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("scan-rpt", "weakened-boundary distance scan over depths");
  c_scan->add_option("--model", scan.model, "potts:<q>|heisenberg:<d>|ising|rotor")->required();
  add_tree_options(c_scan, scan.tree);
  c_scan->add_option("--J", scan.J, "coupling strength")->required();
  auto* scan_Jp = c_scan->add_option("--Jprime", scan.Jprime, "boundary weakening, default J/10");
  c_scan->add_option("--depth", scan.depth, "deepest truncation")->check(CLI::PositiveNumber);
  c_scan->add_option("--grid", scan.grid, "radial nodes / circle angles");
  c_scan->add_option("--modes", scan.modes, "spectral mode cutoff");
  c_scan->add_option("--out", scan.out, "write output here instead of stdout");
  c_scan->add_option("--format", scan.format, "csv|json")->check(format_check);

  FixedPointArgs fp;
  auto* c_fp = app.add_subcommand("fixed-point", "positive fixed point of the scalar recursion");
  c_fp->add_option("--q", fp.q, "number of states")->required();
  c_fp->add_option("--p", fp.p, "agreement probability in (1/q, 1)")->required();
  c_fp->add_option("--out", fp.out, "write output here instead of stdout");
  c_fp->add_option("--format", fp.format, "csv|json|text")->check(format_check_text);

  CounterexampleArgs ce;
  auto* c_ce = app.add_subcommand("counterexample",
                                  "non-robust transition construction for q >= 3");
  c_ce->add_option("--q", ce.q, "number of states, >= 3");
  c_ce->add_option("--depth", ce.depth, "binary-tree scan cap")->check(CLI::PositiveNumber);
  c_ce->add_option("--grid", ce.grid, "radial nodes / circle angles");
  c_ce->add_option("--modes", ce.modes, "spectral mode cutoff");
  c_ce->add_option("--out", ce.out, "write output here instead of stdout");
  c_ce->add_option("--format", ce.format, "csv|json")->check(format_check);

  ValidateArgs val;
  auto* c_val = app.add_subcommand("validate", "deterministic self-check suite");
  c_val->add_option("--seed", val.seed, "seed for all sampled checks");
  c_val->add_flag("--quick", val.quick, "oracle and closed-form subset only");
  c_val->add_option("--out", val.out, "write output here instead of stdout");
  c_val->add_option("--format", val.format, "csv|json|text")->check(format_check_text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    crit.br_given = br_opt->count() > 0;
    rec.J_given = rec_J->count() > 0;
    rec.Jprime_given = rec_Jp->count() > 0;
    scan.Jprime_given = scan_Jp->count() > 0;
    if (c_crit->parsed()) return run_critical(crit);
    if (c_rec->parsed()) return run_recurse(rec);
    if (c_scan->parsed()) return run_scan(scan);
    if (c_fp->parsed()) return run_fixed_point(fp);
    if (c_ce->parsed()) return run_counterexample(ce);
    if (c_val->parsed()) return run_validate(val);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
