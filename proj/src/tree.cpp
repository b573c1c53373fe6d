#include "treegibbs/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include "treegibbs/errors.hpp"

namespace treegibbs {

ExplicitTree explicit_tree_from_children(std::vector<std::vector<int>> children) {
  int n = static_cast<int>(children.size());
  if (n == 0) throw input_error("tree must have at least the root");
  std::vector<int> parent(n, -1), depth(n, -1), seen(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int c : children[v]) {
      if (c < 0 || c >= n) throw input_error("child id out of range: " + std::to_string(c));
      if (c == 0) throw input_error("root cannot be a child");
      if (seen[c]++) throw input_error("vertex " + std::to_string(c) + " has two parents");
      parent[c] = v;
    }
  }
  depth[0] = 0;
  std::deque<int> queue{0};
  int visited = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    ++visited;
    for (int c : children[v]) {
      depth[c] = depth[v] + 1;
      queue.push_back(c);
    }
  }
  if (visited != n) throw input_error("tree is not connected to the root");
  ExplicitTree t;
  t.children = std::move(children);
  t.parent = std::move(parent);
  t.depth = std::move(depth);
  return t;
}

double Strengths::at(int parent, int child) const {
  if (is_constant) return J;
  auto it = per_edge.find({parent, child});
  if (it == per_edge.end())
    throw input_error("no strength for edge " + std::to_string(parent) + "-" +
                      std::to_string(child));
  return it->second;
}

int offspring_at(const SphericallySymmetric& ss, int depth) {
  if (depth < 0) throw input_error("offspring_at: negative depth");
  int pre = static_cast<int>(ss.preperiod.size());
  if (depth < pre) return ss.preperiod[depth];
  if (ss.period.empty()) throw input_error("offspring sequence has no period");
  return ss.period[(depth - pre) % ss.period.size()];
}

std::vector<int> offspring_prefix(const SphericallySymmetric& ss, int depth) {
  std::vector<int> out(depth);
  for (int k = 0; k < depth; ++k) out[k] = offspring_at(ss, k);
  return out;
}

namespace {

void validate_ss(const SphericallySymmetric& ss) {
  if (ss.period.empty()) throw input_error("spherically symmetric tree needs a nonempty period");
  if (ss.bound < 1) throw input_error("offspring bound B must be >= 1");
  auto check = [&](int m) {
    if (m < 1) throw input_error("offspring counts must be >= 1");
    if (m > ss.bound) throw input_error("offspring count exceeds the declared bound B");
  };
  for (int m : ss.preperiod) check(m);
  for (int m : ss.period) check(m);
}

}  // namespace

TreeSpec binary_tree(double J) { return ss_tree({}, {2}, J); }
TreeSpec ray_tree(double J) { return ss_tree({}, {1}, J); }

TreeSpec ss_tree(std::vector<int> preperiod, std::vector<int> period, double J) {
  TreeSpec t;
  t.kind = TreeSpec::Kind::spherically_symmetric;
  t.ss.preperiod = std::move(preperiod);
  t.ss.period = std::move(period);
  int bound = 1;
  for (int m : t.ss.preperiod) bound = std::max(bound, m);
  for (int m : t.ss.period) bound = std::max(bound, m);
  t.ss.bound = bound;
  validate_ss(t.ss);
  t.strengths.is_constant = true;
  t.strengths.J = J;
  return t;
}

double branching_number(const TreeSpec& t) {
  if (t.kind != TreeSpec::Kind::spherically_symmetric)
    throw input_error("branching_number: defined here only for spherically symmetric trees");
  validate_ss(t.ss);
  double acc = 0.0;
  for (int m : t.ss.period) acc += std::log(static_cast<double>(m));
  return std::exp(acc / t.ss.period.size());
}

Truncation truncate(const TreeSpec& t, int depth, int vertex_cap) {
  if (depth < 1) throw input_error("truncate: depth must be >= 1");
  Truncation out;
  if (t.kind == TreeSpec::Kind::spherically_symmetric) {
    validate_ss(t.ss);
    // count first so we fail before allocating anything huge
    long long total = 1, level = 1;
    for (int k = 0; k < depth; ++k) {
      level *= offspring_at(t.ss, k);
      total += level;
      if (total > vertex_cap)
        throw input_error("truncate: " + std::to_string(depth) +
                          " levels exceed the vertex budget of " + std::to_string(vertex_cap));
    }
    std::vector<std::vector<int>> children(static_cast<size_t>(total));
    std::vector<int> frontier{0};
    int next_id = 1;
    for (int k = 0; k < depth; ++k) {
      std::vector<int> next;
      int m = offspring_at(t.ss, k);
      for (int v : frontier) {
        for (int c = 0; c < m; ++c) {
          children[v].push_back(next_id);
          next.push_back(next_id);
          ++next_id;
        }
      }
      frontier = std::move(next);
    }
    out.tree = explicit_tree_from_children(std::move(children));
    out.cutset = std::move(frontier);
    out.strengths = t.strengths;
    return out;
  }

  // explicit input: prune below `depth`, keep ids dense
  const ExplicitTree& src = t.tree;
  std::vector<int> keep, new_id(src.vertex_count(), -1);
  for (int v = 0; v < src.vertex_count(); ++v) {
    if (src.depth[v] <= depth) {
      new_id[v] = static_cast<int>(keep.size());
      keep.push_back(v);
    }
  }
  if (static_cast<int>(keep.size()) > vertex_cap)
    throw input_error("truncate: tree exceeds the vertex budget");
  std::vector<std::vector<int>> children(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) {
    int v = keep[i];
    if (src.depth[v] == depth) continue;  // becomes a boundary leaf
    for (int c : src.children[v])
      if (new_id[c] >= 0) children[i].push_back(new_id[c]);
  }
  out.tree = explicit_tree_from_children(std::move(children));
  for (int v = 0; v < out.tree.vertex_count(); ++v)
    if (out.tree.is_leaf(v) && v != 0) out.cutset.push_back(v);
  if (out.cutset.empty()) throw input_error("truncate: tree is just the root, no boundary");
  out.strengths = t.strengths;
  if (!t.strengths.is_constant) {
    out.strengths.per_edge.clear();
    for (const auto& [edge, Jval] : t.strengths.per_edge) {
      int p = new_id[edge.first], c = new_id[edge.second];
      if (p >= 0 && c >= 0) out.strengths.per_edge[{p, c}] = Jval;
    }
  }
  return out;
}

void validate_cutset(const ExplicitTree& tree, const std::vector<int>& cutset) {
  if (cutset.empty()) throw input_error("cutset is empty");
  std::vector<char> in_cut(tree.vertex_count(), 0);
  for (int v : cutset) {
    if (v < 0 || v >= tree.vertex_count())
      throw input_error("cutset vertex out of range: " + std::to_string(v));
    if (v == 0) throw input_error("cutset must not contain the root");
    if (in_cut[v]) throw input_error("cutset repeats vertex " + std::to_string(v));
    in_cut[v] = 1;
  }
  // antichain: no cutset vertex may have a cutset ancestor
  for (int v : cutset) {
    for (int a = tree.parent[v]; a >= 0; a = tree.parent[a])
      if (in_cut[a])
        throw input_error("cutset is not an antichain: " + std::to_string(a) + " is above " +
                          std::to_string(v));
  }
  // covering: every root-to-leaf path must meet the cutset
  std::vector<char> covered(tree.vertex_count(), 0);
  // process deepest-first so children are resolved before parents
  std::vector<int> order(tree.vertex_count());
  for (int v = 0; v < tree.vertex_count(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return tree.depth[a] > tree.depth[b]; });
  for (int v : order) {
    if (in_cut[v]) {
      covered[v] = 1;
      continue;
    }
    if (tree.is_leaf(v)) continue;
    covered[v] = 1;
    for (int c : tree.children[v]) covered[v] = covered[v] && covered[c];
  }
  if (!covered[0]) throw input_error("cutset does not cover every path from the root");
}

double cutset_content(const ExplicitTree& tree, const std::vector<int>& cutset, double lambda) {
  if (!(lambda > 0.0)) throw input_error("cutset_content: lambda must be positive");
  double acc = 0.0;
  for (int v : cutset) acc += std::pow(lambda, -static_cast<double>(tree.depth[v]));
  return acc;
}

SmallCutsetResult small_content_cutset(const TreeSpec& t, double lambda, double eps,
                                       int depth_cap) {
  if (t.kind != TreeSpec::Kind::spherically_symmetric)
    throw input_error("small_content_cutset: spherically symmetric trees only");
  if (!(eps > 0.0) || !(eps < 1.0)) throw input_error("small_content_cutset: need 0 < eps < 1");
  double br = branching_number(t);
  if (!(lambda > br))
    throw input_error("small_content_cutset: lambda must exceed the branching number");

  // log of the level size M_n, prefix-summed; everything stays in log space
  // because level sizes overflow long before the content becomes small
  std::vector<double> logM(1, 0.0);
  double log_lambda = std::log(lambda);
  int n = -1;
  for (int k = 1; k <= depth_cap; ++k) {
    logM.push_back(logM.back() + std::log(static_cast<double>(offspring_at(t.ss, k - 1))));
    if (logM[k] - k * log_lambda <= std::log(eps)) {
      n = k;
      break;
    }
  }
  if (n < 0)
    throw input_error("small_content_cutset: no level of content <= eps within the depth cap");

  // shrink upward: if the cutset's content inside some depth-j subtree
  // exceeds 1, promote that whole level to be the cutset; content strictly
  // drops each round, so the eps bound survives
  auto subtree_log = [&](int j, int lvl) { return logM[lvl] - logM[j] - (lvl - j) * log_lambda; };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = n - 1; j >= 1; --j) {
      if (subtree_log(j, n) > 0.0) {
        n = j;
        changed = true;
        break;
      }
    }
  }

  SmallCutsetResult result;
  result.level = n;
  result.content = std::exp(logM[n] - n * log_lambda);
  result.subtree_content.resize(n + 1);
  for (int j = 0; j <= n; ++j) result.subtree_content[j] = std::exp(subtree_log(j, n));
  return result;
}

TreeSpec stretch_tree(const TreeSpec& t, const std::vector<int>& cut_depths, int m) {
  if (t.kind != TreeSpec::Kind::spherically_symmetric)
    throw input_error("stretch_tree: spherically symmetric trees only");
  validate_ss(t.ss);
  if (m < 1) throw input_error("stretch_tree: m must be >= 1");
  if (m == 1 || cut_depths.empty()) return t;
  for (size_t i = 0; i < cut_depths.size(); ++i) {
    if (cut_depths[i] < 1) throw input_error("stretch_tree: cut depths must be >= 1");
    if (i > 0 && cut_depths[i] <= cut_depths[i - 1])
      throw input_error("stretch_tree: cut depths must be strictly increasing (bands overlap)");
  }

  int pre = static_cast<int>(t.ss.preperiod.size());
  int P = static_cast<int>(t.ss.period.size());
  int last = cut_depths.back();
  // extend to a period boundary so the untouched tail keeps the original period
  int end = std::max(last, pre);
  while ((end - pre) % P != 0) ++end;

  TreeSpec out = t;
  out.ss.preperiod.clear();
  size_t next_cut = 0;
  for (int i = 1; i <= end; ++i) {
    out.ss.preperiod.push_back(offspring_at(t.ss, i - 1));
    if (next_cut < cut_depths.size() && cut_depths[next_cut] == i) {
      out.ss.preperiod.insert(out.ss.preperiod.end(), m - 1, 1);
      ++next_cut;
    }
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::string item;
  std::istringstream stream(s);
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (...) {
      throw input_error("bad integer '" + item + "' in " + what);
    }
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw input_error("bad number '" + s + "' in " + what);
  }
}

}  // namespace

TreeSpec parse_tree(std::istream& in) {
  TreeSpec t;
  bool kind_seen = false, bound_seen = false, strengths_seen = false;
  std::map<int, std::vector<int>> child_lines;
  int max_id = -1;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto fail = [&](const std::string& why) {
      throw input_error("tree file line " + std::to_string(lineno) + ": " + why);
    };
    if (!kind_seen) {
      if (line == "kind=ss")
        t.kind = TreeSpec::Kind::spherically_symmetric;
      else if (line == "kind=explicit")
        t.kind = TreeSpec::Kind::explicit_tree;
      else
        fail("first line must be kind=ss or kind=explicit");
      kind_seen = true;
      continue;
    }
    if (line.rfind("preperiod=", 0) == 0) {
      if (t.kind != TreeSpec::Kind::spherically_symmetric) fail("preperiod only valid for kind=ss");
      t.ss.preperiod = parse_int_list(line.substr(10), "preperiod");
    } else if (line.rfind("period=", 0) == 0) {
      if (t.kind != TreeSpec::Kind::spherically_symmetric) fail("period only valid for kind=ss");
      t.ss.period = parse_int_list(line.substr(7), "period");
    } else if (line.rfind("B=", 0) == 0) {
      if (t.kind != TreeSpec::Kind::spherically_symmetric) fail("B only valid for kind=ss");
      t.ss.bound = static_cast<int>(parse_double(line.substr(2), "B"));
      bound_seen = true;
    } else if (line.rfind("J=", 0) == 0) {
      t.strengths.is_constant = true;
      t.strengths.J = parse_double(line.substr(2), "J");
      strengths_seen = true;
    } else if (line.rfind("edges:", 0) == 0) {
      if (t.kind != TreeSpec::Kind::explicit_tree) fail("per-edge strengths need kind=explicit");
      std::string body = trim(line.substr(6));
      auto dash = body.find('-');
      auto eq = body.find('=');
      if (dash == std::string::npos || eq == std::string::npos || dash > eq)
        fail("want edges: parent-child=J");
      int p = static_cast<int>(parse_double(trim(body.substr(0, dash)), "edge parent"));
      int c = static_cast<int>(parse_double(trim(body.substr(dash + 1, eq - dash - 1)), "edge child"));
      t.strengths.is_constant = false;
      t.strengths.per_edge[{p, c}] = parse_double(trim(body.substr(eq + 1)), "edge strength");
      strengths_seen = true;
    } else {
      auto colon = line.find(':');
      if (colon == std::string::npos || t.kind != TreeSpec::Kind::explicit_tree)
        fail("unrecognized line '" + line + "'");
      int id = 0;
      try {
        id = std::stoi(trim(line.substr(0, colon)));
      } catch (...) {
        fail("bad vertex id");
      }
      if (child_lines.count(id)) fail("vertex " + std::to_string(id) + " listed twice");
      child_lines[id] = parse_int_list(line.substr(colon + 1), "child list");
      max_id = std::max(max_id, id);
      for (int c : child_lines[id]) max_id = std::max(max_id, c);
    }
  }
  if (!kind_seen) throw input_error("tree file is empty");
  if (t.kind == TreeSpec::Kind::spherically_symmetric) {
    if (!bound_seen) {
      for (int v : t.ss.preperiod) t.ss.bound = std::max(t.ss.bound, v);
      for (int v : t.ss.period) t.ss.bound = std::max(t.ss.bound, v);
    }
    validate_ss(t.ss);
  } else {
    std::vector<std::vector<int>> children(max_id + 1);
    for (auto& [id, kids] : child_lines) children[id] = std::move(kids);
    t.tree = explicit_tree_from_children(std::move(children));
  }
  if (!strengths_seen) {
    t.strengths.is_constant = true;
    t.strengths.J = 1.0;
  }
  return t;
}

TreeSpec parse_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open tree file '" + path + "'");
  return parse_tree(in);
}

std::string serialize_tree(const TreeSpec& t) {
  std::ostringstream out;
  if (t.kind == TreeSpec::Kind::spherically_symmetric) {
    out << "kind=ss\n";
    out << "preperiod=";
    for (size_t i = 0; i < t.ss.preperiod.size(); ++i)
      out << (i ? "," : "") << t.ss.preperiod[i];
    out << "\nperiod=";
    for (size_t i = 0; i < t.ss.period.size(); ++i) out << (i ? "," : "") << t.ss.period[i];
    out << "\nB=" << t.ss.bound << "\n";
  } else {
    out << "kind=explicit\n";
    for (int v = 0; v < t.tree.vertex_count(); ++v) {
      out << v << ":";
      for (size_t i = 0; i < t.tree.children[v].size(); ++i)
        out << (i ? "," : " ") << t.tree.children[v][i];
      out << "\n";
    }
  }
  if (t.strengths.is_constant) {
    out << "J=" << t.strengths.J << "\n";
  } else {
    for (const auto& [edge, Jval] : t.strengths.per_edge)
      out << "edges: " << edge.first << "-" << edge.second << "=" << Jval << "\n";
  }
  return out.str();
}

}  // namespace treegibbs
