#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace treegibbs {

// Offspring counts by depth: vertices at depth k all have offspring(k)
// children, where the sequence (preperiod, then period repeated forever) is
// bounded by `bound`.  Leafless by construction: counts are >= 1.
struct SphericallySymmetric {
  std::vector<int> preperiod;
  std::vector<int> period;
  int bound = 0;
};

// Finite rooted tree, vertex 0 the root, children listed per vertex.
struct ExplicitTree {
  std::vector<std::vector<int>> children;
  std::vector<int> parent;  // parent[0] == -1
  std::vector<int> depth;

  int vertex_count() const { return static_cast<int>(children.size()); }
  bool is_leaf(int v) const { return children[v].empty(); }
};

// Validates the child lists (every non-root vertex appears exactly once as a
// child, no cycles) and fills parent/depth.
ExplicitTree explicit_tree_from_children(std::vector<std::vector<int>> children);

// Constant coupling or a per-edge map keyed by (parent, child).
struct Strengths {
  bool is_constant = true;
  double J = 1.0;
  std::map<std::pair<int, int>, double> per_edge;

  double at(int parent, int child) const;
};

struct TreeSpec {
  enum class Kind { spherically_symmetric, explicit_tree };
  Kind kind = Kind::spherically_symmetric;
  SphericallySymmetric ss;
  ExplicitTree tree;
  Strengths strengths;
};

int offspring_at(const SphericallySymmetric& ss, int depth);
// offspring counts for depths 0..depth-1, i.e. one entry per generation of edges
std::vector<int> offspring_prefix(const SphericallySymmetric& ss, int depth);

// Convenience builders used all over the tests and the CLI.
TreeSpec binary_tree(double J);
TreeSpec ray_tree(double J);
TreeSpec ss_tree(std::vector<int> preperiod, std::vector<int> period, double J);

// Geometric mean of the offspring period; defined for spherically symmetric
// specs only (the growth exponent of level sizes).
double branching_number(const TreeSpec& t);

// Finite truncation at `depth` together with its boundary cutset: vertices at
// exactly `depth` plus any shallower leaves of an explicit input tree.
struct Truncation {
  ExplicitTree tree;
  std::vector<int> cutset;
  Strengths strengths;
};
Truncation truncate(const TreeSpec& t, int depth, int vertex_cap = 1 << 21);

// antichain + every root-to-leaf path meets it + root excluded
void validate_cutset(const ExplicitTree& tree, const std::vector<int>& cutset);
double cutset_content(const ExplicitTree& tree, const std::vector<int>& cutset, double lambda);

// A cutset with content <= eps whose every subtree also has normalized
// content <= 1.  Built by shrinking a deep level cutset upward wherever a
// subtree violates the bound; for a spherically symmetric tree the result is
// always a level.  subtree_content[j] records sum over cutset descendants of
// lambda^{-(|x|-j)} for a depth-j vertex, the quantity required to be <= 1.
struct SmallCutsetResult {
  int level = 0;
  double content = 0.0;
  std::vector<double> subtree_content;  // index = depth j, 0..level
};
SmallCutsetResult small_content_cutset(const TreeSpec& t, double lambda, double eps,
                                       int depth_cap = 200000);

// Replace the parent edge of every vertex at each listed depth (original
// coordinates) by a chain of m edges; preperiod absorbs the inserted unary
// runs and the period is untouched, so the branching number is unchanged.
TreeSpec stretch_tree(const TreeSpec& t, const std::vector<int>& cut_depths, int m);

TreeSpec parse_tree(std::istream& in);
TreeSpec parse_tree_file(const std::string& path);
std::string serialize_tree(const TreeSpec& t);

}  // namespace treegibbs
