#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace specsim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Area {
  double width = 0.0;
  double height = 0.0;
};

// SBS positions on the plane plus the area and seed they were drawn with.
struct Deployment {
  std::vector<Point> positions;
  Area area;
  uint64_t seed = 0;
};

// Undirected interference graph over SBS indices. Neighbor sets are sorted,
// symmetric and irreflexive; instances are immutable after construction and
// safe to share across concurrent trials.
class InterferenceGraph {
 public:
  InterferenceGraph() = default;
  InterferenceGraph(int n_nodes, std::vector<std::vector<int>> neighbor_sets, double radius);

  int n_nodes() const { return n_nodes_; }
  // Distance threshold the graph was built with; 0 for explicit edge lists.
  double radius() const { return radius_; }

  const std::vector<int>& neighbors(int n) const { return neighbors_[static_cast<size_t>(n)]; }
  int degree(int n) const { return static_cast<int>(neighbors(n).size()); }
  bool adjacent(int i, int j) const;

  // Edge list with i < j, lexicographically ordered.
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_nodes_ = 0;
  double radius_ = 0.0;
  std::vector<std::vector<int>> neighbors_;
};

// n i.i.d. uniform positions in [0,width] x [0,height]; deterministic in seed.
Deployment generate_deployment(int n, Area area, uint64_t seed);

// Edge (i,j) present iff the Euclidean distance d_ij < radius (strict).
InterferenceGraph build_graph(const Deployment& d, double radius);

// Explicit edge list; applies symmetric closure and collapses duplicates.
// Rejects self-loops and endpoints >= n.
InterferenceGraph load_graph(std::span<const std::pair<int, int>> edges, int n);

}  // namespace specsim
