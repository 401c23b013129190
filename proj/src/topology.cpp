#include "specsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "specsim/rng.hpp"

namespace specsim {

InterferenceGraph::InterferenceGraph(int n_nodes, std::vector<std::vector<int>> neighbor_sets,
                                     double radius)
    : n_nodes_(n_nodes), radius_(radius), neighbors_(std::move(neighbor_sets)) {
  if (n_nodes_ < 1) throw std::invalid_argument("graph: n_nodes must be >= 1");
  if (neighbors_.size() != static_cast<size_t>(n_nodes_))
    throw std::invalid_argument("graph: neighbor set count does not match n_nodes");
  for (auto& js : neighbors_) {
    std::sort(js.begin(), js.end());
    if (std::adjacent_find(js.begin(), js.end()) != js.end())
      throw std::invalid_argument("graph: duplicate neighbor entry");
  }
  for (int i = 0; i < n_nodes_; ++i) {
    for (int j : neighbors(i)) {
      if (j == i) throw std::invalid_argument("graph: self-loop at node " + std::to_string(i));
      if (j < 0 || j >= n_nodes_) throw std::invalid_argument("graph: neighbor index out of range");
      if (!adjacent(j, i)) throw std::invalid_argument("graph: asymmetric neighbor sets");
    }
  }
}

bool InterferenceGraph::adjacent(int i, int j) const {
  const auto& js = neighbors(i);
  return std::binary_search(js.begin(), js.end(), j);
}

std::vector<std::pair<int, int>> InterferenceGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_nodes_; ++i)
    for (int j : neighbors(i))
      if (i < j) out.emplace_back(i, j);
  return out;
}

Deployment generate_deployment(int n, Area area, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("deployment: n must be >= 1");
  if (!(area.width > 0.0) || !(area.height > 0.0))
    throw std::invalid_argument("deployment: area dimensions must be positive");
  Deployment d;
  d.area = area;
  d.seed = seed;
  d.positions.reserve(static_cast<size_t>(n));
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const double x = rng.next_double() * area.width;
    const double y = rng.next_double() * area.height;
    d.positions.push_back({x, y});
  }
  return d;
}

InterferenceGraph build_graph(const Deployment& d, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("graph: radius must be positive");
  const int n = static_cast<int>(d.positions.size());
  std::vector<std::vector<int>> neighbors(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = d.positions[static_cast<size_t>(i)].x - d.positions[static_cast<size_t>(j)].x;
      const double dy = d.positions[static_cast<size_t>(i)].y - d.positions[static_cast<size_t>(j)].y;
      // Strict inequality: nodes exactly at the threshold do not interfere.
      if (std::hypot(dx, dy) < radius) {
        neighbors[static_cast<size_t>(i)].push_back(j);
        neighbors[static_cast<size_t>(j)].push_back(i);
      }
    }
  }
  return InterferenceGraph(n, std::move(neighbors), radius);
}

InterferenceGraph load_graph(std::span<const std::pair<int, int>> edges, int n) {
  if (n < 1) throw std::invalid_argument("graph: n must be >= 1");
  std::set<std::pair<int, int>> unique;
  for (const auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("graph: self-loop at node " + std::to_string(a));
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("graph: edge endpoint out of range: (" + std::to_string(a) +
                                  "," + std::to_string(b) + ") with n=" + std::to_string(n));
    unique.emplace(std::min(a, b), std::max(a, b));
  }
  std::vector<std::vector<int>> neighbors(static_cast<size_t>(n));
  for (const auto& [a, b] : unique) {
    neighbors[static_cast<size_t>(a)].push_back(b);
    neighbors[static_cast<size_t>(b)].push_back(a);
  }
  return InterferenceGraph(n, std::move(neighbors), 0.0);
}

}  // namespace specsim
