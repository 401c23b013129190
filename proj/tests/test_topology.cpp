#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include "specsim/io.hpp"
#include "specsim/rng.hpp"
#include "specsim/topology.hpp"

using namespace specsim;

namespace {

Deployment two_points(double d) {
  Deployment dep;
  dep.area = {2000.0, 2000.0};
  dep.positions = {{100.0, 100.0}, {100.0 + d, 100.0}};
  return dep;
}

}  // namespace

TEST_CASE("generated positions stay inside the area") {
  const Deployment d = generate_deployment(1, {1000.0, 1000.0}, 7);
  REQUIRE(d.positions.size() == 1);
  CHECK(d.positions[0].x >= 0.0);
  CHECK(d.positions[0].x <= 1000.0);
  CHECK(d.positions[0].y >= 0.0);
  CHECK(d.positions[0].y <= 1000.0);

  const Deployment big = generate_deployment(500, {250.0, 4000.0}, 11);
  for (const auto& p : big.positions) {
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 250.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y <= 4000.0);
  }
}

TEST_CASE("deployment is deterministic in the seed") {
  const Deployment a = generate_deployment(15, {1000.0, 1000.0}, 12345);
  const Deployment b = generate_deployment(15, {1000.0, 1000.0}, 12345);
  REQUIRE(a.positions.size() == b.positions.size());
  for (size_t i = 0; i < a.positions.size(); ++i) {
    CHECK(a.positions[i].x == b.positions[i].x);
    CHECK(a.positions[i].y == b.positions[i].y);
  }
  const Deployment c = generate_deployment(15, {1000.0, 1000.0}, 12346);
  CHECK(a.positions[0].x != c.positions[0].x);
}

TEST_CASE("deployment rejects bad arguments") {
  CHECK_THROWS_AS(generate_deployment(0, {1000.0, 1000.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_deployment(5, {0.0, 1000.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_deployment(5, {1000.0, -1.0}, 1), std::invalid_argument);
}

TEST_CASE("uniform mean concentrates: mean x in [400,600] for >= 99% of seeds") {
  int inside = 0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    const Deployment d = generate_deployment(100, {1000.0, 1000.0}, seed);
    double sum = 0.0;
    for (const auto& p : d.positions) sum += p.x;
    const double mean = sum / 100.0;
    if (mean >= 400.0 && mean <= 600.0) ++inside;
  }
  CHECK(inside >= 990);
}

TEST_CASE("edges use strict distance inequality") {
  const InterferenceGraph close = build_graph(two_points(299.0), 300.0);
  CHECK(close.adjacent(0, 1));
  const InterferenceGraph at = build_graph(two_points(300.0), 300.0);
  CHECK_FALSE(at.adjacent(0, 1));
}

TEST_CASE("collinear chain at 0/250/500 with radius 300") {
  Deployment d;
  d.area = {1000.0, 1000.0};
  d.positions = {{0.0, 0.0}, {250.0, 0.0}, {500.0, 0.0}};
  const InterferenceGraph g = build_graph(d, 300.0);
  CHECK(g.neighbors(0) == std::vector<int>{1});
  CHECK(g.neighbors(1) == std::vector<int>{0, 2});
  CHECK(g.neighbors(2) == std::vector<int>{1});
}

TEST_CASE("graph symmetry, irreflexivity and degree bound on random deployments") {
  for (uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    const Deployment d = generate_deployment(40, {800.0, 800.0}, seed);
    const InterferenceGraph g = build_graph(d, 250.0);
    for (int i = 0; i < g.n_nodes(); ++i) {
      CHECK(g.degree(i) < g.n_nodes());
      CHECK_FALSE(g.adjacent(i, i));
      for (int j : g.neighbors(i)) CHECK(g.adjacent(j, i));
    }
  }
}

TEST_CASE("edge set is monotone in the radius") {
  const Deployment d = generate_deployment(30, {1000.0, 1000.0}, 99);
  const double radii[] = {100.0, 200.0, 300.0, 450.0};
  for (size_t k = 0; k + 1 < std::size(radii); ++k) {
    const auto small = build_graph(d, radii[k]).edges();
    const auto large = build_graph(d, radii[k + 1]).edges();
    const std::set<std::pair<int, int>> large_set(large.begin(), large.end());
    for (const auto& e : small) CHECK(large_set.count(e) == 1);
  }
}

TEST_CASE("load_graph applies symmetric closure and collapses duplicates") {
  const std::pair<int, int> edges[] = {{0, 1}, {1, 0}, {0, 1}, {2, 1}};
  const InterferenceGraph g = load_graph(edges, 4);
  CHECK(g.neighbors(0) == std::vector<int>{1});
  CHECK(g.neighbors(1) == std::vector<int>{0, 2});
  CHECK(g.neighbors(2) == std::vector<int>{1});
  CHECK(g.neighbors(3).empty());
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("load_graph rejects self-loops and out-of-range endpoints") {
  const std::pair<int, int> self_loop[] = {{2, 2}};
  CHECK_THROWS_AS(load_graph(self_loop, 4), std::invalid_argument);
  const std::pair<int, int> out_of_range[] = {{0, 4}};
  CHECK_THROWS_AS(load_graph(out_of_range, 4), std::invalid_argument);
  const std::pair<int, int> negative[] = {{-1, 0}};
  CHECK_THROWS_AS(load_graph(negative, 4), std::invalid_argument);
}

TEST_CASE("topology file round trip preserves the graph") {
  const Deployment d = generate_deployment(12, {1000.0, 1000.0}, 5);
  const InterferenceGraph g = build_graph(d, 300.0);
  const std::string path =
      (std::filesystem::temp_directory_path() / "specsim_topo_test.json").string();
  io::write_topology(path, d, g);
  const InterferenceGraph loaded = io::read_topology(path);
  CHECK(loaded.n_nodes() == g.n_nodes());
  CHECK(loaded.edges() == g.edges());
  const auto j = io::read_json_file(path);
  for (const char* key : {"n", "area", "positions", "radius", "edges"}) CHECK(j.contains(key));
  std::filesystem::remove(path);
}
