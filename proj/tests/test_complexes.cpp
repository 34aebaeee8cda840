#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "pctopo/complexes.hpp"
#include "pctopo/verification.hpp"

using namespace pctopo;

using Edge = std::array<std::size_t, 2>;
using Tri = std::array<std::size_t, 3>;

TEST_CASE("vr skeleton examples") {
  const PointCloud two = PointCloud::from_rows({{0, 0}, {1, 0}});
  auto s = vr_skeleton(two, 1.0, 2);
  CHECK(s.edges == std::vector<Edge>{{0, 1}});
  CHECK(s.triangles.empty());
  s = vr_skeleton(two, 0.5, 2);
  CHECK(s.edges.empty());

  const PointCloud tri = PointCloud::from_rows({{0, 0}, {1, 0}, {0, 1}});
  s = vr_skeleton(tri, 1.5, 2);
  CHECK(s.edges == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(s.triangles == std::vector<Tri>{{0, 1, 2}});
  CHECK(vr_skeleton(tri, 1.5, 1).triangles.empty());
}

TEST_CASE("vr skeleton argument checks") {
  const PointCloud x = PointCloud::from_rows({{0.0}});
  CHECK_THROWS_AS(vr_skeleton(x, -0.1, 2), InvalidArgument);
  CHECK_THROWS_AS(vr_skeleton(x, 1.0, 3), InvalidArgument);
  CHECK(vr_skeleton(PointCloud(2), 1.0, 2).edges.empty());
}

TEST_CASE("closed boundary: equal distances are edges") {
  const PointCloud x = PointCloud::from_rows({{0.0}, {0.25}, {0.5}});
  const auto s = vr_skeleton(x, 0.25, 2);
  CHECK(s.edges == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("bucketed search equals exhaustive enumeration") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const PointCloud x = random_cloud(seed, 30);
    const double diam = oracle::diameter(x);
    Rng rng(seed + 1000);
    const double r = rng.below(10) == 0 ? 0.0 : rng.uniform(0.0, 0.6) * (diam > 0 ? diam : 1.0);
    const auto s = vr_skeleton(x, r, 2);
    std::vector<Edge> edges;
    for (auto [i, j] : oracle::rips_edges(x, r)) edges.push_back({i, j});
    CHECK(s.edges == edges);
    CHECK(s.triangles == oracle::rips_triangles(x, r));

    const NeighborGraph g = radius_graph(x, r);
    const NeighborGraph h = radius_graph_brute_force(x, r);
    REQUIRE(g.vertex_count() == h.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      CHECK(std::equal(g.upper(i).begin(), g.upper(i).end(), h.upper(i).begin(), h.upper(i).end()));
    }
  }
}

TEST_CASE("downward closure and monotonicity in the radius") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PointCloud x = random_cloud(seed, 50);
    const double diam = oracle::diameter(x);
    const auto small = vr_skeleton(x, 0.2 * diam, 2);
    const auto large = vr_skeleton(x, 0.4 * diam, 2);
    std::set<Edge> e(small.edges.begin(), small.edges.end());
    for (const Tri& t : small.triangles) {
      CHECK(e.count({t[0], t[1]}) == 1);
      CHECK(e.count({t[0], t[2]}) == 1);
      CHECK(e.count({t[1], t[2]}) == 1);
    }
    CHECK(std::includes(large.edges.begin(), large.edges.end(), small.edges.begin(), small.edges.end()));
    CHECK(std::includes(large.triangles.begin(), large.triangles.end(), small.triangles.begin(),
                        small.triangles.end()));
    CHECK(std::is_sorted(small.edges.begin(), small.edges.end()));
    CHECK(std::is_sorted(small.triangles.begin(), small.triangles.end()));
  }
}

namespace {

Grid grid2(std::vector<std::int64_t> cells) { return Grid(2, 1.0, {}, false, std::move(cells)); }

}  // namespace

TEST_CASE("cubical complex counts") {
  auto c = cubical_complex(grid2({0, 0}));
  CHECK(c.counts() == std::vector<std::size_t>{1, 0, 0});
  c = cubical_complex(grid2({0, 0, 1, 0, 0, 1, 1, 1}));
  CHECK(c.counts() == std::vector<std::size_t>{4, 4, 1});
  CHECK(c.euler_characteristic() == 1);
  c = cubical_complex(Grid(2, 1.0, {}, false, {}));
  CHECK(c.counts() == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("unit cube in three dimensions") {
  std::vector<std::int64_t> cells;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) cells.insert(cells.end(), {x, y, z});
  const auto c = cubical_complex(Grid(3, 1.0, {}, false, cells));
  CHECK(c.counts() == std::vector<std::size_t>{8, 12, 6, 1});
  CHECK(c.euler_characteristic() == 1);
}

TEST_CASE("figure 1 grid") {
  // cells 1..9 of the figure, numbered in order
  const Grid g = grid2({0, 2, 2, 2, 2, 1, 3, 1, 3, 0, 3, 2, 4, 2, 4, 3, 5, 3});
  const auto c = cubical_complex(g);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const Cube& e : c.cubes(1)) {
    auto v = c.vertices(e);
    edges.insert({std::min(v[0], v[1]) + 1, std::max(v[0], v[1]) + 1});
  }
  const std::set<std::pair<std::size_t, std::size_t>> expected{{2, 3}, {3, 4}, {4, 5}, {4, 6},
                                                               {2, 6}, {6, 7}, {7, 8}, {8, 9}};
  CHECK(edges == expected);
  REQUIRE(c.cubes(2).size() == 1);
  auto sq = c.vertices(c.cubes(2)[0]);
  std::set<std::size_t> corners;
  for (std::size_t v : sq) corners.insert(v + 1);
  CHECK(corners == std::set<std::size_t>{2, 3, 4, 6});
}

TEST_CASE("cube membership and downward closure") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Grid g = random_grid(seed);
    const auto c = cubical_complex(g);
    const auto cells = oracle::cell_set(g);
    std::size_t e = 0, f = 0;
    for (const auto& v : cells) {
      for (std::size_t k = 0; k < 2; ++k) {
        auto w = v;
        ++w[k];
        if (cells.count(w)) ++e;
      }
      auto a = v, b = v, d = v;
      ++a[0];
      ++b[1];
      ++d[0];
      ++d[1];
      if (cells.count(a) && cells.count(b) && cells.count(d)) ++f;
    }
    CHECK(c.count(1) == e);
    CHECK(c.count(2) == f);
    for (const Cube& sq : c.cubes(2)) {
      auto anchor = g.cell(sq.anchor);
      CHECK(c.has_cube(anchor, 1));
      CHECK(c.has_cube(anchor, 2));
      std::vector<std::int64_t> up(anchor.begin(), anchor.end());
      ++up[0];
      CHECK(c.has_cube(up, 2));
      CHECK(c.has_vertex(up));
    }
  }
}
