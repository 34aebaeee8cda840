#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "pctopo/persistence.hpp"
#include "pctopo/transforms.hpp"
#include "pctopo/verification.hpp"

using namespace pctopo;

namespace {

std::vector<double> deaths(const PersistenceDiagram& d) {
  std::vector<double> out;
  for (const Interval& iv : d.intervals) out.push_back(iv.death);
  return out;
}

Grid grid2(std::vector<std::int64_t> cells) { return Grid(2, 1.0, {}, false, std::move(cells)); }

}  // namespace

TEST_CASE("ph0 examples") {
  auto r = ph0_vr(PointCloud::from_rows({{0, 0}, {1, 0}}));
  CHECK(deaths(r.diagram) == std::vector<double>{kInfinity, 0.5});
  CHECK(r.diagram.intervals[1].source_index == 1u);
  REQUIRE(r.kills.size() == 1);
  CHECK(r.kills[0].dying_index == 1);
  CHECK(r.kills[0].killer_index == 0);
  CHECK(r.kills[0].merge_distance == 1.0);

  r = ph0_vr(PointCloud::from_rows({{0}, {1}, {3}}));
  CHECK(deaths(r.diagram) == std::vector<double>{kInfinity, 0.5, 1.0});

  r = ph0_vr(PointCloud::from_rows({{4, 4}}));
  CHECK(deaths(r.diagram) == std::vector<double>{kInfinity});
  CHECK(ph0_vr(PointCloud(2)).diagram.intervals.empty());
}

TEST_CASE("elder rule kills the younger component") {
  // {0,1} and {2,3} form first; they join through points 1 and 2
  const auto r = ph0_vr(PointCloud::from_rows({{0}, {0.4}, {1.4}, {1.0}}));
  const auto d = deaths(r.diagram);
  CHECK(d[0] == kInfinity);
  CHECK(d[1] == doctest::Approx(0.2));
  CHECK(d[2] == doctest::Approx(0.3));
  CHECK(d[3] == doctest::Approx(0.2));
  const KillRecord& last = r.kills.back();
  CHECK(last.dying_index == 2);
  CHECK(last.killer_index == 0);
  CHECK(last.pair == std::array<std::size_t, 2>{1, 3});
  CHECK(last.merge_distance == doctest::Approx(0.6));
  for (const KillRecord& k : r.kills) CHECK(r.diagram.intervals[k.dying_index].death == k.merge_distance / 2);
}

TEST_CASE("coincident points give zero-length intervals") {
  const auto r = ph0_vr(PointCloud::from_rows({{1, 1}, {1, 1}, {1, 1}}));
  CHECK(deaths(r.diagram) == std::vector<double>{kInfinity, 0.0, 0.0});
}

TEST_CASE("ph0 matches the all-pairs elder sweep and the Prim tree") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const PointCloud x = random_cloud(seed);
    const auto d = ph0_vr(x).diagram;
    REQUIRE(d.size() == x.size());
    CHECK(deaths(d) == oracle::elder_deaths(x));
    std::vector<double> finite;
    for (const Interval& iv : d.intervals) {
      if (!iv.infinite()) finite.push_back(iv.death);
    }
    std::sort(finite.begin(), finite.end());
    std::vector<double> halves;
    for (double l : oracle::prim_lengths(x)) halves.push_back(l / 2.0);
    CHECK(finite == halves);
    std::set<std::size_t> sources;
    for (const Interval& iv : d.intervals) sources.insert(*iv.source_index);
    CHECK(sources.size() == x.size());
  }
}

TEST_CASE("mst is sorted and spans") {
  const PointCloud x = generate_synthetic(4, 600);
  const auto mst = euclidean_mst(x);
  CHECK(mst.size() == x.size() - 1);
  CHECK(std::is_sorted(mst.begin(), mst.end(), edge_less));
  std::vector<double> lengths;
  for (const MstEdge& e : mst) {
    CHECK(e.a < e.b);
    lengths.push_back(e.length);
  }
  CHECK(lengths == oracle::prim_lengths(x));
}

TEST_CASE("ph0 on grids") {
  CHECK(deaths(ph0_grid(grid2({0, 0}))) == std::vector<double>{kInfinity});
  const Grid line(1, 1.0, {}, false, {0, 1, 5});
  CHECK(deaths(ph0_grid(line)) == std::vector<double>{kInfinity, 0.5, 2.0});
  CHECK(ph0_grid(Grid(1, 1.0, {}, false, {})).intervals.empty());
}

TEST_CASE("betti numbers") {
  CHECK(betti0_cubical(grid2({0, 0, 1, 0, 0, 1, 1, 1})) == 1);
  CHECK(betti0_cubical(grid2({0, 0, 1, 1})) == 2);
  CHECK(betti0_cubical(Grid(2, 1.0, {}, false, {})) == 0);
  CHECK(betti1_cubical_2d(grid2({0, 0, 1, 0, 0, 1, 1, 1})) == 0);
  std::vector<std::int64_t> ring;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x != 1 || y != 1) ring.insert(ring.end(), {x, y});
  CHECK(betti1_cubical_2d(grid2(ring)) == 1);
  CHECK_THROWS_AS(betti1_cubical_2d(Grid(3, 1.0, {}, false, {0, 0, 0})), DimensionMismatch);
}

TEST_CASE("betti0 agrees with flood fill and ignores translation") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Grid g = random_grid(seed);
    const auto n = static_cast<std::int64_t>(oracle::components(oracle::cell_set(g)));
    CHECK(betti0_cubical(g) == n);
    std::vector<std::int64_t> moved(g.cells().begin(), g.cells().end());
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += (i % 2 == 0) ? 17 : -5;
    CHECK(betti0_cubical(grid2(moved)) == n);
  }
}

TEST_CASE("figure 7 diamond") {
  const Grid g = grid2({2, 3, 3, 2, 4, 3, 3, 4});
  const Grid co = complement(g, 1);
  CHECK(co.size() == 21);
  CHECK(betti0_cubical(co) == 2);
  CHECK(betti1_cubical_2d(thickening(g)) == 1);
  CHECK(codim1_via_duality(g, 1) == 1);
}

TEST_CASE("duality") {
  CHECK(codim1_via_duality(grid2({0, 0}), 1) == 0);
  CHECK_THROWS_AS(codim1_via_duality(grid2({0, 0}), 0), InvalidArgument);
  CHECK_THROWS_AS(codim1_via_duality(Grid(2, 1.0, {}, false, {}), 1), EmptyInput);
  CHECK_THROWS_AS(codim1_via_duality(thickening(grid2({0, 0})), 1), InvalidArgument);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Grid g = random_grid(seed);
    const std::int64_t euler = betti1_cubical_2d(thickening(g));
    for (std::int64_t b : {1, 2, 3}) CHECK(codim1_via_duality(g, b) == euler);
  }
}
