#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "pctopo/transforms.hpp"
#include "pctopo/verification.hpp"

using namespace pctopo;

namespace {

std::vector<std::vector<double>> rows(const PointCloud& x) {
  std::vector<std::vector<double>> r;
  for (std::size_t i = 0; i < x.size(); ++i) r.emplace_back(x.point(i).begin(), x.point(i).end());
  return r;
}

std::set<std::vector<std::int64_t>> cells_of(const Grid& g) { return oracle::cell_set(g); }

}  // namespace

TEST_CASE("barycentric subdivision examples") {
  const PointCloud two = PointCloud::from_rows({{0, 0}, {1, 0}});
  CHECK(rows(barycentric_subdivision(two, 1.0)) == std::vector<std::vector<double>>{{0, 0}, {1, 0}, {0.5, 0}});
  CHECK(barycentric_subdivision(two, 0.5) == two);

  const PointCloud tri = PointCloud::from_rows({{0, 0}, {1, 0}, {0, 1}});
  const auto b = rows(barycentric_subdivision(tri, 1.5));
  const std::vector<std::vector<double>> expected{{0, 0},     {1, 0},     {0, 1},        {0.5, 0},
                                                  {0, 0.5},   {0.5, 0.5}, {1.0 / 3, 1.0 / 3}};
  CHECK(b == expected);
  CHECK(barycentric_subdivision(tri, 1.5, 1).size() == 6);
}

TEST_CASE("barycentric subdivision argument checks") {
  const PointCloud x = PointCloud::from_rows({{0.0}});
  CHECK_THROWS_AS(barycentric_subdivision(x, -1.0), InvalidArgument);
  CHECK_THROWS_AS(barycentric_subdivision(x, 1.0, 3), InvalidArgument);
  CHECK(barycentric_subdivision(PointCloud(3), 1.0).empty());
}

TEST_CASE("barycentric subdivision drops exact duplicates only") {
  // midpoint of (0,2) is 1, already present; the triangle's centroid is also 1
  const PointCloud x = PointCloud::from_rows({{0.0}, {1.0}, {2.0}});
  CHECK(rows(barycentric_subdivision(x, 2.0)) == std::vector<std::vector<double>>{{0}, {1}, {2}, {0.5}, {1.5}});
  // repeated input rows stay
  const PointCloud y = PointCloud::from_rows({{0.0}, {0.0}});
  CHECK(barycentric_subdivision(y, 1.0).size() == 2);
}

TEST_CASE("barycentric subdivision matches the oracle") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PointCloud x = random_cloud(seed, 40);
    const double r = 0.3 * oracle::diameter(x);
    for (int d : {1, 2}) {
      const PointCloud b = barycentric_subdivision(x, r, d);
      CHECK(b == oracle::barycentric(x, r, d));
      for (std::size_t i = 0; i < x.size(); ++i) CHECK(rows(b)[i] == rows(x)[i]);
    }
  }
}

TEST_CASE("sparsification examples") {
  CHECK(rows(sparsification(PointCloud::from_rows({{0, 0}, {0.05, 0}, {1, 0}}), 0.1)) ==
        std::vector<std::vector<double>>{{0, 0}, {1, 0}});
  const PointCloud d = PointCloud::from_rows({{0, 0}, {2, 1}, {-1, 5}});
  CHECK(sparsification(d, 0.0) == d);
  CHECK(rows(sparsification(PointCloud::from_rows({{0}, {0.06}, {0.12}}), 0.1)) ==
        std::vector<std::vector<double>>{{0}, {0.12}});
  CHECK(sparsification(PointCloud(2), 0.5).empty());
  CHECK_THROWS_AS(sparsification(d, -0.5), InvalidArgument);
}

TEST_CASE("sparsification against the greedy oracle") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PointCloud x = random_cloud(seed);
    const double eps = Rng(seed).uniform(0.0, 0.3) * oracle::diameter(x);
    CHECK(sparsification_indices(x, eps) == oracle::sparse_indices(x, eps));
  }
}

TEST_CASE("gridification examples") {
  const std::vector<double> z{0, 0};
  const std::vector<double> a{0.5, 0.7}, b{-0.2, 1.0};
  CHECK(grid_cell(a, 1.0, z) == std::vector<std::int64_t>{0, 0});
  CHECK(grid_cell(b, 1.0, z) == std::vector<std::int64_t>{-1, 1});
  const Grid g = gridification(PointCloud::from_rows({{0.1, 0.1}, {0.2, 0.2}}), 1.0);
  CHECK(g.size() == 1);
  CHECK(g.source_index() == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(gridification(PointCloud::from_rows({{0.0}}), 0.0), InvalidArgument);
  CHECK_THROWS_AS(gridification(PointCloud::from_rows({{0.0}}), 1.0, {0.0, 0.0}), DimensionMismatch);
}

TEST_CASE("gridification keeps first appearance and smallest source") {
  const Grid g = gridification(PointCloud::from_rows({{2.5}, {0.5}, {2.7}, {0.1}, {5.0}}), 1.0);
  REQUIRE(g.size() == 3);
  CHECK(g.cell(0)[0] == 2);
  CHECK(g.cell(1)[0] == 0);
  CHECK(g.cell(2)[0] == 5);
  CHECK(g.source_index() == std::vector<std::size_t>{0, 1, 4});
}

TEST_CASE("grid subdivision") {
  const Grid one(2, 1.0, {}, false, {0, 0});
  const Grid s = grid_subdivision(one);
  CHECK(s.halved());
  CHECK(cells_of(s) == std::set<std::vector<std::int64_t>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  // two side-by-side cells: 2c + {0,1}^2 for c = (0,0), (1,0) share nothing
  const Grid two(2, 1.0, {}, false, {0, 0, 1, 0});
  std::set<std::vector<std::int64_t>> expected;
  for (std::int64_t cx : {0, 1})
    for (std::int64_t y0 : {0, 1})
      for (std::int64_t y1 : {0, 1}) expected.insert({2 * cx + y0, y1});
  CHECK(cells_of(grid_subdivision(two)) == expected);
  CHECK(grid_subdivision(Grid(2, 1.0, {}, false, {})).empty());
  CHECK_THROWS_AS(grid_subdivision(s), InvalidArgument);
}

TEST_CASE("thickening") {
  const Grid one(2, 1.0, {}, false, {0, 0});
  const Grid t = thickening(one);
  CHECK(t.size() == 9);
  std::set<std::vector<double>> reals;
  for (std::size_t i = 0; i < t.size(); ++i) reals.insert(t.embed(i));
  std::set<std::vector<double>> expected;
  for (double x : {-0.5, 0.0, 0.5})
    for (double y : {-0.5, 0.0, 0.5}) expected.insert({x, y});
  CHECK(reals == expected);
  CHECK(thickening(Grid(2, 1.0, {}, false, {})).empty());
  CHECK_THROWS_AS(thickening(t), InvalidArgument);
}

TEST_CASE("figure 7 diamond thickening") {
  const Grid g(2, 1.0, {}, false, {2, 3, 3, 2, 4, 3, 3, 4});
  const Grid t = thickening(g);
  CHECK(cells_of(t) == oracle::thickened_cells(g));
  // four 3x3 blocks centred at 2c; diagonal neighbours share one cell
  CHECK(t.size() == 4 * 9 - 4);
  CHECK(cells_of(t).count({6, 6}) == 0);
}

TEST_CASE("complement") {
  const Grid one(2, 1.0, {}, false, {0, 0});
  const Grid c = complement(one, 1);
  CHECK(c.size() == 8);
  CHECK(cells_of(c).count({0, 0}) == 0);
  std::vector<std::int64_t> block;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) block.insert(block.end(), {x, y});
  CHECK(complement(Grid(2, 1.0, {}, false, block), 0).empty());
  const Grid diamond(2, 1.0, {}, false, {2, 3, 3, 2, 4, 3, 3, 4});
  CHECK(complement(diamond, 1).size() == 21);
  CHECK_THROWS_AS(complement(Grid(2, 1.0, {}, false, {}), 1), EmptyInput);
  CHECK_THROWS_AS(complement(one, -1), InvalidArgument);
  CHECK_THROWS_AS(complement(thickening(one), 1), InvalidArgument);
}

TEST_CASE("transform properties over seeded inputs") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PointCloud x = random_cloud(seed);
    const double diam = oracle::diameter(x);
    Rng rng(seed * 31 + 7);
    const double eps = rng.uniform(0.02, 0.3) * (diam > 0 ? diam : 1.0);
    const PointCloud s = sparsification(x, eps);
    CHECK(sparsification(s, eps) == s);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) CHECK(distance(s.point(i), s.point(j)) > eps);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double nearest = kInfinity;
      for (std::size_t j = 0; j < s.size(); ++j) nearest = std::min(nearest, distance(x.point(i), s.point(j)));
      CHECK(nearest <= eps);
    }

    const double mu = rng.uniform(0.05, 0.5) * (diam > 0 ? diam : 1.0);
    std::vector<double> z(x.dim());
    for (double& v : z) v = rng.uniform(-1, 1);
    const Grid g = gridification(x, mu, z);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto c = grid_cell(x.point(i), mu, z);
      for (std::size_t k = 0; k < x.dim(); ++k) {
        const double r = x.point(i)[k] - (z[k] + mu * static_cast<double>(c[k]));
        CHECK(r >= 0.0);
        CHECK(r < mu);
      }
    }
    const Grid rg = random_grid(seed);
    const Grid t = thickening(rg);
    CHECK(cells_of(t) == oracle::thickened_cells(rg));
    const auto sub = cells_of(grid_subdivision(rg));
    const auto tc = cells_of(t);
    CHECK(std::includes(tc.begin(), tc.end(), sub.begin(), sub.end()));
    std::set<std::vector<std::int64_t>> shifted;
    for (const auto& c : sub)
      for (std::int64_t s0 : {0, -1})
        for (std::int64_t s1 : {0, -1}) shifted.insert({c[0] + s0, c[1] + s1});
    CHECK(shifted == tc);

    const std::int64_t b = 1 + static_cast<std::int64_t>(rng.below(3));
    const auto in = cells_of(rg);
    const auto co = cells_of(complement(rg, b));
    std::int64_t lo0 = INT64_MAX, hi0 = INT64_MIN, lo1 = INT64_MAX, hi1 = INT64_MIN;
    for (const auto& c : in) {
      lo0 = std::min(lo0, c[0]);
      hi0 = std::max(hi0, c[0]);
      lo1 = std::min(lo1, c[1]);
      hi1 = std::max(hi1, c[1]);
    }
    for (std::int64_t u = lo0 - b; u <= hi0 + b; ++u)
      for (std::int64_t v = lo1 - b; v <= hi1 + b; ++v) {
        const std::vector<std::int64_t> c{u, v};
        CHECK(in.count(c) + co.count(c) == 1);
      }
    CHECK(co.size() + in.size() == static_cast<std::size_t>((hi0 - lo0 + 1 + 2 * b) * (hi1 - lo1 + 1 + 2 * b)));
    CHECK(g.dim() == x.dim());
  }
}
