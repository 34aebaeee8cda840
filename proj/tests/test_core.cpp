#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "pctopo/core.hpp"
#include "pctopo/verification.hpp"

using namespace pctopo;

TEST_CASE("distance examples") {
  const std::vector<double> o{0, 0}, p{3, 4}, q{1, 1};
  CHECK(distance(o, p) == 5.0);
  CHECK(distance(p, p) == 0.0);
  CHECK(distance(o, q) == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(distance(o, q) == std::sqrt(2.0));
  CHECK(distance(p, o) == distance(o, p));
}

TEST_CASE("distance rejects mixed dimensions") {
  const std::vector<double> a{0, 0}, b{1, 2, 3};
  CHECK_THROWS_AS(distance(a, b), DimensionMismatch);
}

TEST_CASE("triangle inequality on random triples") {
  Rng rng(7);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t dim = 1 + rng.below(4);
    std::vector<double> a(dim), b(dim), c(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      a[k] = rng.uniform(-5, 5);
      b[k] = rng.uniform(-5, 5);
      c[k] = rng.uniform(-5, 5);
    }
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST_CASE("diameter") {
  CHECK(diameter(PointCloud::from_rows({{0, 0}})) == 0.0);
  CHECK(diameter(PointCloud::from_rows({{0, 0}, {1, 0}, {0, 1}})) == std::sqrt(2.0));
  CHECK_THROWS_AS(diameter(PointCloud(2)), EmptyInput);
  const PointCloud x = generate_synthetic(1, 1489);
  CHECK(diameter(x) == oracle::diameter(x));
}

TEST_CASE("point cloud construction") {
  PointCloud x(3);
  CHECK(x.empty());
  CHECK(x.size() == 0);
  CHECK(x.dim() == 3);
  CHECK_THROWS_AS(PointCloud(0), InvalidArgument);
  CHECK_THROWS_AS(PointCloud(2, {1.0, 2.0, 3.0}), DimensionMismatch);
  CHECK_THROWS_AS(PointCloud::from_rows({{1, 2}, {3}}), DimensionMismatch);
  const PointCloud y = PointCloud::from_rows({{1, 2}, {3, 4}});
  CHECK(y.size() == 2);
  CHECK(y.point(1)[0] == 3.0);
}

TEST_CASE("grid deduplicates and keeps first appearance") {
  Grid g(2, 0.5, {}, false, {1, 2, 3, 4, 1, 2}, {5, 7, 2});
  REQUIRE(g.size() == 2);
  CHECK(g.cell(0)[0] == 1);
  CHECK(g.cell(1)[1] == 4);
  CHECK(g.source_index() == std::vector<std::size_t>{2, 7});
  CHECK(g.origin() == std::vector<double>{0, 0});
}

TEST_CASE("grid rejects bad metadata") {
  CHECK_THROWS_AS(Grid(2, 0.0, {}, false, {}), InvalidArgument);
  CHECK_THROWS_AS(Grid(2, -1.0, {}, false, {}), InvalidArgument);
  CHECK_THROWS_AS(Grid(2, 1.0, {0.0}, false, {}), DimensionMismatch);
  CHECK_THROWS_AS(Grid(2, 1.0, {}, false, {1, 2, 3}), DimensionMismatch);
}

TEST_CASE("grid embedding round trip is exact") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const double step = rng.uniform(0.01, 3.0);
    const std::vector<double> z{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const bool halved = rng.below(2) == 1;
    std::vector<std::int64_t> cells;
    for (int i = 0; i < 20; ++i) cells.push_back(static_cast<std::int64_t>(rng.below(2001)) - 1000);
    const Grid g(2, step, z, halved, cells);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto x = g.embed(i);
      for (std::size_t k = 0; k < 2; ++k) {
        const double q = (x[k] - z[k]) / g.lattice_step();
        const auto back = static_cast<std::int64_t>(std::llround(q));
        CHECK(back == g.cell(i)[k]);
        CHECK(z[k] + g.lattice_step() * static_cast<double>(back) == x[k]);
      }
    }
  }
}

TEST_CASE("half lattice embedding") {
  const Grid g(1, 1.0, {0.25}, true, {3});
  CHECK(g.lattice_step() == 0.5);
  CHECK(g.embed(0)[0] == 1.75);
}
