#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pctopo/metrics.hpp"
#include "pctopo/verification.hpp"

using namespace pctopo;

namespace {

PersistenceDiagram diag(std::vector<std::pair<double, double>> v) {
  PersistenceDiagram d;
  for (auto [b, e] : v) d.intervals.push_back({b, e, std::nullopt});
  return d;
}

oracle::Metric om(GroundMetric m) {
  return m == GroundMetric::chebyshev ? oracle::Metric::chebyshev : oracle::Metric::euclidean;
}

PersistenceDiagram random_diagram(Rng& rng, std::size_t max_finite, bool zero_births) {
  PersistenceDiagram d;
  const std::size_t finite = rng.below(max_finite + 1);
  const std::size_t inf = rng.below(3);
  // coarse values so that ties and equal costs come up often
  auto value = [&] { return rng.below(4) == 0 ? static_cast<double>(rng.below(5)) / 4 : rng.uniform(0, 1); };
  for (std::size_t i = 0; i < finite; ++i) {
    const double b = zero_births ? 0.0 : value();
    d.intervals.push_back({b, b + value(), std::nullopt});
  }
  for (std::size_t i = 0; i < inf; ++i) d.intervals.push_back({zero_births ? 0.0 : value(), kInfinity, std::nullopt});
  return d;
}

void check_witness(const PersistenceDiagram& a, const PersistenceDiagram& b, const BottleneckResult& r,
                   GroundMetric m) {
  if (std::isinf(r.value)) return;
  std::vector<int> seen_a(a.size(), 0), seen_b(b.size(), 0);
  for (auto [i, j] : r.witness.pairs) {
    ++seen_a[i];
    ++seen_b[j];
  }
  for (std::size_t i : r.witness.diagonal_a) ++seen_a[i];
  for (std::size_t j : r.witness.diagonal_b) ++seen_b[j];
  for (int s : seen_a) CHECK(s == 1);
  for (int s : seen_b) CHECK(s == 1);
  CHECK(matching_cost(a, b, r.witness, m) == r.value);
  CHECK(r.witness.cost == r.value);
}

}  // namespace

TEST_CASE("metric names") {
  CHECK(parse_metric("chebyshev") == GroundMetric::chebyshev);
  CHECK(parse_metric("euclidean") == GroundMetric::euclidean);
  CHECK(metric_name(GroundMetric::euclidean) == "euclidean");
  CHECK_THROWS_AS(parse_metric("l2"), InvalidArgument);
}

TEST_CASE("bottleneck examples") {
  const auto a = diag({{0, kInfinity}, {0, 0.5}});
  auto r = bottleneck(a, a);
  CHECK(r.value == 0.0);
  check_witness(a, a, r, GroundMetric::chebyshev);

  r = bottleneck(a, diag({{0, kInfinity}, {0, 0.25}}));
  CHECK(r.value == 0.25);

  const auto one = diag({{0, kInfinity}});
  const auto two = diag({{0, kInfinity}, {0, 0.2}});
  CHECK(bottleneck(one, two).value == 0.1);
  CHECK(bottleneck(one, two, GroundMetric::euclidean).value == doctest::Approx(0.2 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(bottleneck(one, two, GroundMetric::euclidean).value == doctest::Approx(0.14142).epsilon(1e-4));
}

TEST_CASE("infinite bars") {
  CHECK(std::isinf(bottleneck(diag({{0, kInfinity}}), diag({{0, 1}})).value));
  CHECK(bottleneck(diag({{0, kInfinity}, {1, kInfinity}}), diag({{0.25, kInfinity}, {3, kInfinity}})).value == 2.0);
  CHECK(bottleneck(PersistenceDiagram{}, PersistenceDiagram{}).value == 0.0);
}

TEST_CASE("agrees with exhaustive enumeration") {
  Rng rng(11);
  for (int t = 0; t < 400; ++t) {
    const bool zero = t % 2 == 0;
    const auto a = random_diagram(rng, 6, zero);
    const auto b = random_diagram(rng, 6, zero);
    for (GroundMetric m : {GroundMetric::chebyshev, GroundMetric::euclidean}) {
      const auto r = bottleneck(a, b, m);
      CHECK(r.value == oracle::bottleneck(a, b, om(m)));
      check_witness(a, b, r, m);
    }
  }
}

TEST_CASE("fast path equals the general algorithm") {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_diagram(rng, 40, true);
    const auto b = random_diagram(rng, 40, true);
    for (GroundMetric m : {GroundMetric::chebyshev, GroundMetric::euclidean}) {
      const auto fast = bottleneck(a, b, BottleneckOptions{m, true});
      const auto slow = bottleneck(a, b, BottleneckOptions{m, false});
      CHECK(fast.value == slow.value);
      check_witness(a, b, fast, m);
      check_witness(a, b, slow, m);
    }
  }
}

TEST_CASE("identity, symmetry and triangle inequality") {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    auto a = random_diagram(rng, 10, false);
    auto b = random_diagram(rng, 10, false);
    auto c = random_diagram(rng, 10, false);
    // equal infinite counts so that every distance is finite
    for (auto* d : {&a, &b, &c}) {
      std::erase_if(d->intervals, [](const Interval& iv) { return iv.infinite(); });
      d->intervals.push_back({0.0, kInfinity, std::nullopt});
    }
    for (GroundMetric m : {GroundMetric::chebyshev, GroundMetric::euclidean}) {
      CHECK(bottleneck(a, a, m).value == 0.0);
      const double ab = bottleneck(a, b, m).value;
      CHECK(ab == bottleneck(b, a, m).value);
      CHECK(bottleneck(a, c, m).value <= ab + bottleneck(b, c, m).value + 1e-12);
    }
  }
}

TEST_CASE("matching cost") {
  const auto a = diag({{0, kInfinity}, {0, 1}});
  const auto b = diag({{0, kInfinity}});
  Matching m;
  m.pairs = {{1, 0}};
  m.diagonal_a = {0};
  CHECK(std::isinf(matching_cost(a, b, m, GroundMetric::chebyshev)));
  m.pairs = {{0, 0}};
  m.diagonal_a = {1};
  CHECK(matching_cost(a, b, m, GroundMetric::chebyshev) == 0.5);
  CHECK(matching_cost(a, b, m, GroundMetric::euclidean) == 1 / std::numbers::sqrt2);
}
