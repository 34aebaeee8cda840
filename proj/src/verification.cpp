#include "pctopo/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cell_index.hpp"
#include "pctopo/persistence.hpp"
#include "pctopo/transforms.hpp"

namespace pctopo {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below: n must be positive");
  const std::uint64_t reject = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= reject) return x % n;
  }
}

Theorem parse_theorem(std::string_view name) {
  if (name == "bary") return Theorem::bary;
  if (name == "sparse") return Theorem::sparse;
  if (name == "grid") return Theorem::grid;
  if (name == "duality") return Theorem::duality;
  throw InvalidArgument("unknown theorem '" + std::string(name) + "' (expected bary, sparse, grid or duality)");
}

std::string_view theorem_name(Theorem t) {
  switch (t) {
    case Theorem::bary: return "bary";
    case Theorem::sparse: return "sparse";
    case Theorem::grid: return "grid";
    case Theorem::duality: return "duality";
  }
  return "?";
}

Witness induced_matching_bary(const PointCloud& cloud, double radius, int max_dim) {
  Witness w;
  const PointCloud enriched = barycentric_subdivision(cloud, radius, max_dim);
  w.a = ph0_vr(cloud).diagram;
  w.b = ph0_vr(enriched).diagram;
  for (std::size_t i = 0; i < cloud.size(); ++i) w.matching.pairs.emplace_back(i, i);
  for (std::size_t j = cloud.size(); j < enriched.size(); ++j) w.matching.diagonal_b.push_back(j);
  w.matching.cost = matching_cost(w.a, w.b, w.matching, GroundMetric::chebyshev);
  return w;
}

Witness induced_matching_sparse(const PointCloud& cloud, double min_dist) {
  Witness w;
  const std::vector<std::size_t> kept = sparsification_indices(cloud, min_dist);
  w.a = ph0_vr(cloud).diagram;
  w.b = ph0_vr(sparsification(cloud, min_dist)).diagram;
  std::vector<bool> used(cloud.size(), false);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    w.matching.pairs.emplace_back(kept[k], k);
    used[kept[k]] = true;
  }
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!used[i]) w.matching.diagonal_a.push_back(i);
  }
  w.matching.cost = matching_cost(w.a, w.b, w.matching, GroundMetric::chebyshev);
  return w;
}

Witness induced_matching_grid(const PointCloud& cloud, double step, const std::vector<double>& origin) {
  Witness w;
  const Grid grid = gridification(cloud, step, origin);
  w.a = ph0_vr(cloud).diagram;
  w.b = ph0_grid(grid);

  const std::size_t n = cloud.size();
  const std::vector<double> z = origin.empty() ? std::vector<double>(cloud.dim(), 0.0) : origin;
  const detail::CellIndex index(grid.cells(), grid.dim());
  std::vector<std::size_t> cell_of(n);
  for (std::size_t i = 0; i < n; ++i) cell_of[i] = *index.find(grid_cell(cloud.point(i), step, z));
  std::vector<std::size_t> best(grid.size(), n);
  auto longer = [&](std::size_t i, std::size_t j) {
    // true if interval i beats interval j (j == n means none yet)
    if (j == n) return true;
    const double li = w.a.intervals[i].length();
    const double lj = w.a.intervals[j].length();
    if (li != lj) return li > lj;
    return i < j;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t& b = best[cell_of[i]];
    if (longer(i, b)) b = i;
  }
  std::vector<bool> used(n, false);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    w.matching.pairs.emplace_back(best[c], c);
    used[best[c]] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!used[i]) w.matching.diagonal_a.push_back(i);
  }
  w.matching.cost = matching_cost(w.a, w.b, w.matching, GroundMetric::chebyshev);
  return w;
}

double theorem_bound(Theorem t, double parameter, std::size_t dim) {
  switch (t) {
    case Theorem::bary: return parameter / 4.0;
    case Theorem::sparse: return parameter / 2.0;
    case Theorem::grid: return std::sqrt(static_cast<double>(dim)) * parameter / 2.0;
    case Theorem::duality: break;
  }
  throw InvalidArgument("theorem_bound: no metric bound for the duality identity");
}

BoundReport check_bound(Theorem t, const PointCloud& cloud, double parameter) {
  Witness w;
  switch (t) {
    case Theorem::bary: w = induced_matching_bary(cloud, parameter); break;
    case Theorem::sparse: w = induced_matching_sparse(cloud, parameter); break;
    case Theorem::grid: w = induced_matching_grid(cloud, parameter); break;
    case Theorem::duality: throw InvalidArgument("check_bound: use check_duality for the duality identity");
  }
  BoundReport r;
  r.theorem = t;
  r.parameter = parameter;
  r.bound = theorem_bound(t, parameter, cloud.dim());
  r.bottleneck_value = bottleneck(w.a, w.b, GroundMetric::chebyshev).value;
  r.witness_cost = w.matching.cost;
  r.pass = r.bottleneck_value <= r.bound + kBoundSlack && r.bottleneck_value <= r.witness_cost;
  return r;
}

DualityReport check_duality(const Grid& grid, std::int64_t buffer) {
  DualityReport r;
  r.buffer = buffer;
  r.duality_rank = codim1_via_duality(grid, buffer);
  r.euler_rank = betti1_cubical_2d(thickening(grid));
  r.pass = r.duality_rank == r.euler_rank;
  return r;
}

ShapeParams default_shape() {
  ShapeParams s;
  // annulus around (0.3, 0.55)
  s.regions.push_back({Region::Kind::disk, 0.3, 0.55, 0.25, 0.0, 1.0});
  s.holes.push_back({0.3, 0.55, 0.12});
  // bar leaving the annulus to the right
  s.regions.push_back({Region::Kind::rectangle, 0.5, 0.5, 0.95, 0.6, 1.5});
  // small separate blob
  s.regions.push_back({Region::Kind::disk, 0.8, 0.2, 0.08, 0.0, 0.4});
  s.noise = 0.004;
  return s;
}

namespace {

bool in_region(const Region& r, double x, double y) {
  if (r.kind == Region::Kind::rectangle) return x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1;
  const double dx = x - r.x0, dy = y - r.y0;
  return dx * dx + dy * dy <= r.x1 * r.x1;
}

}  // namespace

bool shape_contains(const ShapeParams& shape, double x, double y) {
  for (const Disk& h : shape.holes) {
    const double dx = x - h.cx, dy = y - h.cy;
    if (dx * dx + dy * dy < h.r * h.r) return false;
  }
  return std::any_of(shape.regions.begin(), shape.regions.end(),
                     [&](const Region& r) { return in_region(r, x, y); });
}

void validate_shape(const ShapeParams& shape) {
  if (shape.regions.empty()) throw InvalidArgument("shape: at least one region is required");
  double total = 0.0;
  for (const Region& r : shape.regions) {
    const bool finite = std::isfinite(r.x0) && std::isfinite(r.y0) && std::isfinite(r.x1) && std::isfinite(r.y1);
    if (!finite) throw InvalidArgument("shape: region extents must be finite");
    if (r.kind == Region::Kind::rectangle && !(r.x1 > r.x0 && r.y1 > r.y0)) {
      throw InvalidArgument("shape: rectangle needs x1 > x0 and y1 > y0");
    }
    if (r.kind == Region::Kind::disk && !(r.x1 > 0.0)) throw InvalidArgument("shape: disk radius must be positive");
    if (!(r.weight >= 0.0) || !std::isfinite(r.weight)) throw InvalidArgument("shape: weights must be non-negative");
    total += r.weight;
  }
  if (!(total > 0.0)) throw InvalidArgument("shape: total weight must be positive");
  for (const Disk& h : shape.holes) {
    if (!(h.r >= 0.0) || !std::isfinite(h.cx) || !std::isfinite(h.cy) || !std::isfinite(h.r)) {
      throw InvalidArgument("shape: bad hole");
    }
  }
  if (!(shape.noise >= 0.0) || !std::isfinite(shape.noise)) throw InvalidArgument("shape: noise must be non-negative");
}

PointCloud generate_synthetic(std::uint64_t seed, std::size_t n, const ShapeParams& shape) {
  if (n == 0) throw InvalidArgument("generate_synthetic: n must be at least 1");
  validate_shape(shape);
  Rng rng(seed);
  double total = 0.0;
  for (const Region& r : shape.regions) total += r.weight;

  std::vector<double> coords;
  coords.reserve(2 * n);
  std::size_t attempts = 0;
  const std::size_t max_attempts = 1000 * n + 100000;
  while (coords.size() < 2 * n) {
    if (++attempts > max_attempts) throw InvalidArgument("generate_synthetic: shape has (almost) no area");
    double pick = rng.uniform() * total;
    std::size_t k = 0;
    while (k + 1 < shape.regions.size() && pick >= shape.regions[k].weight) {
      pick -= shape.regions[k].weight;
      ++k;
    }
    const Region& r = shape.regions[k];
    if (r.weight == 0.0) continue;
    double x, y;
    if (r.kind == Region::Kind::rectangle) {
      x = rng.uniform(r.x0, r.x1);
      y = rng.uniform(r.y0, r.y1);
    } else {
      const double rho = r.x1 * std::sqrt(rng.uniform());
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      x = r.x0 + rho * std::cos(theta);
      y = r.y0 + rho * std::sin(theta);
    }
    if (shape.noise > 0.0) {
      x += rng.uniform(-shape.noise, shape.noise);
      y += rng.uniform(-shape.noise, shape.noise);
    }
    if (!shape_contains(shape, x, y)) continue;
    coords.push_back(x);
    coords.push_back(y);
  }
  return PointCloud(2, std::move(coords));
}

PointCloud random_cloud(std::uint64_t seed, std::size_t max_n) {
  if (max_n == 0) throw InvalidArgument("random_cloud: max_n must be positive");
  Rng rng(seed);
  const std::size_t dim = 1 + rng.below(3);
  const std::size_t n = 1 + rng.below(max_n);
  std::vector<double> coords;
  coords.reserve(n * dim);
  switch (rng.below(3)) {
    case 0: {  // uniform box with random aspect
      std::vector<double> side(dim);
      for (double& s : side) s = rng.uniform(0.2, 3.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < dim; ++k) coords.push_back(rng.uniform(0.0, side[k]));
      }
      break;
    }
    case 1: {  // gaussian clusters
      const std::size_t clusters = 1 + rng.below(5);
      std::vector<double> centres(clusters * dim);
      for (double& c : centres) c = rng.uniform(-2.0, 2.0);
      std::vector<double> spread(clusters);
      for (double& s : spread) s = rng.uniform(0.02, 0.5);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = rng.below(clusters);
        for (std::size_t k = 0; k < dim; ++k) coords.push_back(centres[c * dim + k] + spread[c] * rng.normal());
      }
      break;
    }
    default: {  // coarse lattice with repeats, plenty of distance ties
      const double unit = rng.uniform(0.1, 1.0);
      const std::uint64_t span = 2 + rng.below(8);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < dim; ++k) coords.push_back(unit * static_cast<double>(rng.below(span)));
      }
      break;
    }
  }
  return PointCloud(dim, std::move(coords));
}

Grid random_grid(std::uint64_t seed) {
  Rng rng(seed);
  const std::int64_t w = 1 + static_cast<std::int64_t>(rng.below(12));
  const std::int64_t h = 1 + static_cast<std::int64_t>(rng.below(12));
  const double fill = rng.uniform(0.2, 0.9);
  const std::int64_t dx = static_cast<std::int64_t>(rng.below(21)) - 10;
  const std::int64_t dy = static_cast<std::int64_t>(rng.below(21)) - 10;
  std::vector<std::int64_t> cells;
  for (std::int64_t x = 0; x < w; ++x) {
    for (std::int64_t y = 0; y < h; ++y) {
      if (cells.size() / 2 >= 100) break;
      if (rng.uniform() < fill) {
        cells.push_back(x + dx);
        cells.push_back(y + dy);
      }
    }
  }
  if (cells.empty()) {
    cells.push_back(dx);
    cells.push_back(dy);
  }
  return Grid(2, 1.0, {0.0, 0.0}, false, std::move(cells));
}

std::vector<double> suite_parameters(Theorem t) {
  switch (t) {
    case Theorem::bary: return {0.1, 0.2, 0.3};
    case Theorem::sparse: return {0.02, 0.06, 0.1};
    case Theorem::grid: return {0.05, 0.12, 0.25};
    case Theorem::duality: return {1.0, 2.0, 3.0};
  }
  return {};
}

std::vector<SuiteCase> run_suite(Theorem t, std::size_t seeds, std::uint64_t first_seed) {
  std::vector<SuiteCase> out;
  const std::vector<double> params = suite_parameters(t);
  for (std::size_t s = 0; s < seeds; ++s) {
    const std::uint64_t seed = first_seed + s;
    if (t == Theorem::duality) {
      const Grid g = random_grid(seed);
      for (double b : params) {
        const DualityReport r = check_duality(g, static_cast<std::int64_t>(b));
        out.push_back({t, seed, g.size(), 2, b, static_cast<double>(r.euler_rank),
                       static_cast<double>(r.duality_rank), r.pass});
      }
      continue;
    }
    // Enrichment grows roughly cubically with the neighbourhood size.
    const PointCloud x = random_cloud(seed, t == Theorem::bary ? 120 : 200);
    const double diam = diameter(x);
    for (double f : params) {
      double p = f * diam;
      if (!(p > 0.0)) {
        // single point or all coincident: any positive parameter will do
        if (t == Theorem::bary || t == Theorem::sparse) {
          p = 0.0;
        } else {
          p = f;
        }
      }
      const BoundReport r = check_bound(t, x, p);
      out.push_back({t, seed, x.size(), x.dim(), p, r.bound, r.bottleneck_value, r.pass});
    }
  }
  return out;
}

}  // namespace pctopo
