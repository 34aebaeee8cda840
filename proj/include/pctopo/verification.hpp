#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "pctopo/core.hpp"
#include "pctopo/metrics.hpp"

namespace pctopo {

// mt19937_64 with hand-rolled conversions, so that a seed produces the same
// stream on every standard library:
//   uniform()  = (x >> 11) * 2^-53
//   normal()   = Box-Muller on two uniforms
//   below(n)   = rejection on the top of the 64-bit range
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  std::uint64_t below(std::uint64_t n);  // n >= 1

 private:
  std::mt19937_64 engine_;
};

enum class Theorem { bary, sparse, grid, duality };

Theorem parse_theorem(std::string_view name);
std::string_view theorem_name(Theorem t);

// Diagrams of the two sides plus the matching used in the proof.
struct Witness {
  PersistenceDiagram a;  // D_X
  PersistenceDiagram b;  // diagram of the modified set
  Matching matching;     // cost filled in under chebyshev
};

// Interval i of D_X goes to interval i of D_B (X is a prefix of B); the
// remaining intervals of D_B go to the diagonal.
Witness induced_matching_bary(const PointCloud& cloud, double radius, int max_dim = 2);

// Interval k of D_S goes to the interval of the same point in D_X; the
// remaining intervals of D_X go to the diagonal.
Witness induced_matching_sparse(const PointCloud& cloud, double min_dist);

// Each grid cell is paired with the longest D_X interval among the points that
// floor onto it (smallest index on ties); other D_X intervals go to the diagonal.
Witness induced_matching_grid(const PointCloud& cloud, double step, const std::vector<double>& origin = {});

// delta/4, eps/2, sqrt(N) * mu / 2.
double theorem_bound(Theorem t, double parameter, std::size_t dim);

inline constexpr double kBoundSlack = 1e-9;

struct BoundReport {
  Theorem theorem = Theorem::bary;
  double parameter = 0.0;
  double bound = 0.0;
  double bottleneck_value = 0.0;
  double witness_cost = 0.0;
  bool pass = false;
};

// Not defined for Theorem::duality.
BoundReport check_bound(Theorem t, const PointCloud& cloud, double parameter);

struct DualityReport {
  std::int64_t buffer = 0;
  std::int64_t duality_rank = 0;  // components of the complement - 1
  std::int64_t euler_rank = 0;    // beta_1 of the thickened complex
  bool pass = false;
};

// Planar grids only (the Euler oracle is two-dimensional).
DualityReport check_duality(const Grid& grid, std::int64_t buffer);

struct Disk {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
};

struct Region {
  enum class Kind { rectangle, disk } kind = Kind::rectangle;
  // rectangle: [x0, x1] x [y0, y1]; disk: centre (x0, y0), radius x1
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  double weight = 1.0;  // relative sampling mass
};

// Union of regions minus holes, sampled with bounded additive noise.
struct ShapeParams {
  std::vector<Region> regions;
  std::vector<Disk> holes;
  double noise = 0.0;  // each coordinate perturbed by uniform [-noise, noise]
};

// Annulus, a bar attached to it and a separate small disk inside the unit
// square, densest on the bar. Diameter close to 1.
ShapeParams default_shape();

bool shape_contains(const ShapeParams& shape, double x, double y);

// Throws InvalidArgument for an unusable shape (no regions, bad extents,
// non-positive total weight, negative noise).
void validate_shape(const ShapeParams& shape);

// n points in the plane, all inside the shape (samples falling outside after
// noise are redrawn). Same seed, same cloud.
PointCloud generate_synthetic(std::uint64_t seed, std::size_t n, const ShapeParams& shape = default_shape());

// Random test inputs for the suites. Clouds have N in {1,2,3} and at most
// max_n points; grids are planar with at most 100 cells.
PointCloud random_cloud(std::uint64_t seed, std::size_t max_n = 200);
Grid random_grid(std::uint64_t seed);

struct SuiteCase {
  Theorem theorem = Theorem::bary;
  std::uint64_t seed = 0;
  std::size_t n = 0;    // points, or cells for duality
  std::size_t dim = 0;
  double parameter = 0.0;  // delta, eps, mu, or the buffer for duality
  double bound = 0.0;      // the duality rows carry the Euler rank here
  double value = 0.0;
  bool pass = false;
};

// Scale factors applied to diam(X) for each theorem, and the duality buffers.
std::vector<double> suite_parameters(Theorem t);

// One case per (seed, parameter); seeds first_seed, first_seed + 1, ...
std::vector<SuiteCase> run_suite(Theorem t, std::size_t seeds, std::uint64_t first_seed = 1);

}  // namespace pctopo
