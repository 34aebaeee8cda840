#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pctopo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Euclidean distance. Coordinates are summed in axis order; every distance in
// the library goes through this function so that ties compare bit-exactly.
double distance(std::span<const double> p, std::span<const double> q);

// Ordered point cloud in R^N, stored row-major. Row order is semantic.
class PointCloud {
 public:
  explicit PointCloud(std::size_t dim);
  PointCloud(std::size_t dim, std::vector<double> coords);

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

double distance(const PointCloud& cloud, std::size_t i, std::size_t j);

// Maximum pairwise distance; 0 for a singleton. Throws EmptyInput.
double diameter(const PointCloud& cloud);

// Finite subset of a lattice. A cell c embeds at origin + step * c, or at
// origin + (step / 2) * c when the grid lives on the half lattice.
class Grid {
 public:
  // Cells are deduplicated keeping the first occurrence, so cell order (and
  // source_index, when given) follows first appearance.
  Grid(std::size_t dim, double step, std::vector<double> origin, bool halved,
       std::vector<std::int64_t> cells,
       std::vector<std::size_t> source_index = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return cells_.size() / dim_; }
  bool empty() const noexcept { return cells_.empty(); }
  double step() const noexcept { return step_; }
  double lattice_step() const noexcept { return halved_ ? step_ / 2.0 : step_; }
  bool halved() const noexcept { return halved_; }
  const std::vector<double>& origin() const noexcept { return origin_; }

  std::span<const std::int64_t> cell(std::size_t i) const noexcept {
    return {cells_.data() + i * dim_, dim_};
  }
  std::span<const std::int64_t> cells() const noexcept { return cells_; }

  // Smallest index of a source point mapped to each cell; empty when the grid
  // was not produced from a point cloud.
  const std::vector<std::size_t>& source_index() const noexcept { return source_index_; }

  std::vector<double> embed(std::size_t i) const;
  PointCloud embed_all() const;

  // Same lattice metadata, different cell set.
  Grid with_cells(std::vector<std::int64_t> cells, bool halved) const;

 private:
  std::size_t dim_;
  double step_;
  std::vector<double> origin_;
  bool halved_;
  std::vector<std::int64_t> cells_;
  std::vector<std::size_t> source_index_;
};

struct Interval {
  double birth = 0.0;
  double death = kInfinity;
  std::optional<std::size_t> source_index;

  bool infinite() const noexcept { return death == kInfinity; }
  double length() const noexcept { return death - birth; }
};

struct PersistenceDiagram {
  int degree = 0;
  std::vector<Interval> intervals;

  std::size_t size() const noexcept { return intervals.size(); }
};

// Partial bijection between two diagrams; every interval of either side is
// listed exactly once, in a pair or on its diagonal list.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> diagonal_a;
  std::vector<std::size_t> diagonal_b;
  double cost = 0.0;
};

}  // namespace pctopo
