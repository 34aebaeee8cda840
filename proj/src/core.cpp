#include "pctopo/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cell_index.hpp"

namespace pctopo {

double distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw DimensionMismatch("distance: points have dimensions " + std::to_string(p.size()) +
                            " and " + std::to_string(q.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = p[k] - q[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

PointCloud::PointCloud(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("point cloud dimension must be at least 1");
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim == 0) throw InvalidArgument("point cloud dimension must be at least 1");
  if (coords_.size() % dim != 0) {
    throw DimensionMismatch("coordinate count " + std::to_string(coords_.size()) +
                            " is not a multiple of dimension " + std::to_string(dim));
  }
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidArgument("from_rows: cannot infer dimension of an empty row list");
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) throw DimensionMismatch("from_rows: rows have differing dimensions");
    coords.insert(coords.end(), r.begin(), r.end());
  }
  return PointCloud(dim, std::move(coords));
}

double distance(const PointCloud& cloud, std::size_t i, std::size_t j) {
  return distance(cloud.point(i), cloud.point(j));
}

double diameter(const PointCloud& cloud) {
  if (cloud.empty()) throw EmptyInput("diameter of an empty point cloud");
  double best = 0.0;
  const std::size_t n = cloud.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(cloud.point(i), cloud.point(j));
      if (d > best) best = d;
    }
  }
  return best;
}

Grid::Grid(std::size_t dim, double step, std::vector<double> origin, bool halved,
           std::vector<std::int64_t> cells, std::vector<std::size_t> source_index)
    : dim_(dim), step_(step), origin_(std::move(origin)), halved_(halved) {
  if (dim == 0) throw InvalidArgument("grid dimension must be at least 1");
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("grid step must be positive and finite");
  if (origin_.empty()) origin_.assign(dim, 0.0);
  if (origin_.size() != dim) throw DimensionMismatch("grid origin has wrong dimension");
  if (cells.size() % dim != 0) throw DimensionMismatch("grid cell coordinates not a multiple of dimension");
  const std::size_t n = cells.size() / dim;
  if (!source_index.empty() && source_index.size() != n) {
    throw InvalidArgument("grid source_index must have one entry per cell");
  }

  detail::CellIndex index;
  cells_.reserve(cells.size());
  std::vector<std::int64_t> key(dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(cells.begin() + i * dim, cells.begin() + (i + 1) * dim, key.begin());
    if (auto at = index.find(key)) {
      if (!source_index.empty() && source_index[i] < source_index_[*at]) {
        source_index_[*at] = source_index[i];
      }
      continue;
    }
    index.insert(key, size());
    cells_.insert(cells_.end(), key.begin(), key.end());
    if (!source_index.empty()) source_index_.push_back(source_index[i]);
  }
}

std::vector<double> Grid::embed(std::size_t i) const {
  const double h = lattice_step();
  std::vector<double> x(dim_);
  auto c = cell(i);
  for (std::size_t k = 0; k < dim_; ++k) x[k] = origin_[k] + h * static_cast<double>(c[k]);
  return x;
}

PointCloud Grid::embed_all() const {
  const double h = lattice_step();
  std::vector<double> coords(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    coords[i] = origin_[i % dim_] + h * static_cast<double>(cells_[i]);
  }
  return PointCloud(dim_, std::move(coords));
}

Grid Grid::with_cells(std::vector<std::int64_t> cells, bool halved) const {
  return Grid(dim_, step_, origin_, halved, std::move(cells));
}

}  // namespace pctopo
