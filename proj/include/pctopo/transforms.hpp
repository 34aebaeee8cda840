#pragma once

#include <cstdint>
#include <vector>

#include "pctopo/core.hpp"

namespace pctopo {

// X, then midpoints of the radius-`radius` Rips edges in (i, j) order, then
// (max_dim == 2) centroids of its triangles in (i, j, k) order. Appended
// points that are bitwise duplicates of an earlier row are dropped; the
// rows of X are kept verbatim.
PointCloud barycentric_subdivision(const PointCloud& cloud, double radius, int max_dim = 2);

// Greedy walk in row order: a point is kept iff it is farther than min_dist
// from every point kept before it.
PointCloud sparsification(const PointCloud& cloud, double min_dist);

// Row indices kept by sparsification, increasing.
std::vector<std::size_t> sparsification_indices(const PointCloud& cloud, double min_dist);

// Componentwise floor((x - origin) / step). Cells are listed in order of first
// appearance and carry the smallest source index mapping to them. An empty
// origin means the zero vector.
Grid gridification(const PointCloud& cloud, double step, const std::vector<double>& origin = {});

// Lattice cell containing one point, with the residue x - embed(cell) in
// [0, step) in every coordinate.
std::vector<std::int64_t> grid_cell(std::span<const double> x, double step, std::span<const double> origin);

// Each cell c becomes the 2^N half-lattice cells 2c + y, y in {0,1}^N.
Grid grid_subdivision(const Grid& grid);

// All half-lattice cells within sup-distance step/2 of a cell: 2c + s with
// s in {-1,0,1}^N.
Grid thickening(const Grid& grid);

// Cells of the bounding box of `grid`, grown by `buffer` on every side, that
// are not in `grid`. Lexicographic order.
Grid complement(const Grid& grid, std::int64_t buffer);

}  // namespace pctopo
