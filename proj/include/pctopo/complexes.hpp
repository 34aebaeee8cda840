#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pctopo/core.hpp"

namespace pctopo {

// Upper adjacency of the radius graph: for each i, the sorted indices j > i
// with d(x_i, x_j) <= radius. CSR layout.
class NeighborGraph {
 public:
  NeighborGraph() = default;
  NeighborGraph(std::vector<std::size_t> offsets, std::vector<std::uint32_t> targets)
      : offsets_(std::move(offsets)), targets_(std::move(targets)) {}

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  std::span<const std::uint32_t> upper(std::size_t i) const noexcept {
    return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
};

// Radius graph via axis-aligned buckets of side ~radius; only adjacent buckets
// are compared. Closed condition d <= radius.
NeighborGraph radius_graph(const PointCloud& cloud, double radius);

// Exhaustive O(n^2) reference, same output.
NeighborGraph radius_graph_brute_force(const PointCloud& cloud, double radius);

// Visits every triangle (i < j < k) of the flag complex of the graph in
// lexicographic order.
template <class Visitor>
void for_each_triangle(const NeighborGraph& graph, Visitor&& visit) {
  const std::size_t n = graph.vertex_count();
  for (std::size_t i = 0; i < n; ++i) {
    auto ui = graph.upper(i);
    for (std::size_t a = 0; a < ui.size(); ++a) {
      const std::uint32_t j = ui[a];
      auto uj = graph.upper(j);
      std::size_t p = a + 1, q = 0;
      while (p < ui.size() && q < uj.size()) {
        if (ui[p] < uj[q]) {
          ++p;
        } else if (uj[q] < ui[p]) {
          ++q;
        } else {
          visit(i, static_cast<std::size_t>(j), static_cast<std::size_t>(ui[p]));
          ++p;
          ++q;
        }
      }
    }
  }
}

struct VRSkeleton {
  double radius = 0.0;
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<std::array<std::size_t, 3>> triangles;
};

// Edges and (max_dim == 2) triangles of the Vietoris-Rips complex at radius,
// in lexicographic order.
VRSkeleton vr_skeleton(const PointCloud& cloud, double radius, int max_dim);

// A k-cube anchored at its lowest vertex, spanning the axes set in `axes`.
struct Cube {
  std::size_t anchor = 0;
  std::uint32_t axes = 0;
};

// Full cubical complex on a lattice subset: a k-cube is present iff all 2^k of
// its vertices are. Held implicitly; cube lists are materialized for dim <= 3.
class CubicalComplex {
 public:
  explicit CubicalComplex(Grid grid);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t dim() const noexcept { return grid_.dim(); }

  // Number of k-cubes, 0 <= k <= dim.
  std::size_t count(std::size_t k) const { return counts_.at(k); }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }

  // Empty when dim > 3.
  const std::vector<Cube>& cubes(std::size_t k) const { return cubes_.at(k); }

  bool has_vertex(std::span<const std::int64_t> cell) const;
  bool has_cube(std::span<const std::int64_t> anchor, std::uint32_t axes) const;

  // Vertex indices of a cube, in subset order of the axis mask.
  std::vector<std::size_t> vertices(const Cube& cube) const;

  std::int64_t euler_characteristic() const;

 private:
  Grid grid_;
  std::vector<std::size_t> counts_;
  std::vector<std::vector<Cube>> cubes_;
  struct Lookup;
  std::shared_ptr<const Lookup> lookup_;
};

CubicalComplex cubical_complex(const Grid& grid);

}  // namespace pctopo
