#include "pctopo/complexes.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "buckets.hpp"
#include "cell_index.hpp"

namespace pctopo {

namespace {

void check_index_range(const PointCloud& cloud) {
  if (cloud.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("point cloud too large for 32-bit neighbor indices");
  }
}

NeighborGraph from_lists(std::vector<std::vector<std::uint32_t>>& lists) {
  std::vector<std::size_t> offsets(lists.size() + 1, 0);
  for (std::size_t i = 0; i < lists.size(); ++i) offsets[i + 1] = offsets[i] + lists[i].size();
  std::vector<std::uint32_t> targets;
  targets.reserve(offsets.back());
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    targets.insert(targets.end(), l.begin(), l.end());
  }
  return NeighborGraph(std::move(offsets), std::move(targets));
}

}  // namespace

NeighborGraph radius_graph_brute_force(const PointCloud& cloud, double radius) {
  if (radius < 0.0) throw InvalidArgument("radius must be non-negative");
  check_index_range(cloud);
  const std::size_t n = cloud.size();
  std::vector<std::vector<std::uint32_t>> lists(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(cloud.point(i), cloud.point(j)) <= radius) lists[i].push_back(static_cast<std::uint32_t>(j));
    }
  }
  return from_lists(lists);
}

NeighborGraph radius_graph(const PointCloud& cloud, double radius) {
  if (!(radius >= 0.0)) throw InvalidArgument("radius must be non-negative");
  check_index_range(cloud);
  const std::size_t n = cloud.size();
  const std::size_t dim = cloud.dim();
  // radius 0 only joins coincident points; any positive bucket side finds them.
  auto frame = detail::BucketFrame::make(cloud, radius > 0.0 ? radius : 1.0);
  if (!frame) return radius_graph_brute_force(cloud, radius);

  detail::BucketHeads heads(*frame, n);
  std::vector<std::int64_t> next(n, -1);
  std::vector<std::int64_t> bucket(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    frame->coords(cloud.point(i), bucket.data() + i * dim);
    std::uint64_t key;
    frame->pack(bucket.data() + i * dim, key);
    next[i] = heads.exchange(key, static_cast<std::int64_t>(i));
  }

  std::vector<std::vector<std::uint32_t>> lists(n);
  std::vector<std::int64_t> scratch;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = cloud.point(i);
    frame->for_each_neighbor(bucket.data() + i * dim, scratch, [&](std::uint64_t key) {
      for (std::int64_t j = heads.get(key); j != -1; j = next[j]) {
        if (static_cast<std::size_t>(j) <= i) continue;
        if (distance(p, cloud.point(static_cast<std::size_t>(j))) <= radius) {
          lists[i].push_back(static_cast<std::uint32_t>(j));
        }
      }
    });
  }
  return from_lists(lists);
}

VRSkeleton vr_skeleton(const PointCloud& cloud, double radius, int max_dim) {
  if (!(radius >= 0.0)) throw InvalidArgument("vr_skeleton: radius must be non-negative");
  if (max_dim != 1 && max_dim != 2) throw InvalidArgument("vr_skeleton: max_dim must be 1 or 2");
  NeighborGraph graph = radius_graph(cloud, radius);
  VRSkeleton out;
  out.radius = radius;
  out.edges.reserve(graph.edge_count());
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    for (std::uint32_t j : graph.upper(i)) out.edges.push_back({i, static_cast<std::size_t>(j)});
  }
  if (max_dim == 2) {
    for_each_triangle(graph, [&](std::size_t i, std::size_t j, std::size_t k) {
      out.triangles.push_back({i, j, k});
    });
  }
  return out;
}

struct CubicalComplex::Lookup {
  detail::CellIndex index;
};

CubicalComplex::CubicalComplex(Grid grid) : grid_(std::move(grid)) {
  const std::size_t dim = grid_.dim();
  if (dim > 20) throw InvalidArgument("cubical complex: dimension too large");
  auto lookup = std::make_shared<Lookup>();
  lookup->index = detail::CellIndex(grid_.cells(), dim);
  lookup_ = lookup;

  counts_.assign(dim + 1, 0);
  const bool materialize = dim <= 3;
  cubes_.assign(dim + 1, {});
  counts_[0] = grid_.size();
  if (materialize) {
    for (std::size_t i = 0; i < grid_.size(); ++i) cubes_[0].push_back({i, 0});
  }
  const std::uint32_t masks = 1u << dim;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    for (std::uint32_t mask = 1; mask < masks; ++mask) {
      if (has_cube(grid_.cell(i), mask)) {
        const std::size_t k = static_cast<std::size_t>(__builtin_popcount(mask));
        ++counts_[k];
        if (materialize) cubes_[k].push_back({i, mask});
      }
    }
  }
}

bool CubicalComplex::has_vertex(std::span<const std::int64_t> cell) const {
  return lookup_->index.contains(std::vector<std::int64_t>(cell.begin(), cell.end()));
}

bool CubicalComplex::has_cube(std::span<const std::int64_t> anchor, std::uint32_t axes) const {
  const std::size_t dim = grid_.dim();
  std::vector<std::int64_t> v(anchor.begin(), anchor.end());
  // Enumerate subsets of the axis mask.
  std::uint32_t sub = axes;
  while (true) {
    for (std::size_t k = 0; k < dim; ++k) v[k] = anchor[k] + ((sub >> k) & 1u);
    if (!lookup_->index.contains(v)) return false;
    if (sub == 0) break;
    sub = (sub - 1) & axes;
  }
  return true;
}

std::vector<std::size_t> CubicalComplex::vertices(const Cube& cube) const {
  const std::size_t dim = grid_.dim();
  auto anchor = grid_.cell(cube.anchor);
  std::vector<std::size_t> out;
  std::vector<std::int64_t> v(dim);
  for (std::uint32_t sub = 0; sub < (1u << dim); ++sub) {
    if ((sub & ~cube.axes) != 0) continue;
    for (std::size_t k = 0; k < dim; ++k) v[k] = anchor[k] + ((sub >> k) & 1u);
    auto at = lookup_->index.find(v);
    if (at) out.push_back(*at);
  }
  return out;
}

std::int64_t CubicalComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    const auto c = static_cast<std::int64_t>(counts_[k]);
    chi += (k % 2 == 0) ? c : -c;
  }
  return chi;
}

CubicalComplex cubical_complex(const Grid& grid) { return CubicalComplex(grid); }

}  // namespace pctopo
