#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pctopo/core.hpp"

namespace pctopo {

struct MstEdge {
  std::size_t a = 0;  // a < b
  std::size_t b = 0;
  double length = 0.0;
};

// Strict total order used for every sweep: length, then (a, b).
inline bool edge_less(const MstEdge& x, const MstEdge& y) noexcept {
  if (x.length != y.length) return x.length < y.length;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

// Euclidean minimum spanning tree (forest for n <= 1: no edges) under
// edge_less. Kd-tree Boruvka; the tie order makes the tree unique, so it is
// the tree a full Kruskal sweep over all pairs would produce. Edges are
// returned sorted by edge_less.
std::vector<MstEdge> euclidean_mst(const PointCloud& cloud);

struct KillRecord {
  std::size_t dying_index = 0;
  std::size_t killer_index = 0;
  // (x', y'): x' in the killer's component, y' in the dying component.
  std::array<std::size_t, 2> pair{};
  double merge_distance = 0.0;
};

struct Ph0Result {
  PersistenceDiagram diagram;  // interval i belongs to point i
  std::vector<KillRecord> kills;
};

// Degree-0 Rips persistence with the elder rule. A merge along an edge of
// length d kills the component whose earliest point comes later, with
// interval [0, d/2). Coincident points get zero-length intervals so the
// point/interval bijection is preserved. Empty cloud -> empty diagram.
Ph0Result ph0_vr(const PointCloud& cloud);

// ph0_vr on the embedded cells, in stored cell order.
PersistenceDiagram ph0_grid(const Grid& grid);

// Components under axis adjacency (one coordinate differs by 1).
std::int64_t betti0_cubical(const Grid& grid);

// beta_1 of the full cubical complex of a planar grid, from the Euler
// characteristic: beta_1 = beta_0 - V + E - F.
std::int64_t betti1_cubical_2d(const Grid& grid);

// Rank of H_{N-1} of the thickened grid's cubical complex, read off the
// complement window: (components of the complement) - 1 for the unbounded one.
std::int64_t codim1_via_duality(const Grid& grid, std::int64_t buffer);

}  // namespace pctopo
