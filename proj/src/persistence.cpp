#include "pctopo/persistence.hpp"

#include <string>

#include "cell_index.hpp"
#include "pctopo/complexes.hpp"
#include "pctopo/transforms.hpp"
#include "union_find.hpp"

namespace pctopo {

Ph0Result ph0_vr(const PointCloud& cloud) {
  Ph0Result out;
  const std::size_t n = cloud.size();
  out.diagram.degree = 0;
  out.diagram.intervals.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagram.intervals[i] = Interval{0.0, kInfinity, i};
  if (n <= 1) return out;

  const std::vector<MstEdge> mst = euclidean_mst(cloud);
  detail::UnionFind uf(n);
  // Earliest point of each component, indexed by union-find root.
  std::vector<std::size_t> elder(n);
  for (std::size_t i = 0; i < n; ++i) elder[i] = i;

  out.kills.reserve(mst.size());
  for (const MstEdge& e : mst) {
    const std::size_t ra = uf.find(e.a);
    const std::size_t rb = uf.find(e.b);
    const std::size_t ea = elder[ra];
    const std::size_t eb = elder[rb];
    const bool a_older = ea < eb;
    KillRecord k;
    k.killer_index = a_older ? ea : eb;
    k.dying_index = a_older ? eb : ea;
    k.pair = a_older ? std::array<std::size_t, 2>{e.a, e.b} : std::array<std::size_t, 2>{e.b, e.a};
    k.merge_distance = e.length;
    out.diagram.intervals[k.dying_index].death = e.length / 2.0;
    out.kills.push_back(k);
    elder[uf.unite(ra, rb)] = k.killer_index;
  }
  return out;
}

PersistenceDiagram ph0_grid(const Grid& grid) {
  if (grid.empty()) return PersistenceDiagram{};
  return ph0_vr(grid.embed_all()).diagram;
}

std::int64_t betti0_cubical(const Grid& grid) {
  const std::size_t dim = grid.dim();
  const std::size_t n = grid.size();
  if (n == 0) return 0;
  detail::CellIndex index(grid.cells(), dim);
  detail::UnionFind uf(n);
  std::vector<std::int64_t> probe(dim);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = grid.cell(i);
    for (std::size_t k = 0; k < dim; ++k) {
      std::copy(c.begin(), c.end(), probe.begin());
      probe[k] += 1;
      if (auto j = index.find(probe)) uf.unite(i, *j);
    }
  }
  return static_cast<std::int64_t>(uf.sets());
}

std::int64_t betti1_cubical_2d(const Grid& grid) {
  if (grid.dim() != 2) {
    throw DimensionMismatch("betti1_cubical_2d: grid dimension is " + std::to_string(grid.dim()) + ", expected 2");
  }
  if (grid.empty()) return 0;
  const CubicalComplex cc(grid);
  return betti0_cubical(grid) - cc.euler_characteristic();
}

std::int64_t codim1_via_duality(const Grid& grid, std::int64_t buffer) {
  if (grid.empty()) throw EmptyInput("codim1_via_duality: empty grid");
  if (grid.halved()) throw InvalidArgument("codim1_via_duality: grid must be on the full lattice");
  if (buffer < 1) throw InvalidArgument("codim1_via_duality: buffer must be at least 1");
  return betti0_cubical(complement(grid, buffer)) - 1;
}

}  // namespace pctopo
