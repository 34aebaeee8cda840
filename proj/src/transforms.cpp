#include "pctopo/transforms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "buckets.hpp"
#include "cell_index.hpp"
#include "pctopo/complexes.hpp"

namespace pctopo {

namespace {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

// Removes rows that bitwise-equal an earlier row, in place, keeping first
// occurrences in order. Rows before `trusted` are always kept. Slots
// hold (hash fingerprint << 32 | kept row + 1); lookups for upcoming rows are
// prefetched since the table is far larger than cache.
std::size_t dedup_rows(std::vector<double>& coords, std::size_t dim, std::size_t trusted) {
  const std::size_t rows = coords.size() / dim;
  if (rows >= (std::size_t{1} << 32) - 1) throw InvalidArgument("barycentric_subdivision: output too large");
  std::size_t cap = 16;
  while (cap < rows + rows / 2) cap <<= 1;
  std::vector<std::uint64_t> slots(cap, 0);
  const std::size_t mask = cap - 1;
  double* data = coords.data();

  auto hash = [&](std::size_t row) {
    std::uint64_t h = 0x243f6a8885a308d3ull;
    for (std::size_t k = 0; k < dim; ++k) h = mix64(h ^ std::bit_cast<std::uint64_t>(data[row * dim + k]));
    return h;
  };

  constexpr std::size_t kAhead = 16;
  std::size_t kept = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (r + kAhead < rows) __builtin_prefetch(&slots[hash(r + kAhead) & mask]);
    const std::uint64_t h = hash(r);
    const std::uint64_t tag = h & 0xffffffff00000000ull;
    std::size_t at = h & mask;
    bool duplicate = false;
    if (r >= trusted) {
      while (slots[at] != 0) {
        if ((slots[at] & 0xffffffff00000000ull) == tag) {
          const std::size_t other = (slots[at] & 0xffffffffull) - 1;
          if (std::memcmp(data + other * dim, data + r * dim, dim * sizeof(double)) == 0) {
            duplicate = true;
            break;
          }
        }
        at = (at + 1) & mask;
      }
    } else {
      while (slots[at] != 0) at = (at + 1) & mask;
    }
    if (duplicate) continue;
    if (kept != r) std::memmove(data + kept * dim, data + r * dim, dim * sizeof(double));
    slots[at] = tag | (kept + 1);
    ++kept;
  }
  coords.resize(kept * dim);
  return kept;
}

// Bucket side used when only coincident points matter.
double coincidence_reach(const PointCloud& cloud) {
  double widest = 0.0;
  for (std::size_t k = 0; k < cloud.dim(); ++k) {
    double lo = kInfinity, hi = -kInfinity;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      lo = std::min(lo, cloud.point(i)[k]);
      hi = std::max(hi, cloud.point(i)[k]);
    }
    widest = std::max(widest, hi - lo);
  }
  if (!(widest > 0.0) || !std::isfinite(widest)) return 1.0;
  const double per_axis = std::pow(static_cast<double>(cloud.size()), 1.0 / static_cast<double>(cloud.dim()));
  return widest / std::max(1.0, per_axis);
}

void require_unhalved(const Grid& grid, const char* what) {
  if (grid.halved()) throw InvalidArgument(std::string(what) + ": grid is already on the half lattice");
}

constexpr std::int64_t kLatticeLimit = std::int64_t{1} << 60;

void check_doublable(const Grid& grid) {
  for (std::int64_t c : grid.cells()) {
    if (c > kLatticeLimit || c < -kLatticeLimit) throw InvalidArgument("grid coordinate out of range");
  }
}

}  // namespace

PointCloud barycentric_subdivision(const PointCloud& cloud, double radius, int max_dim) {
  if (!(radius >= 0.0)) throw InvalidArgument("barycentric_subdivision: radius must be non-negative");
  if (max_dim != 1 && max_dim != 2) throw InvalidArgument("barycentric_subdivision: max_dim must be 1 or 2");
  const std::size_t dim = cloud.dim();
  const std::size_t n = cloud.size();
  if (n == 0) return PointCloud(dim);

  NeighborGraph graph = radius_graph(cloud, radius);
  std::size_t triangles = 0;
  if (max_dim == 2) {
    for_each_triangle(graph, [&](std::size_t, std::size_t, std::size_t) { ++triangles; });
  }
  const std::size_t capacity = n + graph.edge_count() + triangles;

  std::vector<double> out;
  out.reserve(capacity * dim);
  out.insert(out.end(), cloud.coords().begin(), cloud.coords().end());
  for (std::size_t i = 0; i < n; ++i) {
    auto a = cloud.point(i);
    for (std::uint32_t j : graph.upper(i)) {
      auto b = cloud.point(j);
      for (std::size_t k = 0; k < dim; ++k) out.push_back((a[k] + b[k]) / 2.0);
    }
  }
  if (max_dim == 2) {
    for_each_triangle(graph, [&](std::size_t i, std::size_t j, std::size_t l) {
      auto a = cloud.point(i);
      auto b = cloud.point(j);
      auto c = cloud.point(l);
      for (std::size_t k = 0; k < dim; ++k) out.push_back((a[k] + b[k] + c[k]) / 3.0);
    });
  }
  // X itself may contain repeated rows; those are kept.
  dedup_rows(out, dim, n);
  return PointCloud(dim, std::move(out));
}

std::vector<std::size_t> sparsification_indices(const PointCloud& cloud, double min_dist) {
  if (!(min_dist >= 0.0)) throw InvalidArgument("sparsification: min_dist must be non-negative");
  const std::size_t dim = cloud.dim();
  const std::size_t n = cloud.size();
  std::vector<std::size_t> kept;
  if (n == 0) return kept;

  auto frame = detail::BucketFrame::make(cloud, min_dist > 0.0 ? min_dist : coincidence_reach(cloud));
  if (!frame) {
    for (std::size_t i = 0; i < n; ++i) {
      bool far = true;
      for (std::size_t j : kept) {
        if (distance(cloud.point(i), cloud.point(j)) <= min_dist) {
          far = false;
          break;
        }
      }
      if (far) kept.push_back(i);
    }
    return kept;
  }

  detail::BucketHeads heads(*frame, std::min<std::size_t>(n, 1u << 20));
  std::vector<std::int64_t> next;
  std::vector<std::int64_t> cell(dim);
  std::vector<std::int64_t> scratch;
  // Consecutive rows tend to be near each other, so the kept point that
  // rejected the previous row is tried first.
  std::size_t last_hit = 0;
  bool have_hit = false;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = cloud.point(i);
    if (have_hit && distance(p, cloud.point(kept[last_hit])) <= min_dist) continue;
    frame->coords(p, cell.data());
    bool far = true;
    frame->for_each_neighbor(cell.data(), scratch, [&](std::uint64_t key) {
      if (!far) return;
      for (std::int64_t q = heads.get(key); q != -1; q = next[q]) {
        if (distance(p, cloud.point(kept[q])) <= min_dist) {
          far = false;
          last_hit = static_cast<std::size_t>(q);
          have_hit = true;
          return;
        }
      }
    });
    if (!far) continue;
    std::uint64_t key;
    frame->pack(cell.data(), key);
    const auto slot = static_cast<std::int64_t>(kept.size());
    kept.push_back(i);
    next.push_back(heads.exchange(key, slot));
  }
  return kept;
}

PointCloud sparsification(const PointCloud& cloud, double min_dist) {
  const std::vector<std::size_t> kept = sparsification_indices(cloud, min_dist);
  std::vector<double> out;
  out.reserve(kept.size() * cloud.dim());
  for (std::size_t i : kept) {
    auto p = cloud.point(i);
    out.insert(out.end(), p.begin(), p.end());
  }
  return PointCloud(cloud.dim(), std::move(out));
}

std::vector<std::int64_t> grid_cell(std::span<const double> x, double step, std::span<const double> origin) {
  const std::size_t dim = x.size();
  std::vector<std::int64_t> c(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (!std::isfinite(x[k])) throw InvalidArgument("gridification: non-finite coordinate");
    const double q = std::floor((x[k] - origin[k]) / step);
    if (!(std::fabs(q) < 4.0e18)) throw InvalidArgument("gridification: coordinate outside lattice range");
    std::int64_t cell = static_cast<std::int64_t>(q);
    auto residue = [&](std::int64_t v) { return x[k] - (origin[k] + step * static_cast<double>(v)); };
    // The quotient can round across a cell boundary; settle on the residue.
    for (int guard = 0; guard < 4 && residue(cell) < 0.0; ++guard) --cell;
    for (int guard = 0; guard < 4 && residue(cell) >= step; ++guard) {
      if (residue(cell + 1) < 0.0) break;
      ++cell;
    }
    c[k] = cell;
  }
  return c;
}

Grid gridification(const PointCloud& cloud, double step, const std::vector<double>& origin) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("gridification: step must be positive");
  const std::size_t dim = cloud.dim();
  std::vector<double> z = origin.empty() ? std::vector<double>(dim, 0.0) : origin;
  if (z.size() != dim) throw DimensionMismatch("gridification: origin dimension differs from cloud dimension");
  std::vector<std::int64_t> cells;
  cells.reserve(cloud.size() * dim);
  std::vector<std::size_t> source(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto c = grid_cell(cloud.point(i), step, z);
    cells.insert(cells.end(), c.begin(), c.end());
    source[i] = i;
  }
  return Grid(dim, step, std::move(z), false, std::move(cells), std::move(source));
}

Grid grid_subdivision(const Grid& grid) {
  require_unhalved(grid, "grid_subdivision");
  check_doublable(grid);
  const std::size_t dim = grid.dim();
  const std::uint32_t corners = 1u << dim;
  std::vector<std::int64_t> cells;
  cells.reserve(grid.size() * corners * dim);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto c = grid.cell(i);
    for (std::uint32_t y = 0; y < corners; ++y) {
      for (std::size_t k = 0; k < dim; ++k) cells.push_back(2 * c[k] + ((y >> k) & 1u));
    }
  }
  return grid.with_cells(std::move(cells), true);
}

Grid thickening(const Grid& grid) {
  require_unhalved(grid, "thickening");
  check_doublable(grid);
  const std::size_t dim = grid.dim();
  std::size_t block = 1;
  for (std::size_t k = 0; k < dim; ++k) block *= 3;
  std::vector<std::int64_t> cells;
  cells.reserve(grid.size() * block * dim);
  std::vector<std::int64_t> s(dim);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto c = grid.cell(i);
    std::fill(s.begin(), s.end(), -1);
    while (true) {
      for (std::size_t k = 0; k < dim; ++k) cells.push_back(2 * c[k] + s[k]);
      std::size_t k = 0;
      while (k < dim && s[k] == 1) s[k++] = -1;
      if (k == dim) break;
      ++s[k];
    }
  }
  return grid.with_cells(std::move(cells), true);
}

Grid complement(const Grid& grid, std::int64_t buffer) {
  require_unhalved(grid, "complement");
  if (grid.empty()) throw EmptyInput("complement: bounding box of an empty grid is undefined");
  if (buffer < 0) throw InvalidArgument("complement: buffer must be non-negative");
  const std::size_t dim = grid.dim();
  std::vector<std::int64_t> lo(dim, std::numeric_limits<std::int64_t>::max());
  std::vector<std::int64_t> hi(dim, std::numeric_limits<std::int64_t>::min());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto c = grid.cell(i);
    for (std::size_t k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], c[k]);
      hi[k] = std::max(hi[k], c[k]);
    }
  }
  double volume = 1.0;
  for (std::size_t k = 0; k < dim; ++k) {
    if (lo[k] < -kLatticeLimit + buffer || hi[k] > kLatticeLimit - buffer) {
      throw InvalidArgument("complement: window out of lattice range");
    }
    lo[k] -= buffer;
    hi[k] += buffer;
    volume *= static_cast<double>(hi[k] - lo[k] + 1);
  }
  if (volume > 2.0e8) throw InvalidArgument("complement: window has too many cells");

  detail::CellIndex members(grid.cells(), dim);
  std::vector<std::int64_t> cells;
  std::vector<std::int64_t> at(lo);
  while (true) {
    if (!members.contains(at)) cells.insert(cells.end(), at.begin(), at.end());
    // Odometer with the last axis fastest, giving lexicographic order.
    std::size_t k = dim;
    while (k > 0 && at[k - 1] == hi[k - 1]) {
      at[k - 1] = lo[k - 1];
      --k;
    }
    if (k == 0) break;
    ++at[k - 1];
  }
  return grid.with_cells(std::move(cells), false);
}

}  // namespace pctopo
