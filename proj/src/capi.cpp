#include "pctopo/pctopo.h"

#include <fstream>
#include <new>
#include <string>

#include "pctopo/io.hpp"
#include "pctopo/metrics.hpp"
#include "pctopo/persistence.hpp"
#include "pctopo/transforms.hpp"
#include "pctopo/verification.hpp"

struct pct_cloud {
  pctopo::PointCloud value;
};
struct pct_grid {
  pctopo::Grid value;
};
struct pct_diagram {
  pctopo::PersistenceDiagram value;
};
struct pct_matching {
  pctopo::Matching value;
};
struct pct_suite {
  std::vector<pctopo::SuiteCase> value;
};

namespace {

thread_local std::string last_error;

pct_status fail(pct_status s, const char* what) {
  last_error = what;
  return s;
}

template <typename F>
pct_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return PCT_OK;
  } catch (const pctopo::InvalidArgument& e) {
    return fail(PCT_INVALID_ARGUMENT, e.what());
  } catch (const pctopo::DimensionMismatch& e) {
    return fail(PCT_DIMENSION_MISMATCH, e.what());
  } catch (const pctopo::EmptyInput& e) {
    return fail(PCT_EMPTY_INPUT, e.what());
  } catch (const pctopo::ParseError& e) {
    return fail(PCT_PARSE_ERROR, e.what());
  } catch (const pctopo::IoError& e) {
    return fail(PCT_IO_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PCT_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(PCT_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(PCT_INTERNAL_ERROR, "unknown error");
  }
}

#define PCT_REQUIRE(cond)                                                              \
  do {                                                                                 \
    if (!(cond)) return fail(PCT_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
  } while (0)

pctopo::GroundMetric to_metric(pct_metric m) {
  return m == PCT_EUCLIDEAN ? pctopo::GroundMetric::euclidean : pctopo::GroundMetric::chebyshev;
}

pctopo::Theorem to_theorem(pct_theorem t) {
  switch (t) {
    case PCT_BARY: return pctopo::Theorem::bary;
    case PCT_SPARSE: return pctopo::Theorem::sparse;
    case PCT_GRID: return pctopo::Theorem::grid;
    case PCT_DUALITY: return pctopo::Theorem::duality;
  }
  throw pctopo::InvalidArgument("unknown theorem code");
}

pct_theorem from_theorem(pctopo::Theorem t) {
  switch (t) {
    case pctopo::Theorem::bary: return PCT_BARY;
    case pctopo::Theorem::sparse: return PCT_SPARSE;
    case pctopo::Theorem::grid: return PCT_GRID;
    case pctopo::Theorem::duality: return PCT_DUALITY;
  }
  return PCT_BARY;
}

template <typename Handle, typename T>
Handle* wrap(T&& v) {
  return new Handle{std::forward<T>(v)};
}

}  // namespace

extern "C" {

const char* pct_last_error(void) { return last_error.c_str(); }

const char* pct_status_string(pct_status status) {
  switch (status) {
    case PCT_OK: return "ok";
    case PCT_INVALID_ARGUMENT: return "invalid argument";
    case PCT_DIMENSION_MISMATCH: return "dimension mismatch";
    case PCT_EMPTY_INPUT: return "empty input";
    case PCT_PARSE_ERROR: return "parse error";
    case PCT_IO_ERROR: return "i/o error";
    case PCT_OUT_OF_MEMORY: return "out of memory";
    case PCT_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

pct_status pct_parse_metric(const char* name, pct_metric* out) {
  PCT_REQUIRE(name && out);
  return guard([&] { *out = pctopo::parse_metric(name) == pctopo::GroundMetric::euclidean ? PCT_EUCLIDEAN : PCT_CHEBYSHEV; });
}

pct_status pct_parse_theorem(const char* name, pct_theorem* out) {
  PCT_REQUIRE(name && out);
  return guard([&] { *out = from_theorem(pctopo::parse_theorem(name)); });
}

pct_status pct_cloud_create(size_t dim, const double* coords, size_t n, pct_cloud** out) {
  PCT_REQUIRE(out && (coords || n == 0));
  return guard([&] {
    if (dim == 0) throw pctopo::InvalidArgument("dimension must be at least 1");
    std::vector<double> v(coords, coords + n * dim);
    *out = wrap<pct_cloud>(pctopo::PointCloud(dim, std::move(v)));
  });
}

void pct_cloud_destroy(pct_cloud* cloud) { delete cloud; }
size_t pct_cloud_dim(const pct_cloud* cloud) { return cloud ? cloud->value.dim() : 0; }
size_t pct_cloud_size(const pct_cloud* cloud) { return cloud ? cloud->value.size() : 0; }
const double* pct_cloud_data(const pct_cloud* cloud) { return cloud ? cloud->value.coords().data() : nullptr; }

pct_status pct_cloud_read_csv(const char* path, int skip_header, pct_cloud** out) {
  PCT_REQUIRE(path && out);
  return guard([&] { *out = wrap<pct_cloud>(pctopo::read_cloud_csv(path, skip_header != 0)); });
}

pct_status pct_cloud_write_csv(const pct_cloud* cloud, const char* path) {
  PCT_REQUIRE(cloud && path);
  return guard([&] { pctopo::write_cloud_csv(path, cloud->value); });
}

pct_status pct_cloud_diameter(const pct_cloud* cloud, double* out) {
  PCT_REQUIRE(cloud && out);
  return guard([&] { *out = pctopo::diameter(cloud->value); });
}

pct_status pct_barycentric_subdivision(const pct_cloud* cloud, double radius, int max_dim, pct_cloud** out) {
  PCT_REQUIRE(cloud && out);
  return guard([&] { *out = wrap<pct_cloud>(pctopo::barycentric_subdivision(cloud->value, radius, max_dim)); });
}

pct_status pct_sparsification(const pct_cloud* cloud, double min_dist, pct_cloud** out) {
  PCT_REQUIRE(cloud && out);
  return guard([&] { *out = wrap<pct_cloud>(pctopo::sparsification(cloud->value, min_dist)); });
}

pct_status pct_gridification(const pct_cloud* cloud, double step, const double* origin, pct_grid** out) {
  PCT_REQUIRE(cloud && out);
  return guard([&] {
    std::vector<double> z;
    if (origin) z.assign(origin, origin + cloud->value.dim());
    *out = wrap<pct_grid>(pctopo::gridification(cloud->value, step, z));
  });
}

pct_status pct_grid_create(size_t dim, double step, const double* origin, int halved, const int64_t* cells, size_t n,
                           pct_grid** out) {
  PCT_REQUIRE(out && (cells || n == 0));
  return guard([&] {
    if (dim == 0) throw pctopo::InvalidArgument("dimension must be at least 1");
    std::vector<double> z;
    if (origin) z.assign(origin, origin + dim);
    std::vector<std::int64_t> c(cells, cells + n * dim);
    *out = wrap<pct_grid>(pctopo::Grid(dim, step, std::move(z), halved != 0, std::move(c)));
  });
}

void pct_grid_destroy(pct_grid* grid) { delete grid; }
size_t pct_grid_dim(const pct_grid* grid) { return grid ? grid->value.dim() : 0; }
size_t pct_grid_size(const pct_grid* grid) { return grid ? grid->value.size() : 0; }
double pct_grid_step(const pct_grid* grid) { return grid ? grid->value.step() : 0.0; }
int pct_grid_halved(const pct_grid* grid) { return grid && grid->value.halved() ? 1 : 0; }
const int64_t* pct_grid_cells(const pct_grid* grid) { return grid ? grid->value.cells().data() : nullptr; }
const double* pct_grid_origin(const pct_grid* grid) { return grid ? grid->value.origin().data() : nullptr; }

pct_status pct_grid_read_csv(const char* path, int has_step, double step, const double* origin, size_t origin_dim,
                             int halved, pct_grid** out) {
  PCT_REQUIRE(path && out && (origin || origin_dim == 0));
  return guard([&] {
    pctopo::GridFileHint hint;
    if (has_step) hint.step = step;
    if (origin) hint.origin.assign(origin, origin + origin_dim);
    hint.halved = halved != 0;
    *out = wrap<pct_grid>(pctopo::read_grid_csv(path, hint));
  });
}

pct_status pct_grid_write_csv(const pct_grid* grid, const char* path) {
  PCT_REQUIRE(grid && path);
  return guard([&] { pctopo::write_grid_csv(path, grid->value); });
}

pct_status pct_grid_embed(const pct_grid* grid, pct_cloud** out) {
  PCT_REQUIRE(grid && out);
  return guard([&] { *out = wrap<pct_cloud>(grid->value.embed_all()); });
}

pct_status pct_grid_subdivision(const pct_grid* grid, pct_grid** out) {
  PCT_REQUIRE(grid && out);
  return guard([&] { *out = wrap<pct_grid>(pctopo::grid_subdivision(grid->value)); });
}

pct_status pct_thickening(const pct_grid* grid, pct_grid** out) {
  PCT_REQUIRE(grid && out);
  return guard([&] { *out = wrap<pct_grid>(pctopo::thickening(grid->value)); });
}

pct_status pct_complement(const pct_grid* grid, int64_t buffer, pct_grid** out) {
  PCT_REQUIRE(grid && out);
  return guard([&] { *out = wrap<pct_grid>(pctopo::complement(grid->value, buffer)); });
}

pct_status pct_diagram_create(size_t n, const double* births, const double* deaths, pct_diagram** out) {
  PCT_REQUIRE(out && ((births && deaths) || n == 0));
  return guard([&] {
    pctopo::PersistenceDiagram d;
    for (size_t i = 0; i < n; ++i) {
      if (!(births[i] <= deaths[i])) throw pctopo::InvalidArgument("diagram: need birth <= death");
      d.intervals.push_back({births[i], deaths[i], std::nullopt});
    }
    *out = wrap<pct_diagram>(std::move(d));
  });
}

void pct_diagram_destroy(pct_diagram* diagram) { delete diagram; }
size_t pct_diagram_size(const pct_diagram* diagram) { return diagram ? diagram->value.size() : 0; }

pct_status pct_diagram_get(const pct_diagram* diagram, size_t i, double* birth, double* death, int64_t* source_index) {
  PCT_REQUIRE(diagram && i < diagram->value.size());
  const pctopo::Interval& iv = diagram->value.intervals[i];
  if (birth) *birth = iv.birth;
  if (death) *death = iv.death;
  if (source_index) *source_index = iv.source_index ? static_cast<int64_t>(*iv.source_index) : -1;
  last_error.clear();
  return PCT_OK;
}

pct_status pct_diagram_read_csv(const char* path, pct_diagram** out) {
  PCT_REQUIRE(path && out);
  return guard([&] { *out = wrap<pct_diagram>(pctopo::read_diagram_csv(path)); });
}

pct_status pct_diagram_write_csv(const pct_diagram* diagram, const char* path) {
  PCT_REQUIRE(diagram && path);
  return guard([&] { pctopo::write_diagram_csv(path, diagram->value); });
}

pct_status pct_ph0_vr(const pct_cloud* cloud, pct_diagram** out) {
  PCT_REQUIRE(cloud && out);
  return guard([&] { *out = wrap<pct_diagram>(pctopo::ph0_vr(cloud->value).diagram); });
}

pct_status pct_ph0_grid(const pct_grid* grid, pct_diagram** out) {
  PCT_REQUIRE(grid && out);
  return guard([&] { *out = wrap<pct_diagram>(pctopo::ph0_grid(grid->value)); });
}

pct_status pct_betti0_cubical(const pct_grid* grid, int64_t* out) {
  PCT_REQUIRE(grid && out);
  return guard([&] { *out = pctopo::betti0_cubical(grid->value); });
}

pct_status pct_betti1_cubical_2d(const pct_grid* grid, int64_t* out) {
  PCT_REQUIRE(grid && out);
  return guard([&] { *out = pctopo::betti1_cubical_2d(grid->value); });
}

pct_status pct_codim1_via_duality(const pct_grid* grid, int64_t buffer, int64_t* out) {
  PCT_REQUIRE(grid && out);
  return guard([&] { *out = pctopo::codim1_via_duality(grid->value, buffer); });
}

pct_status pct_bottleneck(const pct_diagram* a, const pct_diagram* b, pct_metric metric, double* value,
                          pct_matching** witness) {
  PCT_REQUIRE(a && b && value);
  return guard([&] {
    pctopo::BottleneckResult r = pctopo::bottleneck(a->value, b->value, to_metric(metric));
    pct_matching* m = witness ? wrap<pct_matching>(std::move(r.witness)) : nullptr;
    *value = r.value;
    if (witness) *witness = m;
  });
}

void pct_matching_destroy(pct_matching* matching) { delete matching; }
double pct_matching_cost(const pct_matching* matching) { return matching ? matching->value.cost : 0.0; }
size_t pct_matching_pair_count(const pct_matching* matching) { return matching ? matching->value.pairs.size() : 0; }

pct_status pct_matching_pair(const pct_matching* matching, size_t i, size_t* a, size_t* b) {
  PCT_REQUIRE(matching && a && b && i < matching->value.pairs.size());
  *a = matching->value.pairs[i].first;
  *b = matching->value.pairs[i].second;
  last_error.clear();
  return PCT_OK;
}

size_t pct_matching_diagonal_count(const pct_matching* matching, int side) {
  if (!matching) return 0;
  return side == 0 ? matching->value.diagonal_a.size() : matching->value.diagonal_b.size();
}

pct_status pct_matching_diagonal(const pct_matching* matching, int side, size_t i, size_t* index) {
  PCT_REQUIRE(matching && index && (side == 0 || side == 1));
  const auto& list = side == 0 ? matching->value.diagonal_a : matching->value.diagonal_b;
  PCT_REQUIRE(i < list.size());
  *index = list[i];
  last_error.clear();
  return PCT_OK;
}

pct_status pct_check_bound(pct_theorem theorem, const pct_cloud* cloud, double parameter, pct_bound_report* out) {
  PCT_REQUIRE(cloud && out);
  return guard([&] {
    const pctopo::BoundReport r = pctopo::check_bound(to_theorem(theorem), cloud->value, parameter);
    *out = pct_bound_report{theorem, r.parameter, r.bound, r.bottleneck_value, r.witness_cost, r.pass ? 1 : 0};
  });
}

pct_status pct_generate_synthetic(uint64_t seed, size_t n, pct_cloud** out) {
  PCT_REQUIRE(out);
  return guard([&] { *out = wrap<pct_cloud>(pctopo::generate_synthetic(seed, n)); });
}

pct_status pct_random_cloud(uint64_t seed, size_t max_n, pct_cloud** out) {
  PCT_REQUIRE(out);
  return guard([&] { *out = wrap<pct_cloud>(pctopo::random_cloud(seed, max_n)); });
}

pct_status pct_random_grid(uint64_t seed, pct_grid** out) {
  PCT_REQUIRE(out);
  return guard([&] { *out = wrap<pct_grid>(pctopo::random_grid(seed)); });
}

pct_status pct_run_suite(pct_theorem theorem, size_t seeds, uint64_t first_seed, pct_suite** out) {
  PCT_REQUIRE(out);
  return guard([&] { *out = wrap<pct_suite>(pctopo::run_suite(to_theorem(theorem), seeds, first_seed)); });
}

void pct_suite_destroy(pct_suite* suite) { delete suite; }
size_t pct_suite_size(const pct_suite* suite) { return suite ? suite->value.size() : 0; }

pct_status pct_suite_get(const pct_suite* suite, size_t i, pct_suite_case* out) {
  PCT_REQUIRE(suite && out && i < suite->value.size());
  const pctopo::SuiteCase& c = suite->value[i];
  *out = pct_suite_case{from_theorem(c.theorem), c.seed, c.n, c.dim, c.parameter, c.bound, c.value, c.pass ? 1 : 0};
  last_error.clear();
  return PCT_OK;
}

pct_status pct_suite_write_csv(const pct_suite* suite, const char* path) {
  PCT_REQUIRE(suite && path);
  return guard([&] {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw pctopo::IoError(std::string("cannot open '") + path + "'");
    pctopo::write_suite_csv(f, suite->value);
    if (!f) throw pctopo::IoError(std::string("write error on '") + path + "'");
  });
}

}  // extern "C"
