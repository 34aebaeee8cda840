/* C interface to the pctopo library. All objects are opaque handles owned by
 * the caller and released with the matching *_destroy function. Functions
 * return PCT_OK or an error code; pct_last_error() then holds a message for
 * the calling thread. Out-parameters are untouched on failure. */
#ifndef PCTOPO_H
#define PCTOPO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PCT_API __declspec(dllexport)
#else
#define PCT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pct_status {
  PCT_OK = 0,
  PCT_INVALID_ARGUMENT = 1,
  PCT_DIMENSION_MISMATCH = 2,
  PCT_EMPTY_INPUT = 3,
  PCT_PARSE_ERROR = 4,
  PCT_IO_ERROR = 5,
  PCT_OUT_OF_MEMORY = 6,
  PCT_INTERNAL_ERROR = 7
} pct_status;

typedef enum pct_metric { PCT_CHEBYSHEV = 0, PCT_EUCLIDEAN = 1 } pct_metric;

typedef enum pct_theorem { PCT_BARY = 0, PCT_SPARSE = 1, PCT_GRID = 2, PCT_DUALITY = 3 } pct_theorem;

typedef struct pct_cloud pct_cloud;
typedef struct pct_grid pct_grid;
typedef struct pct_diagram pct_diagram;
typedef struct pct_matching pct_matching;
typedef struct pct_suite pct_suite;

PCT_API const char* pct_last_error(void);
PCT_API const char* pct_status_string(pct_status status);

PCT_API pct_status pct_parse_metric(const char* name, pct_metric* out);
PCT_API pct_status pct_parse_theorem(const char* name, pct_theorem* out);

/* point clouds: n rows of dim coordinates, row-major */
PCT_API pct_status pct_cloud_create(size_t dim, const double* coords, size_t n, pct_cloud** out);
PCT_API void pct_cloud_destroy(pct_cloud* cloud);
PCT_API size_t pct_cloud_dim(const pct_cloud* cloud);
PCT_API size_t pct_cloud_size(const pct_cloud* cloud);
PCT_API const double* pct_cloud_data(const pct_cloud* cloud);
PCT_API pct_status pct_cloud_read_csv(const char* path, int skip_header, pct_cloud** out);
PCT_API pct_status pct_cloud_write_csv(const pct_cloud* cloud, const char* path);
PCT_API pct_status pct_cloud_diameter(const pct_cloud* cloud, double* out);

/* transforms */
PCT_API pct_status pct_barycentric_subdivision(const pct_cloud* cloud, double radius, int max_dim, pct_cloud** out);
PCT_API pct_status pct_sparsification(const pct_cloud* cloud, double min_dist, pct_cloud** out);
/* origin may be NULL (zero vector), otherwise dim entries */
PCT_API pct_status pct_gridification(const pct_cloud* cloud, double step, const double* origin, pct_grid** out);

/* grids: n cells of dim integer coordinates */
PCT_API pct_status pct_grid_create(size_t dim, double step, const double* origin, int halved, const int64_t* cells,
                                   size_t n, pct_grid** out);
PCT_API void pct_grid_destroy(pct_grid* grid);
PCT_API size_t pct_grid_dim(const pct_grid* grid);
PCT_API size_t pct_grid_size(const pct_grid* grid);
PCT_API double pct_grid_step(const pct_grid* grid);
PCT_API int pct_grid_halved(const pct_grid* grid);
PCT_API const int64_t* pct_grid_cells(const pct_grid* grid);
PCT_API const double* pct_grid_origin(const pct_grid* grid);
/* The file header, when present, overrides step/origin/halved. has_step = 0
 * means no fallback step; origin may be NULL. */
PCT_API pct_status pct_grid_read_csv(const char* path, int has_step, double step, const double* origin,
                                     size_t origin_dim, int halved, pct_grid** out);
PCT_API pct_status pct_grid_write_csv(const pct_grid* grid, const char* path);
PCT_API pct_status pct_grid_embed(const pct_grid* grid, pct_cloud** out);
PCT_API pct_status pct_grid_subdivision(const pct_grid* grid, pct_grid** out);
PCT_API pct_status pct_thickening(const pct_grid* grid, pct_grid** out);
PCT_API pct_status pct_complement(const pct_grid* grid, int64_t buffer, pct_grid** out);

/* diagrams; source index -1 when absent */
PCT_API pct_status pct_diagram_create(size_t n, const double* births, const double* deaths, pct_diagram** out);
PCT_API void pct_diagram_destroy(pct_diagram* diagram);
PCT_API size_t pct_diagram_size(const pct_diagram* diagram);
PCT_API pct_status pct_diagram_get(const pct_diagram* diagram, size_t i, double* birth, double* death,
                                   int64_t* source_index);
PCT_API pct_status pct_diagram_read_csv(const char* path, pct_diagram** out);
PCT_API pct_status pct_diagram_write_csv(const pct_diagram* diagram, const char* path);

/* persistence */
PCT_API pct_status pct_ph0_vr(const pct_cloud* cloud, pct_diagram** out);
PCT_API pct_status pct_ph0_grid(const pct_grid* grid, pct_diagram** out);
PCT_API pct_status pct_betti0_cubical(const pct_grid* grid, int64_t* out);
PCT_API pct_status pct_betti1_cubical_2d(const pct_grid* grid, int64_t* out);
PCT_API pct_status pct_codim1_via_duality(const pct_grid* grid, int64_t buffer, int64_t* out);

/* bottleneck; witness may be NULL. The value is +inf when the numbers of
 * infinite intervals differ. */
PCT_API pct_status pct_bottleneck(const pct_diagram* a, const pct_diagram* b, pct_metric metric, double* value,
                                  pct_matching** witness);
PCT_API void pct_matching_destroy(pct_matching* matching);
PCT_API double pct_matching_cost(const pct_matching* matching);
PCT_API size_t pct_matching_pair_count(const pct_matching* matching);
PCT_API pct_status pct_matching_pair(const pct_matching* matching, size_t i, size_t* a, size_t* b);
PCT_API size_t pct_matching_diagonal_count(const pct_matching* matching, int side);
PCT_API pct_status pct_matching_diagonal(const pct_matching* matching, int side, size_t i, size_t* index);

/* verification */
typedef struct pct_bound_report {
  pct_theorem theorem;
  double parameter;
  double bound;
  double bottleneck_value;
  double witness_cost;
  int pass;
} pct_bound_report;

typedef struct pct_suite_case {
  pct_theorem theorem;
  uint64_t seed;
  size_t n;
  size_t dim;
  double parameter;
  double bound;
  double value;
  int pass;
} pct_suite_case;

PCT_API pct_status pct_check_bound(pct_theorem theorem, const pct_cloud* cloud, double parameter,
                                   pct_bound_report* out);
PCT_API pct_status pct_generate_synthetic(uint64_t seed, size_t n, pct_cloud** out);
PCT_API pct_status pct_random_cloud(uint64_t seed, size_t max_n, pct_cloud** out);
PCT_API pct_status pct_random_grid(uint64_t seed, pct_grid** out);
PCT_API pct_status pct_run_suite(pct_theorem theorem, size_t seeds, uint64_t first_seed, pct_suite** out);
PCT_API void pct_suite_destroy(pct_suite* suite);
PCT_API size_t pct_suite_size(const pct_suite* suite);
PCT_API pct_status pct_suite_get(const pct_suite* suite, size_t i, pct_suite_case* out);
PCT_API pct_status pct_suite_write_csv(const pct_suite* suite, const char* path);

#ifdef __cplusplus
}
#endif

#endif
