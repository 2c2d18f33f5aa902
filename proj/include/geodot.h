#ifndef GEODOT_H
#define GEODOT_H

/* C interface to the geodot shared library.
 *
 * Conventions:
 *   - Every fallible call returns a geodot_status; GEODOT_OK is 0.
 *   - On failure, geodot_last_error() returns a message for the calling
 *     thread, valid until the next library call on that thread.
 *   - Handles are opaque and freed with the matching *_free function; any
 *     *_free accepts NULL.
 *   - Strings returned through char** are heap-allocated; release them with
 *     geodot_string_free.
 *   - Points are flat double arrays. point_size is the coordinate count per
 *     point (ambient coordinates: 3 on the sphere, else the dimension).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GEODOT_API __declspec(dllexport)
#else
#define GEODOT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum geodot_status {
  GEODOT_OK = 0,
  GEODOT_INVALID_ARGUMENT = 1,
  GEODOT_DIMENSION_MISMATCH = 2,
  GEODOT_DOMAIN = 3,
  GEODOT_NOT_NORMALIZED = 4,
  GEODOT_DUPLICATE_POINTS = 5,
  GEODOT_PARSE = 6,
  GEODOT_IO = 7,
  GEODOT_SCALE_EXCEEDED = 8,
  GEODOT_UNKNOWN_SCENARIO = 9,
  GEODOT_INTERNAL = 10
} geodot_status;

typedef struct geodot_space geodot_space;
typedef struct geodot_measure geodot_measure;
typedef struct geodot_plan geodot_plan;
typedef struct geodot_chart geodot_chart;

GEODOT_API const char* geodot_version(void);

/* Message of the last failed call on this thread; "" when none. */
GEODOT_API const char* geodot_last_error(void);

GEODOT_API void geodot_string_free(char* s);

/* ---- spaces ---------------------------------------------------------- */

GEODOT_API geodot_status geodot_space_euclidean(int dimension, geodot_space** out);
GEODOT_API geodot_status geodot_space_sphere(double radius, geodot_space** out);
GEODOT_API geodot_status geodot_space_cone(double total_angle, geodot_space** out);
GEODOT_API void geodot_space_free(geodot_space* space);

GEODOT_API geodot_status geodot_space_dimension(const geodot_space* space, int* out);
GEODOT_API geodot_status geodot_space_point_size(const geodot_space* space, size_t* out);
GEODOT_API geodot_status geodot_space_describe(const geodot_space* space, char** out);

GEODOT_API geodot_status geodot_space_distance(const geodot_space* space, const double* p,
                                               const double* q, size_t point_size, double* out);

/* Constant-speed geodesic interpolation; out receives point_size doubles. */
GEODOT_API geodot_status geodot_space_geodesic_point(const geodot_space* space, const double* p,
                                                     const double* q, size_t point_size, double t,
                                                     double* out);

/* Comparison slack d(w, z) - |w~ - z~| for w at arclength s along [x, y],
 * against the constant-curvature model k. */
GEODOT_API geodot_status geodot_comparison_slack(const geodot_space* space, const double* x,
                                                 const double* y, const double* z,
                                                 size_t point_size, double s, double k,
                                                 double* out);

/* ---- measures --------------------------------------------------------- */

/* coords holds n_points * point_size doubles, row per point. weights may be
 * NULL for uniform 1/n. The measure is validated on construction. */
GEODOT_API geodot_status geodot_measure_create(const double* coords, const double* weights,
                                               size_t n_points, size_t point_size,
                                               geodot_measure** out);
GEODOT_API void geodot_measure_free(geodot_measure* m);

GEODOT_API geodot_status geodot_measure_size(const geodot_measure* m, size_t* out);
GEODOT_API geodot_status geodot_measure_point_size(const geodot_measure* m, size_t* out);

/* coords receives point_size doubles, weight one double; either may be NULL. */
GEODOT_API geodot_status geodot_measure_get(const geodot_measure* m, size_t index, double* coords,
                                            double* weight);

/* format is "csv" or "json". */
GEODOT_API geodot_status geodot_measure_read(const char* path, const char* format,
                                             geodot_measure** out);
GEODOT_API geodot_status geodot_measure_write(const geodot_measure* m, const char* path,
                                              const char* format);

/* Checks normalization, distinctness, and point validity against a space. */
GEODOT_API geodot_status geodot_measure_validate(const geodot_measure* m,
                                                 const geodot_space* space);

GEODOT_API geodot_status geodot_measure_sample_box(const double* lo, const double* hi, size_t dim,
                                                   int n, uint64_t seed, geodot_measure** out);
GEODOT_API geodot_status geodot_measure_sample_cap(const double* center, double angle,
                                                   double sphere_radius, int n, uint64_t seed,
                                                   geodot_measure** out);
GEODOT_API geodot_status geodot_measure_sample_segment(const double* a, const double* b,
                                                       size_t dim, int n, uint64_t seed,
                                                       geodot_measure** out);
GEODOT_API geodot_status geodot_measure_sample_circle(const double* center, double radius, int n,
                                                      uint64_t seed, geodot_measure** out);

/* ---- transport -------------------------------------------------------- */

/* Exact squared-distance optimal transport between two measures on the
 * space. The plan handle keeps copies of everything it needs, so the inputs
 * may be freed immediately after the call. */
GEODOT_API geodot_status geodot_solve(const geodot_space* space, const geodot_measure* mu0,
                                      const geodot_measure* mu1, geodot_plan** out);
GEODOT_API void geodot_plan_free(geodot_plan* plan);

GEODOT_API geodot_status geodot_plan_size(const geodot_plan* plan, size_t* out);
GEODOT_API geodot_status geodot_plan_entry(const geodot_plan* plan, size_t index, size_t* i,
                                           size_t* j, double* mass);
GEODOT_API geodot_status geodot_plan_cost(const geodot_plan* plan, double* out);
GEODOT_API geodot_status geodot_plan_to_json(const geodot_plan* plan, char** out);

/* is_map = 1 when every source sends its mass to a single target (above
 * mass_tol). details_json reports split rows and the assignment. */
GEODOT_API geodot_status geodot_detect_map(const geodot_plan* plan, double mass_tol, int* is_map,
                                           char** details_json);

/* Re-solves under n_perturbations random cost perturbations of relative
 * size eta. unique = 0 when two probes tie in cost but differ in support. */
GEODOT_API geodot_status geodot_uniqueness_probe(const geodot_plan* plan, int n_perturbations,
                                                 double eta, uint64_t seed, int* unique,
                                                 char** details_json);

/* ---- cyclical monotonicity -------------------------------------------- */

/* Restricts the plan's support along geodesics by factor t in [0, 1] and
 * checks c-cyclical monotonicity exactly. monotone = 1 with a min-cycle-mean
 * certificate, else 0 with the most negative cycle, both in result_json. */
GEODOT_API geodot_status geodot_check_cyclical(const geodot_plan* plan, double t, double mass_tol,
                                               int* monotone, char** result_json);

/* The t-restricted support pairs as JSON. */
GEODOT_API geodot_status geodot_restrict_support(const geodot_plan* plan, double t,
                                                 double mass_tol, char** support_json);

/* Largest delta with (1/2)|y1+y2|^2 <= (1-delta)(|y1|^2+|y2|^2) over
 * |y2| = 1, |y2-y1| in [1/C, C]; details_json carries the maximizer. */
GEODOT_API geodot_status geodot_delta_of_c(double C, int resolution, double* delta,
                                           char** details_json);

/* ---- charts ----------------------------------------------------------- */

/* strainers holds n_strainers * point_size doubles; n_strainers must equal
 * the space dimension. */
GEODOT_API geodot_status geodot_chart_create(const geodot_space* space, const double* base,
                                             const double* strainers, size_t n_strainers,
                                             double radius, geodot_chart** out);
GEODOT_API void geodot_chart_free(geodot_chart* chart);

GEODOT_API geodot_status geodot_chart_contains(const geodot_chart* chart, const double* x,
                                               int* out);

/* Distance coordinates of x; out receives n_strainers doubles. */
GEODOT_API geodot_status geodot_chart_eval(const geodot_chart* chart, const double* x,
                                           double* out);

/* ---- witness search ---------------------------------------------------- */

/* Searches the plan's restricted support for an improving quadruple through
 * the chart. cone_radius 0 means the chart radius; k_class 0 picks the
 * smallest fitting class per row. found = 1 iff a quadruple was found;
 * result_json carries the full search report either way. */
GEODOT_API geodot_status geodot_witness_search(const geodot_plan* plan,
                                               const geodot_chart* chart, double cone_radius,
                                               int k_class, int* found, char** result_json);

/* ---- scenarios ---------------------------------------------------------- */

/* JSON array of {name, description} for every registered scenario. */
GEODOT_API geodot_status geodot_list_scenarios(char** out_json);

/* Runs a scenario from a JSON config string. scenario_exit receives 0 for a
 * clean run or 2 for a negative finding; report_json the full report. The
 * call itself fails (nonzero return) only on invalid configs or I/O. */
GEODOT_API geodot_status geodot_run_scenario(const char* config_json, int* scenario_exit,
                                             char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* GEODOT_H */
