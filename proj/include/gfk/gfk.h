/*
 * C interface to the generalized Feynman-Kac path-integral engine.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns a gfk_status; on failure a description is available
 * from gfk_last_error() on the calling thread until its next failing call.
 *
 * Strings are returned through caller buffers: the call writes at most `len`
 * bytes including the terminating NUL and stores the full required size
 * (including the NUL) in *needed when `needed` is non-NULL. A buffer that is
 * too small yields GFK_ERR_BUFFER_TOO_SMALL with *needed set.
 */
#ifndef GFK_GFK_H
#define GFK_GFK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GFK_BUILDING_LIBRARY)
#    define GFK_API __declspec(dllexport)
#  else
#    define GFK_API __declspec(dllimport)
#  endif
#else
#  define GFK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gfk_status {
  GFK_OK = 0,
  GFK_ERR_INVALID_ARGUMENT = 1,
  GFK_ERR_PARSE = 2,
  GFK_ERR_RANGE = 3,
  GFK_ERR_DEGENERATE_WEIGHTS = 4,
  GFK_ERR_NONFINITE_WALKER = 5,
  GFK_ERR_TOO_FEW_PARTICLES = 6,
  GFK_ERR_GRID_NOT_CONVERGED = 7,
  GFK_ERR_REGULARIZATION = 8,
  GFK_ERR_IO = 9,
  GFK_ERR_DIVISION_BY_ZERO = 10,
  GFK_ERR_BUFFER_TOO_SMALL = 11,
  GFK_ERR_NOT_AVAILABLE = 12,
  GFK_ERR_INTERNAL = 99
} gfk_status;

typedef enum gfk_format { GFK_FORMAT_CSV = 0, GFK_FORMAT_JSON = 1 } gfk_format;

typedef struct gfk_spec gfk_spec;
typedef struct gfk_result gfk_result;

typedef void (*gfk_progress_fn)(size_t done, size_t total, void* user);

typedef struct gfk_estimate {
  const char* name; /* owned by the result handle */
  double mean;
  double std_error;
  size_t n_trajectories;
  double effective_sample_size;
  double t_start;
  double t_end;
  double weight_dispersion;
  size_t samples_per_trajectory;
} gfk_estimate;

typedef struct gfk_theory_report {
  double vrel_variance;
  double pair_variance;
  double quarter_period_xrel_variance;
  double validity_lhs;
  double bound_a;
  double bound_b;
  double ratio_a;
  double ratio_b;
  double soliton_size_quarter; /* l_{N/4} */
  double soliton_size_three_quarter; /* l_{3N/4} */
  double zero_point_rel_fluct;
} gfk_theory_report;

typedef struct gfk_physical_params {
  double atomic_mass_u;
  double scattering_length_a0; /* signed */
  double radial_trap_hz;
} gfk_physical_params;

typedef struct gfk_units_report {
  double coupling_j_m;
  double g_tilde;
  double axial_omega_rad_s;
  double quarter_period_s;
  double radial_length_m;
  double collapse_threshold;
} gfk_units_report;

typedef struct gfk_regularization_report {
  double g_eff;
  double sigma_tilde;
  double v0;
  double alpha;
  double wkb_count;
  int bound;
  double bound_energy;
  double bound_mean_r_sq;
  int single_bound_state;
  int shallower_than_well;
  int ok;
} gfk_regularization_report;

typedef struct gfk_sweep_row {
  double g_tilde;
  double sigma_tilde;
} gfk_sweep_row;

/* Library */
GFK_API const char* gfk_version(void);
GFK_API const char* gfk_last_error(void);
GFK_API const char* gfk_status_name(gfk_status status);

/* Run specification */
GFK_API gfk_status gfk_spec_create(gfk_spec** out);
GFK_API gfk_status gfk_spec_parse(const char* text, gfk_spec** out);
GFK_API gfk_status gfk_spec_update(gfk_spec* spec, const char* text);
GFK_API gfk_status gfk_spec_set(gfk_spec* spec, const char* key, const char* value);
GFK_API gfk_status gfk_spec_get(const gfk_spec* spec, const char* key, char* buf, size_t len, size_t* needed);
GFK_API gfk_status gfk_spec_validate(const gfk_spec* spec);
GFK_API gfk_status gfk_spec_echo(const gfk_spec* spec, char* buf, size_t len, size_t* needed);
GFK_API size_t gfk_config_key_count(void);
GFK_API const char* gfk_config_key(size_t index);
GFK_API void gfk_spec_destroy(gfk_spec* spec);

/* Runs */
GFK_API gfk_status gfk_run(const gfk_spec* spec, int force, gfk_progress_fn progress, void* user,
                           gfk_result** out);
GFK_API size_t gfk_result_observable_count(const gfk_result* result);
GFK_API gfk_status gfk_result_observable(const gfk_result* result, size_t index, gfk_estimate* out);
GFK_API gfk_status gfk_result_energy(const gfk_result* result, gfk_estimate* out);
GFK_API double gfk_result_e0(const gfk_result* result);
GFK_API double gfk_result_wall_seconds(const gfk_result* result);
GFK_API gfk_status gfk_result_write(const gfk_result* result, const char* path, gfk_format format);
GFK_API gfk_status gfk_result_summary(const gfk_result* result, char* buf, size_t len, size_t* needed);
GFK_API void gfk_result_destroy(gfk_result* result);

/* Sweeps: one run per row on top of `base`, written to `path`. *failed_rows
   counts rows whose status is not "ok". */
GFK_API gfk_status gfk_sweep(const gfk_spec* base, const gfk_sweep_row* rows, size_t n_rows, int force,
                             gfk_progress_fn progress, void* user, const char* path, gfk_format format,
                             size_t* failed_rows);
GFK_API size_t gfk_reference_row_count(void);
GFK_API gfk_status gfk_reference_row(size_t index, gfk_sweep_row* out);

/* Closed-form predictions, unit conversion, regularization checks */
GFK_API gfk_status gfk_theory(double g_tilde, double n_particles, gfk_theory_report* out);
GFK_API gfk_status gfk_units_from_g_tilde(const gfk_physical_params* params, double g_tilde,
                                          gfk_units_report* out);
GFK_API gfk_status gfk_units_from_omega(const gfk_physical_params* params, double axial_omega_rad_s,
                                        gfk_units_report* out);
GFK_API gfk_status gfk_check_regularization(double g_eff, double sigma_tilde, gfk_regularization_report* out);
GFK_API gfk_status gfk_wkb_bound_count(double v0, double alpha, double* out);

#ifdef __cplusplus
}
#endif

#endif /* GFK_GFK_H */
