/* C interface to the BFECC Maxwell solver library. */
#ifndef BFECC_BFECC_H
#define BFECC_BFECC_H

#include <stddef.h>

#if defined(_WIN32)
#define BFECC_API __declspec(dllexport)
#else
#define BFECC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  BFECC_OK = 0,
  BFECC_E_INVALID_ARGUMENT = 1,
  BFECC_E_RANK_DEFICIENT = 2,
  BFECC_E_SCHEME_MISMATCH = 3,
  BFECC_E_MISSING_BOUNDARY = 4,
  BFECC_E_DOMAIN = 5,
  BFECC_E_UNSTABLE = 6,
  BFECC_E_IO = 7,
  BFECC_E_INTERNAL = 99
};

/* Message of the last failed call on this thread ("" if none). */
BFECC_API const char* bfecc_last_error(void);
BFECC_API const char* bfecc_status_string(int status);

typedef struct bfecc_experiment bfecc_experiment;

typedef struct {
  int n;
  double h;
  double dt;
  long steps;
  double l2_error;
  double order;   /* valid when has_order != 0 */
  int has_order;
  int has_error;  /* 0 for single scattering runs, which have no reference */
  double sup_norm;
  int dims;       /* 1 for periodic1d, 2 otherwise */
} bfecc_error_row;

BFECC_API int bfecc_experiment_from_file(const char* path, bfecc_experiment** out);
BFECC_API int bfecc_experiment_from_string(const char* text, bfecc_experiment** out);
/* Overrides one config key before running; the whole config is revalidated. */
BFECC_API int bfecc_experiment_set(bfecc_experiment* exp, const char* key, const char* value);
/* Single simulation at the finest configured size. */
BFECC_API int bfecc_experiment_run(bfecc_experiment* exp);
/* Refinement sweep over all configured sizes. */
BFECC_API int bfecc_experiment_refine(bfecc_experiment* exp);
BFECC_API size_t bfecc_experiment_row_count(const bfecc_experiment* exp);
BFECC_API int bfecc_experiment_row(const bfecc_experiment* exp, size_t index, bfecc_error_row* out);
BFECC_API void bfecc_experiment_destroy(bfecc_experiment* exp);

typedef struct bfecc_scan bfecc_scan;

/* Spectral radius of the BFECC symbol over samples (x samples in 2D) modes. */
BFECC_API int bfecc_scan_run(const char* scheme, int dims, double lambda_x, double lambda_y,
                             int samples, double theta, bfecc_scan** out);
BFECC_API size_t bfecc_scan_count(const bfecc_scan* scan);
BFECC_API int bfecc_scan_entry(const bfecc_scan* scan, size_t index, int* k, int* l, double* radius);
BFECC_API int bfecc_scan_max(const bfecc_scan* scan, int* k, int* l, double* radius);
BFECC_API void bfecc_scan_destroy(bfecc_scan* scan);

BFECC_API int bfecc_cfl_bound(const char* scheme, int dims, const double* spacings, double theta,
                              double* out);
BFECC_API int bfecc_phase_speed(double lambda, double kh, double* out);

typedef struct bfecc_grid bfecc_grid;

/* Periodic unit-square grid; variant is a/b/c/d or uniform/perturbed/circular/shifted. */
BFECC_API int bfecc_grid_variant(const char* variant, int n, int smoothing, bfecc_grid** out);
BFECC_API int bfecc_grid_size(const bfecc_grid* grid, int* nx, int* ny);
BFECC_API int bfecc_grid_point(const bfecc_grid* grid, int i, int j, double* x, double* y,
                               int* shifted);
BFECC_API int bfecc_grid_write_csv(const bfecc_grid* grid, const char* path);
BFECC_API void bfecc_grid_destroy(bfecc_grid* grid);

#ifdef __cplusplus
}
#endif

#endif
