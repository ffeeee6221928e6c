/*
 * owid.h - C interface to the two-qubit one-way information deficit library.
 *
 * All functions return an owid_status. On failure a human-readable message
 * is available from owid_last_error() (thread-local, valid until the next
 * call on the same thread). Opaque handles are released with their *_free
 * function; passing NULL to a *_free function is a no-op.
 *
 * Entropies and deficits are in bits. Measurements act on qubit b. Basis
 * order is |00>, |01>, |10>, |11> with qubit a first.
 */
#ifndef OWID_H
#define OWID_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(OWID_BUILDING_LIBRARY)
#    define OWID_API __declspec(dllexport)
#  else
#    define OWID_API __declspec(dllimport)
#  endif
#else
#  define OWID_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum owid_status {
    OWID_OK = 0,
    OWID_ERR_ARGUMENT = 1,     /* malformed argument or NULL pointer */
    OWID_ERR_DOMAIN = 2,       /* unphysical state */
    OWID_ERR_PRECONDITION = 3, /* closed form used outside its region */
    OWID_ERR_CONVERGENCE = 4,  /* optimizer missed its tolerance */
    OWID_ERR_IO = 5,
    OWID_ERR_INTERNAL = 6
} owid_status;

typedef enum owid_evaluator {
    OWID_EVAL_CLOSED_FORM = 0,
    OWID_EVAL_REDUCED_ORACLE = 1
} owid_evaluator;

typedef enum owid_export_format {
    OWID_EXPORT_CSV_POINTS = 0,
    OWID_EXPORT_OBJ_MESH = 1
} owid_export_format;

/* Bits of owid_x_condition's `violated` output. */
enum {
    OWID_COND_C1_BELOW_C2 = 1u, /* |c1| < |c2| fails */
    OWID_COND_C2_BELOW_C3 = 2u, /* |c2| < |c3| fails */
    OWID_COND_S_NONZERO = 4u,   /* 0 < |s| fails */
    OWID_COND_S_BELOW_BOUND = 8u, /* |s| < 1 - |c3| fails */
    OWID_COND_CLOSURE = 16u     /* relaxed (<=) version fails as well */
};

typedef struct owid_bell_params {
    double c1, c2, c3;
} owid_bell_params;

typedef struct owid_x_params {
    double s, c1, c2, c3;
} owid_x_params;

typedef struct owid_optimizer_config {
    int polar_steps;       /* default 90 */
    int azimuth_steps;     /* default 180 */
    int refine_iterations; /* default 200 */
    double refine_tolerance; /* default 1e-12 bits */
    unsigned threads;      /* default 1 */
} owid_optimizer_config;

typedef struct owid_deficit {
    double value;  /* clamped to >= 0 */
    double raw;
    int source;    /* owid_evaluator actually used */
} owid_deficit;

typedef struct owid_oracle_result {
    double value;
    double raw;
    double min_measured_entropy;
    double state_entropy;
    double argmin[3];
    int iterations;
} owid_oracle_result;

typedef struct owid_trajectory_point {
    double p;
    double owid;
    double concurrence;
} owid_trajectory_point;

typedef struct owid_event {
    int found;
    double p_star;
    double residual;
    char note[160]; /* why no event was found, or a caveat; may be empty */
} owid_event;

typedef struct owid_surface_spec {
    double s;
    double target;
    double band;       /* default 1e-3 */
    int resolution;    /* default 96 */
    int evaluator;     /* owid_evaluator, default reduced oracle */
    unsigned threads;
    owid_optimizer_config optimizer; /* default 16 x 32 grid */
} owid_surface_spec;

typedef struct owid_state owid_state;     /* validated 4x4 density matrix */
typedef struct owid_surface owid_surface; /* level-surface sample */

OWID_API const char* owid_version(void);
OWID_API const char* owid_last_error(void);
OWID_API const char* owid_status_name(owid_status status);

OWID_API void owid_optimizer_config_default(owid_optimizer_config* cfg);
OWID_API void owid_surface_spec_default(owid_surface_spec* spec);

/* ---- states ---------------------------------------------------------- */

OWID_API owid_status owid_state_from_bell(const owid_bell_params* p, owid_state** out);
OWID_API owid_status owid_state_from_x(const owid_x_params* p, owid_state** out);
/* Row-major real and imaginary parts, 16 entries each. */
OWID_API owid_status owid_state_from_matrix(const double re[16], const double im[16], owid_state** out);
OWID_API void owid_state_free(owid_state* state);

OWID_API owid_status owid_state_matrix(const owid_state* state, double re[16], double im[16]);
/* Ascending eigenvalues. */
OWID_API owid_status owid_state_spectrum(const owid_state* state, double out[4]);
OWID_API owid_status owid_state_entropy(const owid_state* state, double* out);
/* r (qubit a), s (qubit b), t row-major 3x3. */
OWID_API owid_status owid_state_bloch(const owid_state* state, double r[3], double s[3], double t[9]);

OWID_API owid_status owid_bell_spectrum(const owid_bell_params* p, double out[4]);
OWID_API owid_status owid_x_spectrum(const owid_x_params* p, double out[4]);
/* *violated is a mask of OWID_COND_* bits; 0 means the strict condition holds. */
OWID_API owid_status owid_x_condition(const owid_x_params* p, unsigned* violated);

/* ---- closed forms ---------------------------------------------------- */

OWID_API owid_status owid_bell_entropy(const owid_bell_params* p, double* out);
OWID_API owid_status owid_bell_min_measured_entropy(const owid_bell_params* p, double* out);
OWID_API owid_status owid_bell_deficit(const owid_bell_params* p, owid_deficit* out);

OWID_API owid_status owid_f_phi_theta(double phi, double theta, double* out);

/* allow_boundary != 0 accepts the closure of the strict condition. */
OWID_API owid_status owid_x_entropy(const owid_x_params* p, double* out);
OWID_API owid_status owid_x_min_measured_entropy(const owid_x_params* p, int allow_boundary, double* out);
OWID_API owid_status owid_x_deficit(const owid_x_params* p, int allow_boundary, owid_deficit* out);
OWID_API owid_status owid_x_concurrence(const owid_x_params* p, double* out);

/* ---- oracle ---------------------------------------------------------- */

/* cfg may be NULL for defaults. */
OWID_API owid_status owid_measured_entropy(const owid_state* state, const double n[3], double* out);
OWID_API owid_status owid_oracle_deficit(const owid_state* state, const owid_optimizer_config* cfg,
                                         owid_oracle_result* out);
OWID_API owid_status owid_oracle_discord(const owid_state* state, const owid_optimizer_config* cfg,
                                         double* out);
OWID_API owid_status owid_oracle_concurrence(const owid_state* state, double* out);
OWID_API owid_status owid_x_min_measured_entropy_reduced(const owid_x_params* p,
                                                         const owid_optimizer_config* cfg, double* out);

/* ---- phase-flip channel ---------------------------------------------- */

OWID_API owid_status owid_p_of_time(double gamma, double t, double* out);
OWID_API owid_status owid_phase_flip_params(const owid_x_params* p, double strength, owid_x_params* out);
/* Kraus application on both sides. */
OWID_API owid_status owid_phase_flip_state(const owid_state* state, double strength, owid_state** out);
OWID_API owid_status owid_phase_flip_deficit(const owid_x_params* p, double strength,
                                             const owid_optimizer_config* cfg, owid_deficit* out);
OWID_API owid_status owid_trajectory(const owid_x_params* p, const double* grid, size_t n,
                                     const owid_optimizer_config* cfg, owid_trajectory_point* out);
OWID_API owid_status owid_write_trajectory_csv(const owid_trajectory_point* points, size_t n, const char* path);
OWID_API owid_status owid_find_sudden_death(const owid_x_params* p, owid_event* out);
OWID_API owid_status owid_find_crossing(const owid_x_params* p, const owid_optimizer_config* cfg,
                                        owid_event* out);

/* ---- level surfaces -------------------------------------------------- */

/* *defined is 0 where the field is not defined (unphysical, or outside the
 * closed-form region in closed-form mode). */
OWID_API owid_status owid_field(double s, const double c[3], int evaluator, const owid_optimizer_config* cfg,
                                double* out, int* defined);
OWID_API owid_status owid_surface_sample(const owid_surface_spec* spec, owid_surface** out);
OWID_API void owid_surface_free(owid_surface* surface);
OWID_API size_t owid_surface_point_count(const owid_surface* surface);
/* c1, c2, c3, owid */
OWID_API owid_status owid_surface_point(const owid_surface* surface, size_t i, double out[4]);
OWID_API size_t owid_surface_vertex_count(const owid_surface* surface);
OWID_API size_t owid_surface_triangle_count(const owid_surface* surface);
OWID_API size_t owid_surface_physical_count(const owid_surface* surface);
OWID_API size_t owid_surface_superlevel_count(const owid_surface* surface);
OWID_API size_t owid_surface_fallback_count(const owid_surface* surface);
/* Empty string when the sample is non-empty. */
OWID_API const char* owid_surface_diagnostic(const owid_surface* surface);
OWID_API owid_status owid_surface_export(const owid_surface* surface, int format, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* OWID_H */
