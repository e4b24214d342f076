#ifndef SHAKERBEAM_SHAKERBEAM_H
#define SHAKERBEAM_SHAKERBEAM_H

/*
 * C interface to the shakerbeam library: eigenfrequencies and eigenmodes of
 * a hinged Euler-Bernoulli beam with a point mass-spring attachment.
 *
 * Every fallible call returns an sb_status. On failure the thread-local
 * message from sb_last_error() describes the cause. Handles are opaque and
 * owned by the caller; each *_destroy accepts NULL.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SHAKERBEAM_BUILDING)
#    define SB_API __declspec(dllexport)
#  else
#    define SB_API __declspec(dllimport)
#  endif
#else
#  define SB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
    SB_OK = 0,
    SB_ERR_VALIDATION = 1,       /* bad physical parameter; see sb_last_error_field() */
    SB_ERR_DOMAIN = 2,           /* argument outside the mathematical domain (mu <= 0, x off the span) */
    SB_ERR_RANGE = 3,            /* result not representable (closed-form overflow) */
    SB_ERR_CONFIGURATION = 4,    /* scan step too coarse, empty window, too few quadrature points */
    SB_ERR_PRECONDITION = 5,     /* localization neighbourhoods overlap, mu not an eigenvalue, ... */
    SB_ERR_DEGENERATE_MODE = 6,  /* eigenspace not one-dimensional; see sb_last_error_value() */
    SB_ERR_INVALID_ARGUMENT = 7, /* NULL pointer, index out of range, malformed text */
    SB_ERR_INTERNAL = 8
} sb_status;

typedef struct sb_param_set sb_param_set;
typedef struct sb_params sb_params;
typedef struct sb_root_list sb_root_list;
typedef struct sb_localization sb_localization;
typedef struct sb_root_table sb_root_table;
typedef struct sb_mode sb_mode;

SB_API const char* sb_version(void);
SB_API const char* sb_status_string(sb_status status);

/* Message of the last failure on this thread; "" after a successful call. */
SB_API const char* sb_last_error(void);
/* Offending field name for SB_ERR_VALIDATION, "" otherwise. */
SB_API const char* sb_last_error_field(void);
/* det M3 for SB_ERR_DEGENERATE_MODE, NaN otherwise. */
SB_API double sb_last_error_value(void);

/* ---- parameters -------------------------------------------------------- */

/* Raw text parameters, e.g. ("kappa", "7 N/mm"). Keys: E, I, rho or rho0 + S,
 * l, l0, m, kappa. A value without a unit is taken as SI. */
SB_API sb_status sb_param_set_create(sb_param_set** out);
SB_API sb_status sb_param_set_put(sb_param_set* set, const char* key, const char* value);
/* Value stored under key, or NULL. */
SB_API const char* sb_param_set_get(const sb_param_set* set, const char* key);
SB_API sb_status sb_param_set_reference(sb_param_set** out);
SB_API void sb_param_set_destroy(sb_param_set* set);

SB_API sb_status sb_params_validate(const sb_param_set* set, sb_params** out);
SB_API sb_status sb_params_create(double youngs_modulus, double second_moment, double linear_density, double length,
                                  double attachment_point, double shaker_mass, double spring_stiffness,
                                  sb_params** out);
SB_API sb_status sb_params_reference(sb_params** out);
SB_API sb_status sb_params_with_attachment_point(const sb_params* params, double attachment_point, sb_params** out);
SB_API sb_status sb_params_with_shaker(const sb_params* params, double mass, double stiffness, sb_params** out);
SB_API void sb_params_destroy(sb_params* params);

typedef struct sb_param_values {
    double youngs_modulus;   /* Pa */
    double second_moment;    /* m^4 */
    double linear_density;   /* kg/m */
    double length;           /* m */
    double attachment_point; /* m */
    double shaker_mass;      /* kg */
    double spring_stiffness; /* N/m */
    double flexural_rigidity;
    double frequency_scale;  /* sqrt(EI/rho) */
} sb_param_values;

SB_API sb_status sb_params_get(const sb_params* params, sb_param_values* out);

/* Parses "7 N/mm" style text to SI. dims receives the (mass, length, time)
 * exponents and may be NULL. */
SB_API sb_status sb_parse_quantity(const char* text, double* out_value, int dims[3]);

/* ---- characteristic functions ----------------------------------------- */

typedef struct sb_spectral_point {
    double mu;          /* 1/m */
    double omega;       /* rad/s */
    double lambda_imag; /* eigenvalue is i * lambda_imag */
    double nu;          /* Hz */
} sb_spectral_point;

SB_API sb_status sb_spectral_point_of(const sb_params* params, double mu, sb_spectral_point* out);

/* z[0..3] = z1..z4 at (mu, x). */
SB_API sb_status sb_krylov(double mu, double x, double z[4]);
/* Row-major exp(x M). */
SB_API sb_status sb_exp_xm(double mu, double x, double out[16]);

SB_API sb_status sb_det_m_closed(const sb_params* params, double mu, double* out);
SB_API sb_status sb_det_m_oracle(const sb_params* params, double mu, double* out);
SB_API sb_status sb_phi0(const sb_params* params, double mu, double* out);
SB_API sb_status sb_phi0_derivative(const sb_params* params, double mu, double* out);
SB_API sb_status sb_phi1(const sb_params* params, double mu, double* out);
SB_API sb_status sb_phi(const sb_params* params, double mu, double* out);
SB_API sb_status sb_phi_prefactor(const sb_params* params, double mu, double* out);
SB_API sb_status sb_det_m3(const sb_params* params, double mu, double* out);

/* ---- roots ------------------------------------------------------------- */

typedef enum sb_target { SB_TARGET_PHI = 0, SB_TARGET_PHI0 = 1 } sb_target;

typedef struct sb_scan_options {
    double step;      /* <= 0: default pi/(80 l) */
    double xtol;      /* refinement width */
    unsigned threads; /* 0 or 1: single-threaded */
} sb_scan_options;

SB_API void sb_scan_options_init(sb_scan_options* options);
SB_API double sb_default_scan_step(double length);
SB_API double sb_max_scan_step(double length);

typedef struct sb_root {
    double mu;
    double residual;
    double bracket_lo;
    double bracket_hi;
    int iterations;
    int grid_hit;
    sb_target target;
} sb_root;

/* options may be NULL. */
SB_API sb_status sb_scan_roots(const sb_params* params, sb_target target, double mu_min, double mu_max,
                               const sb_scan_options* options, sb_root_list** out);
SB_API size_t sb_root_list_size(const sb_root_list* list);
SB_API sb_status sb_root_list_get(const sb_root_list* list, size_t index, sb_root* out);
SB_API size_t sb_root_list_suspect_count(const sb_root_list* list);
SB_API sb_status sb_root_list_suspect(const sb_root_list* list, size_t index, double* out);
SB_API void sb_root_list_destroy(sb_root_list* list);

/* Writes count truncated roots for l0 = l/2 into out. */
SB_API sb_status sb_closed_form_roots_half(double length, int count, double* out);

/* ---- localization ------------------------------------------------------ */

typedef enum sb_pairing_status {
    SB_PAIRING_PAIRED_UNIQUE = 0,
    SB_PAIRING_NO_EXACT_ROOT = 1,
    SB_PAIRING_MULTIPLE_EXACT_ROOTS = 2,
    SB_PAIRING_UNPAIRED_EXACT_ROOT = 3
} sb_pairing_status;

SB_API const char* sb_pairing_status_string(sb_pairing_status status);

typedef struct sb_pairing {
    double truncated_root;
    int has_exact;
    double exact_root;
    double distance;
    double epsilon;
    int exact_count;
    sb_pairing_status status;
} sb_pairing;

typedef struct sb_localization_summary {
    int verdict;
    int margins_certify;
    double threshold_M;
    double epsilon;
    double mu_max;
    double min_abs_phi0_outside;
    double min_abs_dphi0_inside;
    double max_abs_phi1;
    double max_abs_dphi1;
    int ratio_rational;
    long long ratio_p;
    long long ratio_q;
    size_t pairing_count;
    size_t stray_count;
    size_t warning_count;
} sb_localization_summary;

SB_API sb_status sb_verify_localization(const sb_params* params, double epsilon, double threshold_M, double mu_max,
                                        const sb_scan_options* options, sb_localization** out);
SB_API sb_status sb_localization_get_summary(const sb_localization* report, sb_localization_summary* out);
SB_API sb_status sb_localization_pairing(const sb_localization* report, size_t index, sb_pairing* out);
SB_API sb_status sb_localization_stray(const sb_localization* report, size_t index, double* out);
/* NULL when index is out of range. */
SB_API const char* sb_localization_warning(const sb_localization* report, size_t index);
SB_API void sb_localization_destroy(sb_localization* report);

/* ---- comparison table -------------------------------------------------- */

typedef enum sb_row_status {
    SB_ROW_PAIRED_UNIQUE = 0,
    SB_ROW_PAIRED_AMBIGUOUS = 1,
    SB_ROW_TRUNCATED_ONLY = 2,
    SB_ROW_EXACT_ONLY = 3
} sb_row_status;

SB_API const char* sb_row_status_string(sb_row_status status);

typedef struct sb_table_row {
    int j;
    int has_truncated;
    double truncated_root;
    int has_exact;
    double exact_root;
    sb_row_status status;
    double abs_gap;
} sb_table_row;

/* Both lists ascending. */
SB_API sb_status sb_build_root_table(const double* exact, size_t exact_count, const double* truncated,
                                     size_t truncated_count, double epsilon, double threshold_M,
                                     sb_root_table** out);
SB_API size_t sb_root_table_size(const sb_root_table* table);
SB_API sb_status sb_root_table_get(const sb_root_table* table, size_t index, sb_table_row* out);
SB_API void sb_root_table_destroy(sb_root_table* table);

/* ---- modes ------------------------------------------------------------- */

typedef enum sb_branch { SB_BRANCH_LEFT = 0, SB_BRANCH_RIGHT = 1 } sb_branch;

typedef struct sb_mode_info {
    double mu;
    double omega;
    double length;
    double attachment_point;
    double det_m3;
    double normalization;
    int sign;
    int normalized;
    double u1_0; /* u'(0) */
    double u3_0; /* u'''(0) */
    double u1_l; /* u'(l) */
    double u3_l; /* u'''(l) */
    double p;           /* u(l0) */
    double q_magnitude; /* omega * u(l0) */
    double coefficients[4];
} sb_mode_info;

/* Mode at an exact root, gauged u'''(l) = 1 (u'(l) = 1 if that vanishes). */
SB_API sb_status sb_mode_solve(const sb_params* params, double mu, sb_mode** out);
/* Unit L2 norm, u'(0) > 0. quadrature_points >= 64. */
SB_API sb_status sb_mode_normalize(const sb_mode* mode, int quadrature_points, sb_mode** out);
SB_API sb_status sb_mode_get_info(const sb_mode* mode, sb_mode_info* out);
SB_API sb_status sb_mode_value(const sb_mode* mode, double x, double* out);
SB_API sb_status sb_mode_derivative(const sb_mode* mode, double x, int order, double* out);
SB_API sb_status sb_mode_branch_derivative(const sb_mode* mode, sb_branch branch, double x, int order,
                                           double* out);
SB_API sb_status sb_mode_l2_norm_squared(const sb_mode* mode, int quadrature_points, double* out);
/* out = (u, u', u'' continuity, jump balance) relative residuals at l0. */
SB_API sb_status sb_mode_interface_residuals(const sb_mode* mode, const sb_params* params, double out[4]);
/* Normalised modes only. x, u, v_magnitude each hold samples values; v_magnitude may be NULL. */
SB_API sb_status sb_mode_sample(const sb_mode* mode, const sb_params* params, size_t samples, double* x, double* u,
                                double* v_magnitude);
SB_API void sb_mode_destroy(sb_mode* mode);

/* (u'(0), u'''(0), u'(l), u'''(l) = 1) from the 3x3 boundary system. */
SB_API sb_status sb_reference_boundary_values(const sb_params* params, double mu, double out[4]);

#ifdef __cplusplus
}
#endif

#endif
