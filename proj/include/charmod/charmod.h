/*
 * charmod C API: characteristic D-modules of polyhedral cell complexes.
 *
 * All computations are exact (arbitrary-precision rational arithmetic).
 * Handles are opaque; results are returned as heap-allocated JSON strings
 * that must be released with charmod_string_free. Functions return
 * CHARMOD_OK on success; on failure charmod_last_error_name() /
 * charmod_last_error_message() describe the error (thread-local).
 */
#ifndef CHARMOD_CHARMOD_H
#define CHARMOD_CHARMOD_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct charmod_complex charmod_complex;

typedef enum {
    CHARMOD_OK = 0,
    CHARMOD_ERR_PARSE = 1,  /* malformed input file or operator text */
    CHARMOD_ERR_DOMAIN = 2, /* domain error; see charmod_last_error_name */
    CHARMOD_ERR_INTERNAL = 3
} charmod_status;

typedef enum {
    CHARMOD_ANN_AUTO = 0,        /* vertex cones for polytopes, Laplace for cones */
    CHARMOD_ANN_VERTEX_CONES = 1,
    CHARMOD_ANN_ELIMINATION = 2, /* module Groebner elimination on the presentation */
    CHARMOD_ANN_CONE_LAPLACE = 3
} charmod_ann_method;

/* ---- complexes ---- */

charmod_status charmod_complex_load(const char* path, charmod_complex** out);
charmod_status charmod_complex_from_json(const char* text, charmod_complex** out);
void charmod_complex_free(charmod_complex* k);

/* canonical serialization; parse -> serialize is idempotent */
charmod_status charmod_complex_to_json(const charmod_complex* k, char** out_json);

/* ---- computations (JSON reports) ---- */

/* canonical presentation of M_K with the skeleton filtration */
charmod_status charmod_presentation(const charmod_complex* k, char** out_json);

/* annihilator ideal of the top cell (or of cell_id when non-NULL) */
charmod_status charmod_annihilator(const charmod_complex* k, const char* cell_id,
                                   charmod_ann_method method, int max_order,
                                   int max_coeff_degree, char** out_json);

/* Borel-Moore Betti table */
charmod_status charmod_betti(const charmod_complex* k, char** out_json);

/* direct image summand counts for the projection to the first s coords */
charmod_status charmod_summand_counts(const charmod_complex* k, int s, char** out_json);

/* presentation of pi_+^0 M_K; reduce eliminates positive fiber dimension
 * generators; spline_module adds the missing-cell relations of S_K */
charmod_status charmod_dir_image(const charmod_complex* k, int s, int reduce,
                                 int spline_module, char** out_json);

/* free pairs; s = -1 lists all, s >= 1 only 1-free pairs */
charmod_status charmod_free_pairs(const charmod_complex* k, int s, char** out_json);

/* elementary collapse of one free pair; returns the collapsed complex */
charmod_status charmod_collapse(const charmod_complex* k, const char* sigma,
                                const char* tau, char** out_json);

/* B-spline values of every cell at a point ("x1,x2,...") */
charmod_status charmod_spline_eval(const charmod_complex* k, int s, const char* point,
                                   char** out_json);

/* pointwise de Boor-Hoellig checks at generic rational samples */
charmod_status charmod_spline_check(const charmod_complex* k, int s, int samples,
                                    unsigned long long seed, char** out_json);

/* spline isomorphism certificate (collapse search + fiber connectivity) */
charmod_status charmod_verify(const charmod_complex* k, int s, int samples,
                              unsigned long long seed, char** out_json);

/* ---- errors and memory ---- */

const char* charmod_last_error_name(void);
const char* charmod_last_error_message(void);
void charmod_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CHARMOD_CHARMOD_H */
