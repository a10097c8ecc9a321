#ifndef RGC_H
#define RGC_H

/*
 * C interface to the Real groupoid cohomology library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Results are JSON documents returned through char** out parameters; free
 * them with rgc_string_free. Every call returns a status; on failure
 * rgc_last_error() describes the problem (thread-local, valid until the
 * next call on the same thread).
 */

#include <stddef.h>

#if defined(RGC_BUILDING) && defined(__GNUC__)
#define RGC_API __attribute__((visibility("default")))
#else
#define RGC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rgc_status {
    RGC_OK = 0,
    RGC_ERR_INVALID_ARGUMENT = 1,
    RGC_ERR_PARSE = 2,       /* malformed JSON or schema violation */
    RGC_ERR_VALIDATION = 3,  /* axioms violated, non-cocycle input */
    RGC_ERR_COMPUTATION = 4, /* e.g. no Real section or lift exists */
    RGC_ERR_LIMIT = 5,       /* RGC_MAX_ARROWS or another size cap */
    RGC_ERR_INTERNAL = 6
} rgc_status;

typedef struct rgc_groupoid rgc_groupoid;
typedef struct rgc_coefficients rgc_coefficients;
typedef struct rgc_twist rgc_twist;
typedef struct rgc_representation rgc_representation;

RGC_API const char* rgc_version(void);
RGC_API const char* rgc_last_error(void);
RGC_API void rgc_string_free(char* s);

/* ---- groupoids ---- */

/* Parses and validates; RGC_ERR_VALIDATION when an axiom fails. */
RGC_API rgc_status rgc_groupoid_parse(const char* json, rgc_groupoid** out);
/* Validation report {"valid", "violations": [{"axiom", "witness"}]} of a
   well-formed but possibly invalid groupoid. */
RGC_API rgc_status rgc_groupoid_check(const char* json, char** report);
RGC_API rgc_status rgc_groupoid_to_json(const rgc_groupoid* g, char** out);
RGC_API size_t rgc_groupoid_object_count(const rgc_groupoid* g);
RGC_API size_t rgc_groupoid_arrow_count(const rgc_groupoid* g);
RGC_API void rgc_groupoid_free(rgc_groupoid* g);

RGC_API rgc_status rgc_nerve(const rgc_groupoid* g, size_t max_degree, char** out);

/* ---- coefficients ---- */

/* A preset name (e.g. "mu4_conj", "Q(1,1)") or a JSON object. */
RGC_API rgc_status rgc_coefficients_parse(const char* text, rgc_coefficients** out);
RGC_API rgc_status rgc_coefficients_to_json(const rgc_coefficients* s, char** out);
RGC_API void rgc_coefficients_free(rgc_coefficients* s);

/* ---- cohomology ---- */

RGC_API rgc_status rgc_cohomology(const rgc_groupoid* g, const rgc_coefficients* s, size_t n, char** out);
RGC_API rgc_status rgc_invariant_sections(const rgc_groupoid* g, const rgc_coefficients* s, char** out);
/* Class of a cochain {"degree", "values"}: cocycle flag and coordinates. */
RGC_API rgc_status rgc_cochain_class(const rgc_groupoid* g, const rgc_coefficients* s, const char* cochain, char** out);

/* ---- graded twists ---- */

/* twist_json holds optional "omega" and "delta"; NULL gives the trivial twist. */
RGC_API rgc_status rgc_twist_create(const rgc_groupoid* g, const rgc_coefficients* s, const char* twist_json,
                            rgc_twist** out);
RGC_API rgc_status rgc_twist_to_json(const rgc_twist* t, char** out);
RGC_API void rgc_twist_free(rgc_twist* t);

RGC_API rgc_status rgc_twist_classes(const rgc_groupoid* g, const rgc_coefficients* s, char** out);
RGC_API rgc_status rgc_twist_build(const rgc_twist* t, char** extension);
/* Twist of an extension {"groupoid", "projection", "fiber_size", "action",
   optional "delta"} relative to its canonical Real section. */
RGC_API rgc_status rgc_twist_extract(const rgc_groupoid* g, const rgc_coefficients* s, const char* extension,
                             rgc_twist** out);
RGC_API rgc_status rgc_twist_sum(const rgc_twist* a, const rgc_twist* b, rgc_twist** out);
RGC_API rgc_status rgc_twist_dd_class(const rgc_twist* t, char** out);
/* Cup product of two Z/2-valued 1-cochains given as JSON cochains. */
RGC_API rgc_status rgc_cup(const rgc_groupoid* g, const rgc_coefficients* s, const char* delta1, const char* delta2,
                   char** out);

/* ---- principal bundles ---- */

RGC_API rgc_status rgc_bundle_classes(const rgc_groupoid* g, const rgc_coefficients* s, char** out);
RGC_API rgc_status rgc_bundle_isomorphism(const rgc_groupoid* g, const rgc_coefficients* s, const char* cocycle1,
                                  const char* cocycle2, char** out);

/* ---- Morita invariance ---- */

/* cover: {"blocks": [[x...]...], "bar": [...]} */
RGC_API rgc_status rgc_morita_cover(const rgc_groupoid* g, const rgc_coefficients* s, const char* cover, size_t n_max,
                            char** out);
/* cech: {"pi": [...], "rho_y": [...]} over a groupoid with only unit arrows */
RGC_API rgc_status rgc_morita_cech(const rgc_groupoid* g, const rgc_coefficients* s, const char* cech, size_t n_max,
                           char** out);
/* pullback: {"phi": [...], "rho_z": [...]} with phi surjective on objects */
RGC_API rgc_status rgc_morita_pullback(const rgc_groupoid* g, const rgc_coefficients* s, const char* pullback,
                               size_t n_max, char** out);

/* ---- proper vanishing ---- */

RGC_API rgc_status rgc_representation_parse(const rgc_groupoid* g, const char* json, rgc_representation** out);
/* Trivial action with nu = tau for a rational coefficient group. */
RGC_API rgc_status rgc_representation_constant(const rgc_groupoid* g, const rgc_coefficients* s,
                                       rgc_representation** out);
RGC_API void rgc_representation_free(rgc_representation* e);
RGC_API rgc_status rgc_vanishing(const rgc_representation* e, size_t n_max, char** out);

/* ---- long exact sequences ---- */

/* sequence: {"sub", "total", "quotient", "inclusion", "projection"} */
RGC_API rgc_status rgc_long_exact_sequence(const rgc_groupoid* g, const char* sequence, size_t top_degree, char** out);

#ifdef __cplusplus
}
#endif

#endif
