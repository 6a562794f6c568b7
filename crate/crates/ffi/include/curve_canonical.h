#ifndef CURVE_CANONICAL_H
#define CURVE_CANONICAL_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every function. */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_INVALID_UTF8 = 2,
  /* The library rejected the input; see cc_last_error_name(). */
  CC_STATUS_DOMAIN_ERROR = 3,
  CC_STATUS_PANIC = 4,
} CcStatus;

/* Opaque handle to a semigroup ring k[[t^G]]. */
typedef struct CcSemigroup CcSemigroup;

CcStatus cc_semigroup_new(const int64_t *gens, size_t len, CcSemigroup **out);
CcStatus cc_semigroup_parse(const char *text, CcSemigroup **out);
void cc_semigroup_free(CcSemigroup *h);

CcStatus cc_semigroup_frobenius(const CcSemigroup *h, int64_t *out);
CcStatus cc_semigroup_contains(const CcSemigroup *h, int64_t a, bool *out);

/* JSON results; release with cc_string_free(). */
CcStatus cc_invariants_json(const CcSemigroup *h, char **out);
CcStatus cc_canonical_value_set_json(const CcSemigroup *h, char **out);
CcStatus cc_shift_canonical_json(const CcSemigroup *h, int64_t s, char **out);
CcStatus cc_pfaffian_json(const CcSemigroup *h, char **out);
CcStatus cc_verify_examples_json(char **out);
void cc_string_free(char *s);

/* Last failure on the calling thread, or NULL. Valid until the next call. */
const char *cc_last_error_message(void);
const char *cc_last_error_name(void);

#ifdef __cplusplus
}
#endif

#endif /* CURVE_CANONICAL_H */
