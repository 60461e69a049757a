/*
 * C interface for the tsys library: exact tropical and supertropical
 * computer algebra over semiring carriers with negation maps.
 *
 * Carriers are opaque handles created from JSON specs; all other payloads
 * are JSON strings in the documented wire formats (rationals as "p/q"
 * strings, element literals as {"kind": ..., "value": ...} objects).
 *
 * Every function returns a tsys_status. Results are written through out
 * parameters; strings written through `char **` out parameters are owned
 * by the caller and must be released with tsys_string_free. On failure
 * the out parameter is set to NULL and tsys_last_error() carries a
 * message valid until the next failing call on the same thread.
 */

#ifndef TSYS_H
#define TSYS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsys_status {
  TSYS_OK = 0,
  TSYS_ERR_INVALID_ARGUMENT = 1,
  TSYS_ERR_PRECONDITION = 2,
  TSYS_ERR_INTERNAL = 3,
} tsys_status;

/* Opaque carrier handle. */
typedef struct TsysSystem TsysSystem;

/* Last error message for this thread; owned by the library. */
const char *tsys_last_error(void);

/* Release a string returned by this library. */
void tsys_string_free(char *s);

/*
 * Create a carrier from a JSON spec: a builtin name ("supertropical",
 * "maxplus", "minplus", "boolean", "nat", "char4", "trop_power_set"),
 * {"finite": {...}} with explicit tables, {"symmetrize": spec},
 * {"s_of_h": "krasner"|"signs"|"tropical"|{...}},
 * {"supertropical_chain": k} or {"maxplus_chain": k}.
 */
int tsys_system_new(const char *spec_json, TsysSystem **out);
void tsys_system_free(TsysSystem *sys);
int tsys_system_label(const TsysSystem *sys, char **out);
int tsys_system_is_triple(const TsysSystem *sys, int *out);

/* Element arithmetic over JSON literals. */
int tsys_elem_add(const TsysSystem *sys, const char *a_json,
                  const char *b_json, char **out);
int tsys_elem_mul(const TsysSystem *sys, const char *a_json,
                  const char *b_json, char **out);
int tsys_elem_negate(const TsysSystem *sys, const char *a_json, char **out);
int tsys_elem_quasi_zero(const TsysSystem *sys, const char *a_json,
                         char **out);
/* The surpassing relation a <| b; writes 0 or 1 through `out`. */
int tsys_elem_leq(const TsysSystem *sys, const char *a_json,
                  const char *b_json, int *out);

/* Signed determinant of {"n": k, "rows": [[elem, ...], ...]}. */
int tsys_neg_det(const TsysSystem *sys, const char *matrix_json, char **out);

/* Evaluate {"nvars": n, "laurent": b, "terms": [...]} at a point given as
 * a JSON array of element literals. */
int tsys_poly_eval(const TsysSystem *sys, const char *poly_json,
                   const char *point_json, char **out);

/*
 * Run any CLI subcommand in-process. `argv_json` is a JSON array of
 * argument strings (no program name), e.g.
 *   ["det", "--system", "supertropical", "--matrix", "{...}"].
 * The serialized result is written through `out` and the CLI exit code
 * through `exit_code`; the returned status reflects marshalling only.
 */
int tsys_run(const char *argv_json, char **out, int *exit_code);

#ifdef __cplusplus
}
#endif

#endif /* TSYS_H */
