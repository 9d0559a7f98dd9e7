#ifndef GEUCLID_GEUCLID_H
#define GEUCLID_GEUCLID_H

/*
 * C interface to the geuclid library: group-ring elements over F_p, Q or Z
 * on a free group, space oracles, transformation logs and scenario runs.
 *
 * Every handle is opaque and owned by the caller; release it with the
 * matching *_free function. Functions return GEU_OK or an error code, and
 * geu_last_error() describes the most recent failure on the calling thread.
 * Strings returned through char** are heap copies freed with geu_string_free.
 */

#include <stddef.h>

#if defined(_WIN32)
#define GEU_API __declspec(dllexport)
#elif defined(__GNUC__)
#define GEU_API __attribute__((visibility("default")))
#else
#define GEU_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum geu_status {
  GEU_OK = 0,
  GEU_ERR_PARSE = 1,
  GEU_ERR_DOMAIN_MISMATCH = 2,
  GEU_ERR_OUT_OF_DOMAIN = 3,
  GEU_ERR_RESOURCE = 4,
  GEU_ERR_PRECONDITION = 5,
  GEU_ERR_HYPOTHESIS_NOT_MET = 6,
  GEU_ERR_INCONCLUSIVE = 7,
  GEU_ERR_STAR_FAILURE = 8,
  GEU_ERR_INTERNAL = 9,
  GEU_ERR_USAGE = 10,
  GEU_ERR_UNSUPPORTED = 11,
  GEU_ERR_NULL_ARGUMENT = 100
} geu_status;

typedef struct geu_oracle geu_oracle;
typedef struct geu_element geu_element;
typedef struct geu_log geu_log;
typedef struct geu_report geu_report;

GEU_API const char* geu_version(void);
/* Message of the last failed call on this thread ("" if none). */
GEU_API const char* geu_last_error(void);
GEU_API const char* geu_status_name(geu_status status);
GEU_API void geu_string_free(char* s);

/* Oracles. `extra` is a comma-separated word list such as "ab" (may be NULL). */
GEU_API geu_status geu_oracle_tree(int rank, geu_oracle** out);
GEU_API geu_status geu_oracle_cayley_ball(int rank, const char* extra, int radius, geu_oracle** out);
GEU_API int geu_oracle_rank(const geu_oracle* oracle);
/* delta as an exact rational string, e.g. "0" or "1/2". */
GEU_API geu_status geu_oracle_delta(const geu_oracle* oracle, char** out);
GEU_API geu_status geu_oracle_description(const geu_oracle* oracle, char** out);
GEU_API void geu_oracle_free(geu_oracle* oracle);

/* Elements. `domain` is "q", "z" or "fp:<p>"; rank 0 allows every letter. */
GEU_API geu_status geu_element_parse(const char* text, const char* domain, int rank, geu_element** out);
GEU_API geu_status geu_element_to_string(const geu_element* x, char** out);
GEU_API geu_status geu_element_add(const geu_element* x, const geu_element* y, geu_element** out);
GEU_API geu_status geu_element_mul(const geu_element* x, const geu_element* y, geu_element** out);
GEU_API int geu_element_is_zero(const geu_element* x);
GEU_API int geu_element_equal(const geu_element* x, const geu_element* y);
/* diam in the oracle as a rational string, or "-inf" for zero. */
GEU_API geu_status geu_element_diameter(const geu_element* x, const geu_oracle* oracle, char** out);
GEU_API void geu_element_free(geu_element* x);

/* Transformation logs: one operation per line ("E i j x", "D i c g", "P i j"). */
GEU_API geu_status geu_log_parse(const char* text, const char* domain, int rank, geu_log** out);
GEU_API size_t geu_log_size(const geu_log* log);
GEU_API geu_status geu_log_to_string(const geu_log* log, char** out);
/* Replays on comma-separated elements, or vectors "(x; y)", and writes the
 * resulting list in the same form. `inverse` != 0 undoes the log. */
GEU_API geu_status geu_log_replay(const geu_log* log, const char* slots, int inverse, char** out);
GEU_API void geu_log_free(geu_log* log);

/* Scenario runs. Any scenario text yields a report: a malformed scenario
 * gives an error report with exit code 1. Only a NULL argument fails. */
GEU_API geu_status geu_run_scenario(const char* scenario_text, geu_report** out);
GEU_API const char* geu_report_text(const geu_report* report);
GEU_API const char* geu_report_json(const geu_report* report);
/* Text, elapsed time, "---json---" and the JSON document. */
GEU_API const char* geu_report_rendered(const geu_report* report);
GEU_API int geu_report_exit_code(const geu_report* report);
GEU_API geu_status geu_report_error(const geu_report* report);
GEU_API double geu_report_seconds(const geu_report* report);
GEU_API void geu_report_free(geu_report* report);

/* Newline-separated task names accepted in scenarios. */
GEU_API const char* geu_task_names(void);

#ifdef __cplusplus
}
#endif

#endif
