#ifndef OHRES_OHRES_H
#define OHRES_OHRES_H

/* C interface to the offshore hybrid microgrid sizing toolkit.
 *
 * Every call returns an ohres_status. On failure the message is available
 * from ohres_last_error() on the same thread until the next failing call.
 * Strings returned through `char**` are owned by the caller and must be
 * released with ohres_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OHRES_BUILDING)
#    define OHRES_API __declspec(dllexport)
#  else
#    define OHRES_API __declspec(dllimport)
#  endif
#else
#  define OHRES_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ohres_status {
    OHRES_OK = 0,
    OHRES_ERR_CONFIG = 1,     /* bad scenario, flag or argument */
    OHRES_ERR_INFEASIBLE = 2,
    OHRES_ERR_VALIDATION = 3, /* solution violates a constraint or its objective */
    OHRES_ERR_LIMIT = 4,      /* node/time limit or enumeration budget */
    OHRES_ERR_DATA = 5,       /* malformed dataset file */
    OHRES_ERR_NUMERIC = 6,
    OHRES_ERR_INTERNAL = 7
} ohres_status;

typedef enum ohres_format { OHRES_FORMAT_TEXT = 0, OHRES_FORMAT_JSON = 1, OHRES_FORMAT_CSV = 2 } ohres_format;

typedef enum ohres_resource { OHRES_WEC = 0, OHRES_TEC = 1, OHRES_OWT = 2, OHRES_FPV = 3 } ohres_resource;

typedef struct ohres_scenario ohres_scenario;
typedef struct ohres_solution ohres_solution;

OHRES_API const char* ohres_last_error(void);
OHRES_API const char* ohres_status_name(ohres_status status);
OHRES_API void ohres_string_free(char* s);

/* Scenarios. Relative dataset paths in `json_text` resolve against `base_dir`
 * (NULL means the current directory). */
OHRES_API ohres_status ohres_scenario_load(const char* path, ohres_scenario** out);
OHRES_API ohres_status ohres_scenario_parse(const char* json_text, const char* base_dir, ohres_scenario** out);
OHRES_API void ohres_scenario_free(ohres_scenario* scenario);
OHRES_API ohres_status ohres_scenario_set_gap(ohres_scenario* scenario, double relative_gap);
OHRES_API ohres_status ohres_scenario_set_node_limit(ohres_scenario* scenario, int64_t node_limit);

/* Builds typical-day profiles from the scenario's raw datasets. `document`
 * receives the profiles JSON, `summary` (optional) a text summary. */
OHRES_API ohres_status ohres_profiles_build(const ohres_scenario* scenario, char** document, char** summary);

/* Assembles, solves and validates. A solution that fails validation is not
 * returned; the message lists the violated families. */
OHRES_API ohres_status ohres_solve(const ohres_scenario* scenario, ohres_solution** out);

OHRES_API ohres_status ohres_solution_parse(const char* json_text, ohres_solution** out);
OHRES_API void ohres_solution_free(ohres_solution* solution);
OHRES_API ohres_status ohres_solution_to_json(const ohres_solution* solution, char** out);
OHRES_API ohres_status ohres_solution_report(const ohres_scenario* scenario, const ohres_solution* solution,
                                             ohres_format format, char** out);

OHRES_API double ohres_solution_objective(const ohres_solution* solution);
OHRES_API int64_t ohres_solution_count(const ohres_solution* solution, ohres_resource resource);
OHRES_API double ohres_solution_bess_kwh(const ohres_solution* solution);
OHRES_API size_t ohres_solution_horizon(const ohres_solution* solution);
OHRES_API int64_t ohres_solution_nodes(const ohres_solution* solution);
OHRES_API double ohres_solution_gap(const ohres_solution* solution);
/* 1 when the solver proved optimality within the gap. */
OHRES_API int ohres_solution_optimal(const ohres_solution* solution);

/* Re-validates `solution` against `scenario`. Returns OHRES_OK or
 * OHRES_ERR_VALIDATION; `report` (optional) receives the text report. */
OHRES_API ohres_status ohres_check(const ohres_scenario* scenario, const ohres_solution* solution, char** report);

/* Compares branch-and-bound with exhaustive enumeration. Returns OHRES_OK
 * when they agree on an optimum, OHRES_ERR_INFEASIBLE when both find the
 * scenario infeasible, OHRES_ERR_VALIDATION when they disagree and
 * OHRES_ERR_LIMIT when the enumeration exceeds the scenario's budget.
 * `agree` and `report` are optional and filled in all but the last case. */
OHRES_API ohres_status ohres_oracle(const ohres_scenario* scenario, int* agree, char** report);

/* Lifetime cost of one unit of `resource` under the scenario's costs. */
OHRES_API ohres_status ohres_unit_lifetime_cost(const ohres_scenario* scenario, ohres_resource resource,
                                                double* out);
OHRES_API ohres_status ohres_bess_kwh_lifetime_cost(const ohres_scenario* scenario, double* out);

#ifdef __cplusplus
}
#endif

#endif
