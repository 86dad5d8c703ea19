#ifndef SYMFLOW_H
#define SYMFLOW_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SF_API __attribute__((visibility("default")))
#else
#define SF_API
#endif

/* Status codes; values are stable. */
typedef enum sf_status {
  SF_OK = 0,
  SF_ERR_INVALID_ARGUMENT = 1,
  SF_ERR_PARSE = 2,
  SF_ERR_DEPTH_EXCEEDED = 3,
  SF_ERR_EMPTY_SUBSHIFT = 4,
  SF_ERR_HORIZON_EXCEEDED = 5,
  SF_ERR_NOT_HIT = 6,
  SF_ERR_NO_MARKER_FOUND = 7,
  SF_ERR_PRECONDITION_FAILED = 8,
  SF_ERR_CAPACITY_EXCEEDED = 9,
  SF_ERR_INDEX_OUT_OF_RANGE = 10,
  SF_ERR_CONSTRAINT_VIOLATED = 11,
  SF_ERR_INSUFFICIENT_DATA = 12,
  SF_ERR_NO_MARKERS_FOUND = 13,
  SF_ERR_INCOMMENSURABLE_ROOF = 14,
  SF_ERR_INFEASIBLE_SCHEDULE = 15,
  SF_ERR_MARKER_UNAVAILABLE = 16,
  SF_ERR_IO = 17,
  SF_ERR_NULL = 90,
  SF_ERR_INTERNAL = 99
} sf_status;

typedef struct sf_subshift sf_subshift;
typedef struct sf_measure sf_measure;
typedef struct sf_flow sf_flow;
typedef struct sf_census sf_census;
typedef struct sf_lab_result sf_lab_result;

SF_API const char* sf_version(void);
SF_API const char* sf_status_name(sf_status status);
/* message of the last failure on this thread; empty after success */
SF_API const char* sf_last_error(void);

/* Subshifts from a JSON description such as {"kind":"sft","adjacency":["11","10"]}. */
SF_API sf_status sf_subshift_from_json(const char* json, sf_subshift** out);
SF_API void sf_subshift_free(sf_subshift* s);
SF_API sf_status sf_subshift_alphabet(const sf_subshift* s, size_t* out);
/* exact is set to 1 for the Perron value, 0 for a block estimate at the horizon */
SF_API sf_status sf_subshift_entropy(const sf_subshift* s, size_t horizon, double* value, int* exact);
SF_API sf_status sf_subshift_language_size(const sf_subshift* s, size_t n, double* out);
/* #Fix(sigma^n) */
SF_API sf_status sf_subshift_fixed_count(const sf_subshift* s, size_t n, uint64_t* out);
/* marker word written NUL-terminated into buf; certified is 1 when disjointness and coverage hold */
SF_API sf_status sf_marker_build(const sf_subshift* s, size_t n, size_t max_word_len, size_t depth, char* buf,
                                 size_t cap, int* certified);

/* Markov measures from {"kind":"markov","P":[["1/2","1/2"],...]} or {"kind":"bernoulli","p":[...]}. */
SF_API sf_status sf_measure_from_json(const char* json, sf_measure** out);
SF_API void sf_measure_free(sf_measure* m);
SF_API sf_status sf_measure_mass(const sf_measure* m, const char* word, double* out);
SF_API sf_status sf_measure_entropy_rate(const sf_measure* m, double* out);
/* 1 when pi P = pi holds exactly */
SF_API sf_status sf_measure_invariant(const sf_measure* m, int* out);

/* Suspension flows from {"base": subshift, "roof": roof}. */
SF_API sf_status sf_flow_from_json(const char* json, sf_flow** out);
SF_API void sf_flow_free(sf_flow* f);
SF_API sf_status sf_flow_min_roof(const sf_flow* f, double* out);

/* Periodic census of a subshift. */
SF_API sf_status sf_census_build(const sf_subshift* s, size_t max_period, sf_census** out);
SF_API void sf_census_free(sf_census* c);
SF_API sf_status sf_census_orbit_count(const sf_census* c, size_t* out);
SF_API sf_status sf_census_growth(const sf_census* c, double* value, double* cumulative_sup);
SF_API sf_status sf_census_pk(const sf_census* c, size_t orbit, double eps, int count_measures, double* out);

/* Experiments. out_dir may be NULL to skip writing files; the result is
   returned even when the experiment fails, carrying the error JSON. */
SF_API sf_status sf_lab_run(const char* config_json, uint64_t seed, const char* base_dir, const char* out_dir,
                            sf_lab_result** out);
SF_API void sf_lab_result_free(sf_lab_result* r);
SF_API int sf_lab_result_exit_code(const sf_lab_result* r);
SF_API const char* sf_lab_result_error_json(const sf_lab_result* r);
SF_API const char* sf_lab_result_config_hash(const sf_lab_result* r);
SF_API const char* sf_lab_result_out_dir(const sf_lab_result* r);
SF_API size_t sf_lab_result_file_count(const sf_lab_result* r);
SF_API const char* sf_lab_result_file_name(const sf_lab_result* r, size_t i);
SF_API const char* sf_lab_result_file_contents(const sf_lab_result* r, size_t i);
SF_API sf_status sf_lab_result_write(const sf_lab_result* r, const char* dir);
SF_API size_t sf_lab_experiment_count(void);
SF_API const char* sf_lab_experiment_name(size_t i);

#ifdef __cplusplus
}
#endif

#endif
