#ifndef UICHAN_H
#define UICHAN_H

/*
 * C interface to the unitary induced channel toolkit.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a uichan_status; on failure the message is
 * available from uichan_last_error() on the same thread. Strings returned
 * through char** are heap allocated and released with uichan_string_free.
 * Indices are 0-based. A JSON indent below 0 produces compact output.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UICHAN_API __declspec(dllexport)
#else
#define UICHAN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uichan_status {
  UICHAN_OK = 0,
  UICHAN_INVALID_ARGUMENT = 1,
  UICHAN_DIMENSION_MISMATCH = 2,
  UICHAN_PARSE = 3,
  UICHAN_DOMAIN = 4,
  UICHAN_INVALID_MODEL = 5,
  UICHAN_INCONSISTENT = 6,
  UICHAN_LIMIT = 7,
  UICHAN_INTERNAL = 99
} uichan_status;

typedef enum uichan_model_kind { UICHAN_TENSOR = 0, UICHAN_COMMUTING = 1 } uichan_model_kind;
typedef enum uichan_state_kind { UICHAN_STATE_VECTOR = 0, UICHAN_STATE_DENSITY = 1 } uichan_state_kind;
typedef enum uichan_method { UICHAN_METHOD_DIRECT = 0, UICHAN_METHOD_MOMENTS = 1 } uichan_method;

typedef struct uichan_model uichan_model;
typedef struct uichan_channel uichan_channel;
typedef struct uichan_table uichan_table; /* behaviour or Bell functional */
typedef struct uichan_strategy uichan_strategy;
typedef struct uichan_seesaw_result uichan_seesaw_result;

UICHAN_API const char* uichan_version(void);
UICHAN_API const char* uichan_status_string(uichan_status status);
UICHAN_API const char* uichan_last_error(void);
UICHAN_API void uichan_string_free(char* s);

/* Models. tolerance <= 0 selects 1e-10 * dim. */
UICHAN_API uichan_status uichan_model_generate(uichan_model_kind kind, size_t n, size_t m, size_t dA,
                                               size_t dB, uichan_state_kind state, uint64_t seed,
                                               uichan_model** out);
UICHAN_API uichan_status uichan_model_parse(const char* json, uichan_model** out);
UICHAN_API uichan_status uichan_model_to_json(const uichan_model* model, int indent, char** out);
UICHAN_API uichan_status uichan_model_shape(const uichan_model* model, size_t* n, size_t* m);
UICHAN_API uichan_status uichan_model_verify(const uichan_model* model, double tolerance,
                                             size_t max_n, int indent, char** report,
                                             int* all_pass);
UICHAN_API void uichan_model_free(uichan_model* model);

/* Channels. max_n == 0 keeps the default guard n <= 4. The model is
 * validated first and rejected with UICHAN_INVALID_MODEL on failure. */
UICHAN_API uichan_status uichan_channel_compute(const uichan_model* model, uichan_method method,
                                                double tolerance, size_t max_n,
                                                uichan_channel** out);
UICHAN_API uichan_status uichan_channel_parse(const char* json, uichan_channel** out);
UICHAN_API uichan_status uichan_channel_to_json(const uichan_channel* channel, int indent,
                                                char** out);
UICHAN_API uichan_status uichan_channel_shape(const uichan_channel* channel, size_t* n, size_t* m);
UICHAN_API uichan_status uichan_channel_audit(const uichan_channel* channel, int indent,
                                              char** report, int* pass);
/* rho and out are row-major n^2 x n^2 arrays split into real and imaginary
 * parts; dim must equal n^2. */
UICHAN_API uichan_status uichan_channel_apply(const uichan_channel* channel, size_t x, size_t y,
                                              size_t dim, const double* rho_re,
                                              const double* rho_im, double* out_re,
                                              double* out_im);
UICHAN_API uichan_status uichan_lastcond(const uichan_channel* channel, size_t a, size_t b,
                                         size_t x, size_t y, double* re, double* im);
UICHAN_API void uichan_channel_free(uichan_channel* channel);

/* Outcome tables. */
UICHAN_API uichan_status uichan_table_parse(const char* json, uichan_table** out);
UICHAN_API uichan_status uichan_functional_preset(const char* name, uichan_table** out);
UICHAN_API uichan_status uichan_table_to_json(const uichan_table* table, int indent, char** out);
UICHAN_API uichan_status uichan_table_to_csv(const uichan_table* table, char** out);
UICHAN_API uichan_status uichan_table_shape(const uichan_table* table, size_t* n, size_t* m);
UICHAN_API uichan_status uichan_table_get(const uichan_table* table, size_t a, size_t b, size_t x,
                                          size_t y, double* value);
UICHAN_API uichan_status uichan_behaviour_from_channel(const uichan_channel* channel,
                                                       uichan_table** out);
/* JSON {min_entry, max_normalization_defect, max_completion_shift,
   max_imaginary_residue}. Negative completed entries are reported here, not clipped. */
UICHAN_API uichan_status uichan_extraction_report(const uichan_channel* channel, int indent,
                                                  char** report);
UICHAN_API uichan_status uichan_behaviour_direct(const uichan_strategy* strategy,
                                                 uichan_table** out);
UICHAN_API uichan_status uichan_bell_value(const uichan_table* behaviour,
                                           const uichan_table* functional, double* value);
UICHAN_API void uichan_table_free(uichan_table* table);

/* Strategies: PVMs for both parties and a joint state. */
UICHAN_API uichan_status uichan_strategy_random(size_t n, size_t m, size_t dA, size_t dB,
                                                uint64_t seed, uichan_strategy** out);
UICHAN_API uichan_status uichan_strategy_chsh_optimal(uichan_strategy** out);
UICHAN_API uichan_status uichan_strategy_parse(const char* json, uichan_strategy** out);
UICHAN_API uichan_status uichan_strategy_to_json(const uichan_strategy* strategy, int indent,
                                                 char** out);
UICHAN_API void uichan_strategy_free(uichan_strategy* strategy);

/* See-saw. */
typedef struct uichan_seesaw_config {
  size_t dA;
  size_t dB;
  int max_iters;
  double rel_tol;
  int restarts;
  uint64_t seed;
  int allow_heuristic;
} uichan_seesaw_config;

UICHAN_API void uichan_seesaw_config_default(uichan_seesaw_config* cfg);
UICHAN_API uichan_status uichan_seesaw_run(const uichan_table* functional,
                                           const uichan_seesaw_config* cfg,
                                           uichan_seesaw_result** out);
UICHAN_API uichan_status uichan_seesaw_value(const uichan_seesaw_result* result, double* value);
UICHAN_API uichan_status uichan_seesaw_to_json(const uichan_seesaw_result* result, int indent,
                                               char** out);
/* Fails with UICHAN_INCONSISTENT when the lifted value is off by more than
 * 1e-6; *pass reports the 1e-8 criterion. */
UICHAN_API uichan_status uichan_seesaw_lift_and_verify(const uichan_seesaw_result* result,
                                                       int indent, char** report, int* pass);
UICHAN_API void uichan_seesaw_free(uichan_seesaw_result* result);

/* Strategy -> lift -> channel -> behaviour, against the Born rule. */
UICHAN_API uichan_status uichan_pipeline(const uichan_strategy* strategy,
                                         const uichan_table* functional, double threshold,
                                         size_t max_n, int indent, char** report, int* pass);

/* n in {2,3,4}. */
UICHAN_API uichan_status uichan_swap_demo(size_t n, uint64_t seed, int trials, int indent,
                                          char** report, int* pass);

#ifdef __cplusplus
}
#endif

#endif
