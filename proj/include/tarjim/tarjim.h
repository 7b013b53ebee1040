/* tarjim: Arabic-English translation data and evaluation toolkit, C API.
 *
 * Every function returns a tarjim_status. On failure a one-line message is
 * available from tarjim_last_error() on the calling thread until the next
 * call into the library from that thread.
 *
 * Strings are UTF-8 and NUL-terminated. Paths are passed through unchanged.
 */
#ifndef TARJIM_TARJIM_H
#define TARJIM_TARJIM_H

#include <stddef.h>

#if defined(TARJIM_BUILDING_LIBRARY)
#define TARJIM_API __attribute__((visibility("default")))
#else
#define TARJIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tarjim_status {
  TARJIM_OK = 0,
  TARJIM_E_INVALID_ARGUMENT = 1, /* bad input to a call, e.g. mismatched corpora */
  TARJIM_E_CONFIG = 2,           /* unknown key, bad value, unusable profile */
  TARJIM_E_DATA = 3,             /* malformed records */
  TARJIM_E_IO = 4,
  TARJIM_E_NETWORK = 5, /* transport failure or retries exhausted */
  TARJIM_E_PROTOCOL = 6,
  TARJIM_E_INTERNAL = 7
} tarjim_status;

TARJIM_API const char* tarjim_status_string(tarjim_status status);
TARJIM_API const char* tarjim_last_error(void);
TARJIM_API const char* tarjim_version(void);

/* ---- sessions ----------------------------------------------------------
 * A session holds the effective configuration. Layers are applied in call
 * order on top of the built-in defaults; each layer is a JSON object using
 * the same keys as tarjim_default_config(). A session is not safe for
 * concurrent use; create one per thread.
 */
typedef struct tarjim_session tarjim_session;

/* Returns the defaults as pretty JSON. Caller frees with tarjim_free. */
TARJIM_API tarjim_status tarjim_default_config(char** out_json);

TARJIM_API tarjim_status tarjim_session_create(tarjim_session** out);
TARJIM_API void tarjim_session_destroy(tarjim_session* session);

/* Overlays a JSON object. `origin` names the layer in error messages. */
TARJIM_API tarjim_status tarjim_session_apply_json(tarjim_session* session, const char* json, const char* origin);
/* Overlays TARJIM_<KEY> / TARJIM_<SECTION>_<KEY> environment variables. */
TARJIM_API tarjim_status tarjim_session_apply_env(tarjim_session* session);

/* Effective configuration as pretty JSON, owned by the session. */
TARJIM_API const char* tarjim_session_config(const tarjim_session* session);
/* Summary JSON of the last successful operation, owned by the session. */
TARJIM_API const char* tarjim_session_result(const tarjim_session* session);

TARJIM_API void tarjim_free(void* p);

/* ---- operations ---------------------------------------------------------
 * Corpus files are JSONL unless the path ends in ".tsv".
 */

/* Cleans a corpus; writes accepted pairs to `out_path` and the filter report
 * JSON to `report_path` (may be NULL). */
TARJIM_API tarjim_status tarjim_filter(tarjim_session* session, const char* in_path, const char* out_path,
                                       const char* report_path);

/* Token-count statistics of a corpus as JSON at `out_path`. */
TARJIM_API tarjim_status tarjim_manifest(tarjim_session* session, const char* in_path, const char* out_path);

/* Packed pre-training sequences / fine-tuning samples as JSONL. */
TARJIM_API tarjim_status tarjim_compose_pretrain(tarjim_session* session, const char* in_path, const char* out_path);
TARJIM_API tarjim_status tarjim_compose_finetune(tarjim_session* session, const char* in_path, const char* out_path);

/* Line-aligned hypothesis/reference text files. `src_path` is needed only
 * when a COMET endpoint is configured; may be NULL otherwise. */
TARJIM_API tarjim_status tarjim_score_files(tarjim_session* session, const char* hyp_path, const char* ref_path,
                                            const char* src_path, const char* out_json_path);

/* Translates every benchmark pair with every profile, caching records. */
TARJIM_API tarjim_status tarjim_bench_run(tarjim_session* session, const char* benchmark_path,
                                          const char* profiles_path, const char* cache_dir);

/* Writes report.md, report.csv and report.json into `out_dir`. */
TARJIM_API tarjim_status tarjim_bench_report(tarjim_session* session, const char* cache_dir,
                                             const char* benchmark_path, const char* out_dir);

TARJIM_API tarjim_status tarjim_validate(tarjim_session* session, const char* benchmark_path,
                                         const char* report_path);

/* One JSONL line per hit. */
TARJIM_API tarjim_status tarjim_contamination(tarjim_session* session, const char* benchmark_path,
                                              const char* corpus_path, const char* out_path);

/* ---- in-memory metrics ----------------------------------------------- */

typedef struct tarjim_metric_options {
  int bleu_max_order;  /* 1..8 */
  int bleu_smoothing;  /* 0 none, 1 exp */
  int chrf_char_order;
  int chrf_word_order;
  double chrf_beta;
  int lowercase;
} tarjim_metric_options;

#define TARJIM_MAX_BLEU_ORDER 8

typedef struct tarjim_bleu_result {
  double score;
  double brevity_penalty;
  double precisions[TARJIM_MAX_BLEU_ORDER]; /* in [0, 1]; first max_order used */
  unsigned long long hyp_len;
  unsigned long long ref_len;
} tarjim_bleu_result;

typedef struct tarjim_chrf_result {
  double score;
  double avg_precision;
  double avg_recall;
} tarjim_chrf_result;

TARJIM_API void tarjim_metric_options_default(tarjim_metric_options* options);

/* `options` may be NULL for defaults. */
TARJIM_API tarjim_status tarjim_corpus_bleu(const char* const* hyps, const char* const* refs, size_t count,
                                            const tarjim_metric_options* options, tarjim_bleu_result* out);
TARJIM_API tarjim_status tarjim_corpus_chrf_pp(const char* const* hyps, const char* const* refs, size_t count,
                                               const tarjim_metric_options* options, tarjim_chrf_result* out);

#ifdef __cplusplus
}
#endif

#endif /* TARJIM_TARJIM_H */
