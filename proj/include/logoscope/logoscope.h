/* SPDX-License-Identifier: Apache-2.0 */
/* Copyright 2026 The Logoscope Authors */

#ifndef LOGOSCOPE_LOGOSCOPE_H
#define LOGOSCOPE_LOGOSCOPE_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(LOGOSCOPE_BUILDING_LIBRARY)
#define LGS_API __attribute__((visibility("default")))
#else
#define LGS_API
#endif

/* Status codes. Every function returning lgs_status leaves a message and a
 * stable error kind for the calling thread on failure (lgs_last_error,
 * lgs_last_error_kind). */
typedef enum lgs_status {
  LGS_OK = 0,
  LGS_INVALID_ARGUMENT = 1,
  LGS_NOT_FOUND = 2,
  LGS_IO = 3,
  LGS_PARSE = 4,
  LGS_CONFLICT = 5,
  LGS_INVARIANT = 6,
  LGS_STATE = 7,
  LGS_ADAPTER = 8,
  LGS_NUMERIC = 9,
  LGS_INTERNAL = 10
} lgs_status;

/* A data directory: corpus batches, candidates, models, knowledge base. */
typedef struct lgs_workspace lgs_workspace;

LGS_API const char* lgs_version(void);
LGS_API const char* lgs_last_error(void);
LGS_API const char* lgs_last_error_kind(void);

/* Strings returned through char** out parameters are JSON documents owned by
 * the caller and released with lgs_string_free. */
LGS_API void lgs_string_free(char* s);

/* Creates the directory layout and default configuration. */
LGS_API lgs_status lgs_init(const char* data_dir, char** out_json);

LGS_API lgs_status lgs_workspace_open(const char* data_dir, lgs_workspace** out);
LGS_API void lgs_workspace_close(lgs_workspace* ws);

/* Dates are YYYY-MM-DD. Optional arguments may be NULL. */
LGS_API lgs_status lgs_fetch(lgs_workspace* ws, const char* date, const char* feeds_path, char** out_json);
LGS_API lgs_status lgs_detect(lgs_workspace* ws, const char* date, char** out_json);
LGS_API lgs_status lgs_train(lgs_workspace* ws, const char* history_dir, const char* mask, const char* model_out,
                             char** out_json);
LGS_API lgs_status lgs_eval(lgs_workspace* ws, int folds, const char* history_dir, const char* mask,
                            char** out_json);
LGS_API lgs_status lgs_rank(lgs_workspace* ws, const char* date, const char* model_path, char** out_json);
LGS_API lgs_status lgs_export_candidates(lgs_workspace* ws, const char* date, char** out_json);
LGS_API lgs_status lgs_import_decisions(lgs_workspace* ws, const char* csv_path, const char* decision_date,
                                        const char* annotator, char** out_json);
LGS_API lgs_status lgs_monitor(lgs_workspace* ws, const char* date, char** out_json);
LGS_API lgs_status lgs_run_daily(lgs_workspace* ws, const char* date, char** out_json);

/* options_json may set k, alpha, beta, iterations and seed. */
LGS_API lgs_status lgs_topics_train(lgs_workspace* ws, const char* corpus_dir, const char* options_json,
                                    char** out_json);
/* topic < 0 lists every topic. */
LGS_API lgs_status lgs_topics_show(lgs_workspace* ws, int topic, int n, char** out_json);
LGS_API lgs_status lgs_topics_infer(lgs_workspace* ws, const char* text, char** out_json);
LGS_API lgs_status lgs_themes_match(lgs_workspace* ws, const char* article_id, char** out_json);
LGS_API lgs_status lgs_kb_export(lgs_workspace* ws, const char* out_path, char** out_json);

/* Filtered query; filter_json fields: q, pos, proc, journal, theme, from, to,
 * quoted, page, page_size. */
LGS_API lgs_status lgs_query(lgs_workspace* ws, const char* filter_json, char** out_json);
/* dimension: pos, process, position, journal, theme, theme_by_month. */
LGS_API lgs_status lgs_stats(lgs_workspace* ws, const char* dimension, char** out_json);

/* Runs one HTTP API request in process. query is an url-encoded query string
 * without '?'. The HTTP status is written to *http_status. */
LGS_API lgs_status lgs_api_request(lgs_workspace* ws, const char* method, const char* path, const char* query,
                                   const char* body, int* http_status, char** out_json);

/* Serves the HTTP API until the process is interrupted. */
LGS_API lgs_status lgs_serve(lgs_workspace* ws, const char* host, int port, const char* static_dir);

#ifdef __cplusplus
}
#endif

#endif /* LOGOSCOPE_LOGOSCOPE_H */
