#ifndef QSQUARE_QSQUARE_H
#define QSQUARE_QSQUARE_H

/*
 * C interface to the qsquare library: load a partition-logic spec, analyze
 * its two-valued states, compile the row grammar, and render it.
 *
 * Every fallible call returns a qsq_status. On failure, qsq_last_error()
 * returns a message for the calling thread, valid until that thread's next
 * failing call. Strings returned through char** out-parameters are owned by
 * the caller and released with qsq_string_free().
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(QSQ_BUILDING)
#    define QSQ_API __declspec(dllexport)
#  else
#    define QSQ_API __declspec(dllimport)
#  endif
#else
#  define QSQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsq_status {
  QSQ_OK = 0,
  QSQ_ERR_PARSE = 1,
  QSQ_ERR_VALIDATION = 2,
  QSQ_ERR_NOT_SEPARATING = 3,
  QSQ_ERR_EMPTY_STATE_SET = 4,
  QSQ_ERR_NOT_A_PARTITION = 5,
  QSQ_ERR_CYCLIC_GRAMMAR = 6,
  QSQ_ERR_SYMBOL_CLASH = 7,
  QSQ_ERR_MISSING_PALETTE_ENTRY = 8,
  QSQ_ERR_THETA_OUT_OF_RANGE = 9,
  QSQ_ERR_MISSING_VECTOR = 10,
  QSQ_ERR_IO = 11,
  QSQ_ERR_INVALID_ARGUMENT = 12,
  QSQ_ERR_INTERNAL = 13
} qsq_status;

typedef enum qsq_backend {
  QSQ_BACKEND_SVG_TILES = 0,
  QSQ_BACKEND_SVG_SCHEMA = 1,
  QSQ_BACKEND_ANSI = 2,
  QSQ_BACKEND_HTML = 3,
  QSQ_BACKEND_LOGIC_PROGRAM = 4,
  QSQ_BACKEND_EVENTS = 5
} qsq_backend;

typedef enum qsq_grammar_format {
  QSQ_GRAMMAR_TEXT = 0,
  QSQ_GRAMMAR_JSON = 1
} qsq_grammar_format;

/* A loaded logic together with its state set and spec-file palette. */
typedef struct qsq_model qsq_model;
/* Palette, geometry, and color switch for rendering. */
typedef struct qsq_render_options qsq_render_options;

QSQ_API const char* qsq_version(void);
QSQ_API const char* qsq_status_name(qsq_status status);
QSQ_API const char* qsq_last_error(void);
QSQ_API void qsq_string_free(char* str);

/* Backend names: "svg-tiles", "svg-schema", "ansi", "html", "logic-program", "events". */
QSQ_API qsq_status qsq_backend_from_name(const char* name, qsq_backend* out);

QSQ_API qsq_status qsq_model_load_file(const char* path, qsq_model** out);
QSQ_API qsq_status qsq_model_load_string(const char* json_text, qsq_model** out);
QSQ_API void qsq_model_free(qsq_model* model);

QSQ_API size_t qsq_model_atom_count(const qsq_model* model);
QSQ_API size_t qsq_model_state_count(const qsq_model* model);
/* NULL when out of range. Valid for the lifetime of the model. */
QSQ_API const char* qsq_model_atom_name(const qsq_model* model, size_t atom);
/* 0 or 1; -1 when either index is out of range. */
QSQ_API int qsq_model_value(const qsq_model* model, size_t state, size_t atom);

QSQ_API qsq_status qsq_states_table(const qsq_model* model, char** out);
QSQ_API qsq_status qsq_grammar_export(const qsq_model* model, qsq_grammar_format format, char** out);

/* Defaults for the model's state count with the spec-file palette applied. */
QSQ_API qsq_status qsq_render_options_create(const qsq_model* model, qsq_render_options** out);
QSQ_API void qsq_render_options_free(qsq_render_options* options);
QSQ_API qsq_status qsq_render_options_set_color(qsq_render_options* options, const char* label, const char* hex);
QSQ_API qsq_status qsq_render_options_set_separator_color(qsq_render_options* options, const char* hex);
QSQ_API qsq_status qsq_render_options_set_false_color(qsq_render_options* options, const char* hex);
QSQ_API qsq_status qsq_render_options_set_cell_size(qsq_render_options* options, int pixels);
QSQ_API qsq_status qsq_render_options_set_cell_gap(qsq_render_options* options, int pixels);
QSQ_API qsq_status qsq_render_options_set_use_color(qsq_render_options* options, int enabled);

/* options may be NULL for defaults. */
QSQ_API qsq_status qsq_render(const qsq_model* model, const qsq_render_options* options, qsq_backend backend,
                              char** out);

/* Verifies the three-dimensional V-logic realization at angle theta.
 * tolerance <= 0 selects the default (1e-9). */
QSQ_API qsq_status qsq_verify_theta(const qsq_model* model, double theta, double tolerance, char** report,
                                    int* passed);
/* Verifies vectors read from a JSON vector file. tolerance <= 0 keeps the
 * file's tolerance (or the default). */
QSQ_API qsq_status qsq_verify_vectors_file(const qsq_model* model, const char* path, double tolerance,
                                           char** report, int* passed);

/* Full analysis. *passed is 0 when any step fails. */
QSQ_API qsq_status qsq_check(const qsq_model* model, char** report, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* QSQUARE_QSQUARE_H */
