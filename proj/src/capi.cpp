#include "qsquare/qsquare.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "qsquare/analysis.hpp"
#include "qsquare/error.hpp"
#include "qsquare/grammar.hpp"
#include "qsquare/orthorep.hpp"
#include "qsquare/render.hpp"
#include "qsquare/spec_io.hpp"

struct qsq_model {
  qsquare::Model model;
};

struct qsq_render_options {
  qsquare::RenderSpec spec;
};

namespace {

thread_local std::string last_error;

qsq_status status_of(qsquare::ErrorCode code) {
  using qsquare::ErrorCode;
  switch (code) {
    case ErrorCode::Parse: return QSQ_ERR_PARSE;
    case ErrorCode::Validation: return QSQ_ERR_VALIDATION;
    case ErrorCode::NotSeparating: return QSQ_ERR_NOT_SEPARATING;
    case ErrorCode::EmptyStateSet: return QSQ_ERR_EMPTY_STATE_SET;
    case ErrorCode::NotAPartition: return QSQ_ERR_NOT_A_PARTITION;
    case ErrorCode::CyclicGrammar: return QSQ_ERR_CYCLIC_GRAMMAR;
    case ErrorCode::SymbolClash: return QSQ_ERR_SYMBOL_CLASH;
    case ErrorCode::MissingPaletteEntry: return QSQ_ERR_MISSING_PALETTE_ENTRY;
    case ErrorCode::ThetaOutOfRange: return QSQ_ERR_THETA_OUT_OF_RANGE;
    case ErrorCode::MissingVector: return QSQ_ERR_MISSING_VECTOR;
    case ErrorCode::Io: return QSQ_ERR_IO;
  }
  return QSQ_ERR_INTERNAL;
}

qsq_status fail(qsq_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename Fn>
qsq_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const qsquare::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QSQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QSQ_ERR_INTERNAL, e.what());
  }
}

qsq_status give(const std::string& text, char** out) {
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buf) return fail(QSQ_ERR_INTERNAL, "out of memory");
  std::memcpy(buf, text.data(), text.size() + 1);
  *out = buf;
  return QSQ_OK;
}

qsq_status set_color(qsquare::Rgb& target, const char* hex) {
  if (!hex) return fail(QSQ_ERR_INVALID_ARGUMENT, "null color");
  auto color = qsquare::Rgb::parse(hex);
  if (!color) return fail(QSQ_ERR_INVALID_ARGUMENT, std::string("invalid color '") + hex + "', expected #RRGGBB");
  target = *color;
  return QSQ_OK;
}

#define QSQ_REQUIRE(cond, what) \
  if (!(cond)) return fail(QSQ_ERR_INVALID_ARGUMENT, what)

qsq_status verify(const qsq_model* model, const qsquare::VectorRealization& real, char** report, int* passed) {
  const auto result = qsquare::verify_faithful(model->model.logic, real);
  *passed = result.passed() ? 1 : 0;
  return give(qsquare::format_report(result), report);
}

}  // namespace

extern "C" {

const char* qsq_version(void) { return "1.0.0"; }

const char* qsq_status_name(qsq_status status) {
  switch (status) {
    case QSQ_OK: return "ok";
    case QSQ_ERR_PARSE: return "parse error";
    case QSQ_ERR_VALIDATION: return "validation error";
    case QSQ_ERR_NOT_SEPARATING: return "not separating";
    case QSQ_ERR_EMPTY_STATE_SET: return "empty state set";
    case QSQ_ERR_NOT_A_PARTITION: return "not a partition";
    case QSQ_ERR_CYCLIC_GRAMMAR: return "cyclic grammar";
    case QSQ_ERR_SYMBOL_CLASH: return "symbol clash";
    case QSQ_ERR_MISSING_PALETTE_ENTRY: return "missing palette entry";
    case QSQ_ERR_THETA_OUT_OF_RANGE: return "theta out of range";
    case QSQ_ERR_MISSING_VECTOR: return "missing vector";
    case QSQ_ERR_IO: return "i/o error";
    case QSQ_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QSQ_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qsq_last_error(void) { return last_error.c_str(); }

void qsq_string_free(char* str) { std::free(str); }

qsq_status qsq_backend_from_name(const char* name, qsq_backend* out) {
  QSQ_REQUIRE(name && out, "null argument");
  auto backend = qsquare::parse_backend(name);
  if (!backend) return fail(QSQ_ERR_INVALID_ARGUMENT, std::string("unknown backend '") + name + "'");
  *out = static_cast<qsq_backend>(*backend);
  return QSQ_OK;
}

qsq_status qsq_model_load_file(const char* path, qsq_model** out) {
  QSQ_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new qsq_model{qsquare::load_model_file(path)};
    return QSQ_OK;
  });
}

qsq_status qsq_model_load_string(const char* json_text, qsq_model** out) {
  QSQ_REQUIRE(json_text && out, "null argument");
  return guarded([&] {
    *out = new qsq_model{qsquare::load_model(json_text)};
    return QSQ_OK;
  });
}

void qsq_model_free(qsq_model* model) { delete model; }

size_t qsq_model_atom_count(const qsq_model* model) { return model ? model->model.logic.atom_count() : 0; }

size_t qsq_model_state_count(const qsq_model* model) { return model ? model->model.states.size() : 0; }

const char* qsq_model_atom_name(const qsq_model* model, size_t atom) {
  if (!model || atom >= model->model.logic.atom_count()) return nullptr;
  return model->model.logic.atoms()[atom].c_str();
}

int qsq_model_value(const qsq_model* model, size_t state, size_t atom) {
  if (!model || state >= model->model.states.size() || atom >= model->model.logic.atom_count()) return -1;
  return model->model.states[state].values[atom];
}

qsq_status qsq_states_table(const qsq_model* model, char** out) {
  QSQ_REQUIRE(model && out, "null argument");
  return guarded([&] { return give(qsquare::format_state_table(model->model.logic, model->model.states), out); });
}

qsq_status qsq_grammar_export(const qsq_model* model, qsq_grammar_format format, char** out) {
  QSQ_REQUIRE(model && out, "null argument");
  QSQ_REQUIRE(format == QSQ_GRAMMAR_TEXT || format == QSQ_GRAMMAR_JSON, "unknown grammar format");
  return guarded([&] {
    const auto grammar = qsquare::compile_grammar(model->model.logic, model->model.states);
    return give(format == QSQ_GRAMMAR_JSON ? qsquare::grammar_to_json(grammar) : qsquare::format_productions(grammar),
                out);
  });
}

qsq_status qsq_render_options_create(const qsq_model* model, qsq_render_options** out) {
  QSQ_REQUIRE(model && out, "null argument");
  return guarded([&] {
    *out = new qsq_render_options{
        qsquare::RenderSpec::with_defaults(model->model.states.size(), model->model.palette_overrides)};
    return QSQ_OK;
  });
}

void qsq_render_options_free(qsq_render_options* options) { delete options; }

qsq_status qsq_render_options_set_color(qsq_render_options* options, const char* label, const char* hex) {
  QSQ_REQUIRE(options && label, "null argument");
  return guarded([&] { return set_color(options->spec.palette[label], hex); });
}

qsq_status qsq_render_options_set_separator_color(qsq_render_options* options, const char* hex) {
  QSQ_REQUIRE(options, "null argument");
  return set_color(options->spec.separator_color, hex);
}

qsq_status qsq_render_options_set_false_color(qsq_render_options* options, const char* hex) {
  QSQ_REQUIRE(options, "null argument");
  return set_color(options->spec.false_cell_color, hex);
}

qsq_status qsq_render_options_set_cell_size(qsq_render_options* options, int pixels) {
  QSQ_REQUIRE(options, "null argument");
  QSQ_REQUIRE(pixels > 0, "cell size must be positive");
  options->spec.cell_size = pixels;
  return QSQ_OK;
}

qsq_status qsq_render_options_set_cell_gap(qsq_render_options* options, int pixels) {
  QSQ_REQUIRE(options, "null argument");
  QSQ_REQUIRE(pixels >= 0, "cell gap must be non-negative");
  options->spec.cell_gap = pixels;
  return QSQ_OK;
}

qsq_status qsq_render_options_set_use_color(qsq_render_options* options, int enabled) {
  QSQ_REQUIRE(options, "null argument");
  options->spec.use_color = enabled != 0;
  return QSQ_OK;
}

qsq_status qsq_render(const qsq_model* model, const qsq_render_options* options, qsq_backend backend, char** out) {
  QSQ_REQUIRE(model && out, "null argument");
  QSQ_REQUIRE(backend >= QSQ_BACKEND_SVG_TILES && backend <= QSQ_BACKEND_EVENTS, "unknown backend");
  return guarded([&] {
    const auto& m = model->model;
    qsquare::RenderSpec spec =
        options ? options->spec : qsquare::RenderSpec::with_defaults(m.states.size(), m.palette_overrides);
    spec.backend = static_cast<qsquare::Backend>(backend);
    if (spec.backend == qsquare::Backend::SvgSchema) return give(qsquare::render_schema(m.logic, m.states, spec), out);

    const auto grammar = qsquare::compile_grammar(m.logic, m.states);
    if (spec.backend == qsquare::Backend::LogicProgram) return give(qsquare::emit_logic_program(grammar, spec), out);
    const auto derivation = qsquare::derive(grammar);
    switch (spec.backend) {
      case qsquare::Backend::SvgTiles: return give(qsquare::render_tiles(derivation, spec), out);
      case qsquare::Backend::Events: return give(qsquare::events_to_jsonl(qsquare::emit_events(derivation)), out);
      default: return give(qsquare::render_text(derivation, spec), out);
    }
  });
}

qsq_status qsq_verify_theta(const qsq_model* model, double theta, double tolerance, char** report, int* passed) {
  QSQ_REQUIRE(model && report && passed, "null argument");
  return guarded([&] {
    auto real = qsquare::build_v_realization(theta);
    return verify(model, tolerance > 0 ? real.with_tolerance(tolerance) : real, report, passed);
  });
}

qsq_status qsq_verify_vectors_file(const qsq_model* model, const char* path, double tolerance, char** report,
                                   int* passed) {
  QSQ_REQUIRE(model && path && report && passed, "null argument");
  return guarded([&] {
    auto real = qsquare::parse_vector_file(qsquare::read_text_file(path));
    return verify(model, tolerance > 0 ? real.with_tolerance(tolerance) : real, report, passed);
  });
}

qsq_status qsq_check(const qsq_model* model, char** report, int* passed) {
  QSQ_REQUIRE(model && report && passed, "null argument");
  return guarded([&] {
    const auto result = qsquare::run_checks(model->model);
    *passed = result.passed() ? 1 : 0;
    return give(result.format(), report);
  });
}

}  // extern "C"
