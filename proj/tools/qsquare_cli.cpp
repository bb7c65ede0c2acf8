// qsquare: partition logic -> generative grammar -> rendered artifacts.
//
// Exit status: 0 success, 1 validation failure, 2 I/O, parse, or usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsquare/qsquare.h"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kInputFailure = 2;

struct ModelDeleter {
  void operator()(qsq_model* m) const { qsq_model_free(m); }
};
struct OptionsDeleter {
  void operator()(qsq_render_options* o) const { qsq_render_options_free(o); }
};
struct StringDeleter {
  void operator()(char* s) const { qsq_string_free(s); }
};
using ModelPtr = std::unique_ptr<qsq_model, ModelDeleter>;
using OptionsPtr = std::unique_ptr<qsq_render_options, OptionsDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

int exit_code_for(qsq_status status) {
  switch (status) {
    case QSQ_OK: return kOk;
    case QSQ_ERR_PARSE:
    case QSQ_ERR_IO:
    case QSQ_ERR_INVALID_ARGUMENT: return kInputFailure;
    default: return kValidationFailure;
  }
}

int report_failure(qsq_status status) {
  std::cerr << "qsquare: " << qsq_status_name(status) << ": " << qsq_last_error() << '\n';
  return exit_code_for(status);
}

struct RenderFlags {
  std::vector<std::string> palette;  // label=#RRGGBB
  std::optional<std::string> separator_color;
  std::optional<std::string> false_color;
  std::optional<int> cell_size;
  std::optional<int> cell_gap;
};

void add_render_flags(CLI::App* cmd, RenderFlags& flags) {
  cmd->add_option("--palette", flags.palette, "Override a state color, e.g. s1=#00FF00 (repeatable)")
      ->delimiter(',');
  cmd->add_option("--separator-color", flags.separator_color, "Separator color (#RRGGBB)");
  cmd->add_option("--false-color", flags.false_color, "Color of 0 cells in the schema (#RRGGBB)");
  cmd->add_option("--cell-size", flags.cell_size, "Cell edge in pixels")->check(CLI::PositiveNumber);
  cmd->add_option("--cell-gap", flags.cell_gap, "Gap between cells in pixels")->check(CLI::NonNegativeNumber);
}

int apply(const RenderFlags& flags, qsq_render_options* options) {
  auto ok = [](qsq_status st) { return st == QSQ_OK ? kOk : report_failure(st); };
  for (const auto& entry : flags.palette) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      std::cerr << "qsquare: --palette expects LABEL=#RRGGBB, got '" << entry << "'\n";
      return kInputFailure;
    }
    const std::string label = entry.substr(0, eq);
    const std::string hex = entry.substr(eq + 1);
    if (int rc = ok(qsq_render_options_set_color(options, label.c_str(), hex.c_str())); rc != kOk) return rc;
  }
  if (flags.separator_color) {
    if (int rc = ok(qsq_render_options_set_separator_color(options, flags.separator_color->c_str())); rc != kOk) return rc;
  }
  if (flags.false_color) {
    if (int rc = ok(qsq_render_options_set_false_color(options, flags.false_color->c_str())); rc != kOk) return rc;
  }
  if (flags.cell_size) {
    if (int rc = ok(qsq_render_options_set_cell_size(options, *flags.cell_size)); rc != kOk) return rc;
  }
  if (flags.cell_gap) {
    if (int rc = ok(qsq_render_options_set_cell_gap(options, *flags.cell_gap)); rc != kOk) return rc;
  }
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color && *no_color) return ok(qsq_render_options_set_use_color(options, 0));
  return kOk;
}

int emit(const char* text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return std::cout ? kOk : kInputFailure;
  }
  std::ofstream out(output_path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "qsquare: cannot write '" << output_path << "'\n";
    return kInputFailure;
  }
  return kOk;
}

int load(const std::string& path, ModelPtr& model) {
  qsq_model* raw = nullptr;
  if (auto st = qsq_model_load_file(path.c_str(), &raw); st != QSQ_OK) return report_failure(st);
  model.reset(raw);
  return kOk;
}

int render(const std::string& spec_path, qsq_backend backend, const RenderFlags& flags,
           const std::string& output_path) {
  if ((backend == QSQ_BACKEND_SVG_TILES || backend == QSQ_BACKEND_SVG_SCHEMA) && output_path.empty()) {
    std::cerr << "qsquare: SVG output requires -o FILE\n";
    return kInputFailure;
  }
  ModelPtr model;
  if (int rc = load(spec_path, model); rc != kOk) return rc;

  qsq_render_options* raw = nullptr;
  if (auto st = qsq_render_options_create(model.get(), &raw); st != QSQ_OK) return report_failure(st);
  OptionsPtr options(raw);
  if (int rc = apply(flags, options.get()); rc != kOk) return rc;

  char* text = nullptr;
  if (auto st = qsq_render(model.get(), options.get(), backend, &text); st != QSQ_OK) return report_failure(st);
  return emit(OwnedString(text).get(), output_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile partition logics into generative grammars and render them."};
  app.require_subcommand(1);
  app.set_version_flag("--version", qsq_version());

  std::string spec_path;
  std::string output_path;
  std::string format;
  RenderFlags flags;
  std::string vectors_path;
  std::optional<double> theta;
  double tolerance = 0.0;

  auto* states_cmd = app.add_subcommand("states", "Print the two-valued state table");
  states_cmd->add_option("spec", spec_path, "Logic spec file")->required();

  auto* grammar_cmd = app.add_subcommand("grammar", "Print the compiled production rules");
  grammar_cmd->add_option("spec", spec_path, "Logic spec file")->required();
  grammar_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* render_cmd = app.add_subcommand("render", "Render the grammar derivation");
  render_cmd->add_option("spec", spec_path, "Logic spec file")->required();
  render_cmd->add_option("--format", format, "Output backend")
      ->required()
      ->check(CLI::IsMember({"svg-tiles", "ansi", "html", "logic-program", "events"}));
  render_cmd->add_option("-o,--output", output_path, "Output file (required for SVG)");
  add_render_flags(render_cmd, flags);

  auto* schema_cmd = app.add_subcommand("schema", "Render the atom/state incidence grid as SVG");
  schema_cmd->add_option("spec", spec_path, "Logic spec file")->required();
  schema_cmd->add_option("-o,--output", output_path, "Output SVG file");
  add_render_flags(schema_cmd, flags);

  auto* verify_cmd = app.add_subcommand("verify-orthorep", "Verify a faithful orthogonal representation");
  verify_cmd->add_option("spec", spec_path, "Logic spec file")->required();
  auto* vectors_opt = verify_cmd->add_option("--vectors", vectors_path, "Vector file (JSON)");
  auto* theta_opt = verify_cmd->add_option("--theta", theta, "Angle for the built-in V-logic vectors");
  vectors_opt->excludes(theta_opt);
  verify_cmd->add_option("--tol", tolerance, "Numerical tolerance")->check(CLI::PositiveNumber);

  auto* check_cmd = app.add_subcommand("check", "Run every analysis; nonzero exit on failure");
  check_cmd->add_option("spec", spec_path, "Logic spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputFailure;
  }

  if (states_cmd->parsed() || grammar_cmd->parsed()) {
    ModelPtr model;
    if (int rc = load(spec_path, model); rc != kOk) return rc;
    char* text = nullptr;
    const qsq_status st = states_cmd->parsed()
                              ? qsq_states_table(model.get(), &text)
                              : qsq_grammar_export(model.get(), format == "json" ? QSQ_GRAMMAR_JSON : QSQ_GRAMMAR_TEXT,
                                                   &text);
    if (st != QSQ_OK) return report_failure(st);
    return emit(OwnedString(text).get(), "");
  }

  if (render_cmd->parsed()) {
    qsq_backend backend;
    if (auto st = qsq_backend_from_name(format.c_str(), &backend); st != QSQ_OK) return report_failure(st);
    return render(spec_path, backend, flags, output_path);
  }

  if (schema_cmd->parsed()) return render(spec_path, QSQ_BACKEND_SVG_SCHEMA, flags, output_path);

  if (verify_cmd->parsed()) {
    if (vectors_path.empty() && !theta) {
      std::cerr << "qsquare: verify-orthorep needs --vectors FILE or --theta REAL\n";
      return kInputFailure;
    }
    ModelPtr model;
    if (int rc = load(spec_path, model); rc != kOk) return rc;
    char* text = nullptr;
    int passed = 0;
    const qsq_status st = theta ? qsq_verify_theta(model.get(), *theta, tolerance, &text, &passed)
                                : qsq_verify_vectors_file(model.get(), vectors_path.c_str(), tolerance, &text, &passed);
    if (st != QSQ_OK) return report_failure(st);
    OwnedString report(text);
    std::cout << report.get();
    return passed ? kOk : kValidationFailure;
  }

  // check
  ModelPtr model;
  if (int rc = load(spec_path, model); rc != kOk) return rc;
  char* text = nullptr;
  int passed = 0;
  if (auto st = qsq_check(model.get(), &text, &passed); st != QSQ_OK) return report_failure(st);
  OwnedString report(text);
  std::cout << report.get();
  if (!passed) {
    std::cerr << "qsquare: check failed for " << spec_path << '\n';
    return kValidationFailure;
  }
  return kOk;
}
