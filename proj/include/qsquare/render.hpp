#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsquare/color.hpp"
#include "qsquare/grammar.hpp"
#include "qsquare/logic.hpp"

namespace qsquare {

enum class Backend { SvgTiles, SvgSchema, Ansi, Html, LogicProgram, Events };

const char* to_string(Backend backend) noexcept;
std::optional<Backend> parse_backend(std::string_view name);

namespace colors {
inline constexpr Rgb kGreen{0x00, 0x80, 0x00};
inline constexpr Rgb kBlue{0x00, 0x00, 0xFF};
inline constexpr Rgb kRed{0xFF, 0x00, 0x00};
inline constexpr Rgb kOrange{0xFF, 0xA5, 0x00};
inline constexpr Rgb kViolet{0x8F, 0x00, 0xFF};
inline constexpr Rgb kBlack{0x00, 0x00, 0x00};
inline constexpr Rgb kGray{0xBF, 0xBF, 0xBF};
}  // namespace colors

/// Up to five states: green, blue, red, orange, violet. Beyond five: hues
/// i*360/N at full saturation and value.
Palette default_palette(std::size_t state_count);

/// Concrete realization of a derivation.
struct RenderSpec {
  Palette palette;
  Rgb separator_color = colors::kBlack;
  Rgb false_cell_color = colors::kGray;  // schema only
  int cell_size = 32;
  int cell_gap = 2;
  Backend backend = Backend::SvgTiles;
  bool use_color = true;  // ansi only; false drops escape sequences

  /// Default palette for `state_count` states with `overrides` applied.
  static RenderSpec with_defaults(std::size_t state_count, const Palette& overrides = {});
};

/// One row of squares per derivation row. Throws MissingPaletteEntry.
std::string render_tiles(const Derivation& derivation, const RenderSpec& spec);

/// Atom-by-state incidence grid with row and column labels.
std::string render_schema(const PartitionLogic& logic, const StateSet& states, const RenderSpec& spec);

/// ANSI 24-bit block glyphs or an HTML fragment, per spec.backend.
std::string render_text(const Derivation& derivation, const RenderSpec& spec);

/// Prolog DCG source: structural rules, then repertoire rules binding each
/// state terminal to its color, then layout rules for br and n.
std::string emit_logic_program(const Grammar& grammar, const RenderSpec& spec);

/// Structural rules (`head --> a,b,c.`) recovered from emitted source.
/// Bracketed repertoire/layout rules and clauses are skipped.
std::vector<Production> parse_logic_program_structure(std::string_view source);

struct Event {
  std::size_t row;
  std::size_t position;
  std::string symbol;
  SymbolKind kind;

  bool operator==(const Event&) const = default;
};

using EventStream = std::vector<Event>;

EventStream emit_events(const Derivation& derivation);
/// {"row":0,"pos":0,"symbol":"s1","kind":"state"} per line.
std::string events_to_jsonl(const EventStream& events);

}  // namespace qsquare
