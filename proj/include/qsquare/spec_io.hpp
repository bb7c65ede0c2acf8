#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qsquare/color.hpp"
#include "qsquare/logic.hpp"

namespace qsquare {

/// Hypergraph input: atoms and contexts listed directly.
struct HypergraphSpec {
  PartitionLogic logic;
  std::optional<std::vector<Valuation>> pinned_states;
  Palette palette;
};

using ParsedSpec = std::variant<HypergraphSpec, BaseSetSpec>;

/// Parses a logic spec file (JSON). The presence of "atoms" or "base_set"
/// selects the mode; both or neither is an error. Errors carry a location:
/// either line/column for malformed JSON or a JSON pointer for schema errors.
ParsedSpec parse_logic_spec(std::string_view text);

/// A logic ready for analysis: the state set is the pinned list, the
/// point-induced list, or the full enumeration, in that order of preference.
struct Model {
  PartitionLogic logic;
  StateSet states;
  Palette palette_overrides;
  /// Number of admissible states found by enumeration, for coverage notes.
  std::size_t admissible_count = 0;
};

Model resolve(const ParsedSpec& spec);
Model load_model(std::string_view text);
Model load_model_file(const std::filesystem::path& path);

/// Reads a whole file; throws Error(Io).
std::string read_text_file(const std::filesystem::path& path);

}  // namespace qsquare
