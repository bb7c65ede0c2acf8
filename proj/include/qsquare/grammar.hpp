#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsquare/logic.hpp"

namespace qsquare {

enum class SymbolKind { Nonterminal, StateTerminal, Separator, Linebreak };

const char* to_string(SymbolKind kind) noexcept;

inline constexpr std::string_view kSeparatorName = "br";
inline constexpr std::string_view kLinebreakName = "n";

struct Symbol {
  SymbolKind kind;
  std::string name;

  static Symbol nonterminal(std::string name) { return {SymbolKind::Nonterminal, std::move(name)}; }
  static Symbol state(std::string label) { return {SymbolKind::StateTerminal, std::move(label)}; }
  static Symbol separator() { return {SymbolKind::Separator, std::string(kSeparatorName)}; }
  static Symbol linebreak() { return {SymbolKind::Linebreak, std::string(kLinebreakName)}; }

  bool operator==(const Symbol&) const = default;
};

struct Production {
  std::string head;
  std::vector<Symbol> body;

  bool operator==(const Production&) const = default;
};

/// Non-recursive generative grammar with layout symbols {br, n}.
///
/// Construction checks that each nonterminal has exactly one production, the
/// start symbol has one, and every body symbol is declared (nonterminals by
/// their production, state terminals in `terminals`). Acyclicity is checked
/// when deriving.
class Grammar {
 public:
  Grammar(std::string start, std::vector<std::string> terminals,
          std::vector<Production> productions, std::string rendering_map_id = "default");

  const std::string& start() const noexcept { return start_; }
  const std::vector<std::string>& terminals() const noexcept { return terminals_; }
  const std::vector<Production>& productions() const noexcept { return productions_; }
  const std::string& rendering_map_id() const noexcept { return rendering_map_id_; }
  std::vector<std::string> nonterminals() const;

  const Production* find(std::string_view head) const;

 private:
  std::string start_;
  std::vector<std::string> terminals_;
  std::vector<Production> productions_;
  std::string rendering_map_id_;
};

/// Fully expanded token stream. Rows are the runs of tokens between
/// linebreaks; a trailing linebreak does not open an empty row.
struct Derivation {
  std::vector<Symbol> tokens;
  std::vector<std::size_t> row_boundaries;  // token index of every linebreak
  std::vector<std::string> row_atoms;       // one per row

  std::size_t row_count() const noexcept { return row_atoms.size(); }
  /// Tokens of each row, linebreak excluded.
  std::vector<std::span<const Symbol>> rows() const;
};

/// Start rule `name -> x1 ... xm`; row rule `xj -> T(xj) br F(xj) n`.
/// Throws EmptyStateSet, NotSeparating, or SymbolClash.
Grammar compile_grammar(const PartitionLogic& logic, const StateSet& states);

/// Leftmost expansion of the start symbol. Throws CyclicGrammar.
Derivation derive(const Grammar& grammar);

struct IncidenceViolation {
  std::size_t row;
  std::string atom;
  std::string state;
  std::string problem;
};

struct IncidenceReport {
  std::vector<IncidenceViolation> violations;

  bool holds() const noexcept { return violations.empty(); }
  std::size_t violating_rows() const;
};

/// Checks that in each row, s_i sits left of br exactly when state i values
/// the row's atom 1.
IncidenceReport check_incidence(const Derivation& derivation, const PartitionLogic& logic,
                                const StateSet& states);

/// "a --> s1,s2,br,s3,s4,s5,n." one line per production.
std::string format_productions(const Grammar& grammar);
/// {"head": ["body", ...], ...} in production order.
std::string grammar_to_json(const Grammar& grammar);

}  // namespace qsquare
