#include "qsquare/grammar.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qsquare/error.hpp"

namespace qsquare {

const char* to_string(SymbolKind kind) noexcept {
  switch (kind) {
    case SymbolKind::Nonterminal: return "nonterminal";
    case SymbolKind::StateTerminal: return "state";
    case SymbolKind::Separator: return "separator";
    case SymbolKind::Linebreak: return "linebreak";
  }
  return "unknown";
}

Grammar::Grammar(std::string start, std::vector<std::string> terminals,
                 std::vector<Production> productions, std::string rendering_map_id)
    : start_(std::move(start)),
      terminals_(std::move(terminals)),
      productions_(std::move(productions)),
      rendering_map_id_(std::move(rendering_map_id)) {
  auto fail = [](const std::string& message) { throw Error(ErrorCode::Validation, "grammar: " + message); };

  std::set<std::string> terminal_set;
  for (const auto& t : terminals_) {
    if (t == kSeparatorName || t == kLinebreakName) fail("terminal '" + t + "' collides with a layout symbol");
    if (!terminal_set.insert(t).second) fail("terminal '" + t + "' declared twice");
  }

  std::set<std::string> heads;
  for (const auto& p : productions_) {
    if (p.head == kSeparatorName || p.head == kLinebreakName || terminal_set.count(p.head)) {
      fail("nonterminal '" + p.head + "' collides with a terminal or layout symbol");
    }
    if (!heads.insert(p.head).second) fail("nonterminal '" + p.head + "' has more than one production");
  }
  if (!heads.count(start_)) fail("start symbol '" + start_ + "' has no production");

  for (const auto& p : productions_) {
    for (const auto& s : p.body) {
      const bool declared = [&] {
        switch (s.kind) {
          case SymbolKind::Nonterminal: return heads.count(s.name) > 0;
          case SymbolKind::StateTerminal: return terminal_set.count(s.name) > 0;
          case SymbolKind::Separator: return s.name == kSeparatorName;
          case SymbolKind::Linebreak: return s.name == kLinebreakName;
        }
        return false;
      }();
      if (!declared) fail("rule '" + p.head + "' uses undeclared symbol '" + s.name + "'");
    }
  }
}

std::vector<std::string> Grammar::nonterminals() const {
  std::vector<std::string> out;
  for (const auto& p : productions_) out.push_back(p.head);
  return out;
}

const Production* Grammar::find(std::string_view head) const {
  auto it = std::find_if(productions_.begin(), productions_.end(),
                         [&](const Production& p) { return p.head == head; });
  return it == productions_.end() ? nullptr : &*it;
}

std::vector<std::span<const Symbol>> Derivation::rows() const {
  std::vector<std::span<const Symbol>> out;
  std::size_t begin = 0;
  for (std::size_t br : row_boundaries) {
    out.emplace_back(tokens.data() + begin, br - begin);
    begin = br + 1;
  }
  if (begin < tokens.size()) out.emplace_back(tokens.data() + begin, tokens.size() - begin);
  return out;
}

Grammar compile_grammar(const PartitionLogic& logic, const StateSet& states) {
  if (states.empty()) throw Error(ErrorCode::EmptyStateSet, "logic '" + logic.name() + "' has no two-valued states");
  const SeparationResult sep = is_separating(states, logic);
  if (!sep.separating) throw Error(ErrorCode::NotSeparating, "not separating: " + describe(*sep.witness, logic));

  const std::vector<std::string> labels = states.labels();
  std::set<std::string> reserved(labels.begin(), labels.end());
  reserved.emplace(kSeparatorName);
  reserved.emplace(kLinebreakName);
  for (const auto& atom : logic.atoms()) {
    if (reserved.count(atom)) {
      throw Error(ErrorCode::SymbolClash, "atom name '" + atom + "' collides with a state or layout symbol");
    }
  }
  if (reserved.count(logic.name()) || logic.find_atom(logic.name())) {
    throw Error(ErrorCode::SymbolClash, "start symbol '" + logic.name() + "' collides with another grammar symbol");
  }

  const SupportTable table = supports(logic, states);
  std::vector<Production> productions;
  productions.reserve(logic.atom_count() + 1);

  Production start{logic.name(), {}};
  for (const auto& atom : logic.atoms()) start.body.push_back(Symbol::nonterminal(atom));
  productions.push_back(std::move(start));

  for (AtomIndex x = 0; x < logic.atom_count(); ++x) {
    Production row{logic.atoms()[x], {}};
    for (StateIndex i : table[x].true_states) row.body.push_back(Symbol::state(labels[i]));
    row.body.push_back(Symbol::separator());
    for (StateIndex i : table[x].false_states) row.body.push_back(Symbol::state(labels[i]));
    row.body.push_back(Symbol::linebreak());
    productions.push_back(std::move(row));
  }
  return Grammar(logic.name(), labels, std::move(productions));
}

namespace {

void reject_cycles(const Grammar& grammar) {
  enum class Mark { Fresh, Open, Done };
  std::map<std::string, Mark> marks;
  // Iterative DFS so pathological inputs cannot exhaust the stack.
  struct Frame {
    const Production* rule;
    std::size_t next;
  };
  std::vector<Frame> stack;
  stack.push_back({grammar.find(grammar.start()), 0});
  marks[grammar.start()] = Mark::Open;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.rule->body.size()) {
      marks[top.rule->head] = Mark::Done;
      stack.pop_back();
      continue;
    }
    const Symbol& s = top.rule->body[top.next++];
    if (s.kind != SymbolKind::Nonterminal) continue;
    Mark& m = marks[s.name];
    if (m == Mark::Open) throw Error(ErrorCode::CyclicGrammar, "nonterminal '" + s.name + "' derives itself");
    if (m == Mark::Fresh) {
      m = Mark::Open;
      stack.push_back({grammar.find(s.name), 0});
    }
  }
}

}  // namespace

Derivation derive(const Grammar& grammar) {
  reject_cycles(grammar);

  // Each emitted token remembers the child of the start rule it came from.
  std::vector<Symbol> tokens;
  std::vector<std::string> origin;
  const Production* start = grammar.find(grammar.start());
  for (const Symbol& top : start->body) {
    const std::string& source = top.kind == SymbolKind::Nonterminal ? top.name : grammar.start();
    std::vector<const Symbol*> pending{&top};
    while (!pending.empty()) {
      const Symbol* s = pending.back();
      pending.pop_back();
      if (s->kind == SymbolKind::Nonterminal) {
        const auto& body = grammar.find(s->name)->body;
        for (auto it = body.rbegin(); it != body.rend(); ++it) pending.push_back(&*it);
      } else {
        tokens.push_back(*s);
        origin.push_back(source);
      }
    }
  }

  Derivation out;
  std::size_t row_begin = 0;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (tokens[k].kind != SymbolKind::Linebreak) continue;
    out.row_boundaries.push_back(k);
    out.row_atoms.push_back(origin[row_begin < k ? row_begin : k]);
    row_begin = k + 1;
  }
  if (row_begin < tokens.size()) out.row_atoms.push_back(origin[row_begin]);
  out.tokens = std::move(tokens);
  return out;
}

std::size_t IncidenceReport::violating_rows() const {
  std::set<std::size_t> rows;
  for (const auto& v : violations) rows.insert(v.row);
  return rows.size();
}

IncidenceReport check_incidence(const Derivation& derivation, const PartitionLogic& logic,
                                const StateSet& states) {
  IncidenceReport report;
  const auto rows = derivation.rows();
  if (rows.size() != logic.atom_count()) {
    report.violations.push_back({rows.size(), "", "",
                                 "derivation has " + std::to_string(rows.size()) + " rows, logic has " +
                                     std::to_string(logic.atom_count()) + " atoms"});
  }

  const std::vector<std::string> labels = states.labels();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string& atom = derivation.row_atoms.at(r);
    const auto x = logic.find_atom(atom);
    if (!x) {
      report.violations.push_back({r, atom, "", "row is not labeled by an atom"});
      continue;
    }
    const auto row = rows[r];
    const auto separators = std::count_if(row.begin(), row.end(),
                                          [](const Symbol& s) { return s.kind == SymbolKind::Separator; });
    if (separators != 1) {
      report.violations.push_back({r, atom, "", "row has " + std::to_string(separators) + " separators"});
      continue;
    }
    const auto br = std::find_if(row.begin(), row.end(),
                                 [](const Symbol& s) { return s.kind == SymbolKind::Separator; });

    for (const Symbol& s : row) {
      if (s.kind == SymbolKind::StateTerminal &&
          std::find(labels.begin(), labels.end(), s.name) == labels.end()) {
        report.violations.push_back({r, atom, s.name, "unknown state symbol"});
      }
    }
    for (StateIndex i = 0; i < states.size(); ++i) {
      auto matches = [&](const Symbol& s) { return s.kind == SymbolKind::StateTerminal && s.name == labels[i]; };
      const auto count = std::count_if(row.begin(), row.end(), matches);
      if (count != 1) {
        report.violations.push_back({r, atom, labels[i], "occurs " + std::to_string(count) + " times"});
        continue;
      }
      const bool left = std::find_if(row.begin(), br, matches) != br;
      const bool is_true = states[i].values[*x] == 1;
      if (left != is_true) {
        report.violations.push_back(
            {r, atom, labels[i], is_true ? "valued 1 but right of separator" : "valued 0 but left of separator"});
      }
    }
  }
  return report;
}

std::string format_productions(const Grammar& grammar) {
  std::ostringstream out;
  for (const auto& p : grammar.productions()) {
    out << p.head << " --> ";
    if (p.body.empty()) out << "[]";
    for (std::size_t k = 0; k < p.body.size(); ++k) out << (k ? "," : "") << p.body[k].name;
    out << ".\n";
  }
  return out.str();
}

std::string grammar_to_json(const Grammar& grammar) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& p : grammar.productions()) {
    auto body = nlohmann::ordered_json::array();
    for (const auto& s : p.body) body.push_back(s.name);
    doc[p.head] = std::move(body);
  }
  return doc.dump(2) + "\n";
}

}  // namespace qsquare
