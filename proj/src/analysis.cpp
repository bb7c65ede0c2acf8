#include "qsquare/analysis.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "qsquare/error.hpp"
#include "qsquare/grammar.hpp"

namespace qsquare {

namespace {

std::size_t display_width(std::string_view utf8) {
  return static_cast<std::size_t>(
      std::count_if(utf8.begin(), utf8.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

void pad(std::ostringstream& out, std::string_view text, std::size_t width) {
  out << text;
  for (std::size_t w = display_width(text); w < width; ++w) out << ' ';
}

std::string set_of_labels(const std::vector<StateIndex>& block) {
  std::string out = "{";
  for (std::size_t k = 0; k < block.size(); ++k) out += (k ? "," : "") + state_label(block[k]);
  return out + "}";
}

}  // namespace

std::string format_state_table(const PartitionLogic& logic, const StateSet& states) {
  std::size_t first = display_width("state");
  for (const auto& s : states.states()) first = std::max(first, display_width(s.label));
  std::vector<std::size_t> widths;
  for (const auto& atom : logic.atoms()) widths.push_back(std::max<std::size_t>(1, display_width(atom)));

  std::ostringstream out;
  auto row = [&](std::string_view head, const std::vector<std::string>& cells) {
    pad(out, head, first);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      out << "  ";
      if (k + 1 == cells.size()) out << cells[k];
      else pad(out, cells[k], widths[k]);
    }
    out << '\n';
  };
  row("state", logic.atoms());
  for (const auto& s : states.states()) {
    std::vector<std::string> cells;
    for (auto v : s.values) cells.push_back(v ? "1" : "0");
    row(s.label, cells);
  }
  return out.str();
}

std::string format_partition_representation(const PartitionLogic& logic,
                                            const std::vector<StatePartition>& partitions) {
  std::ostringstream out;
  for (std::size_t c = 0; c < partitions.size(); ++c) {
    out << "C" << c + 1 << " {";
    for (std::size_t k = 0; k < logic.contexts()[c].size(); ++k) out << (k ? "," : "") << logic.atoms()[logic.contexts()[c][k]];
    out << "}:";
    for (const auto& block : partitions[c]) out << ' ' << set_of_labels(block);
    out << '\n';
  }
  return out.str();
}

bool CheckReport::passed() const {
  return std::none_of(items.begin(), items.end(),
                      [](const CheckItem& item) { return item.status == CheckItem::Status::Fail; });
}

std::string CheckReport::format() const {
  std::ostringstream out;
  for (const auto& item : items) {
    const char* tag = item.status == CheckItem::Status::Pass ? "pass" : item.status == CheckItem::Status::Fail ? "FAIL" : "skip";
    out << tag << "  ";
    pad(out, item.name, 12);
    out << "  " << item.message << '\n';
  }
  out << "overall: " << (passed() ? "pass" : "FAIL") << '\n';
  return out.str();
}

CheckReport run_checks(const Model& model) {
  using Status = CheckItem::Status;
  const PartitionLogic& logic = model.logic;
  const StateSet& states = model.states;
  CheckReport report;
  auto add = [&](std::string name, Status status, std::string message) {
    report.items.push_back({std::move(name), status, std::move(message)});
    return status == Status::Pass;
  };
  auto skip_rest = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) add(n, Status::Skipped, "depends on an earlier failure");
  };

  std::ostringstream summary;
  summary << states.size() << " states (" << to_string(states.order_source()) << "), " << model.admissible_count
          << " admissible in total";
  if (!add("states", states.empty() ? Status::Fail : Status::Pass, summary.str())) {
    skip_rest({"admissible", "separating", "partitions", "grammar", "incidence"});
    return report;
  }

  std::optional<std::string> inadmissible;
  for (const auto& s : states.states()) {
    if (!logic.is_admissible(s.values)) {
      inadmissible = s.label;
      break;
    }
  }
  if (!add("admissible", inadmissible ? Status::Fail : Status::Pass,
           inadmissible ? "state " + *inadmissible + " violates exactly-one-per-context"
                        : "every state values exactly one atom per context 1")) {
    skip_rest({"separating", "partitions", "grammar", "incidence"});
    return report;
  }

  const SeparationResult sep = is_separating(states, logic);
  if (!add("separating", sep.separating ? Status::Pass : Status::Fail,
           sep.separating ? "atom supports are nonempty and pairwise distinct"
                          : "not separating: " + describe(*sep.witness, logic))) {
    skip_rest({"partitions", "grammar", "incidence"});
    return report;
  }

  try {
    const auto parts = partition_representation(logic, states);
    std::string text = format_partition_representation(logic, parts);
    if (!text.empty()) text.pop_back();
    std::string joined;
    for (char c : text) joined += c == '\n' ? std::string("; ") : std::string(1, c);
    add("partitions", Status::Pass, joined);
  } catch (const Error& e) {
    add("partitions", Status::Fail, e.what());
  }

  std::optional<Grammar> grammar;
  try {
    grammar.emplace(compile_grammar(logic, states));
    add("grammar", Status::Pass, std::to_string(grammar->productions().size()) + " productions");
  } catch (const Error& e) {
    add("grammar", Status::Fail, e.what());
    skip_rest({"incidence"});
    return report;
  }

  try {
    const Derivation d = derive(*grammar);
    const IncidenceReport inc = check_incidence(d, logic, states);
    const std::size_t expected = logic.atom_count() * (states.size() + 2);
    if (!inc.holds()) {
      const auto& v = inc.violations.front();
      add("incidence", Status::Fail,
          std::to_string(inc.violating_rows()) + " rows violate incidence, first: row " + std::to_string(v.row + 1) +
              " (" + v.atom + ") " + v.state + " " + v.problem);
    } else if (d.tokens.size() != expected) {
      add("incidence", Status::Fail,
          "derivation has " + std::to_string(d.tokens.size()) + " tokens, expected " + std::to_string(expected));
    } else {
      add("incidence", Status::Pass,
          std::to_string(d.row_count()) + " rows, " + std::to_string(d.tokens.size()) + " tokens");
    }
  } catch (const Error& e) {
    add("incidence", Status::Fail, e.what());
  }
  return report;
}

}  // namespace qsquare
