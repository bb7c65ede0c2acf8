#include "qsquare/logic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "qsquare/error.hpp"

namespace qsquare {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::Validation, message);
}

bool is_subset(const Context& small, const Context& big) {
  return std::all_of(small.begin(), small.end(), [&](AtomIndex x) {
    return std::find(big.begin(), big.end(), x) != big.end();
  });
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Validation: return "validation error";
    case ErrorCode::NotSeparating: return "not separating";
    case ErrorCode::EmptyStateSet: return "empty state set";
    case ErrorCode::NotAPartition: return "not a partition";
    case ErrorCode::CyclicGrammar: return "cyclic grammar";
    case ErrorCode::SymbolClash: return "symbol clash";
    case ErrorCode::MissingPaletteEntry: return "missing palette entry";
    case ErrorCode::ThetaOutOfRange: return "theta out of range";
    case ErrorCode::MissingVector: return "missing vector";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

PartitionLogic::PartitionLogic(std::string name, std::vector<std::string> atoms,
                               std::vector<Context> contexts)
    : name_(std::move(name)), atoms_(std::move(atoms)), contexts_(std::move(contexts)) {
  if (atoms_.empty()) invalid("logic has no atoms");
  if (contexts_.empty()) invalid("logic has no contexts");

  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].empty()) invalid("atom " + std::to_string(i) + " has an empty name");
    if (!seen.insert(atoms_[i]).second) invalid("duplicate atom name '" + atoms_[i] + "'");
  }

  contexts_of_atom_.assign(atoms_.size(), {});
  for (std::size_t c = 0; c < contexts_.size(); ++c) {
    const Context& ctx = contexts_[c];
    std::set<AtomIndex> distinct;
    for (AtomIndex x : ctx) {
      if (x >= atoms_.size()) invalid("context " + std::to_string(c + 1) + " references atom index " + std::to_string(x) + " out of range");
      if (!distinct.insert(x).second) invalid("context " + std::to_string(c + 1) + " lists atom '" + atoms_[x] + "' twice");
      contexts_of_atom_[x].push_back(c);
    }
    if (distinct.size() < 2) invalid("context " + std::to_string(c + 1) + " has fewer than 2 atoms");
  }

  for (std::size_t x = 0; x < atoms_.size(); ++x) {
    if (contexts_of_atom_[x].empty()) invalid("atom '" + atoms_[x] + "' belongs to no context");
  }

  for (std::size_t i = 0; i < contexts_.size(); ++i) {
    for (std::size_t j = 0; j < contexts_.size(); ++j) {
      if (i != j && contexts_[i].size() <= contexts_[j].size() && is_subset(contexts_[i], contexts_[j])) {
        invalid("context " + std::to_string(i + 1) + " is contained in context " + std::to_string(j + 1));
      }
    }
  }
}

std::optional<AtomIndex> PartitionLogic::find_atom(std::string_view name) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end()) return std::nullopt;
  return static_cast<AtomIndex>(it - atoms_.begin());
}

bool PartitionLogic::share_context(AtomIndex x, AtomIndex y) const {
  const auto& cx = contexts_of_atom_.at(x);
  const auto& cy = contexts_of_atom_.at(y);
  return std::any_of(cx.begin(), cx.end(), [&](std::size_t c) {
    return std::find(cy.begin(), cy.end(), c) != cy.end();
  });
}

bool PartitionLogic::is_admissible(const Valuation& values) const {
  if (values.size() != atoms_.size()) return false;
  if (std::any_of(values.begin(), values.end(), [](std::uint8_t v) { return v > 1; })) return false;
  return std::all_of(contexts_.begin(), contexts_.end(), [&](const Context& ctx) {
    return std::count_if(ctx.begin(), ctx.end(), [&](AtomIndex x) { return values[x] == 1; }) == 1;
  });
}

const char* to_string(OrderSource source) noexcept {
  switch (source) {
    case OrderSource::Canonical: return "canonical";
    case OrderSource::PinnedBySpec: return "pinned-by-spec";
    case OrderSource::PointInduced: return "point-induced";
  }
  return "unknown";
}

std::string state_label(StateIndex index) { return "s" + std::to_string(index + 1); }

StateSet::StateSet(std::vector<Valuation> valuations, OrderSource source) : source_(source) {
  std::set<Valuation> seen;
  states_.reserve(valuations.size());
  const std::size_t width = valuations.empty() ? 0 : valuations.front().size();
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    if (valuations[i].size() != width) {
      invalid("state " + state_label(i) + " has " + std::to_string(valuations[i].size()) +
              " values, expected " + std::to_string(width));
    }
    if (!seen.insert(valuations[i]).second) invalid("state " + state_label(i) + " duplicates an earlier state");
    states_.push_back({std::move(valuations[i]), state_label(i)});
  }
}

std::vector<std::string> StateSet::labels() const {
  std::vector<std::string> out;
  out.reserve(states_.size());
  for (const auto& s : states_) out.push_back(s.label);
  return out;
}

// ---------------------------------------------------------------------------
// Base-set mode

void validate(const BaseSetSpec& spec) {
  if (spec.base_set.empty()) invalid("base_set is empty");
  std::set<std::string> points;
  for (const auto& p : spec.base_set) {
    if (!points.insert(p).second) invalid("base_set lists point " + p + " twice");
  }
  if (spec.partitions.empty()) invalid("no partitions given");

  for (std::size_t k = 0; k < spec.partitions.size(); ++k) {
    const std::string where = "partitions/" + std::to_string(k);
    std::set<std::string> covered;
    for (std::size_t b = 0; b < spec.partitions[k].size(); ++b) {
      const auto& block = spec.partitions[k][b];
      if (block.empty()) invalid(where + "/" + std::to_string(b) + ": empty block");
      for (const auto& p : block) {
        if (!points.count(p)) invalid(where + "/" + std::to_string(b) + ": point " + p + " is not in base_set");
        if (!covered.insert(p).second) invalid(where + ": point " + p + " appears in more than one block");
      }
    }
    if (covered.size() != points.size()) {
      for (const auto& p : spec.base_set) {
        if (!covered.count(p)) invalid(where + ": point " + p + " is not covered");
      }
    }
  }

  if (spec.block_names) {
    const auto& names = *spec.block_names;
    if (names.size() != spec.partitions.size()) invalid("block_names must list one entry per partition");
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (names[k].size() != spec.partitions[k].size()) {
        invalid("block_names/" + std::to_string(k) + ": expected " + std::to_string(spec.partitions[k].size()) + " names");
      }
    }
  }
}

std::pair<PartitionLogic, StateSet> logic_from_partitions(const BaseSetSpec& spec) {
  validate(spec);

  // Atoms keyed by the block's point set; first occurrence fixes order and name.
  std::map<std::set<std::string>, AtomIndex> atom_of_block;
  std::vector<std::string> atom_names;
  std::vector<std::set<std::string>> atom_blocks;
  std::vector<Context> contexts;

  for (std::size_t k = 0; k < spec.partitions.size(); ++k) {
    Context ctx;
    for (std::size_t b = 0; b < spec.partitions[k].size(); ++b) {
      const auto& block = spec.partitions[k][b];
      std::set<std::string> key(block.begin(), block.end());
      std::string name = spec.block_names ? (*spec.block_names)[k][b]
                                          : "p" + std::to_string(k + 1) + "b" + std::to_string(b + 1);
      auto [it, inserted] = atom_of_block.emplace(key, atom_names.size());
      if (inserted) {
        atom_names.push_back(name);
        atom_blocks.push_back(key);
      } else if (spec.block_names && atom_names[it->second] != name) {
        invalid("partitions/" + std::to_string(k) + "/" + std::to_string(b) + ": block named '" + name +
                "' equals block '" + atom_names[it->second] + "' of an earlier partition (ambiguous pasting)");
      }
      ctx.push_back(it->second);
    }
    contexts.push_back(std::move(ctx));
  }

  PartitionLogic logic(spec.name, atom_names, std::move(contexts));

  std::vector<Valuation> valuations;
  std::map<Valuation, std::string> first_point;
  for (const auto& p : spec.base_set) {
    Valuation v(atom_names.size(), 0);
    for (std::size_t x = 0; x < atom_blocks.size(); ++x) v[x] = atom_blocks[x].count(p) ? 1 : 0;
    auto [it, inserted] = first_point.emplace(v, p);
    if (!inserted) {
      invalid("points " + it->second + " and " + p + " lie in the same block of every partition, so their states coincide");
    }
    valuations.push_back(std::move(v));
  }
  return {std::move(logic), StateSet(std::move(valuations), OrderSource::PointInduced)};
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

class StateSearch {
 public:
  explicit StateSearch(const PartitionLogic& logic)
      : logic_(logic),
        ones_(logic.contexts().size(), 0),
        unassigned_(logic.contexts().size(), 0),
        membership_(logic.atom_count()),
        current_(logic.atom_count(), 0) {
    for (std::size_t c = 0; c < logic.contexts().size(); ++c) {
      unassigned_[c] = logic.contexts()[c].size();
      for (AtomIndex x : logic.contexts()[c]) membership_[x].push_back(c);
    }
  }

  std::vector<Valuation> run() {
    visit(0);
    return std::move(found_);
  }

 private:
  // Trying 1 before 0 yields descending lexicographic order.
  void visit(AtomIndex x) {
    if (x == logic_.atom_count()) {
      found_.push_back(current_);
      return;
    }
    for (std::uint8_t value : {std::uint8_t{1}, std::uint8_t{0}}) {
      if (!assignable(x, value)) continue;
      assign(x, value);
      visit(x + 1);
      unassign(x, value);
    }
  }

  bool assignable(AtomIndex x, std::uint8_t value) const {
    for (std::size_t c : membership_[x]) {
      if (value == 1 && ones_[c] > 0) return false;
      if (value == 0 && ones_[c] == 0 && unassigned_[c] == 1) return false;
    }
    return true;
  }

  void assign(AtomIndex x, std::uint8_t value) {
    current_[x] = value;
    for (std::size_t c : membership_[x]) {
      --unassigned_[c];
      if (value == 1) ++ones_[c];
    }
  }

  void unassign(AtomIndex x, std::uint8_t value) {
    current_[x] = 0;
    for (std::size_t c : membership_[x]) {
      ++unassigned_[c];
      if (value == 1) --ones_[c];
    }
  }

  const PartitionLogic& logic_;
  std::vector<std::size_t> ones_;
  std::vector<std::size_t> unassigned_;
  std::vector<std::vector<std::size_t>> membership_;
  Valuation current_;
  std::vector<Valuation> found_;
};

void require_state_width(const PartitionLogic& logic, const StateSet& states) {
  for (const auto& s : states.states()) {
    if (s.values.size() != logic.atom_count()) {
      invalid("state " + s.label + " has " + std::to_string(s.values.size()) + " values but the logic has " +
              std::to_string(logic.atom_count()) + " atoms");
    }
  }
}

}  // namespace

StateSet enumerate_states(const PartitionLogic& logic) {
  return StateSet(StateSearch(logic).run(), OrderSource::Canonical);
}

// ---------------------------------------------------------------------------
// Supports and separation

SupportTable supports(const PartitionLogic& logic, const StateSet& states) {
  require_state_width(logic, states);
  SupportTable table;
  table.atoms.resize(logic.atom_count());
  for (StateIndex i = 0; i < states.size(); ++i) {
    for (AtomIndex x = 0; x < logic.atom_count(); ++x) {
      auto& row = table.atoms[x];
      (states[i].values[x] == 1 ? row.true_states : row.false_states).push_back(i);
    }
  }
  return table;
}

SeparationResult is_separating(const StateSet& states, const PartitionLogic& logic) {
  const SupportTable table = supports(logic, states);
  for (AtomIndex x = 0; x < logic.atom_count(); ++x) {
    if (table[x].true_states.empty()) {
      return {false, SeparationWitness{SeparationWitness::Kind::EmptySupport, x, x}};
    }
  }
  std::map<std::vector<StateIndex>, AtomIndex> owner;
  for (AtomIndex x = 0; x < logic.atom_count(); ++x) {
    auto [it, inserted] = owner.emplace(table[x].true_states, x);
    if (!inserted) {
      return {false, SeparationWitness{SeparationWitness::Kind::EqualSupports, it->second, x}};
    }
  }
  return {true, std::nullopt};
}

std::string describe(const SeparationWitness& witness, const PartitionLogic& logic) {
  const auto& atoms = logic.atoms();
  if (witness.kind == SeparationWitness::Kind::EmptySupport) {
    return "atom '" + atoms.at(witness.first) + "' has empty support (no state values it 1)";
  }
  return "atoms '" + atoms.at(witness.first) + "' and '" + atoms.at(witness.second) + "' have identical supports";
}

std::vector<StatePartition> partition_representation(const PartitionLogic& logic,
                                                     const StateSet& states) {
  const SupportTable table = supports(logic, states);
  std::vector<StatePartition> out;
  out.reserve(logic.contexts().size());
  for (std::size_t c = 0; c < logic.contexts().size(); ++c) {
    StatePartition blocks;
    std::vector<int> hits(states.size(), 0);
    for (AtomIndex x : logic.contexts()[c]) {
      if (table[x].true_states.empty()) {
        throw Error(ErrorCode::NotAPartition,
                    "context " + std::to_string(c + 1) + ": atom '" + logic.atoms()[x] + "' has an empty block");
      }
      for (StateIndex i : table[x].true_states) ++hits[i];
      blocks.push_back(table[x].true_states);
    }
    for (StateIndex i = 0; i < states.size(); ++i) {
      if (hits[i] != 1) {
        std::ostringstream msg;
        msg << "context " << c + 1 << ": state " << state_label(i)
            << (hits[i] == 0 ? " is in no block" : " is in more than one block");
        throw Error(ErrorCode::NotAPartition, msg.str());
      }
    }
    out.push_back(std::move(blocks));
  }
  return out;
}

}  // namespace qsquare
