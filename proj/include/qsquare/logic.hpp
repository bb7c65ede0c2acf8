#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsquare {

using AtomIndex = std::size_t;
using StateIndex = std::size_t;
using Context = std::vector<AtomIndex>;

/// 0/1 value per atom, indexed by atom declaration position.
using Valuation = std::vector<std::uint8_t>;

/// A finite pasting of Boolean contexts. Atoms and contexts keep their
/// declaration order; every downstream artifact is laid out in that order.
///
/// Construction enforces:
///   - atom names are nonempty and unique
///   - every context holds at least two distinct, in-range atoms
///   - every atom belongs to at least one context
///   - no context is a subset of another
class PartitionLogic {
 public:
  PartitionLogic(std::string name, std::vector<std::string> atoms,
                 std::vector<Context> contexts);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  const std::vector<Context>& contexts() const noexcept { return contexts_; }
  std::size_t atom_count() const noexcept { return atoms_.size(); }

  std::optional<AtomIndex> find_atom(std::string_view name) const;
  bool share_context(AtomIndex x, AtomIndex y) const;

  /// True when the valuation has one entry per atom and exactly one atom of
  /// every context is valued 1.
  bool is_admissible(const Valuation& values) const;

 private:
  std::string name_;
  std::vector<std::string> atoms_;
  std::vector<Context> contexts_;
  std::vector<std::vector<std::size_t>> contexts_of_atom_;
};

struct TwoValuedState {
  Valuation values;
  std::string label;
};

enum class OrderSource { Canonical, PinnedBySpec, PointInduced };

const char* to_string(OrderSource source) noexcept;

/// "s1", "s2", ... for zero-based index 0, 1, ...
std::string state_label(StateIndex index);

/// Ordered list of distinct valuations, labeled s1..sN in list order.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::vector<Valuation> valuations, OrderSource source);

  const std::vector<TwoValuedState>& states() const noexcept { return states_; }
  const TwoValuedState& operator[](StateIndex i) const { return states_[i]; }
  std::size_t size() const noexcept { return states_.size(); }
  bool empty() const noexcept { return states_.empty(); }
  OrderSource order_source() const noexcept { return source_; }
  std::vector<std::string> labels() const;

 private:
  std::vector<TwoValuedState> states_;
  OrderSource source_ = OrderSource::Canonical;
};

/// Base-set input: several partitions of one finite point set. Points are kept
/// as their textual labels (integers are stored in decimal).
struct BaseSetSpec {
  using Block = std::vector<std::string>;
  using Partition = std::vector<Block>;

  std::string name;
  std::vector<std::string> base_set;
  std::vector<Partition> partitions;
  /// Parallel to `partitions` when present.
  std::optional<std::vector<std::vector<std::string>>> block_names;
};

/// Throws Error(Validation) naming the offending partition/block.
void validate(const BaseSetSpec& spec);

/// Pastes the partitions into a logic. Blocks equal as point sets are one
/// atom. States are induced by the points, in base-set order.
std::pair<PartitionLogic, StateSet> logic_from_partitions(const BaseSetSpec& spec);

/// All admissible valuations in descending lexicographic order over the atom
/// declaration order.
StateSet enumerate_states(const PartitionLogic& logic);

struct AtomSupport {
  std::vector<StateIndex> true_states;   // T(x), ascending
  std::vector<StateIndex> false_states;  // F(x), ascending

  bool operator==(const AtomSupport&) const = default;
};

struct SupportTable {
  std::vector<AtomSupport> atoms;  // parallel to PartitionLogic::atoms()

  const AtomSupport& operator[](AtomIndex x) const { return atoms[x]; }
  bool operator==(const SupportTable&) const = default;
};

SupportTable supports(const PartitionLogic& logic, const StateSet& states);

struct SeparationWitness {
  enum class Kind {
    EqualSupports,  // first and second have identical supports
    EmptySupport,   // first is never true; second == first
  };
  Kind kind;
  AtomIndex first;
  AtomIndex second;
};

struct SeparationResult {
  bool separating = false;
  std::optional<SeparationWitness> witness;
};

/// Separating means every atom has a nonempty support and no two atoms share
/// a support. The witness is the first failure in atom order.
SeparationResult is_separating(const StateSet& states, const PartitionLogic& logic);

std::string describe(const SeparationWitness& witness, const PartitionLogic& logic);

/// Per context, the T-sets of its atoms in context order. Throws
/// Error(NotAPartition) when a context's T-sets are empty, overlap, or fail to
/// cover the state set.
using StatePartition = std::vector<std::vector<StateIndex>>;
std::vector<StatePartition> partition_representation(const PartitionLogic& logic,
                                                     const StateSet& states);

}  // namespace qsquare
