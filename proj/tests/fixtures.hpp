#pragma once

#include <string>
#include <vector>

#include "qsquare/logic.hpp"

#ifndef QSQ_FIXTURE_DIR
#error "QSQ_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace fixtures {

using qsquare::BaseSetSpec;
using qsquare::OrderSource;
using qsquare::PartitionLogic;
using qsquare::StateSet;
using qsquare::Valuation;

inline std::string path(const std::string& name) { return std::string(QSQ_FIXTURE_DIR) + "/" + name; }

inline PartitionLogic l12() { return PartitionLogic("v_logic", {"a", "b", "c", "d", "e"}, {{0, 1, 2}, {2, 3, 4}}); }

// Rows s1..s5 over atoms a..e, as printed in the five-state table.
inline std::vector<Valuation> l12_table() {
  return {{1, 0, 0, 0, 1}, {1, 0, 0, 1, 0}, {0, 1, 0, 0, 1}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 0}};
}

inline StateSet l12_states() { return StateSet(l12_table(), OrderSource::PinnedBySpec); }

inline PartitionLogic triangle() {
  return PartitionLogic("triangle_logic", {"a", "b", "c", "d", "e", "f"}, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}});
}

// Rows s1..s4 over atoms a..f, as printed in the four-state table.
inline std::vector<Valuation> triangle_table() {
  return {{1, 0, 0, 1, 0, 0}, {0, 1, 0, 1, 0, 1}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 1}};
}

inline StateSet triangle_states() { return StateSet(triangle_table(), OrderSource::PinnedBySpec); }

inline BaseSetSpec example_a() {
  BaseSetSpec spec;
  spec.name = "horizontal_sum";
  spec.base_set = {"1", "2", "3"};
  spec.partitions = {{{"1"}, {"2", "3"}}, {{"2"}, {"1", "3"}}, {{"3"}, {"1", "2"}}};
  spec.block_names = std::vector<std::vector<std::string>>{{"p", "¬p"}, {"q", "¬q"}, {"r", "¬r"}};
  return spec;
}

inline PartitionLogic single_context() { return PartitionLogic("g", {"x", "y"}, {{0, 1}}); }

}  // namespace fixtures
