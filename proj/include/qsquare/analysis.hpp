#pragma once

#include <string>
#include <vector>

#include "qsquare/logic.hpp"
#include "qsquare/spec_io.hpp"

namespace qsquare {

/// Rows of 0/1 per state under atom-name columns:
///
///   state  a  b  c  d  e
///   s1     1  0  0  0  1
std::string format_state_table(const PartitionLogic& logic, const StateSet& states);

/// "C1: {s1,s2} {s3,s4} {s5}" per context.
std::string format_partition_representation(const PartitionLogic& logic,
                                            const std::vector<StatePartition>& partitions);

struct CheckItem {
  enum class Status { Pass, Fail, Skipped };
  std::string name;
  Status status;
  std::string message;
};

struct CheckReport {
  std::vector<CheckItem> items;

  bool passed() const;
  std::string format() const;
};

/// Runs the full pipeline (states, separation, partition representation,
/// grammar compilation, derivation, incidence). Steps depending on a failed
/// step are skipped.
CheckReport run_checks(const Model& model);

}  // namespace qsquare
