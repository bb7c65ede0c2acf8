#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsquare/logic.hpp"

namespace qsquare {

inline constexpr double kDefaultTolerance = 1e-9;

/// Real unit vectors assigned to atoms. Construction rejects vectors of the
/// wrong dimension and numerically zero vectors.
class VectorRealization {
 public:
  VectorRealization(int dimension, std::map<std::string, std::vector<double>> vectors,
                    double tolerance = kDefaultTolerance);

  int dimension() const noexcept { return dimension_; }
  double tolerance() const noexcept { return tolerance_; }
  const std::map<std::string, std::vector<double>>& vectors() const noexcept { return vectors_; }
  const std::vector<double>* find(std::string_view atom) const;

  VectorRealization with_tolerance(double tolerance) const;

 private:
  int dimension_;
  std::map<std::string, std::vector<double>> vectors_;
  double tolerance_;
};

/// a, b, c the standard basis; d = (cos t, sin t, 0); e = (-sin t, cos t, 0).
/// Throws ThetaOutOfRange unless 0 < theta < pi/2.
VectorRealization build_v_realization(double theta);

/// Parses {"dimension": int, "vectors": {atom: [real]}, "tolerance"?: real}.
VectorRealization parse_vector_file(std::string_view text);

struct CheckOutcome {
  bool passed = false;
  /// Orthonormality: largest |dot| or |norm - 1| within contexts.
  /// Completeness: largest |context size - dimension|.
  /// Faithfulness: smallest |dot| over pairs sharing no context (the margin).
  double worst = 0.0;
  std::optional<std::pair<std::string, std::string>> worst_pair;
  std::string detail;
};

struct FaithfulnessReport {
  CheckOutcome orthonormality;
  CheckOutcome completeness;
  CheckOutcome faithfulness;

  bool passed() const noexcept {
    return orthonormality.passed && completeness.passed && faithfulness.passed;
  }
};

/// Deviation used by the orthonormality check: |<x,y>| for x != y,
/// |<x,x> - 1| otherwise. Symmetric in its arguments.
double pair_deviation(const std::vector<double>& x, const std::vector<double>& y, bool same_atom);

/// Throws MissingVector naming the first atom (declaration order) without a
/// vector.
FaithfulnessReport verify_faithful(const PartitionLogic& logic, const VectorRealization& realization);

std::string format_report(const FaithfulnessReport& report);

}  // namespace qsquare
