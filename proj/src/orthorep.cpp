#include "qsquare/orthorep.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qsquare/error.hpp"

namespace qsquare {

namespace {

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) sum += x[k] * y[k];
  return sum;
}

}  // namespace

VectorRealization::VectorRealization(int dimension, std::map<std::string, std::vector<double>> vectors,
                                     double tolerance)
    : dimension_(dimension), vectors_(std::move(vectors)), tolerance_(tolerance) {
  if (dimension_ <= 0) throw Error(ErrorCode::Validation, "dimension must be positive");
  if (!(tolerance_ > 0.0)) throw Error(ErrorCode::Validation, "tolerance must be positive");
  for (const auto& [atom, v] : vectors_) {
    if (static_cast<int>(v.size()) != dimension_) {
      throw Error(ErrorCode::Validation, "vector for '" + atom + "' has " + std::to_string(v.size()) +
                                             " components, expected " + std::to_string(dimension_));
    }
    if (std::sqrt(dot(v, v)) <= tolerance_) throw Error(ErrorCode::Validation, "vector for '" + atom + "' is zero");
  }
}

const std::vector<double>* VectorRealization::find(std::string_view atom) const {
  auto it = vectors_.find(std::string(atom));
  return it == vectors_.end() ? nullptr : &it->second;
}

VectorRealization VectorRealization::with_tolerance(double tolerance) const {
  return VectorRealization(dimension_, vectors_, tolerance);
}

VectorRealization build_v_realization(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
    std::ostringstream msg;
    msg << "theta must lie strictly between 0 and pi/2, got " << theta;
    throw Error(ErrorCode::ThetaOutOfRange, msg.str());
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return VectorRealization(3, {
                                  {"a", {1.0, 0.0, 0.0}},
                                  {"b", {0.0, 1.0, 0.0}},
                                  {"c", {0.0, 0.0, 1.0}},
                                  {"d", {c, s, 0.0}},
                                  {"e", {-s, c, 0.0}},
                              });
}

VectorRealization parse_vector_file(std::string_view text) {
  using json = nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
  auto fail = [](const std::string& where, const std::string& what) -> void {
    throw Error(ErrorCode::Parse, where + ": " + what);
  };
  if (!doc.is_object()) fail("/", "top level must be an object");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer()) fail("/dimension", "expected an integer");
  if (!doc.contains("vectors") || !doc["vectors"].is_object()) fail("/vectors", "expected an object");

  std::map<std::string, std::vector<double>> vectors;
  for (auto it = doc["vectors"].begin(); it != doc["vectors"].end(); ++it) {
    const std::string where = "/vectors/" + it.key();
    if (!it.value().is_array()) fail(where, "expected an array of numbers");
    std::vector<double> v;
    for (const auto& x : it.value()) {
      if (!x.is_number()) fail(where, "expected an array of numbers");
      v.push_back(x.get<double>());
    }
    vectors.emplace(it.key(), std::move(v));
  }
  double tolerance = kDefaultTolerance;
  if (doc.contains("tolerance")) {
    if (!doc["tolerance"].is_number()) fail("/tolerance", "expected a number");
    tolerance = doc["tolerance"].get<double>();
  }
  return VectorRealization(doc["dimension"].get<int>(), std::move(vectors), tolerance);
}

double pair_deviation(const std::vector<double>& x, const std::vector<double>& y, bool same_atom) {
  const double d = dot(x, y);
  return same_atom ? std::fabs(d - 1.0) : std::fabs(d);
}

FaithfulnessReport verify_faithful(const PartitionLogic& logic, const VectorRealization& realization) {
  const double tol = realization.tolerance();
  std::vector<const std::vector<double>*> vec(logic.atom_count());
  for (AtomIndex x = 0; x < logic.atom_count(); ++x) {
    vec[x] = realization.find(logic.atoms()[x]);
    if (!vec[x]) throw Error(ErrorCode::MissingVector, "no vector for atom '" + logic.atoms()[x] + "'");
  }
  const auto& names = logic.atoms();
  FaithfulnessReport report;

  auto& ortho = report.orthonormality;
  for (const Context& ctx : logic.contexts()) {
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      for (std::size_t j = i; j < ctx.size(); ++j) {
        const double dev = pair_deviation(*vec[ctx[i]], *vec[ctx[j]], i == j);
        if (!ortho.worst_pair || dev > ortho.worst) {
          ortho.worst = dev;
          ortho.worst_pair = {names[ctx[i]], names[ctx[j]]};
        }
      }
    }
  }
  ortho.passed = ortho.worst <= tol;
  ortho.detail = ortho.passed ? "vectors within each context are orthonormal"
                              : "vectors within some context are not orthonormal";

  auto& complete = report.completeness;
  complete.passed = true;
  for (std::size_t c = 0; c < logic.contexts().size(); ++c) {
    const double gap = std::fabs(static_cast<double>(logic.contexts()[c].size()) - realization.dimension());
    if (gap > complete.worst) complete.worst = gap;
    if (gap != 0.0 && complete.passed) {
      complete.passed = false;
      complete.detail = "context " + std::to_string(c + 1) + " has " + std::to_string(logic.contexts()[c].size()) +
                        " atoms in dimension " + std::to_string(realization.dimension());
    }
  }
  if (complete.passed) complete.detail = "every context is a basis";

  auto& faithful = report.faithfulness;
  faithful.worst = std::numeric_limits<double>::infinity();
  for (AtomIndex x = 0; x < logic.atom_count(); ++x) {
    for (AtomIndex y = x + 1; y < logic.atom_count(); ++y) {
      if (logic.share_context(x, y)) continue;
      const double margin = std::fabs(dot(*vec[x], *vec[y]));
      if (margin < faithful.worst) {
        faithful.worst = margin;
        faithful.worst_pair = {names[x], names[y]};
      }
    }
  }
  faithful.passed = faithful.worst > tol;
  if (!faithful.worst_pair) faithful.detail = "no atom pairs outside a common context";
  else if (faithful.passed) faithful.detail = "atoms sharing no context are not orthogonal";
  else faithful.detail = "orthogonal vectors on atoms sharing no context";
  return report;
}

std::string format_report(const FaithfulnessReport& report) {
  std::ostringstream out;
  auto line = [&](const char* name, const char* measure, const CheckOutcome& c) {
    out << std::left << std::setw(16) << name << (c.passed ? "pass" : "FAIL") << "  " << measure << ' '
        << std::setprecision(6) << std::scientific << c.worst << std::defaultfloat;
    if (c.worst_pair) out << " (" << c.worst_pair->first << ", " << c.worst_pair->second << ')';
    out << "  " << c.detail << '\n';
  };
  line("orthonormality", "max deviation", report.orthonormality);
  line("completeness", "max size gap", report.completeness);
  line("faithfulness", "min |dot|", report.faithfulness);
  out << "overall: " << (report.passed() ? "pass" : "FAIL") << '\n';
  return out.str();
}

}  // namespace qsquare
