#include "qsquare/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qsquare/error.hpp"

namespace qsquare {

namespace {

using json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Parse, (where.empty() ? std::string("/") : where) + ": " + what);
}

[[noreturn]] void semantic_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Validation, (where.empty() ? std::string("/") : where) + ": " + what);
}

std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }
std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }

const json& require_array(const json& doc, const std::string& where) {
  if (!doc.is_array()) schema_error(where, "expected an array");
  return doc;
}

std::string require_string(const json& doc, const std::string& where) {
  if (!doc.is_string()) schema_error(where, "expected a string");
  return doc.get<std::string>();
}

std::string point_label(const json& doc, const std::string& where) {
  if (doc.is_string()) return doc.get<std::string>();
  if (doc.is_number_integer()) return std::to_string(doc.get<long long>());
  schema_error(where, "expected an integer or string point label");
}

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!allowed.count(it.key())) schema_error(at("", it.key()), "unknown key");
  }
}

HypergraphSpec parse_hypergraph(const json& doc, std::string name) {
  reject_unknown_keys(doc, {"name", "atoms", "contexts", "states", "palette"});

  std::vector<std::string> atoms;
  std::map<std::string, AtomIndex> index;
  const json& atoms_doc = require_array(doc.at("atoms"), "/atoms");
  if (atoms_doc.empty()) semantic_error("/atoms", "no atoms declared");
  for (std::size_t i = 0; i < atoms_doc.size(); ++i) {
    std::string atom = require_string(atoms_doc[i], at("/atoms", i));
    if (atom.empty()) semantic_error(at("/atoms", i), "empty atom name");
    if (!index.emplace(atom, i).second) semantic_error(at("/atoms", i), "duplicate atom name '" + atom + "'");
    atoms.push_back(std::move(atom));
  }

  if (!doc.contains("contexts")) schema_error("/contexts", "missing");
  const json& ctx_doc = require_array(doc.at("contexts"), "/contexts");
  std::vector<Context> contexts;
  for (std::size_t c = 0; c < ctx_doc.size(); ++c) {
    const std::string where = at("/contexts", c);
    const json& entry = require_array(ctx_doc[c], where);
    Context ctx;
    std::set<AtomIndex> distinct;
    for (std::size_t k = 0; k < entry.size(); ++k) {
      const std::string atom = require_string(entry[k], at(where, k));
      auto it = index.find(atom);
      if (it == index.end()) semantic_error(at(where, k), "unknown atom '" + atom + "'");
      if (!distinct.insert(it->second).second) semantic_error(at(where, k), "atom '" + atom + "' listed twice");
      ctx.push_back(it->second);
    }
    if (ctx.size() < 2) semantic_error(where, "context has fewer than 2 atoms");
    contexts.push_back(std::move(ctx));
  }

  auto logic = [&] {
    try {
      return PartitionLogic(std::move(name), atoms, std::move(contexts));
    } catch (const Error& e) {
      semantic_error("/contexts", e.what());
    }
  }();
  HypergraphSpec spec{std::move(logic), std::nullopt, {}};

  if (doc.contains("states")) {
    const json& states_doc = require_array(doc.at("states"), "/states");
    std::vector<Valuation> pinned;
    for (std::size_t i = 0; i < states_doc.size(); ++i) {
      const std::string where = at("/states", i);
      const json& row = require_array(states_doc[i], where);
      if (row.size() != atoms.size()) {
        semantic_error(where, "expected " + std::to_string(atoms.size()) + " values, got " + std::to_string(row.size()));
      }
      Valuation v;
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (!row[k].is_number_integer() || (row[k].get<int>() != 0 && row[k].get<int>() != 1)) {
          schema_error(at(where, k), "expected 0 or 1");
        }
        v.push_back(static_cast<std::uint8_t>(row[k].get<int>()));
      }
      pinned.push_back(std::move(v));
    }
    spec.pinned_states = std::move(pinned);
  }

  if (doc.contains("palette")) {
    const json& pal = doc.at("palette");
    if (!pal.is_object()) schema_error("/palette", "expected an object");
    for (auto it = pal.begin(); it != pal.end(); ++it) {
      const std::string where = at("/palette", it.key());
      auto color = Rgb::parse(require_string(it.value(), where));
      if (!color) schema_error(where, "expected a color of the form #RRGGBB");
      spec.palette[it.key()] = *color;
    }
  }
  return spec;
}

BaseSetSpec parse_base_set(const json& doc, std::string name) {
  reject_unknown_keys(doc, {"name", "base_set", "partitions", "block_names"});

  BaseSetSpec spec;
  spec.name = std::move(name);
  const json& base = require_array(doc.at("base_set"), "/base_set");
  for (std::size_t i = 0; i < base.size(); ++i) spec.base_set.push_back(point_label(base[i], at("/base_set", i)));

  if (!doc.contains("partitions")) schema_error("/partitions", "missing");
  const json& parts = require_array(doc.at("partitions"), "/partitions");
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::string where = at("/partitions", k);
    BaseSetSpec::Partition partition;
    const json& blocks = require_array(parts[k], where);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const json& block = require_array(blocks[b], at(where, b));
      BaseSetSpec::Block points;
      for (std::size_t p = 0; p < block.size(); ++p) points.push_back(point_label(block[p], at(at(where, b), p)));
      partition.push_back(std::move(points));
    }
    spec.partitions.push_back(std::move(partition));
  }

  if (doc.contains("block_names")) {
    const json& names = require_array(doc.at("block_names"), "/block_names");
    std::vector<std::vector<std::string>> all;
    for (std::size_t k = 0; k < names.size(); ++k) {
      const json& row = require_array(names[k], at("/block_names", k));
      std::vector<std::string> out;
      for (std::size_t b = 0; b < row.size(); ++b) out.push_back(require_string(row[b], at(at("/block_names", k), b)));
      all.push_back(std::move(out));
    }
    spec.block_names = std::move(all);
  }

  try {
    validate(spec);
  } catch (const Error& e) {
    // validate() reports its own partitions/k/b path; prefix the pointer root.
    throw Error(e.code(), std::string("/") + e.what());
  }
  return spec;
}

}  // namespace

ParsedSpec parse_logic_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("", "top level must be an object");

  std::string name = "q";
  if (doc.contains("name")) name = require_string(doc.at("name"), "/name");
  if (name.empty()) semantic_error("/name", "empty name");

  const bool hypergraph = doc.contains("atoms");
  const bool base_set = doc.contains("base_set");
  if (hypergraph == base_set) {
    schema_error("", "exactly one of \"atoms\" (hypergraph mode) or \"base_set\" (partition mode) is required");
  }
  if (hypergraph) return parse_hypergraph(doc, std::move(name));
  return parse_base_set(doc, std::move(name));
}

Model resolve(const ParsedSpec& spec) {
  if (const auto* base = std::get_if<BaseSetSpec>(&spec)) {
    auto [logic, states] = logic_from_partitions(*base);
    const std::size_t admissible = enumerate_states(logic).size();
    return Model{std::move(logic), std::move(states), {}, admissible};
  }

  const auto& hyper = std::get<HypergraphSpec>(spec);
  StateSet all = enumerate_states(hyper.logic);
  if (!hyper.pinned_states) {
    const std::size_t n = all.size();
    return Model{hyper.logic, std::move(all), hyper.palette, n};
  }
  const auto& pinned = *hyper.pinned_states;
  for (std::size_t i = 0; i < pinned.size(); ++i) {
    if (!hyper.logic.is_admissible(pinned[i])) {
      semantic_error(at("/states", i), "state does not value exactly one atom of every context 1");
    }
  }
  StateSet states;
  try {
    states = StateSet(pinned, OrderSource::PinnedBySpec);
  } catch (const Error& e) {
    semantic_error("/states", e.what());
  }
  return Model{hyper.logic, std::move(states), hyper.palette, all.size()};
}

Model load_model(std::string_view text) { return resolve(parse_logic_spec(text)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error reading '" + path.string() + "'");
  return buf.str();
}

Model load_model_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return load_model(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace qsquare
