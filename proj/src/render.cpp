#include "qsquare/render.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qsquare/error.hpp"

namespace qsquare {

std::optional<Rgb> Rgb::parse(std::string_view hex) {
  if (hex.size() != 7 || hex[0] != '#') return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::uint8_t channels[3];
  for (int k = 0; k < 3; ++k) {
    const int hi = nibble(hex[1 + 2 * k]);
    const int lo = nibble(hex[2 + 2 * k]);
    if (hi < 0 || lo < 0) return std::nullopt;
    channels[k] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return Rgb{channels[0], channels[1], channels[2]};
}

std::string Rgb::hex() const {
  static constexpr char digits[] = "0123456789ABCDEF";
  std::string out = "#";
  for (std::uint8_t c : {r, g, b}) {
    out += digits[c >> 4];
    out += digits[c & 0xF];
  }
  return out;
}

const char* to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::SvgTiles: return "svg-tiles";
    case Backend::SvgSchema: return "svg-schema";
    case Backend::Ansi: return "ansi";
    case Backend::Html: return "html";
    case Backend::LogicProgram: return "logic-program";
    case Backend::Events: return "events";
  }
  return "unknown";
}

std::optional<Backend> parse_backend(std::string_view name) {
  for (Backend b : {Backend::SvgTiles, Backend::SvgSchema, Backend::Ansi, Backend::Html,
                    Backend::LogicProgram, Backend::Events}) {
    if (name == to_string(b)) return b;
  }
  return std::nullopt;
}

namespace {

Rgb hue_color(double hue_degrees) {
  // HSV with S = V = 1.
  const double h = std::fmod(hue_degrees, 360.0) / 60.0;
  const double x = 1.0 - std::fabs(std::fmod(h, 2.0) - 1.0);
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = 1; g = x; break;
    case 1: r = x; g = 1; break;
    case 2: g = 1; b = x; break;
    case 3: g = x; b = 1; break;
    case 4: r = x; b = 1; break;
    default: r = 1; b = x; break;
  }
  auto channel = [](double v) { return static_cast<std::uint8_t>(std::lround(v * 255.0)); };
  return {channel(r), channel(g), channel(b)};
}

const Rgb& color_of(const RenderSpec& spec, const Symbol& s) {
  if (s.kind == SymbolKind::Separator) return spec.separator_color;
  auto it = spec.palette.find(s.name);
  if (it == spec.palette.end()) {
    throw Error(ErrorCode::MissingPaletteEntry, "no palette color for state '" + s.name + "'");
  }
  return it->second;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::size_t codepoints(std::string_view utf8) {
  return static_cast<std::size_t>(
      std::count_if(utf8.begin(), utf8.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::vector<std::vector<Symbol>> visible_rows(const Derivation& derivation) {
  std::vector<std::vector<Symbol>> rows;
  for (auto row : derivation.rows()) rows.emplace_back(row.begin(), row.end());
  return rows;
}

void check_geometry(const RenderSpec& spec) {
  if (spec.cell_size <= 0) throw Error(ErrorCode::Validation, "cell size must be positive");
  if (spec.cell_gap < 0) throw Error(ErrorCode::Validation, "cell gap must be non-negative");
}

int extent(std::size_t cells, const RenderSpec& spec) {
  if (cells == 0) return 0;
  return static_cast<int>(cells) * spec.cell_size + static_cast<int>(cells - 1) * spec.cell_gap;
}

void svg_open(std::ostringstream& out, int width, int height) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
}

bool plain_prolog_atom(std::string_view name) {
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::string prolog_atom(std::string_view name) {
  if (plain_prolog_atom(name)) return std::string(name);
  std::string out = "'";
  for (char c : name) {
    if (c == '\'') out += "''";
    else if (c == '\\') out += "\\\\";
    else out += c;
  }
  return out + "'";
}

}  // namespace

Palette default_palette(std::size_t state_count) {
  static const Rgb named[] = {colors::kGreen, colors::kBlue, colors::kRed, colors::kOrange, colors::kViolet};
  Palette palette;
  for (StateIndex i = 0; i < state_count; ++i) {
    palette[state_label(i)] =
        state_count <= 5 ? named[i] : hue_color(static_cast<double>(i) * 360.0 / static_cast<double>(state_count));
  }
  return palette;
}

RenderSpec RenderSpec::with_defaults(std::size_t state_count, const Palette& overrides) {
  RenderSpec spec;
  spec.palette = default_palette(state_count);
  for (const auto& [label, color] : overrides) spec.palette[label] = color;
  return spec;
}

std::string render_tiles(const Derivation& derivation, const RenderSpec& spec) {
  check_geometry(spec);
  const auto rows = visible_rows(derivation);
  std::size_t columns = 0;
  for (const auto& row : rows) columns = std::max(columns, row.size());

  std::ostringstream out;
  svg_open(out, extent(columns, spec), extent(rows.size(), spec));
  const int pitch = spec.cell_size + spec.cell_gap;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << "<g class=\"row\" id=\"row-" << r + 1 << "\">\n"
        << "<title>" << xml_escape(derivation.row_atoms.at(r)) << "</title>\n";
    for (std::size_t k = 0; k < rows[r].size(); ++k) {
      const Symbol& s = rows[r][k];
      const std::string cls = s.kind == SymbolKind::Separator ? "cell separator" : "cell state " + xml_escape(s.name);
      out << "<rect class=\"" << cls << "\" x=\"" << static_cast<int>(k) * pitch << "\" y=\""
          << static_cast<int>(r) * pitch << "\" width=\"" << spec.cell_size << "\" height=\"" << spec.cell_size
          << "\" fill=\"" << color_of(spec, s).hex() << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_schema(const PartitionLogic& logic, const StateSet& states, const RenderSpec& spec) {
  check_geometry(spec);
  std::vector<Rgb> column_colors;
  for (const auto& s : states.states()) column_colors.push_back(color_of(spec, Symbol::state(s.label)));

  std::size_t longest = 1;
  for (const auto& atom : logic.atoms()) longest = std::max(longest, codepoints(atom));
  const int font = std::max(1, spec.cell_size / 2);
  const int left = static_cast<int>(longest) * font + font;
  const int top = spec.cell_size;
  const int pitch = spec.cell_size + spec.cell_gap;

  std::ostringstream out;
  svg_open(out, left + extent(states.size(), spec), top + extent(logic.atom_count(), spec));
  out << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"" << font << "\">\n";
  for (StateIndex i = 0; i < states.size(); ++i) {
    out << "<text class=\"column-label\" x=\"" << left + static_cast<int>(i) * pitch + spec.cell_size / 2
        << "\" y=\"" << top - spec.cell_gap - font / 2 << "\" text-anchor=\"middle\">" << states[i].label
        << "</text>\n";
  }
  for (AtomIndex x = 0; x < logic.atom_count(); ++x) {
    out << "<text class=\"row-label\" x=\"" << left - font / 2 << "\" y=\""
        << top + static_cast<int>(x) * pitch + spec.cell_size / 2 + font / 3 << "\" text-anchor=\"end\">"
        << xml_escape(logic.atoms()[x]) << "</text>\n";
  }
  out << "</g>\n";

  for (AtomIndex x = 0; x < logic.atom_count(); ++x) {
    out << "<g class=\"row\" id=\"row-" << x + 1 << "\">\n";
    for (StateIndex i = 0; i < states.size(); ++i) {
      const bool on = states[i].values.at(x) == 1;
      out << "<rect class=\"cell " << (on ? "true " + states[i].label : std::string("false")) << "\" x=\""
          << left + static_cast<int>(i) * pitch << "\" y=\"" << top + static_cast<int>(x) * pitch << "\" width=\""
          << spec.cell_size << "\" height=\"" << spec.cell_size << "\" fill=\""
          << (on ? column_colors[i] : spec.false_cell_color).hex() << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_text(const Derivation& derivation, const RenderSpec& spec) {
  const auto rows = visible_rows(derivation);
  std::ostringstream out;

  if (spec.backend == Backend::Html) {
    check_geometry(spec);
    out << "<div class=\"quantum-square\" style=\"display:inline-flex;flex-direction:column;gap:" << spec.cell_gap
        << "px\">\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out << "  <div class=\"row\" title=\"" << xml_escape(derivation.row_atoms.at(r))
          << "\" style=\"display:flex;gap:" << spec.cell_gap << "px\">";
      for (const Symbol& s : rows[r]) {
        const std::string cls = s.kind == SymbolKind::Separator ? "separator" : xml_escape(s.name);
        out << "<span class=\"cell " << cls << "\" style=\"width:" << spec.cell_size << "px;height:" << spec.cell_size
            << "px;background:" << color_of(spec, s).hex() << "\"></span>";
      }
      out << "</div>\n";
    }
    out << "</div>\n";
    return out.str();
  }

  if (spec.backend != Backend::Ansi) {
    throw Error(ErrorCode::Validation, std::string("render_text does not handle backend ") + to_string(spec.backend));
  }
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      const Rgb& c = color_of(spec, row[k]);
      if (spec.use_color) {
        out << "\x1b[38;2;" << int{c.r} << ';' << int{c.g} << ';' << int{c.b} << "m\u2588\x1b[0m";
      } else {
        out << (k ? " " : "") << (row[k].kind == SymbolKind::Separator ? std::string("|") : row[k].name);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string emit_logic_program(const Grammar& grammar, const RenderSpec& spec) {
  std::ostringstream out;
  auto rule = [&](const Production& p) {
    out << prolog_atom(p.head) << " --> ";
    if (p.body.empty()) out << "[]";
    for (std::size_t k = 0; k < p.body.size(); ++k) out << (k ? "," : "") << prolog_atom(p.body[k].name);
    out << ".\n";
  };

  // Structural layer: start rule, then the remaining rules.
  const Production* start = grammar.find(grammar.start());
  rule(*start);
  out << '\n';
  for (const auto& p : grammar.productions()) {
    if (&p != start) rule(p);
  }

  out << "\n% repertoire\n";
  for (const auto& t : grammar.terminals()) {
    auto it = spec.palette.find(t);
    const std::string token = it == spec.palette.end() ? t : it->second.hex();
    out << prolog_atom(t) << " --> [" << prolog_atom(token) << "].\n";
  }

  out << "\n% layout\n"
      << kSeparatorName << " --> [" << prolog_atom(spec.separator_color.hex()) << "].\n"
      << kLinebreakName << " --> ['\\n'].\n"
      << "\noutput :-\n"
      << "    phrase(" << prolog_atom(grammar.start()) << ", Ls),\n"
      << "    forall(member(T, Ls), (T == '\\n' -> nl ; write(T), write(' '))).\n";
  return out.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Splits Prolog source into clause texts, honoring quotes and % comments.
std::vector<std::string> split_clauses(std::string_view source) {
  std::vector<std::string> clauses;
  std::string current;
  bool quoted = false;
  for (std::size_t k = 0; k < source.size(); ++k) {
    const char c = source[k];
    if (quoted) {
      current += c;
      if (c == '\\' && k + 1 < source.size()) {
        current += source[++k];
      } else if (c == '\'') {
        if (k + 1 < source.size() && source[k + 1] == '\'') current += source[++k];
        else quoted = false;
      }
      continue;
    }
    if (c == '%') {
      while (k < source.size() && source[k] != '\n') ++k;
      continue;
    }
    if (c == '\'') quoted = true;
    if (c == '.' && (k + 1 == source.size() || std::isspace(static_cast<unsigned char>(source[k + 1])))) {
      clauses.push_back(trim(current));
      current.clear();
      continue;
    }
    current += c;
  }
  return clauses;
}

std::vector<std::string> split_body(std::string_view body) {
  std::vector<std::string> parts;
  std::string current;
  bool quoted = false;
  for (std::size_t k = 0; k < body.size(); ++k) {
    const char c = body[k];
    if (c == '\'' && !quoted) quoted = true;
    else if (c == '\'' && quoted) {
      if (k + 1 < body.size() && body[k + 1] == '\'') current += body[k++];
      else quoted = false;
    } else if (c == ',' && !quoted) {
      parts.push_back(trim(current));
      current.clear();
      continue;
    }
    current += c;
  }
  parts.push_back(trim(current));
  return parts;
}

std::string unquote(std::string_view atom) {
  if (atom.size() < 2 || atom.front() != '\'' || atom.back() != '\'') return std::string(atom);
  std::string out;
  for (std::size_t k = 1; k + 1 < atom.size(); ++k) {
    if (atom[k] == '\'' && atom[k + 1] == '\'') out += atom[k++];
    else if (atom[k] == '\\' && k + 2 < atom.size()) out += atom[++k];
    else out += atom[k];
  }
  return out;
}

}  // namespace

std::vector<Production> parse_logic_program_structure(std::string_view source) {
  struct Raw {
    std::string head;
    std::vector<std::string> body;
  };
  std::vector<Raw> raw;
  for (const auto& clause : split_clauses(source)) {
    const auto arrow = clause.find("-->");
    if (arrow == std::string::npos) continue;
    const std::string body = trim(std::string_view(clause).substr(arrow + 3));
    if (body.empty() || body.front() == '[') continue;
    Raw r{unquote(trim(std::string_view(clause).substr(0, arrow))), {}};
    for (const auto& part : split_body(body)) r.body.push_back(unquote(part));
    raw.push_back(std::move(r));
  }

  std::set<std::string> heads;
  for (const auto& r : raw) heads.insert(r.head);
  std::vector<Production> out;
  for (auto& r : raw) {
    Production p{std::move(r.head), {}};
    for (auto& name : r.body) {
      if (heads.count(name)) p.body.push_back(Symbol::nonterminal(std::move(name)));
      else if (name == kSeparatorName) p.body.push_back(Symbol::separator());
      else if (name == kLinebreakName) p.body.push_back(Symbol::linebreak());
      else p.body.push_back(Symbol::state(std::move(name)));
    }
    out.push_back(std::move(p));
  }
  return out;
}

EventStream emit_events(const Derivation& derivation) {
  EventStream events;
  const auto rows = derivation.rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < rows[r].size(); ++k) events.push_back({r, k, rows[r][k].name, rows[r][k].kind});
  }
  return events;
}

std::string events_to_jsonl(const EventStream& events) {
  std::string out;
  for (const auto& e : events) {
    nlohmann::ordered_json line;
    line["row"] = e.row;
    line["pos"] = e.position;
    line["symbol"] = e.symbol;
    line["kind"] = to_string(e.kind);
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace qsquare
