#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace qsquare {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  /// Accepts exactly "#RRGGBB" (either case).
  static std::optional<Rgb> parse(std::string_view hex);
  /// Upper-case "#RRGGBB".
  std::string hex() const;

  bool operator==(const Rgb&) const = default;
};

/// State label -> color.
using Palette = std::map<std::string, Rgb>;

}  // namespace qsquare
