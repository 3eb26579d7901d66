#pragma once

#include <compare>
#include <optional>
#include <string>

namespace spar {

/// Calendar date. Parsed from and formatted as ISO "YYYY-MM-DD".
struct Date {
  int year = 0;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  std::string to_string() const;

  /// Throws ValidationError on malformed input or impossible dates.
  static Date parse(const std::string& text);
  static std::optional<Date> try_parse(const std::string& text);
};

}  // namespace spar
