#include "spar/date.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "spar/errors.hpp"

namespace spar {

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::optional<Date> Date::try_parse(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  Date d;
  auto field = [&](int begin, int end, int& out) {
    auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, out);
    return ec == std::errc() && ptr == text.data() + end;
  };
  if (!field(0, 4, d.year) || !field(5, 7, d.month) || !field(8, 10, d.day)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                  std::chrono::month{static_cast<unsigned>(d.month)},
                                  std::chrono::day{static_cast<unsigned>(d.day)}};
  if (!ymd.ok()) return std::nullopt;
  return d;
}

Date Date::parse(const std::string& text) {
  auto d = try_parse(text);
  if (!d) throw ValidationError("malformed date: '" + text + "'");
  return *d;
}

}  // namespace spar
