#include "spar/llm/parsers.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::llm {

namespace {

// Strips markdown emphasis and bracket noise around a field label.
std::string strip_label_noise(std::string s) {
  while (!s.empty() && (s.front() == '*' || s.front() == '#' || s.front() == '[' ||
                        s.front() == ' ' || s.front() == '\t')) {
    s.erase(s.begin());
  }
  while (!s.empty() && (s.back() == '*' || s.back() == ']' || s.back() == ' ' ||
                        s.back() == '\t')) {
    s.pop_back();
  }
  return s;
}

// Finds "<label>:" at the start of a line, tolerating bold markers. Returns
// the value part after the colon, or nullopt when the line is not that label.
std::optional<std::string> match_label(const std::string& line, const std::string& label) {
  auto colon = line.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::string head = strip_label_noise(line.substr(0, colon));
  if (to_lower_ascii(head) != to_lower_ascii(label)) return std::nullopt;
  std::string value = line.substr(colon + 1);
  // Trailing bold marker from "**Label:** value" styles ends up leading the value.
  while (!value.empty() && value.front() == '*') value.erase(value.begin());
  return trim(value);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  lines.push_back(current);
  return lines;
}

std::optional<double> leading_number(const std::string& value) {
  std::size_t pos = 0;
  while (pos < value.size() &&
         (value[pos] == ' ' || value[pos] == '[' || value[pos] == '*' ||
          value[pos] == '(')) {
    ++pos;
  }
  const char* begin = value.c_str() + pos;
  char* end = nullptr;
  double parsed = std::strtod(begin, &end);
  if (end == begin) return std::nullopt;
  return parsed;
}

}  // namespace

ScoredResponse parse_score(const std::string& text) {
  constexpr double kSlack = 0.005;
  std::optional<double> score;
  std::optional<std::size_t> score_line;
  std::vector<std::string> lines = split_lines(text);

  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto value = match_label(lines[i], "Score");
    if (!value) continue;
    auto number = leading_number(*value);
    if (!number) throw NoScoreFoundError("'Score:' line carries no numeric value");
    if (*number < -kSlack || *number > 1.0 + kSlack) {
      throw ScoreOutOfRangeError("score " + std::to_string(*number) + " outside [0,1]");
    }
    score = std::clamp(*number, 0.0, 1.0);
    score_line = i;
    break;
  }
  if (!score) throw NoScoreFoundError("no 'Score:' line in response");

  std::string reasoning;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto value = match_label(lines[i], "Reasoning");
    if (!value) continue;
    reasoning = *value;
    // Reasoning may continue over following lines until the score line.
    for (std::size_t j = i + 1; j < lines.size() && j != *score_line; ++j) {
      if (match_label(lines[j], "Score")) break;
      if (!reasoning.empty() && !trim(lines[j]).empty()) reasoning += "\n";
      if (!trim(lines[j]).empty()) reasoning += trim(lines[j]);
    }
    break;
  }
  return {*score, trim(reasoning)};
}

std::vector<std::string> parse_string_array(const std::string& text) {
  bool saw_candidate = false;
  for (std::size_t open = text.find('['); open != std::string::npos;
       open = text.find('[', open + 1)) {
    // Find the matching close bracket, respecting JSON string syntax.
    std::size_t pos = open;
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    std::size_t close = std::string::npos;
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '[') {
        ++depth;
      } else if (c == ']') {
        if (--depth == 0) {
          close = pos;
          break;
        }
      }
    }
    if (close == std::string::npos) continue;
    saw_candidate = true;

    auto parsed = nlohmann::json::parse(text.substr(open, close - open + 1), nullptr,
                                        /*allow_exceptions=*/false);
    if (parsed.is_discarded() || !parsed.is_array()) continue;
    bool all_strings = std::all_of(parsed.begin(), parsed.end(),
                                   [](const auto& e) { return e.is_string(); });
    if (!all_strings) continue;
    std::vector<std::string> out;
    for (const auto& e : parsed) out.push_back(e.template get<std::string>());
    return out;
  }
  if (saw_candidate) throw MalformedArrayError("bracketed text is not a JSON string array");
  throw NoArrayFoundError("no array found in response");
}

std::vector<std::string> parse_keywords(const std::string& text) {
  const std::string start_marker = "[Start]";
  const std::string end_marker = "[End]";
  std::size_t start = text.find(start_marker);
  if (start == std::string::npos) throw MarkersNotFoundError("no [Start] marker");
  start += start_marker.size();
  std::size_t end = text.find(end_marker, start);
  if (end == std::string::npos) throw MarkersNotFoundError("no [End] marker after [Start]");

  std::vector<std::string> keywords;
  std::string body = text.substr(start, end - start);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    std::string token = trim(body.substr(pos, comma - pos));
    if (!token.empty()) keywords.push_back(token);
    pos = comma + 1;
  }
  if (keywords.empty()) throw EmptyKeywordListError("no keywords between markers");
  return keywords;
}

std::vector<RerankEntry> parse_rerank(const std::string& text, int n) {
  static const std::regex line_pattern(
      R"(^\s*\**Document\s+(\d+)\s*\**\s*:\s*(-?\d+(?:\.\d+)?)\s*-\s*(.*?)\s*$)");
  std::vector<RerankEntry> entries;
  std::set<int> seen;
  for (const auto& line : split_lines(text)) {
    std::smatch m;
    if (!std::regex_match(line, m, line_pattern)) continue;
    RerankEntry entry;
    entry.index = std::stoi(m[1].str());
    entry.score = std::stod(m[2].str());
    entry.justification = m[3].str();
    if (entry.index < 1 || entry.index > n) {
      throw IndexOutOfRangeError("document index " + m[1].str() + " outside [1," +
                                 std::to_string(n) + "]");
    }
    if (!seen.insert(entry.index).second) {
      throw DuplicateIndexError("document index " + m[1].str() + " appears twice");
    }
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) throw NoLinesMatchedError("no 'Document i: score - text' lines");
  return entries;
}

QueryInterpretation parse_interpretation(const std::string& text, bool lenient) {
  static const std::vector<std::string> labels = {
      "User Query",        "Query Intent",
      "Domain",            "Suitable Sources",
      "Needs Expansion",   "Expansion Reason",
      "Expanded Queries",  "Time Requirement Description",
      "Source Reason"};

  std::map<std::string, std::string> fields;
  std::vector<std::string> expanded;
  std::string current_label;

  for (const auto& line : split_lines(text)) {
    bool matched = false;
    for (const auto& label : labels) {
      if (auto value = match_label(line, label)) {
        current_label = label;
        fields[label] = *value;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    if (current_label == "Expanded Queries") {
      if (trimmed[0] == '-' || trimmed[0] == '*') {
        expanded.push_back(trim(trimmed.substr(1)));
      } else if (std::isdigit(static_cast<unsigned char>(trimmed[0]))) {
        auto dot = trimmed.find('.');
        if (dot != std::string::npos) expanded.push_back(trim(trimmed.substr(dot + 1)));
      }
    } else if (!current_label.empty()) {
      // Continuation line of a prose field.
      fields[current_label] += "\n" + trimmed;
    }
  }

  auto require = [&](const std::string& label) -> std::string {
    auto it = fields.find(label);
    if (it == fields.end()) throw MissingFieldError(label);
    return it->second;
  };

  QueryInterpretation interp;
  interp.intent_text = require("Query Intent");
  interp.intent = classify_intent(interp.intent_text);
  if (auto it = fields.find("Domain"); it != fields.end()) interp.domain = it->second;

  std::string sources_text = require("Suitable Sources");
  std::size_t pos = 0;
  while (pos <= sources_text.size()) {
    std::size_t comma = sources_text.find(',', pos);
    if (comma == std::string::npos) comma = sources_text.size();
    std::string token = trim(sources_text.substr(pos, comma - pos));
    pos = comma + 1;
    if (token.empty()) continue;
    auto kind = parse_source(token);
    if (!kind) {
      if (lenient) continue;
      throw UnknownSourceError(token);
    }
    if (std::find(interp.sources.begin(), interp.sources.end(), *kind) ==
        interp.sources.end()) {
      interp.sources.push_back(*kind);
    }
  }
  if (interp.sources.empty() && !lenient) throw MissingFieldError("Suitable Sources");

  std::string needs = to_lower_ascii(trim(require("Needs Expansion")));
  if (needs == "true" || needs == "yes") {
    interp.needs_expansion = true;
  } else if (needs == "false" || needs == "no") {
    interp.needs_expansion = false;
  } else {
    throw MalformedBooleanError("cannot read boolean from '" + needs + "'");
  }

  if (auto it = fields.find("Expansion Reason"); it != fields.end()) {
    interp.expansion_reason = it->second;
  }
  if (auto it = fields.find("Source Reason"); it != fields.end()) {
    interp.source_reason = it->second;
  }

  for (const auto& q : expanded) {
    if (q.empty()) continue;
    if (std::find(interp.refined_queries.begin(), interp.refined_queries.end(), q) ==
        interp.refined_queries.end()) {
      interp.refined_queries.push_back(q);
    }
  }
  if (interp.needs_expansion && interp.refined_queries.empty()) {
    throw MissingFieldError("Expanded Queries");
  }

  if (auto it = fields.find("Time Requirement Description"); it != fields.end()) {
    std::string desc = trim(it->second);
    std::string low = to_lower_ascii(desc);
    if (!desc.empty() && low != "no" && low != "none" && low != "false" && low != "n/a") {
      interp.temporal.required = true;
      // Years mentioned in the description become the bounds.
      static const std::regex year_pattern(R"((19|20)\d{2})");
      std::vector<int> years;
      for (auto it2 = std::sregex_iterator(desc.begin(), desc.end(), year_pattern);
           it2 != std::sregex_iterator(); ++it2) {
        years.push_back(std::stoi(it2->str()));
      }
      if (years.size() >= 2) {
        auto [lo, hi] = std::minmax_element(years.begin(), years.end());
        interp.temporal.lower = Date{*lo, 1, 1};
        interp.temporal.upper = Date{*hi, 12, 31};
      } else if (years.size() == 1) {
        bool until = low.find("until") != std::string::npos ||
                     low.find("before") != std::string::npos ||
                     low.find("up to") != std::string::npos;
        if (until) {
          interp.temporal.upper = Date{years[0], 12, 31};
        } else {
          interp.temporal.lower = Date{years[0], 1, 1};
        }
      }
    }
  }

  return interp;
}

}  // namespace spar::llm
