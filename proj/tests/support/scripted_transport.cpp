#include "support/scripted_transport.hpp"

#include <cstdio>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::testing {

namespace {

std::string slice_between(const std::string& text, const std::string& begin,
                          const std::string& end) {
  auto from = text.find(begin);
  if (from == std::string::npos) return "";
  from += begin.size();
  auto to = text.find(end, from);
  if (to == std::string::npos) return text.substr(from);
  return text.substr(from, to - from);
}

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words = {
      "a",   "an",  "the", "of",    "in",   "on",   "for", "to",   "with", "and",
      "or",  "is",  "are", "how",   "can",  "what", "which", "across", "any",
      "you", "via", "by",  "from", "under", "over", "does", "do",   "be",   "a"};
  return words;
}

std::string strip_edge_punct(const std::string& token) {
  std::size_t begin = 0, end = token.size();
  auto is_edge = [](char c) {
    return c == '?' || c == '!' || c == '.' || c == ',' || c == ';' || c == ':' ||
           c == '"' || c == '(' || c == ')';
  };
  while (begin < end && is_edge(token[begin])) ++begin;
  while (end > begin && is_edge(token[end - 1])) --end;
  return token.substr(begin, end - begin);
}

}  // namespace

ScriptedTransport::ScriptedTransport(std::shared_ptr<const SyntheticCorpus> corpus)
    : corpus_(std::move(corpus)) {}

void ScriptedTransport::add_interpretation(const std::string& query_substring,
                                           std::string block) {
  interpretations_.emplace_back(to_lower_ascii(query_substring), std::move(block));
}

void ScriptedTransport::add_evolution(const std::string& title,
                                      std::vector<std::string> queries) {
  evolution_[normalize_title(title)] = std::move(queries);
}

void ScriptedTransport::add_rerank_score(const std::string& title, double score) {
  rerank_scores_[normalize_title(title)] = score;
}

std::vector<std::string> ScriptedTransport::keywords_for(const std::string& query) {
  std::istringstream stream(query);
  std::vector<std::string> keywords;
  std::set<std::string> seen;
  std::string token;
  while (stream >> token && keywords.size() < 8) {
    std::string cleaned = strip_edge_punct(token);
    std::string low = to_lower_ascii(cleaned);
    if (cleaned.empty() || stopwords().count(low)) continue;
    if (seen.insert(low).second) keywords.push_back(low);
  }
  return keywords;
}

std::string ScriptedTransport::complete(const spar::llm::ChatRequest& request) {
  ++calls_;
  const std::string& prompt = request.prompt;
  if (prompt.find("Extract optimal search keywords") != std::string::npos) {
    return keyword_response(prompt);
  }
  if (prompt.find("academic search planning assistant") != std::string::npos) {
    return interpretation_response(prompt);
  }
  if (prompt.find("Score: [Your score between 0 and 1]") != std::string::npos ||
      prompt.find("highly discerning academic search relevance evaluator") !=
          std::string::npos) {
    return judge_response(prompt);
  }
  if (prompt.find("academic search expert helping explore") != std::string::npos) {
    return evolution_response(prompt);
  }
  if (prompt.find("Please rerank the following") != std::string::npos) {
    return rerank_response(prompt);
  }
  throw spar::TransportError("ScriptedTransport cannot classify this prompt");
}

std::string ScriptedTransport::judge_response(const std::string& prompt) const {
  std::string title = spar::trim(slice_between(prompt, "Title: ", "\nAbstract:"));
  const SyntheticPaper* paper = corpus_->by_title(title);
  double score = paper ? paper->relevance : 0.05;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", score);
  return "Score: " + std::string(buf) +
         "\nReasoning: Scripted corpus relevance for \"" + title + "\".";
}

std::string ScriptedTransport::keyword_response(const std::string& prompt) const {
  std::string query = spar::trim(slice_between(prompt, "from this question:", "\x03"));
  std::string joined;
  for (const auto& keyword : keywords_for(query)) {
    if (!joined.empty()) joined += ", ";
    joined += keyword;
  }
  return "[Start] " + joined + " [End]";
}

std::string ScriptedTransport::evolution_response(const std::string& prompt) const {
  std::string title =
      spar::trim(slice_between(prompt, "Relevant Document Title: ", "\n- Document Abstract:"));
  nlohmann::json queries = nlohmann::json::array();
  auto it = evolution_.find(normalize_title(title));
  if (it != evolution_.end()) {
    for (const auto& query : it->second) queries.push_back(query);
  }
  return queries.dump();
}

std::string ScriptedTransport::rerank_response(const std::string& prompt) const {
  static const std::regex doc_line(R"(Document (\d+): Title: (.*?) \| Year:)");
  std::string response;
  double fallback = 9.9;
  for (auto it = std::sregex_iterator(prompt.begin(), prompt.end(), doc_line);
       it != std::sregex_iterator(); ++it) {
    int index = std::stoi((*it)[1].str());
    std::string title = (*it)[2].str();
    double score;
    auto entry = rerank_scores_.find(normalize_title(title));
    if (entry != rerank_scores_.end()) {
      score = entry->second;
    } else {
      score = fallback;  // untouched titles keep a descending default
      fallback -= 0.1;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", score);
    if (!response.empty()) response += "\n";
    response += "Document " + std::to_string(index) + ": " + buf +
                " - Scripted authority and recency assessment.";
  }
  if (response.empty()) throw spar::TransportError("no document list in rerank prompt");
  return response;
}

std::string ScriptedTransport::interpretation_response(const std::string& prompt) const {
  std::string query =
      to_lower_ascii(spar::trim(slice_between(prompt, "User Query: ", "\nSearch Time:")));
  for (const auto& [needle, block] : interpretations_) {
    if (query.find(needle) != std::string::npos) return block;
  }
  return interpretation_block("Focused lookup", "General research",
                              "openalex, semantic scholar", false, {}, "NO");
}

std::string interpretation_block(const std::string& intent, const std::string& domain,
                                 const std::string& sources, bool needs_expansion,
                                 const std::vector<std::string>& expanded,
                                 const std::string& time_requirement,
                                 const std::string& source_reason) {
  std::string block;
  block += "Query Intent: " + intent + "\n";
  block += "Domain: " + domain + "\n";
  block += "Suitable Sources: " + sources + "\n";
  block += std::string("Needs Expansion: ") + (needs_expansion ? "true" : "false") + "\n";
  block += "Expansion Reason: scripted\n";
  block += "Expanded Queries:\n";
  for (const auto& query : expanded) {
    block += "- " + query + "\n";
  }
  block += "Time Requirement Description: " + time_requirement + "\n";
  block += "Source Reason: " + source_reason + "\n";
  return block;
}

}  // namespace spar::testing
