#include "spar/types.hpp"

#include <algorithm>
#include <set>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar {

std::string to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Google: return "Google";
    case SourceKind::ArXiv: return "ArXiv";
    case SourceKind::OpenAlex: return "OpenAlex";
    case SourceKind::SemanticScholar: return "SemanticScholar";
    case SourceKind::PubMed: return "PubMed";
  }
  return "Google";
}

std::optional<SourceKind> parse_source(const std::string& name) {
  std::string key;
  for (char c : name) {
    if (c == ' ' || c == '-' || c == '_' || c == '.') continue;
    key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (key == "google") return SourceKind::Google;
  if (key == "arxiv") return SourceKind::ArXiv;
  if (key == "openalex") return SourceKind::OpenAlex;
  if (key == "semanticscholar" || key == "s2") return SourceKind::SemanticScholar;
  if (key == "pubmed") return SourceKind::PubMed;
  return std::nullopt;
}

std::string to_string(Intent intent) {
  switch (intent) {
    case Intent::Survey: return "Survey";
    case Intent::RecentAdvances: return "RecentAdvances";
    case Intent::MethodComparison: return "MethodComparison";
    case Intent::Other: return "Other";
  }
  return "Other";
}

Intent classify_intent(const std::string& text) {
  std::string low = to_lower_ascii(text);
  auto has = [&](const char* needle) { return low.find(needle) != std::string::npos; };
  if (has("review") || has("survey")) return Intent::Survey;
  if (has("recent") || has("state-of-the-art") || has("state of the art") ||
      has("latest") || has("cutting-edge") || has("cutting edge")) {
    return Intent::RecentAdvances;
  }
  if (has("compar")) return Intent::MethodComparison;
  return Intent::Other;
}

std::string to_string(PromptVariant variant) {
  return variant == PromptVariant::Brief ? "brief" : "complex";
}

void UserQuery::validate() const {
  if (trim(text).empty()) throw ValidationError("query text is empty");
}

void TemporalConstraint::validate() const {
  if (lower && upper && *lower > *upper) {
    throw ValidationError("temporal lower bound " + lower->to_string() +
                          " exceeds upper bound " + upper->to_string());
  }
}

std::string TemporalConstraint::bound_text() const {
  if (lower && upper) {
    return std::to_string(lower->year) + "-" + std::to_string(upper->year);
  }
  if (lower) return "since " + std::to_string(lower->year);
  if (upper) return "until " + std::to_string(upper->year);
  return "";
}

bool TemporalConstraint::satisfied_by(const std::string& text) const {
  if (lower && text.find(std::to_string(lower->year)) == std::string::npos) return false;
  if (upper && text.find(std::to_string(upper->year)) == std::string::npos) return false;
  return true;
}

void QueryInterpretation::validate() const {
  temporal.validate();
  if (sources.empty()) throw ValidationError("interpretation selects no sources");
  std::set<SourceKind> seen(sources.begin(), sources.end());
  if (seen.size() != sources.size()) {
    throw ValidationError("interpretation sources contain duplicates");
  }
  if (needs_expansion && refined_queries.empty()) {
    throw ValidationError("needs_expansion set but no refined queries");
  }
  std::set<std::string> distinct(refined_queries.begin(), refined_queries.end());
  if (distinct.size() != refined_queries.size()) {
    throw ValidationError("refined queries contain duplicates");
  }
}

void PaperRecord::validate() const {
  if (trim(title).empty()) throw ValidationError("paper title is empty");
  if (refchain_depth != 0 && refchain_depth != 1) {
    throw ValidationError("refchain_depth must be 0 or 1, got " +
                          std::to_string(refchain_depth));
  }
  if (citation_count && *citation_count < 0) {
    throw ValidationError("negative citation count");
  }
}

void RelevanceJudgement::validate() const {
  if (score < 0.0 || score > 1.0) {
    throw ValidationError("relevance score " + std::to_string(score) +
                          " outside [0,1]");
  }
}

bool SearchState::already_searched(const std::string& query) const {
  return std::find(searched_queries.begin(), searched_queries.end(), query) !=
         searched_queries.end();
}

void BenchmarkCase::validate() const {
  if (answers.empty()) throw ValidationError("benchmark case has no answers");
  std::set<std::string> keys;
  for (const auto& stub : answers) {
    std::string key = !stub.canonical_id.empty()
                          ? to_lower_ascii(stub.canonical_id)
                          : "t:" + normalize_title(stub.title);
    if (!keys.insert(key).second) {
      throw ValidationError("duplicate answer: " + key);
    }
  }
}

}  // namespace spar
