#include "spar/sources/semantic_scholar.hpp"

#include <json.hpp>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::sources {

namespace {

using nlohmann::json;

PaperRecord record_from_paper(const json& paper, const std::string& retrieved_by,
                              int depth) {
  PaperRecord record;
  if (paper.contains("externalIds") && paper["externalIds"].is_object() &&
      paper["externalIds"].contains("DOI") && paper["externalIds"]["DOI"].is_string()) {
    record.canonical_id = to_lower_ascii(paper["externalIds"]["DOI"].get<std::string>());
  } else {
    record.canonical_id = "s2:" + paper.value("paperId", "");
  }
  record.title = paper.value("title", "");
  if (paper.contains("abstract") && paper["abstract"].is_string()) {
    record.abstract_text = paper["abstract"].get<std::string>();
  }
  if (paper.contains("authors") && paper["authors"].is_array()) {
    for (const auto& author : paper["authors"]) {
      if (author.contains("name")) record.authors.push_back(author["name"].get<std::string>());
    }
  }
  if (paper.contains("year") && paper["year"].is_number()) {
    record.year = paper["year"].get<int>();
  }
  if (paper.contains("venue") && paper["venue"].is_string() &&
      !paper["venue"].get<std::string>().empty()) {
    record.venue = paper["venue"].get<std::string>();
  }
  if (paper.contains("citationCount") && paper["citationCount"].is_number()) {
    record.citation_count = paper["citationCount"].get<int64_t>();
  }
  record.source = SourceKind::SemanticScholar;
  record.refchain_depth = depth;
  record.retrieved_by = retrieved_by;
  return record;
}

constexpr const char* kFields = "title,abstract,year,venue,citationCount,authors,externalIds";

}  // namespace

SemanticScholarAdapter::SemanticScholarAdapter(std::shared_ptr<net::HttpClient> http,
                                               std::string api_key, std::string base_url)
    : http_(std::move(http)),
      api_key_(std::move(api_key)),
      base_url_(std::move(base_url)) {}

std::map<std::string, std::string> SemanticScholarAdapter::headers() const {
  std::map<std::string, std::string> h = {{"Accept", "application/json"}};
  if (!api_key_.empty()) h["x-api-key"] = api_key_;
  return h;
}

SearchPage SemanticScholarAdapter::search(const std::string& query,
                                          const TemporalConstraint& temporal, int limit) {
  std::string url = base_url_ + "/graph/v1/paper/search?query=" + net::url_encode(query) +
                    "&limit=" + std::to_string(limit) + "&fields=" + kFields;
  if (temporal.lower || temporal.upper) {
    std::string range;
    if (temporal.lower) range += std::to_string(temporal.lower->year);
    range += "-";
    if (temporal.upper) range += std::to_string(temporal.upper->year);
    url += "&year=" + range;
  }

  auto response = http_->get(url, headers());
  if (response.status == 402 || response.status == 403) {
    throw QuotaExceededError("Semantic Scholar quota exhausted");
  }
  if (response.status != 200) {
    throw TransportError("Semantic Scholar returned HTTP " +
                         std::to_string(response.status));
  }
  auto doc = json::parse(response.body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw SourceParseError("Semantic Scholar response is not JSON");

  SearchPage page;
  page.source = SourceKind::SemanticScholar;
  page.query_used = query;
  if (doc.contains("total") && doc["total"].is_number()) {
    page.total_available = doc["total"].get<int64_t>();
  }
  if (doc.contains("data") && doc["data"].is_array()) {
    for (const auto& paper : doc["data"]) {
      PaperRecord record = record_from_paper(paper, query, 0);
      if (trim(record.title).empty()) continue;
      record.validate();
      page.records.push_back(std::move(record));
      if (static_cast<int>(page.records.size()) >= limit) break;
    }
  }
  return page;
}

std::vector<PaperRecord> SemanticScholarAdapter::references(const PaperRecord& paper) {
  std::string id;
  if (auto doi = extract_doi(paper.canonical_id)) {
    id = "DOI:" + *doi;
  } else if (paper.canonical_id.rfind("s2:", 0) == 0) {
    id = paper.canonical_id.substr(3);
  } else if (paper.canonical_id.rfind("arxiv:", 0) == 0) {
    id = "ARXIV:" + paper.canonical_id.substr(6);
  } else if (paper.canonical_id.rfind("pmid:", 0) == 0) {
    id = "PMID:" + paper.canonical_id.substr(5);
  } else {
    return {};
  }

  std::string url = base_url_ + "/graph/v1/paper/" + net::url_encode(id) +
                    "/references?fields=" + kFields + "&limit=100";
  auto response = http_->get(url, headers());
  if (response.status == 404) return {};  // not in the graph; caller falls back
  if (response.status == 402 || response.status == 403) {
    throw QuotaExceededError("Semantic Scholar quota exhausted");
  }
  if (response.status != 200) {
    throw TransportError("Semantic Scholar returned HTTP " +
                         std::to_string(response.status));
  }
  auto doc = json::parse(response.body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw SourceParseError("Semantic Scholar response is not JSON");

  std::vector<PaperRecord> out;
  if (doc.contains("data") && doc["data"].is_array()) {
    for (const auto& row : doc["data"]) {
      if (!row.contains("citedPaper") || !row["citedPaper"].is_object()) continue;
      PaperRecord record = record_from_paper(row["citedPaper"], paper.canonical_id, 1);
      if (trim(record.title).empty()) continue;
      record.validate();
      out.push_back(std::move(record));
    }
  }
  return out;
}

}  // namespace spar::sources
