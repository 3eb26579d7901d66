#include "spar/sources/openalex.hpp"

#include <algorithm>

#include <json.hpp>

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::sources {

namespace {

using nlohmann::json;

std::string canonical_id_from_work(const json& work) {
  if (work.contains("doi") && work["doi"].is_string()) {
    std::string doi = work["doi"].get<std::string>();
    if (auto bare = extract_doi(doi)) return *bare;
  }
  return work.value("id", "");
}

PaperRecord record_from_work(const json& work, const std::string& retrieved_by,
                             int depth) {
  PaperRecord record;
  record.canonical_id = canonical_id_from_work(work);
  record.title = work.value("display_name", "");
  if (record.title.empty()) record.title = work.value("title", "");
  if (work.contains("abstract_inverted_index") &&
      work["abstract_inverted_index"].is_object()) {
    std::map<std::string, std::vector<int>> inverted;
    for (const auto& [word, positions] : work["abstract_inverted_index"].items()) {
      inverted[word] = positions.get<std::vector<int>>();
    }
    record.abstract_text = OpenAlexAdapter::rebuild_abstract(inverted);
  }
  if (work.contains("authorships") && work["authorships"].is_array()) {
    for (const auto& authorship : work["authorships"]) {
      if (authorship.contains("author") && authorship["author"].contains("display_name")) {
        record.authors.push_back(authorship["author"]["display_name"].get<std::string>());
      }
    }
  }
  if (work.contains("publication_year") && work["publication_year"].is_number()) {
    record.year = work["publication_year"].get<int>();
  }
  if (work.contains("primary_location") && work["primary_location"].is_object()) {
    const auto& loc = work["primary_location"];
    if (loc.contains("source") && loc["source"].is_object() &&
        loc["source"].contains("display_name") && loc["source"]["display_name"].is_string()) {
      record.venue = loc["source"]["display_name"].get<std::string>();
    }
  }
  if (work.contains("cited_by_count") && work["cited_by_count"].is_number()) {
    record.citation_count = work["cited_by_count"].get<int64_t>();
  }
  if (work.contains("referenced_works") && work["referenced_works"].is_array()) {
    record.reference_ids = work["referenced_works"].get<std::vector<std::string>>();
  }
  record.source = SourceKind::OpenAlex;
  record.refchain_depth = depth;
  record.retrieved_by = retrieved_by;
  return record;
}

json fetch_json(net::HttpClient& http, const std::string& url) {
  auto response = http.get(url, {{"Accept", "application/json"}});
  if (response.status == 402 || response.status == 403) {
    throw QuotaExceededError("OpenAlex quota exhausted (HTTP " +
                             std::to_string(response.status) + ")");
  }
  if (response.status != 200) {
    throw TransportError("OpenAlex returned HTTP " + std::to_string(response.status));
  }
  auto doc = json::parse(response.body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw SourceParseError("OpenAlex response is not JSON");
  return doc;
}

}  // namespace

OpenAlexAdapter::OpenAlexAdapter(std::shared_ptr<net::HttpClient> http,
                                 std::string base_url)
    : http_(std::move(http)), base_url_(std::move(base_url)) {}

std::string OpenAlexAdapter::rebuild_abstract(
    const std::map<std::string, std::vector<int>>& inverted) {
  std::vector<std::pair<int, const std::string*>> slots;
  for (const auto& [word, positions] : inverted) {
    for (int pos : positions) slots.emplace_back(pos, &word);
  }
  std::sort(slots.begin(), slots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string text;
  for (const auto& [pos, word] : slots) {
    if (!text.empty()) text.push_back(' ');
    text += *word;
  }
  return text;
}

SearchPage OpenAlexAdapter::search(const std::string& query,
                                   const TemporalConstraint& temporal, int limit) {
  std::string url = base_url_ + "/works?search=" + net::url_encode(query) +
                    "&per-page=" + std::to_string(limit);
  std::vector<std::string> filters;
  if (temporal.lower) {
    filters.push_back("from_publication_date:" + temporal.lower->to_string());
  }
  if (temporal.upper) {
    filters.push_back("to_publication_date:" + temporal.upper->to_string());
  }
  if (!filters.empty()) {
    url += "&filter=";
    for (std::size_t i = 0; i < filters.size(); ++i) {
      if (i) url += ",";
      url += filters[i];
    }
  }

  json doc = fetch_json(*http_, url);
  SearchPage page;
  page.source = SourceKind::OpenAlex;
  page.query_used = query;
  if (doc.contains("meta") && doc["meta"].contains("count")) {
    page.total_available = doc["meta"]["count"].get<int64_t>();
  }
  if (!doc.contains("results") || !doc["results"].is_array()) {
    throw SourceParseError("OpenAlex response missing results array");
  }
  for (const auto& work : doc["results"]) {
    PaperRecord record = record_from_work(work, query, 0);
    if (trim(record.title).empty()) continue;  // junk rows exist in the wild
    record.validate();
    page.records.push_back(std::move(record));
    if (static_cast<int>(page.records.size()) >= limit) break;
  }
  return page;
}

std::vector<PaperRecord> OpenAlexAdapter::references(const PaperRecord& paper) {
  // Resolve the work to get its referenced_works list, unless the record
  // already carries one from search time.
  std::vector<std::string> ref_ids;
  if (paper.reference_ids) {
    ref_ids = *paper.reference_ids;
  } else {
    std::string work_ref;
    if (auto doi = extract_doi(paper.canonical_id)) {
      work_ref = "doi:" + *doi;
    } else if (paper.canonical_id.find("openalex.org/") != std::string::npos) {
      work_ref = paper.canonical_id.substr(paper.canonical_id.rfind('/') + 1);
    } else {
      return {};
    }
    json doc;
    try {
      doc = fetch_json(*http_, base_url_ + "/works/" + work_ref);
    } catch (const TransportError&) {
      return {};  // unresolved here; caller may try elsewhere
    }
    if (doc.contains("referenced_works") && doc["referenced_works"].is_array()) {
      ref_ids = doc["referenced_works"].get<std::vector<std::string>>();
    }
  }
  if (ref_ids.empty()) return {};

  // Batch-resolve referenced works, capped to keep fan-out sane.
  constexpr std::size_t kBatch = 50;
  constexpr std::size_t kMaxRefs = 200;
  if (ref_ids.size() > kMaxRefs) ref_ids.resize(kMaxRefs);

  std::vector<PaperRecord> out;
  for (std::size_t start = 0; start < ref_ids.size(); start += kBatch) {
    std::string filter;
    for (std::size_t i = start; i < std::min(start + kBatch, ref_ids.size()); ++i) {
      std::string id = ref_ids[i];
      if (auto slash = id.rfind('/'); slash != std::string::npos) id = id.substr(slash + 1);
      if (!filter.empty()) filter += "|";
      filter += id;
    }
    std::string url = base_url_ + "/works?filter=openalex:" + net::url_encode(filter) +
                      "&per-page=" + std::to_string(kBatch);
    json doc = fetch_json(*http_, url);
    if (!doc.contains("results") || !doc["results"].is_array()) continue;
    for (const auto& work : doc["results"]) {
      PaperRecord record = record_from_work(work, paper.canonical_id, 1);
      if (trim(record.title).empty()) continue;
      record.validate();
      out.push_back(std::move(record));
    }
  }
  return out;
}

}  // namespace spar::sources
