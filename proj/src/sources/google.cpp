#include "spar/sources/google.hpp"

#include "spar/errors.hpp"
#include "spar/text.hpp"

namespace spar::sources {

void FixtureWebSearchProvider::add(const std::string& query_substring, WebResult result) {
  fixtures_.emplace_back(query_substring, std::move(result));
}

std::vector<WebResult> FixtureWebSearchProvider::search(const std::string& query,
                                                        int limit) {
  std::string low = to_lower_ascii(query);
  std::vector<WebResult> out;
  for (const auto& [needle, result] : fixtures_) {
    if (low.find(to_lower_ascii(needle)) == std::string::npos) continue;
    out.push_back(result);
    if (static_cast<int>(out.size()) >= limit) break;
  }
  return out;
}

GoogleAdapter::GoogleAdapter(std::shared_ptr<WebSearchProvider> provider)
    : provider_(std::move(provider)) {}

SearchPage GoogleAdapter::search(const std::string& query,
                                 const TemporalConstraint& temporal, int limit) {
  SearchPage page;
  page.source = SourceKind::Google;
  page.query_used = query;
  for (const auto& hit : provider_->search(query, limit)) {
    if (trim(hit.title).empty() || hit.url.empty()) continue;
    PaperRecord record;
    record.canonical_id = hit.url;
    record.title = hit.title;
    record.abstract_text = hit.snippet;
    record.year = hit.year;
    record.source = SourceKind::Google;
    record.refchain_depth = 0;
    record.retrieved_by = query;
    if (!within_bounds(record.year, temporal)) continue;
    record.validate();
    page.records.push_back(std::move(record));
    if (static_cast<int>(page.records.size()) >= limit) break;
  }
  return page;
}

}  // namespace spar::sources
